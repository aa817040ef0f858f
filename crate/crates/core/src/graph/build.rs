use serde::Serialize;

use super::Graph;
use crate::caps::Caps;
use crate::error::Result;
use crate::ring::ann::{
    product_is_zero_divisor, raw_classes, sig_intersection_nonzero, AnnSig, MemberTable, RawClass,
};
use crate::ring::{AnnKey, Element, FiniteRing};

/// Identifies a class's annihilator: a key for product rings, otherwise the
/// class's position in the sorted class list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassKey {
    Ann(AnnKey),
    Oracle(usize),
}

/// One `∼`-class of nonzero zero-divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub key: ClassKey,
    /// Lexicographically smallest member.
    pub representative: Element,
    pub size: u64,
}

fn to_vertex_classes(raw: &[RawClass]) -> Vec<VertexClass> {
    raw.iter()
        .enumerate()
        .map(|(i, c)| VertexClass {
            key: match &c.sig {
                AnnSig::Key(k) => ClassKey::Ann(k.clone()),
                AnnSig::Set(_) => ClassKey::Oracle(i),
            },
            representative: c.rep.clone(),
            size: c.members.len() as u64,
        })
        .collect()
}

/// The vertex set of `IA(R)`: `Z*(R)` partitioned by annihilator, units and
/// the class of zero dropped, sorted by representative.
pub fn compress_classes(r: &FiniteRing, caps: &Caps) -> Result<Vec<VertexClass>> {
    Ok(to_vertex_classes(&raw_classes(r, caps, false)?))
}

/// Members of each class, aligned with [`compress_classes`].
pub fn class_members(r: &FiniteRing, caps: &Caps) -> Result<Vec<Vec<Element>>> {
    Ok(raw_classes(r, caps, false)?
        .into_iter()
        .map(|c| c.members)
        .collect())
}

fn ia_from_raw(r: &FiniteRing, raw: &[RawClass], caps: &Caps) -> Result<Graph> {
    caps.check_vertices(raw.len() as u64)?;
    let labels = raw.iter().map(|c| c.rep.label()).collect();
    let mut g = Graph::new(labels)?;
    let spec = r.spec();
    for i in 0..raw.len() {
        for j in i + 1..raw.len() {
            if sig_intersection_nonzero(spec, &raw[i].sig, &raw[j].sig) {
                g.add_edge(i, j)?;
            }
        }
    }
    g.set_class_sizes(raw.iter().map(|c| Some(c.members.len() as u64)).collect());
    Ok(g)
}

/// `IA(R)`: classes labeled by representative, `[x]–[y]` iff
/// `ann(x) ∩ ann(y) ≠ {0}`. Product rings use annihilator keys.
pub fn build_ia(r: &FiniteRing, caps: &Caps) -> Result<Graph> {
    ia_from_raw(r, &raw_classes(r, caps, false)?, caps)
}

/// `IA(R)` computed from explicit annihilator sets only, for cross-checking
/// the key path.
pub fn build_ia_oracle(r: &FiniteRing, caps: &Caps) -> Result<Graph> {
    ia_from_raw(r, &raw_classes(r, caps, true)?, caps)
}

/// Torsion graph `Γ_R(R)`: every nonzero zero-divisor is a vertex, same
/// intersection adjacency as `IA(R)`.
pub fn build_torsion(r: &FiniteRing, caps: &Caps) -> Result<Graph> {
    caps.check_brute(r.order())?;
    let (verts, sigs): (Vec<Element>, Vec<AnnSig>) = match r {
        FiniteRing::Product(spec) => r
            .elements()
            .filter(|x| !x.is_zero() && product_is_zero_divisor(spec, x))
            .map(|x| {
                let k = AnnKey::of(spec, &x);
                (x, AnnSig::Key(k))
            })
            .unzip(),
        FiniteRing::Subring(_) => {
            let table = MemberTable::new(r, caps)?;
            table
                .members
                .into_iter()
                .zip(table.ann)
                .filter(|(x, ann)| !x.is_zero() && ann.count_ones(..) > 1)
                .map(|(x, ann)| (x, AnnSig::Set(ann)))
                .unzip()
        }
    };
    caps.check_vertices(verts.len() as u64)?;
    let mut g = Graph::new(verts.iter().map(Element::label).collect())?;
    let spec = r.spec();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if sig_intersection_nonzero(spec, &sigs[i], &sigs[j]) {
                g.add_edge(i, j)?;
            }
        }
    }
    g.set_class_sizes(vec![Some(1); verts.len()]);
    Ok(g)
}

/// Total graph `T(Γ(R))`: all elements, `x–y` iff `x + y ∈ Z(R)`.
pub fn build_total(r: &FiniteRing, caps: &Caps) -> Result<Graph> {
    caps.check_brute(r.order())?;
    caps.check_vertices(r.order())?;
    let members: Vec<Element> = r.elements().collect();
    let spec = r.spec();
    let in_z: Box<dyn Fn(&Element) -> bool> = match r {
        FiniteRing::Product(spec) => Box::new(move |x| product_is_zero_divisor(spec, x)),
        FiniteRing::Subring(_) => {
            let z = crate::ring::zero_divisor_set(r, caps)?;
            Box::new(move |x| z.contains(x))
        }
    };
    let mut g = Graph::new(members.iter().map(Element::label).collect())?;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if in_z(&spec.add_raw(&members[i], &members[j])) {
                g.add_edge(i, j)?;
            }
        }
    }
    g.set_class_sizes(vec![Some(1); members.len()]);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{annihilator_set, subring_generated, ElementSet};

    fn caps() -> Caps {
        Caps::default()
    }

    fn ring(s: &str) -> FiniteRing {
        FiniteRing::parse(s, &caps()).unwrap()
    }

    fn labels(g: &Graph) -> Vec<&str> {
        g.labels().iter().map(String::as_str).collect()
    }

    fn edge_set(g: &Graph) -> Vec<(String, String)> {
        g.labeled_edges()
    }

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut out: Vec<_> = v.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
        out.sort();
        out
    }

    #[test]
    fn z12_classes() {
        let classes = compress_classes(&ring("Z12"), &caps()).unwrap();
        let reps: Vec<String> = classes.iter().map(|c| c.representative.label()).collect();
        assert_eq!(reps, ["2", "3", "4", "6"]);
        // group-by over brute-force annihilator sets
        let z12 = ring("Z12");
        let mut groups: std::collections::BTreeMap<Vec<Element>, u64> = Default::default();
        for x in 1..12u64 {
            let ann: Vec<Element> = annihilator_set(&z12, &Element::new(vec![x]), &caps())
                .unwrap()
                .into_iter()
                .collect();
            if ann.len() > 1 {
                *groups.entry(ann).or_default() += 1;
            }
        }
        let mut want: Vec<u64> = groups.values().copied().collect();
        want.sort();
        let mut got: Vec<u64> = classes.iter().map(|c| c.size).collect();
        assert_eq!(got, [2, 2, 2, 1]);
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn field_has_no_classes() {
        assert!(compress_classes(&ring("Z7"), &caps()).unwrap().is_empty());
        assert!(build_ia(&ring("Z7"), &caps()).unwrap().is_empty());
    }

    #[test]
    fn ia_z12_edges() {
        let g = build_ia(&ring("Z12"), &caps()).unwrap();
        assert_eq!(labels(&g), ["2", "3", "4", "6"]);
        assert_eq!(
            edge_set(&g),
            pairs(&[("2", "4"), ("2", "6"), ("3", "6"), ("4", "6")])
        );
    }

    #[test]
    fn ia_z3xz3_is_two_isolated_vertices() {
        let g = build_ia(&ring("Z3xZ3"), &caps()).unwrap();
        assert_eq!(labels(&g), ["(0,1)", "(1,0)"]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn ia_z4xz4_edges() {
        let g = build_ia(&ring("Z4xZ4"), &caps()).unwrap();
        assert_eq!(g.len(), 7);
        assert_eq!(g.edge_count(), 17);
        // the four non-adjacent pairs
        let missing = pairs(&[
            ("(0,1)", "(1,0)"),
            ("(0,1)", "(1,2)"),
            ("(1,0)", "(2,1)"),
            ("(1,2)", "(2,1)"),
        ]);
        let all: Vec<String> = g.labels().to_vec();
        let mut want = Vec::new();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let mut p = (all[i].clone(), all[j].clone());
                if p.0 > p.1 {
                    std::mem::swap(&mut p.0, &mut p.1);
                }
                if !missing.contains(&p) {
                    want.push(p);
                }
            }
        }
        want.sort();
        assert_eq!(edge_set(&g), want);
    }

    #[test]
    fn prime_power_is_complete() {
        for (n, m) in [(8u64, 3usize), (27, 3), (32, 5), (125, 3), (81, 4)] {
            let g = build_ia(&ring(&format!("Z{n}")), &caps()).unwrap();
            assert_eq!(g.len(), m - 1);
            assert_eq!(g.edge_count(), (m - 1) * (m - 2) / 2);
        }
    }

    #[test]
    fn key_and_oracle_paths_agree() {
        for s in ["Z12", "Z30", "Z36", "Z4xZ4", "Z2xZ6", "Z3xZ3", "Z2xZ2xZ4", "Z8xZ9"] {
            let r = ring(s);
            assert_eq!(build_ia(&r, &caps()).unwrap(), build_ia_oracle(&r, &caps()).unwrap(), "{s}");
        }
    }

    #[test]
    fn adjacency_is_representative_independent() {
        for s in ["Z12", "Z4xZ4", "Z2xZ9", "Z24"] {
            let r = ring(s);
            let g = build_ia(&r, &caps()).unwrap();
            let members = class_members(&r, &caps()).unwrap();
            let anns: Vec<Vec<ElementSet>> = members
                .iter()
                .map(|ms| ms.iter().map(|x| annihilator_set(&r, x, &caps()).unwrap()).collect())
                .collect();
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    for a in &anns[i] {
                        for b in &anns[j] {
                            assert_eq!(!a.intersection(b).is_trivial(), g.has_edge(i, j), "{s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn torsion_examples() {
        let g = build_torsion(&ring("Z4"), &caps()).unwrap();
        assert_eq!(labels(&g), ["2"]);
        let g = build_torsion(&ring("Z12"), &caps()).unwrap();
        assert_eq!(g.len(), 7);
        let (two, ten) = (g.position("2").unwrap(), g.position("10").unwrap());
        assert!(g.has_edge(two, ten));
        let g = build_torsion(&ring("Z3xZ3"), &caps()).unwrap();
        assert_eq!(
            edge_set(&g),
            pairs(&[("(0,1)", "(0,2)"), ("(1,0)", "(2,0)")])
        );
    }

    #[test]
    fn total_graph_examples() {
        let g = build_total(&ring("Z6"), &caps()).unwrap();
        assert!(g.has_edge(4, 5));
        let z12 = ring("Z12");
        let t = build_total(&z12, &caps()).unwrap();
        for x in 1..12usize {
            let zd = crate::ring::is_zero_divisor(&z12, &Element::new(vec![x as u64])).unwrap();
            assert_eq!(t.has_edge(0, x), zd);
        }
    }

    #[test]
    fn total_graph_of_z8_splits() {
        let t = build_total(&ring("Z8"), &caps()).unwrap();
        // Z = evens, Reg = odds: sums within each part are even
        for i in 0..8 {
            for j in i + 1..8 {
                assert_eq!(t.has_edge(i, j), (i + j) % 2 == 0);
            }
        }
    }

    #[test]
    fn subring_graphs() {
        let r = ring("Z4xZ4");
        let gens: ElementSet = [Element::new(vec![2, 0]), Element::new(vec![1, 1])]
            .into_iter()
            .collect();
        let s = subring_generated(&r, &gens, false, &caps()).unwrap();
        let g = build_ia(&s, &caps()).unwrap();
        let classes = compress_classes(&s, &caps()).unwrap();
        assert!(classes.iter().all(|c| matches!(c.key, ClassKey::Oracle(_))));
        assert_eq!(g.len(), classes.len());
        // ann sets computed inside S, brute force
        let members: Vec<Element> = s.elements().collect();
        for c in &classes {
            let ann: Vec<&Element> = members
                .iter()
                .filter(|m| r.mul(m, &c.representative).unwrap().is_zero())
                .collect();
            assert!(ann.len() > 1);
        }
        let t = build_torsion(&s, &caps()).unwrap();
        let z = crate::ring::zero_divisor_set(&s, &caps()).unwrap();
        assert_eq!(t.len(), z.len() - 1);
    }

    #[test]
    fn caps_are_enforced() {
        let tight = Caps {
            graph_vertices: 3,
            ..Caps::default()
        };
        assert!(build_ia(&ring("Z12"), &tight).unwrap_err().is_cap_exceeded());
        let tight = Caps {
            brute_order: 10,
            ..Caps::default()
        };
        assert!(build_total(&ring("Z12"), &tight).unwrap_err().is_cap_exceeded());
    }
}
