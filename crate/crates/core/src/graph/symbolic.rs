//! Builders that never enumerate ring elements: `IA(ℤ_n)` on the divisor
//! lattice, and `IA` of a product of integral domains on support patterns.

use super::Graph;
use crate::arith::{euler_phi, gcd, Factorization};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ring::Element;

/// `IA(ℤ_n)` from the factorization of `n`: one vertex per divisor
/// `1 < d < n` (ascending), `d–e` iff `gcd(d, e) ≠ 1`. The class of `d`
/// holds the `φ(n/d)` residues `x` with `gcd(x, n) = d`.
pub fn build_ia_zn_symbolic(f: &Factorization, caps: &Caps) -> Result<Graph> {
    if f.powers().is_empty() {
        return Err(Error::Config("factorization must be nonempty".into()));
    }
    let verts = f.divisor_count() - 2;
    caps.check_vertices(verts)?;
    let n = f.value();
    let divs: Vec<u64> = f
        .divisors()
        .into_iter()
        .filter(|&d| d != 1 && d != n)
        .collect();
    let mut g = Graph::new(divs.iter().map(u64::to_string).collect())?;
    for i in 0..divs.len() {
        for j in i + 1..divs.len() {
            if gcd(divs[i], divs[j]) != 1 {
                g.add_edge(i, j)?;
            }
        }
    }
    g.set_class_sizes(divs.iter().map(|&d| Some(euler_phi(n / d))).collect());
    Ok(g)
}

/// `IA(A₁×…×A_k)` for integral domains `A_i`. A nonzero zero-divisor is
/// determined up to `∼` by its support; vertices are the 0/1 support strings
/// other than all-zero and all-one, sorted, and `S–T` iff `S ∪ T` is not the
/// full support (the complements then share a coordinate that annihilates
/// both).
pub fn build_ia_domain_product(k: usize, caps: &Caps) -> Result<Graph> {
    if k < 2 {
        return Err(Error::Config(format!("need at least 2 factors, got {k}")));
    }
    if k >= 63 {
        return Err(Error::cap("vertex count", u64::MAX, caps.graph_vertices as u64));
    }
    let full: u64 = (1 << k) - 1;
    caps.check_vertices(full - 1)?;
    let masks: Vec<u64> = (1..full).collect();
    let label = |m: u64| -> String {
        (0..k)
            .map(|j| if m >> (k - 1 - j) & 1 == 1 { '1' } else { '0' })
            .collect()
    };
    let mut g = Graph::new(masks.iter().map(|&m| label(m)).collect())?;
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i] | masks[j] != full {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Support string of an element: `1` where the coordinate is nonzero.
pub fn support_label(x: &Element) -> String {
    x.residues()
        .iter()
        .map(|&r| if r == 0 { '0' } else { '1' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn z12_divisor_graph() {
        let g = build_ia_zn_symbolic(&Factorization::of(12), &caps()).unwrap();
        assert_eq!(g.labels(), ["2", "3", "4", "6"]);
        let e: Vec<(String, String)> = [("2", "4"), ("2", "6"), ("3", "6"), ("4", "6")]
            .iter()
            .map(|&(a, b)| (a.into(), b.into()))
            .collect();
        assert_eq!(g.labeled_edges(), e);
        assert_eq!(g.class_sizes(), [Some(2), Some(2), Some(2), Some(1)]);
    }

    #[test]
    fn pqr_divisor_graph() {
        let g = build_ia_zn_symbolic(&Factorization::of(2 * 3 * 5), &caps()).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.edge_count(), 9);
        // p is adjacent to pq and pr only
        let p = g.position("2").unwrap();
        let nb: Vec<&str> = g.neighbors(p).map(|i| g.label(i)).collect();
        assert_eq!(nb, ["6", "10"]);
    }

    #[test]
    fn prime_power_is_complete() {
        for m in 2..=9u32 {
            let g = build_ia_zn_symbolic(&Factorization::of(3u64.pow(m)), &caps()).unwrap();
            let v = (m - 1) as usize;
            assert_eq!(g.len(), v);
            assert_eq!(g.edge_count(), v * (v - 1) / 2);
        }
    }

    #[test]
    fn prime_gives_empty_graph() {
        let g = build_ia_zn_symbolic(&Factorization::of(13), &caps()).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn domain_product_small_cases() {
        let g = build_ia_domain_product(2, &caps()).unwrap();
        assert_eq!(g.labels(), ["01", "10"]);
        assert_eq!(g.edge_count(), 0);
        let g = build_ia_domain_product(3, &caps()).unwrap();
        assert_eq!(g.labels(), ["001", "010", "011", "100", "101", "110"]);
        assert_eq!(g.edge_count(), 9);
        // (0,1,1) is adjacent to (0,1,0) and (0,0,1) only
        let v = g.position("011").unwrap();
        let nb: Vec<&str> = g.neighbors(v).map(|i| g.label(i)).collect();
        assert_eq!(nb, ["001", "010"]);
    }

    #[test]
    fn domain_product_caps() {
        assert!(build_ia_domain_product(1, &caps()).is_err());
        assert!(build_ia_domain_product(13, &caps()).unwrap_err().is_cap_exceeded());
        assert!(build_ia_domain_product(100, &caps()).unwrap_err().is_cap_exceeded());
        assert_eq!(build_ia_domain_product(12, &caps()).unwrap().len(), 4094);
    }
}
