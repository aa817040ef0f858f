//! Annihilators, zero-divisors and nilpotents.
//!
//! Product rings get closed-form fast paths (one principal generator per
//! coordinate); subrings, and every oracle, scan the member set.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{Element, ElementSet, FiniteRing, RingSpec};
use crate::arith::{gcd, lcm};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Principal generators `(g₁,…,g_k)` with `g_i | n_i`, standing for the
/// ideal `(g₁)×…×(g_k)`. `g_i = n_i` is the zero ideal in that coordinate,
/// `g_i = 1` the whole coordinate ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AnnKey(Vec<u64>);

impl AnnKey {
    pub fn gens(&self) -> &[u64] {
        &self.0
    }

    pub(crate) fn of(spec: &RingSpec, x: &Element) -> AnnKey {
        AnnKey(
            x.residues()
                .iter()
                .zip(spec.factors())
                .map(|(&r, &n)| n / gcd(n, r))
                .collect(),
        )
    }

    pub fn is_zero_ideal(&self, spec: &RingSpec) -> bool {
        self.0.iter().zip(spec.factors()).all(|(g, n)| g == n)
    }

    pub fn is_whole_ring(&self) -> bool {
        self.0.iter().all(|&g| g == 1)
    }

    /// Number of elements in the encoded ideal.
    pub fn ideal_order(&self, spec: &RingSpec) -> u64 {
        self.0.iter().zip(spec.factors()).map(|(g, n)| n / g).product()
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.residues().iter().zip(&self.0).all(|(r, g)| r % g == 0)
    }

    /// The ideal as an explicit set.
    pub fn expand(&self, spec: &RingSpec) -> ElementSet {
        let mut out = ElementSet::new();
        let mut digits = vec![0u64; self.0.len()];
        loop {
            out.insert(Element::new(
                digits.iter().zip(&self.0).map(|(d, g)| d * g).collect(),
            ));
            // odometer over multiples
            let mut i = digits.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] * self.0[i] < spec.factors()[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    /// Coordinate-wise intersection: `(g)∩(h) = (lcm(g,h))` in `ℤ_n`.
    pub fn intersect(&self, other: &AnnKey) -> AnnKey {
        AnnKey(self.0.iter().zip(&other.0).map(|(&g, &h)| lcm(g, h)).collect())
    }
}

/// `ann(x)` as a key. Only product rings have one.
pub fn annihilator_key(r: &FiniteRing, x: &Element) -> Result<AnnKey> {
    let spec = r
        .as_product()
        .ok_or(Error::Unsupported("annihilator keys exist only for product rings"))?;
    spec.validate(x)?;
    Ok(AnnKey::of(spec, x))
}

/// `ann(x)` by scanning every member.
pub fn annihilator_set(r: &FiniteRing, x: &Element, caps: &Caps) -> Result<ElementSet> {
    r.check(x)?;
    caps.check_brute(r.order())?;
    let spec = r.spec();
    Ok(r.elements().filter(|s| spec.mul_is_zero(s, x)).collect())
}

/// Does `ann(a) ∩ ann(b)` contain a nonzero element?
pub fn ann_intersection_nonzero(spec: &RingSpec, a: &AnnKey, b: &AnnKey) -> Result<bool> {
    for k in [a, b] {
        if k.0.len() != spec.arity() {
            return Err(Error::Arity {
                expected: spec.arity(),
                found: k.0.len(),
            });
        }
    }
    Ok(a
        .0
        .iter()
        .zip(&b.0)
        .zip(spec.factors())
        .any(|((&g, &h), &n)| lcm(g, h) < n))
}

pub(crate) fn product_is_zero_divisor(spec: &RingSpec, x: &Element) -> bool {
    x.residues()
        .iter()
        .zip(spec.factors())
        .any(|(&r, &n)| gcd(r, n) != 1)
}

/// `x ∈ Z(R)`; zero counts as a zero-divisor.
pub fn is_zero_divisor(r: &FiniteRing, x: &Element) -> Result<bool> {
    r.check(x)?;
    match r {
        FiniteRing::Product(spec) => Ok(product_is_zero_divisor(spec, x)),
        FiniteRing::Subring(_) => {
            let spec = r.spec();
            Ok(x.is_zero() || r.elements().any(|s| !s.is_zero() && spec.mul_is_zero(&s, x)))
        }
    }
}

/// `Z(R)`, including zero.
pub fn zero_divisor_set(r: &FiniteRing, caps: &Caps) -> Result<ElementSet> {
    caps.check_brute(r.order())?;
    match r {
        FiniteRing::Product(spec) => Ok(r
            .elements()
            .filter(|x| product_is_zero_divisor(spec, x))
            .collect()),
        FiniteRing::Subring(_) => {
            let table = MemberTable::new(r, caps)?;
            Ok(table
                .members
                .iter()
                .zip(&table.ann)
                .filter(|(x, ann)| x.is_zero() || ann.count_ones(..) > 1)
                .map(|(x, _)| x.clone())
                .collect())
        }
    }
}

/// First pair `x, y ∈ Z(R)` (lexicographic) with `x + y ∉ Z(R)`, if any.
pub fn zero_divisors_sum_witness(
    r: &FiniteRing,
    caps: &Caps,
) -> Result<Option<(Element, Element)>> {
    let z: Vec<Element> = zero_divisor_set(r, caps)?.into_iter().collect();
    let spec = r.spec();
    let in_z: Box<dyn Fn(&Element) -> bool> = match r {
        FiniteRing::Product(spec) => Box::new(move |x| product_is_zero_divisor(spec, x)),
        FiniteRing::Subring(_) => {
            let set: ElementSet = z.iter().cloned().collect();
            Box::new(move |x| set.contains(x))
        }
    };
    for (i, x) in z.iter().enumerate() {
        for y in &z[i..] {
            if !in_z(&spec.add_raw(x, y)) {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    if r.order() <= 64 {
        // Z(R)·R ⊆ Z(R) holds in any commutative ring
        debug_assert!(z
            .iter()
            .all(|x| r.elements().all(|s| in_z(&spec.mul_raw(x, &s)))));
    }
    Ok(None)
}

/// `Z(R)` is an ideal iff it is closed under addition.
pub fn is_zero_divisors_ideal(r: &FiniteRing, caps: &Caps) -> Result<bool> {
    Ok(zero_divisors_sum_witness(r, caps)?.is_none())
}

/// `{r ∈ R : r·z = 0 for all z ∈ Z(R)}`.
pub fn common_annihilator_of_z(r: &FiniteRing, caps: &Caps) -> Result<ElementSet> {
    caps.check_brute(r.order())?;
    match r {
        FiniteRing::Product(spec) => {
            let whole = AnnKey(vec![1; spec.arity()]);
            let key = r
                .elements()
                .filter(|x| product_is_zero_divisor(spec, x))
                .fold(whole, |acc, x| acc.intersect(&AnnKey::of(spec, &x)));
            Ok(key.expand(spec))
        }
        FiniteRing::Subring(_) => {
            let z = zero_divisor_set(r, caps)?;
            let spec = r.spec();
            Ok(r
                .elements()
                .filter(|s| z.iter().all(|x| spec.mul_is_zero(s, x)))
                .collect())
        }
    }
}

/// `Nil(R)`, including zero. Product rings use `rad(n_i) | x_i` in every
/// coordinate; subrings inherit nilpotency from the ambient ring.
pub fn nilpotent_set(r: &FiniteRing, caps: &Caps) -> Result<ElementSet> {
    caps.check_brute(r.order())?;
    let spec = r.spec();
    let rads: Vec<u64> = spec.factorizations().iter().map(|f| f.radical()).collect();
    Ok(r
        .elements()
        .filter(|x| x.residues().iter().zip(&rads).all(|(a, rad)| a % rad == 0))
        .collect())
}

/// `Nil(R)` by repeated multiplication.
pub fn nilpotent_set_brute(r: &FiniteRing, caps: &Caps) -> Result<ElementSet> {
    caps.check_brute(r.order())?;
    let spec = r.spec();
    // nilpotency index never exceeds log2 of the order
    let steps = 64 - r.order().leading_zeros() + 1;
    Ok(r
        .elements()
        .filter(|x| {
            let mut p = x.clone();
            for _ in 0..steps {
                if p.is_zero() {
                    return true;
                }
                p = spec.mul_raw(&p, x);
            }
            p.is_zero()
        })
        .collect())
}

/// Distinct `x, y ∈ Z*(R)` with `ann(x) ∩ ann(y) = {0}` and
/// `ann(x) + ann(y) = R`, i.e. `R = ann(x) ⊕ ann(y)` internally.
pub fn has_ann_direct_sum_decomposition(
    r: &FiniteRing,
    caps: &Caps,
) -> Result<Option<(Element, Element)>> {
    let classes = raw_classes(r, caps, false)?;
    let spec = r.spec();
    let sets: Vec<ElementSet> = match r {
        FiniteRing::Product(_) => classes
            .iter()
            .map(|c| match &c.sig {
                AnnSig::Key(k) => k.expand(spec),
                AnnSig::Set(_) => unreachable!("product classes carry keys"),
            })
            .collect(),
        FiniteRing::Subring(_) => classes
            .iter()
            .map(|c| annihilator_set(r, &c.rep, caps))
            .collect::<Result<_>>()?,
    };
    // x ∼ y gives ann(x) ∩ ann(y) = ann(x) ≠ {0}, so only distinct
    // classes can qualify. For subgroups |A + B| = |A|·|B| / |A ∩ B|.
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let inter = sets[i].intersection(&sets[j]);
            if inter.len() == 1 && (sets[i].len() as u64) * (sets[j].len() as u64) == r.order()
            {
                return Ok(Some((classes[i].rep.clone(), classes[j].rep.clone())));
            }
        }
    }
    Ok(None)
}

/// Annihilator of a member, either as a key or as a bitset over member
/// positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum AnnSig {
    Key(AnnKey),
    Set(FixedBitSet),
}

#[derive(Clone, Debug)]
pub(crate) struct RawClass {
    pub rep: Element,
    pub sig: AnnSig,
    pub members: Vec<Element>,
}

/// Members with their annihilators as bitsets over member positions.
pub(crate) struct MemberTable {
    pub members: Vec<Element>,
    pub ann: Vec<FixedBitSet>,
}

impl MemberTable {
    pub fn new(r: &FiniteRing, caps: &Caps) -> Result<Self> {
        let members = r.members(caps)?;
        let spec = r.spec();
        let n = members.len();
        let ann = members
            .iter()
            .map(|x| {
                let mut bits = FixedBitSet::with_capacity(n);
                for (j, s) in members.iter().enumerate() {
                    if spec.mul_is_zero(s, x) {
                        bits.insert(j);
                    }
                }
                bits
            })
            .collect();
        Ok(MemberTable { members, ann })
    }
}

/// Partition `Z*(R)` minus the class of zero by annihilator, sorted by
/// representative (the lexicographic minimum of each class). With
/// `force_oracle` product rings use explicit sets instead of keys.
pub(crate) fn raw_classes(r: &FiniteRing, caps: &Caps, force_oracle: bool) -> Result<Vec<RawClass>> {
    caps.check_brute(r.order())?;
    let mut groups: BTreeMap<AnnSig, (Element, Vec<Element>)> = BTreeMap::new();
    match r {
        FiniteRing::Product(spec) if !force_oracle => {
            for x in r.elements() {
                let key = AnnKey::of(spec, &x);
                if key.is_whole_ring() || key.is_zero_ideal(spec) {
                    continue;
                }
                groups
                    .entry(AnnSig::Key(key))
                    .or_insert_with(|| (x.clone(), Vec::new()))
                    .1
                    .push(x);
            }
        }
        _ => {
            let table = MemberTable::new(r, caps)?;
            let zero_pos = table
                .members
                .iter()
                .position(Element::is_zero)
                .expect("every ring contains zero");
            let zero_ann = &table.ann[zero_pos];
            for (x, ann) in table.members.into_iter().zip(table.ann.iter()) {
                if ann == zero_ann || ann.count_ones(..) <= 1 {
                    continue;
                }
                groups
                    .entry(AnnSig::Set(ann.clone()))
                    .or_insert_with(|| (x.clone(), Vec::new()))
                    .1
                    .push(x);
            }
        }
    }
    let mut classes: Vec<RawClass> = groups
        .into_iter()
        .map(|(sig, (rep, members))| RawClass { rep, sig, members })
        .collect();
    classes.sort_by(|a, b| a.rep.cmp(&b.rep));
    Ok(classes)
}

/// Intersection test between two raw classes of the same ring.
pub(crate) fn sig_intersection_nonzero(spec: &RingSpec, a: &AnnSig, b: &AnnSig) -> bool {
    match (a, b) {
        (AnnSig::Key(a), AnnSig::Key(b)) => {
            ann_intersection_nonzero(spec, a, b).expect("keys of one ring")
        }
        // position 0 is always the zero element (lexicographic minimum)
        (AnnSig::Set(a), AnnSig::Set(b)) => a.intersection(b).any(|i| i != 0),
        _ => unreachable!("classes of one ring share a signature kind"),
    }
}
