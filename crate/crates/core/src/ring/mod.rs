//! Finite commutative rings: products `ℤ_{n₁}×…×ℤ_{n_k}` and element-set
//! subrings of them.

pub(crate) mod ann;
mod subring;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::arith::Factorization;
use crate::caps::Caps;
use crate::error::{Error, Result};

pub use ann::{
    ann_intersection_nonzero, annihilator_key, annihilator_set, common_annihilator_of_z,
    has_ann_direct_sum_decomposition, is_zero_divisor, is_zero_divisors_ideal, nilpotent_set,
    nilpotent_set_brute, zero_divisor_set, zero_divisors_sum_witness, AnnKey,
};
pub use subring::{check_subring_closure, subring_generated};

/// A residue tuple, one coordinate per factor of the ambient product ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn new(residues: Vec<u64>) -> Self {
        Element(residues)
    }

    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }

    /// Vertex label: bare decimal for single-factor rings, tuple otherwise.
    pub fn label(&self) -> String {
        match self.0.as_slice() {
            [r] => r.to_string(),
            _ => self.to_string(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Element {
    type Err = Error;

    /// Accepts `(2,0)`, `(5)` or a bare `5`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = match t.strip_prefix('(') {
            Some(rest) => rest.strip_suffix(')').ok_or_else(|| Error::Spec {
                token: text.to_string(),
                reason: "unbalanced parenthesis".into(),
            })?,
            None => t,
        };
        inner
            .split(',')
            .map(|tok| {
                tok.trim().parse::<u64>().map_err(|_| Error::Spec {
                    token: tok.to_string(),
                    reason: "expected a non-negative integer residue".into(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Element)
    }
}

/// A set of elements of one ring, iterated in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ElementSet(BTreeSet<Element>);

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.0.contains(x)
    }

    pub fn insert(&mut self, x: Element) -> bool {
        self.0.insert(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.0.iter()
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.intersection(&other.0).cloned().collect())
    }

    /// `true` when the set is `{0}` (or empty).
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(Element::is_zero)
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        ElementSet(iter.into_iter().collect())
    }
}

impl IntoIterator for ElementSet {
    type Item = Element;
    type IntoIter = std::collections::btree_set::IntoIter<Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a Element;
    type IntoIter = std::collections::btree_set::Iter<'a, Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// The ring `ℤ_{n₁}×…×ℤ_{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    factors: Vec<u64>,
    factorizations: Vec<Factorization>,
    order: u64,
}

impl RingSpec {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Spec {
                token: String::new(),
                reason: "a ring needs at least one factor".into(),
            });
        }
        let mut order = 1u64;
        for &n in &factors {
            if n < 2 {
                return Err(Error::Spec {
                    token: format!("Z{n}"),
                    reason: "modulus must be at least 2".into(),
                });
            }
            order = order.checked_mul(n).ok_or_else(|| Error::Spec {
                token: format!("Z{n}"),
                reason: "ring order overflows u64".into(),
            })?;
        }
        let factorizations = factors.iter().map(|&n| Factorization::of(n)).collect();
        Ok(RingSpec {
            factors,
            factorizations,
            order,
        })
    }

    /// Parse `Z<n>(xZ<n>)*`, e.g. `Z12`, `Z4xZ4`, `z2xZ3xZ5`.
    pub fn parse(text: &str, caps: &Caps) -> Result<Self> {
        let mut factors = Vec::new();
        let mut order = 1u64;
        for tok in text.split('x') {
            let bad = |reason: &str| Error::Spec {
                token: tok.to_string(),
                reason: reason.to_string(),
            };
            let digits = tok
                .strip_prefix('Z')
                .or_else(|| tok.strip_prefix('z'))
                .ok_or_else(|| bad("expected `Z<n>`"))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected decimal modulus after `Z`"));
            }
            let n: u64 = digits.parse().map_err(|_| bad("modulus does not fit u64"))?;
            if n < 2 {
                return Err(bad("modulus must be at least 2"));
            }
            order = order
                .checked_mul(n)
                .filter(|&o| o <= caps.ring_order)
                .ok_or_else(|| bad(&format!("ring order exceeds cap {}", caps.ring_order)))?;
            factors.push(n);
        }
        RingSpec::new(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn factorizations(&self) -> &[Factorization] {
        &self.factorizations
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.arity()])
    }

    pub fn one(&self) -> Element {
        Element(vec![1; self.arity()])
    }

    pub fn element(&self, residues: Vec<u64>) -> Result<Element> {
        let x = Element(residues);
        self.validate(&x)?;
        Ok(x)
    }

    pub fn validate(&self, x: &Element) -> Result<()> {
        if x.arity() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                found: x.arity(),
            });
        }
        for (&r, &n) in x.0.iter().zip(&self.factors) {
            if r >= n {
                return Err(Error::Residue {
                    residue: r,
                    modulus: n,
                });
            }
        }
        Ok(())
    }

    /// Mixed-radix position, first coordinate most significant, so index
    /// order equals lexicographic order.
    pub fn index_of(&self, x: &Element) -> u64 {
        x.0.iter()
            .zip(&self.factors)
            .fold(0, |acc, (&r, &n)| acc * n + r)
    }

    pub fn element_at(&self, mut idx: u64) -> Element {
        let mut res = vec![0; self.arity()];
        for (slot, &n) in res.iter_mut().zip(&self.factors).rev() {
            *slot = idx % n;
            idx /= n;
        }
        Element(res)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub(crate) fn add_raw(&self, x: &Element, y: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        )
    }

    pub(crate) fn mul_raw(&self, x: &Element, y: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| mulmod(a, b, n))
                .collect(),
        )
    }

    pub(crate) fn neg_raw(&self, x: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&self.factors)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        )
    }

    pub(crate) fn mul_is_zero(&self, x: &Element, y: &Element) -> bool {
        x.0.iter()
            .zip(&y.0)
            .zip(&self.factors)
            .all(|((&a, &b), &n)| mulmod(a, b, n) == 0)
    }

    /// Some factor is a non-field, i.e. has a nonzero zero-divisor.
    pub fn has_composite_factor(&self) -> bool {
        self.factorizations.iter().any(|f| f.big_omega() > 1)
    }

    pub fn all_factors_prime(&self) -> bool {
        self.factorizations.iter().all(|f| f.big_omega() == 1)
    }
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

/// Element-set subring of a finite ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subring {
    parent: Box<FiniteRing>,
    members: Vec<Element>,
    index: FixedBitSet,
    has_one: bool,
}

impl Subring {
    pub fn parent(&self) -> &FiniteRing {
        &self.parent
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn has_one(&self) -> bool {
        self.has_one
    }
}

/// A finite commutative ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteRing {
    Product(RingSpec),
    Subring(Subring),
}

impl From<RingSpec> for FiniteRing {
    fn from(spec: RingSpec) -> Self {
        FiniteRing::Product(spec)
    }
}

impl FiniteRing {
    pub fn parse(text: &str, caps: &Caps) -> Result<Self> {
        RingSpec::parse(text, caps).map(FiniteRing::Product)
    }

    /// Build a subring from an explicit member set. The set must lie in
    /// `parent`, contain zero, and be closed under `+`, `×` and negation.
    pub fn subring(parent: &FiniteRing, members: ElementSet) -> Result<Self> {
        let spec = parent.spec();
        let mut index = FixedBitSet::with_capacity(spec.order() as usize);
        for x in &members {
            if !parent.contains(x) {
                return Err(Error::NotMember(x.to_string()));
            }
            index.insert(spec.index_of(x) as usize);
        }
        let one = spec.one();
        let has_one = parent.contains(&one) && members.contains(&one);
        let sub = Subring {
            parent: Box::new(parent.clone()),
            members: members.into_iter().collect(),
            index,
            has_one,
        };
        check_subring_closure(&sub)?;
        Ok(FiniteRing::Subring(sub))
    }

    /// The ambient product ring every element lives in.
    pub fn spec(&self) -> &RingSpec {
        match self {
            FiniteRing::Product(s) => s,
            FiniteRing::Subring(s) => s.parent.spec(),
        }
    }

    pub fn as_product(&self) -> Option<&RingSpec> {
        match self {
            FiniteRing::Product(s) => Some(s),
            FiniteRing::Subring(_) => None,
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            FiniteRing::Product(s) => s.order(),
            FiniteRing::Subring(s) => s.members.len() as u64,
        }
    }

    pub fn zero(&self) -> Element {
        self.spec().zero()
    }

    /// The identity, when the ring has the ambient one.
    pub fn one(&self) -> Option<Element> {
        match self {
            FiniteRing::Product(s) => Some(s.one()),
            FiniteRing::Subring(s) => s.has_one.then(|| s.parent.spec().one()),
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        match self {
            FiniteRing::Product(s) => s.validate(x).is_ok(),
            FiniteRing::Subring(s) => {
                s.parent.spec().validate(x).is_ok()
                    && s.index.contains(s.parent.spec().index_of(x) as usize)
            }
        }
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        self.spec().validate(x)?;
        if !self.contains(x) {
            return Err(Error::NotMember(x.to_string()));
        }
        Ok(())
    }

    /// Members in lexicographic order. Callers enforce the enumeration cap.
    pub fn elements(&self) -> Box<dyn Iterator<Item = Element> + '_> {
        match self {
            FiniteRing::Product(s) => Box::new(s.elements()),
            FiniteRing::Subring(s) => Box::new(s.members.iter().cloned()),
        }
    }

    /// Members as a vector, subject to the brute-force cap.
    pub fn members(&self, caps: &Caps) -> Result<Vec<Element>> {
        caps.check_brute(self.order())?;
        Ok(self.elements().collect())
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.spec().add_raw(x, y))
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.spec().mul_raw(x, y))
    }

    pub fn neg(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.spec().neg_raw(x))
    }

    /// Stable identifier: `Z4xZ4`, or `Z4xZ4[8 of 16]` for a subring.
    pub fn name(&self) -> String {
        match self {
            FiniteRing::Product(s) => s.to_string(),
            FiniteRing::Subring(s) => {
                format!("{}[{} of {}]", s.parent.name(), s.members.len(), s.parent.order())
            }
        }
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(RingSpec::parse("Z12", &caps()).unwrap().factors(), &[12]);
        let r = RingSpec::parse("Z4xZ4", &caps()).unwrap();
        assert_eq!(r.factors(), &[4, 4]);
        assert_eq!(r.order(), 16);
        assert_eq!(
            RingSpec::parse("z2xZ3xZ5", &caps()).unwrap().factors(),
            &[2, 3, 5]
        );
    }

    #[test]
    fn parse_rejects_bad_input() {
        let err = RingSpec::parse("Z1", &caps()).unwrap_err();
        assert!(matches!(&err, Error::Spec { token, .. } if token == "Z1"), "{err}");
        for bad in ["", "Z", "Z4x", "Z4X Z4", "Q7", "Z-3", "Z4xZ0", "Z4*Z4", " Z4"] {
            assert!(RingSpec::parse(bad, &caps()).is_err(), "{bad:?} accepted");
        }
        let small = Caps {
            ring_order: 100,
            ..Caps::default()
        };
        let err = RingSpec::parse("Z10xZ11", &small).unwrap_err();
        assert!(matches!(&err, Error::Spec { token, .. } if token == "Z11"), "{err}");
    }

    #[test]
    fn arithmetic_examples() {
        let z12 = FiniteRing::parse("Z12", &caps()).unwrap();
        let e = |v: u64| Element::new(vec![v]);
        assert_eq!(z12.mul(&e(4), &e(6)).unwrap(), e(0));
        let z6 = FiniteRing::parse("Z6", &caps()).unwrap();
        assert_eq!(z6.add(&e(4), &e(5)).unwrap(), e(3));
        let z44 = FiniteRing::parse("Z4xZ4", &caps()).unwrap();
        let x = Element::new(vec![2, 3]);
        let y = Element::new(vec![3, 2]);
        assert_eq!(z44.add(&x, &y).unwrap(), Element::new(vec![1, 1]));
        assert_eq!(z44.neg(&x).unwrap(), Element::new(vec![2, 1]));
    }

    #[test]
    fn arithmetic_errors() {
        let z44 = FiniteRing::parse("Z4xZ4", &caps()).unwrap();
        let short = Element::new(vec![1]);
        assert!(matches!(
            z44.add(&short, &short),
            Err(Error::Arity { expected: 2, found: 1 })
        ));
        assert!(matches!(
            z44.mul(&Element::new(vec![4, 0]), &z44.zero()),
            Err(Error::Residue { residue: 4, modulus: 4 })
        ));
    }

    #[test]
    fn index_order_is_lexicographic() {
        let r = RingSpec::new(vec![3, 4, 2]).unwrap();
        let all: Vec<Element> = r.elements().collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in all.iter().enumerate() {
            assert_eq!(r.index_of(x), i as u64);
        }
    }

    #[test]
    fn element_text_forms() {
        let x: Element = "(2,0)".parse().unwrap();
        assert_eq!(x, Element::new(vec![2, 0]));
        assert_eq!(x.to_string(), "(2,0)");
        assert_eq!("7".parse::<Element>().unwrap().label(), "7");
        assert_eq!(x.label(), "(2,0)");
        assert!("(2,".parse::<Element>().is_err());
        assert!("(a)".parse::<Element>().is_err());
    }

    #[test]
    fn subring_membership_is_enforced() {
        let z44 = FiniteRing::parse("Z4xZ4", &caps()).unwrap();
        let members: ElementSet = z44
            .elements()
            .filter(|x| x.residues()[0] % 2 == x.residues()[1] % 2)
            .collect();
        let s = FiniteRing::subring(&z44, members).unwrap();
        assert_eq!(s.order(), 8);
        assert_eq!(s.one(), Some(Element::new(vec![1, 1])));
        let outside = Element::new(vec![1, 0]);
        assert!(matches!(s.mul(&outside, &outside), Err(Error::NotMember(_))));
        assert_eq!(s.name(), "Z4xZ4[8 of 16]");

        let not_closed: ElementSet = [Element::new(vec![0, 0]), Element::new(vec![1, 0])]
            .into_iter()
            .collect();
        assert!(FiniteRing::subring(&z44, not_closed).is_err());
    }
}
