use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::{Element, ElementSet, FiniteRing, Subring};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Least subset of `r` containing `gens` (and the identity when
/// `include_one`) that holds zero and is closed under `+`, `×` and negation.
pub fn subring_generated(
    r: &FiniteRing,
    gens: &ElementSet,
    include_one: bool,
    caps: &Caps,
) -> Result<FiniteRing> {
    caps.check_brute(r.order())?;
    let spec = r.spec();
    let mut seen = FixedBitSet::with_capacity(spec.order() as usize);
    let mut members: Vec<Element> = Vec::new();
    let mut queue: VecDeque<Element> = VecDeque::new();

    let push = |x: Element, seen: &mut FixedBitSet, queue: &mut VecDeque<Element>| {
        let i = spec.index_of(&x) as usize;
        if !seen.put(i) {
            queue.push_back(x);
        }
    };

    push(spec.zero(), &mut seen, &mut queue);
    for g in gens {
        r.check(g)?;
        push(g.clone(), &mut seen, &mut queue);
    }
    if include_one {
        let one = r
            .one()
            .ok_or(Error::Unsupported("ring has no identity to include"))?;
        push(one, &mut seen, &mut queue);
    }

    // each new element is combined once with everything already present
    while let Some(x) = queue.pop_front() {
        push(spec.neg_raw(&x), &mut seen, &mut queue);
        push(spec.mul_raw(&x, &x), &mut seen, &mut queue);
        push(spec.add_raw(&x, &x), &mut seen, &mut queue);
        for m in &members {
            push(spec.add_raw(&x, m), &mut seen, &mut queue);
            push(spec.mul_raw(&x, m), &mut seen, &mut queue);
        }
        members.push(x);
    }

    FiniteRing::subring(r, members.into_iter().collect())
}

/// Verify the subring invariants: zero present, members inside the parent,
/// closure under `+`, `×` and negation.
pub fn check_subring_closure(s: &Subring) -> Result<()> {
    let parent = s.parent();
    let spec = parent.spec();
    let has = |x: &Element| s.index.contains(spec.index_of(x) as usize);
    let fail = |what: &str, x: &Element| Error::Config(format!("subring not closed: {what} {x}"));

    if !has(&spec.zero()) {
        return Err(Error::Config("subring does not contain zero".into()));
    }
    for x in &s.members {
        if !parent.contains(x) {
            return Err(Error::NotMember(x.to_string()));
        }
        let neg = spec.neg_raw(x);
        if !has(&neg) {
            return Err(fail("negation", &neg));
        }
    }
    for (i, x) in s.members.iter().enumerate() {
        for y in &s.members[i..] {
            let sum = spec.add_raw(x, y);
            if !has(&sum) {
                return Err(fail("sum", &sum));
            }
            let prod = spec.mul_raw(x, y);
            if !has(&prod) {
                return Err(fail("product", &prod));
            }
        }
    }
    Ok(())
}
