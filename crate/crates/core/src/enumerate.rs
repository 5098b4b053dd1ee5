//! Unlabelled posets up to isomorphism.
//!
//! Every poset on `k + 1` points arises from one on `k` points by adding a
//! new maximal element above some down-set, so sizes are grown one level at
//! a time and deduplicated by canonical form.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::BudgetExceeded;
use crate::iso::{canonical_form, CanonicalForm};
use crate::poset::Poset;
use crate::set::ElemSet;

/// Default largest size accepted by [`enumerate_posets`].
pub const DEFAULT_ENUM_BOUND: usize = 6;

/// All posets of size `0..=n_max`, one per isomorphism class, ordered by size
/// and then by canonical form.
pub fn enumerate_posets(n_max: usize) -> Result<Vec<Poset>, BudgetExceeded> {
    enumerate_posets_bounded(n_max, DEFAULT_ENUM_BOUND)
}

pub fn enumerate_posets_bounded(n_max: usize, bound: usize) -> Result<Vec<Poset>, BudgetExceeded> {
    if n_max > bound {
        return Err(BudgetExceeded {
            what: "poset enumeration size",
            requested: n_max as u64,
            limit: bound as u64,
        });
    }
    let mut out = Vec::new();
    for level in Levels::new().take(n_max + 1) {
        out.extend(level.iter().map(CanonicalForm::to_poset));
    }
    Ok(out)
}

/// Iterator over the levels `0, 1, 2, ..` of canonical forms.
#[derive(Debug)]
pub struct Levels {
    current: Option<BTreeSet<CanonicalForm>>,
}

impl Levels {
    pub fn new() -> Self {
        Levels { current: None }
    }
}

impl Default for Levels {
    fn default() -> Self {
        Levels::new()
    }
}

impl Iterator for Levels {
    type Item = BTreeSet<CanonicalForm>;

    fn next(&mut self) -> Option<Self::Item> {
        let next = match &self.current {
            None => {
                let mut s = BTreeSet::new();
                s.insert(canonical_form(&Poset::empty()));
                s
            }
            Some(prev) => {
                let mut s = BTreeSet::new();
                for form in prev {
                    let p = form.to_poset();
                    for below in downsets(&p) {
                        s.insert(canonical_form(&p.extended_above(below)));
                    }
                }
                s
            }
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// Every down-set of `p`, including the empty one, in ascending bit order.
pub fn downsets(p: &Poset) -> Vec<ElemSet> {
    // Decide elements along a linear extension (ascending down-set size), so
    // an element may join only once everything strictly below it has.
    let mut order: Vec<usize> = p.elements().collect();
    order.sort_by_key(|&x| (p.down(x).len(), x));
    let mut out = Vec::new();
    let mut stack = alloc::vec![(ElemSet::EMPTY, 0usize)];
    while let Some((set, depth)) = stack.pop() {
        if depth == order.len() {
            out.push(set);
            continue;
        }
        let x = order[depth];
        stack.push((set, depth + 1));
        let mut strictly_below = p.down(x);
        strictly_below.remove(x);
        if strictly_below.is_subset(set) {
            let mut with = set;
            with.insert(x);
            stack.push((with, depth + 1));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_posets(1).unwrap().len(), 2);
        let two = enumerate_posets(2).unwrap();
        assert_eq!(two.len(), 4);
        assert!(enumerate_posets(7).is_err());
    }

    #[test]
    fn downsets_of_bm() {
        assert_eq!(downsets(&Poset::bm(2)).len(), 5);
        assert_eq!(downsets(&Poset::antichain(3)).len(), 8);
        assert_eq!(downsets(&Poset::chain(3)).len(), 4);
        assert_eq!(downsets(&Poset::empty()).len(), 1);
    }
}
