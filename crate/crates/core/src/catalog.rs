//! The reduced posets on the base `{1,2,3}` that generate the chain of
//! quasivarieties above `Pa₂`, and hand-built maps between them.
//!
//! Element order follows [`ReducedPoset`]: 0 is the base, 1..=3 the
//! singletons, then the pairs. In letter notation the singletons are `a`,
//! `b`, `c`, the pairs `{1,2}`, `{1,3}`, `{2,3}` (in that order when present)
//! come next, and the base is the last letter.

use alloc::vec::Vec;

use crate::morphism::PpMorphism;
use crate::quasivar::{make_reduced, ReducedPoset};
use crate::set::ElemSet;

fn pair(a: usize, b: usize) -> ElemSet {
    let mut s = ElemSet::singleton(a);
    s.insert(b);
    s
}

fn build(family: &[ElemSet]) -> ReducedPoset {
    make_reduced(3, family).expect("catalog families are valid")
}

/// One pair: `{1,2}`.
pub fn one_pair() -> ReducedPoset {
    build(&[pair(0, 1)])
}

/// Two pairs: `{1,2}` and `{2,3}`.
pub fn two_pairs() -> ReducedPoset {
    build(&[pair(0, 1), pair(1, 2)])
}

/// All three pairs.
pub fn three_pairs() -> ReducedPoset {
    build(&[pair(0, 1), pair(0, 2), pair(1, 2)])
}

/// Letter names in element order.
pub fn letters(p: &ReducedPoset) -> Vec<char> {
    let n = p.realized().len();
    let mut out: Vec<char> = Vec::with_capacity(n);
    out.push((b'a' + (n - 1) as u8) as char);
    out.extend((0..n - 1).map(|i| (b'a' + i as u8) as char));
    out
}

/// Two copies of [`one_pair`] jointly mapping onto [`two_pairs`].
pub fn one_pair_onto_two_pairs() -> [PpMorphism; 2] {
    [PpMorphism::new([0, 1, 2, 3, 4].to_vec()), PpMorphism::new([0, 3, 2, 1, 5].to_vec())]
}

/// Two copies of [`two_pairs`] jointly mapping onto [`three_pairs`].
pub fn two_pairs_onto_three_pairs() -> [PpMorphism; 2] {
    [PpMorphism::new([0, 2, 1, 3, 4, 5].to_vec()), PpMorphism::new([0, 1, 3, 2, 5, 6].to_vec())]
}

/// Monotone map [`two_pairs`] to [`one_pair`] folding both pairs together;
/// maxima preservation fails at the pair `{2,3}` (element 5).
pub fn failed_fold_two_to_one() -> PpMorphism {
    PpMorphism::new([0, 1, 2, 3, 4, 4].to_vec())
}

/// Map [`three_pairs`] to [`two_pairs`] swapping `a` and `b` and sending
/// `{1,2}` and `{2,3}` to the same pair; maxima preservation fails at
/// `{2,3}` (element 6).
pub fn failed_fold_three_to_two() -> PpMorphism {
    PpMorphism::new([0, 2, 1, 3, 4, 5, 4].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::PpFailure;

    #[test]
    fn sizes_and_letters() {
        assert_eq!(one_pair().realized().len(), 5);
        assert_eq!(two_pairs().realized().len(), 6);
        assert_eq!(three_pairs().realized().len(), 7);
        assert_eq!(letters(&three_pairs()), ['g', 'a', 'b', 'c', 'd', 'e', 'f']);
    }

    #[test]
    fn hand_built_maps() {
        let (p, q, r) = (one_pair(), two_pairs(), three_pairs());
        let mut image = ElemSet::EMPTY;
        for h in one_pair_onto_two_pairs() {
            h.check(p.realized(), q.realized()).unwrap();
            image = image.union(h.image());
        }
        assert_eq!(image, q.realized().all());
        let mut image = ElemSet::EMPTY;
        for h in two_pairs_onto_three_pairs() {
            h.check(q.realized(), r.realized()).unwrap();
            image = image.union(h.image());
        }
        assert_eq!(image, r.realized().all());
        assert_eq!(
            failed_fold_two_to_one().check(q.realized(), p.realized()),
            Err(PpFailure::MaximaPreservation { x: 5 })
        );
        assert_eq!(
            failed_fold_three_to_two().check(r.realized(), q.realized()),
            Err(PpFailure::MaximaPreservation { x: 6 })
        );
    }
}
