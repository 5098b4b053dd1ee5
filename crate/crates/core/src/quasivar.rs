//! Quasivariety-level decisions.
//!
//! Everything is phrased on dual posets: `ε(x)` lies in the quasivariety
//! generated by `ε(g₁), .., ε(gₖ)` iff every point of `x` lies in the image of
//! some pp-morphism from some `gᵢ`. The subquasivarieties `Paₘ` are generated
//! by `ε(Bₘ)`, where `Bₘ` is a bottom under `m` maxima.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::QuasivarError;
use crate::morphism::{cover_from_sources, covered_points, exists_surjective_pp, PpMorphism};
use crate::poset::Poset;
use crate::set::ElemSet;
use crate::MAX_ELEMENTS;

/// `true` iff `ε(x) ∈ Paₘ`: no element has more than `m` maxima above it.
pub fn in_pa_m(x: &Poset, m: usize) -> bool {
    x.elements().all(|e| x.max_set(e).len() <= m)
}

/// A surjective pp-morphism `x ->> Bₘ`, present iff `Paₘ ⊆ Q(ε(x))`.
pub fn contains_pa_m(x: &Poset, m: usize) -> Option<PpMorphism> {
    if m >= MAX_ELEMENTS {
        return None;
    }
    exists_surjective_pp(x, &Poset::bm(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NonMember,
}

/// Outcome of [`member`], re-checkable without trusting the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    /// Generator index and pp-morphism from that generator; the images cover
    /// the target. Empty for non-members.
    pub witnesses: Vec<(usize, PpMorphism)>,
    /// A target point outside the image of every pp-morphism from every
    /// generator. `None` for members.
    pub blocker: Option<usize>,
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    /// Re-checks a member certificate: every witness is a pp-morphism from
    /// its generator and the images cover `x`. A non-member certificate is
    /// re-checked by recomputing coverage for the blocker.
    pub fn recheck(&self, x: &Poset, gens: &[Poset]) -> bool {
        match self.verdict {
            Verdict::Member => {
                let mut covered = ElemSet::EMPTY;
                for (g, h) in &self.witnesses {
                    let Some(gen) = gens.get(*g) else { return false };
                    if h.check(gen, x).is_err() {
                        return false;
                    }
                    covered = covered.union(h.image());
                }
                covered == x.all()
            }
            Verdict::NonMember => match self.blocker {
                Some(b) if b < x.len() => gens.iter().all(|g| !covered_points(g, x).covered.contains(b)),
                _ => false,
            },
        }
    }
}

/// Decides `ε(x) ∈ Q(ε(g) : g ∈ gens)`. A member certificate uses as few
/// morphisms as the image budget allows; a non-member certificate names the
/// least uncovered point.
pub fn member(x: &Poset, gens: &[Poset]) -> MembershipCertificate {
    let sources: Vec<&Poset> = gens.iter().collect();
    match cover_from_sources(&sources, x) {
        Ok(witnesses) => MembershipCertificate { verdict: Verdict::Member, witnesses, blocker: None },
        Err(uncovered) => MembershipCertificate {
            verdict: Verdict::NonMember,
            witnesses: Vec::new(),
            blocker: uncovered.first(),
        },
    }
}

/// Coverage alone, without building a small certificate.
pub fn is_member(x: &Poset, gens: &[Poset]) -> bool {
    let mut covered = ElemSet::EMPTY;
    for g in gens {
        covered = covered.union(covered_points(g, x).covered);
        if covered == x.all() {
            return true;
        }
    }
    covered == x.all()
}

/// `Q(ε(p)) ⊆ Q(ε(q))`.
pub fn quasivariety_leq(p: &Poset, q: &Poset) -> bool {
    is_member(p, core::slice::from_ref(q))
}

/// The reduction of a poset: its distinct max-sets under reverse inclusion.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub poset: Poset,
    /// Sends each source element to the element for its max-set.
    pub map: PpMorphism,
    /// Max-set (as source elements) behind each element of `poset`.
    pub maxsets: Vec<ElemSet>,
}

/// Elements are ordered by decreasing max-set size, then by bit pattern, and
/// labelled with the names of the maxima they stand for.
pub fn reduction(p: &Poset) -> Reduction {
    let mut maxsets: Vec<ElemSet> = p.elements().map(|x| p.max_set(x)).collect();
    maxsets.sort_by_key(|s| (core::cmp::Reverse(s.len()), *s));
    maxsets.dedup();
    let pairs = ordered_by_reverse_inclusion(&maxsets);
    let mut poset = Poset::from_le_pairs(maxsets.len(), &pairs).expect("reverse inclusion is a partial order");
    for (i, s) in maxsets.iter().enumerate() {
        let names: Vec<String> = s.iter().map(|x| p.display_name(x)).collect();
        poset.set_label(i, format!("{{{}}}", names.join(",")));
    }
    let map = p
        .elements()
        .map(|x| maxsets.iter().position(|&s| s == p.max_set(x)).expect("every max-set is listed"))
        .collect();
    Reduction { poset, map: PpMorphism::new(map), maxsets }
}

fn ordered_by_reverse_inclusion(carrier: &[ElemSet]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (i, &a) in carrier.iter().enumerate() {
        for (j, &b) in carrier.iter().enumerate() {
            if i != j && b.is_subset(a) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// The reduced poset on base `{0, .., k-1}` with family `F`: the base itself,
/// every singleton and every member of `F`, ordered by reverse inclusion.
///
/// Element 0 is the base, `1..=k` are the singletons, and the remaining
/// family members follow by decreasing size, then bit pattern. Labels use
/// 1-based base names, so element 0 of a 3-base prints as `{1,2,3}`.
#[derive(Clone, Debug)]
pub struct ReducedPoset {
    base_size: usize,
    family: Vec<ElemSet>,
    carrier: Vec<ElemSet>,
    realized: Poset,
}

impl ReducedPoset {
    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn base(&self) -> ElemSet {
        ElemSet::full(self.base_size)
    }

    /// Family members other than the base and singletons.
    pub fn family(&self) -> &[ElemSet] {
        &self.family
    }

    pub fn carrier(&self) -> &[ElemSet] {
        &self.carrier
    }

    pub fn realized(&self) -> &Poset {
        &self.realized
    }

    pub fn into_realized(self) -> Poset {
        self.realized
    }

    pub fn element_of(&self, s: ElemSet) -> Option<usize> {
        self.carrier.iter().position(|&c| c == s)
    }

    /// Element standing for the singleton `{a}`. On a one-point base that
    /// is the base itself.
    pub fn singleton(&self, a: usize) -> usize {
        if self.base_size == 1 {
            0
        } else {
            1 + a
        }
    }
}

/// Builds `P(M, F)` for `M = {0, .., base_size-1}`. Members equal to `M` or a
/// singleton are absorbed; repeated members collapse.
pub fn make_reduced(base_size: usize, family: &[ElemSet]) -> Result<ReducedPoset, QuasivarError> {
    if base_size == 0 {
        return Err(QuasivarError::EmptyBase);
    }
    if base_size >= MAX_ELEMENTS {
        return Err(QuasivarError::BaseTooLarge { size: base_size });
    }
    let base = ElemSet::full(base_size);
    let mut extra = Vec::new();
    for &s in family {
        if s.is_empty() {
            return Err(QuasivarError::EmptyFamilyMember);
        }
        if !s.is_subset(base) {
            return Err(QuasivarError::FamilyMemberOutsideBase);
        }
        if s.len() > 1 && s != base {
            extra.push(s);
        }
    }
    extra.sort_by_key(|s| (core::cmp::Reverse(s.len()), *s));
    extra.dedup();
    let mut carrier = Vec::with_capacity(1 + base_size + extra.len());
    carrier.push(base);
    if base_size > 1 {
        carrier.extend((0..base_size).map(ElemSet::singleton));
    }
    carrier.extend(extra.iter().copied());
    if carrier.len() > MAX_ELEMENTS {
        return Err(QuasivarError::BaseTooLarge { size: base_size });
    }
    let pairs = ordered_by_reverse_inclusion(&carrier);
    let mut realized = Poset::from_le_pairs(carrier.len(), &pairs)?;
    for (i, s) in carrier.iter().enumerate() {
        realized.set_label(i, set_label(*s));
    }
    Ok(ReducedPoset { base_size, family: extra, carrier, realized })
}

/// `{1,3}` for the set of base elements 0 and 2.
pub fn set_label(s: ElemSet) -> String {
    let names: Vec<String> = s.iter().map(|a| format!("{}", a + 1)).collect();
    format!("{{{}}}", names.join(","))
}

/// Quotient of a reduced poset onto a base of exactly `m + 1` elements that
/// still generates a quasivariety containing `Paₘ` and contained in the
/// original one.
///
/// The base is partitioned by where a surjection onto `Bₘ` sends the
/// singletons, then the largest block (earliest on ties) is split by moving
/// its greatest element out, until there are `m + 1` blocks.
pub fn shrink_to_base(p: &ReducedPoset, m: usize) -> Result<ReducedPoset, QuasivarError> {
    if m == 0 {
        return Err(QuasivarError::BadM { m, min: 1 });
    }
    let k = p.base_size();
    if k < m + 1 {
        return Err(QuasivarError::Precondition(format!(
            "base has {k} elements, at least m+1 = {} are needed",
            m + 1
        )));
    }
    let Some(f) = contains_pa_m(p.realized(), m) else {
        return Err(QuasivarError::Precondition(format!(
            "no surjective pp-morphism onto B_{m}, so Pa_{m} is not contained in the quasivariety"
        )));
    };
    let mut fibers: BTreeMap<usize, ElemSet> = BTreeMap::new();
    for a in 0..k {
        fibers.entry(f.apply(p.singleton(a))).or_default().insert(a);
    }
    let mut blocks: Vec<ElemSet> = fibers.into_values().collect();
    blocks.sort();
    blocks.sort_by_key(|b| b.first());
    while blocks.len() < m + 1 {
        let largest = blocks.iter().map(|b| b.len()).max().unwrap_or(0);
        let i = blocks.iter().position(|b| b.len() == largest).expect("some block is largest");
        let top = blocks[i].iter().last().expect("blocks are non-empty");
        blocks[i].remove(top);
        blocks.push(ElemSet::singleton(top));
        blocks.sort_by_key(|b| b.first());
    }
    let mut pi = alloc::vec![0usize; k];
    for (i, b) in blocks.iter().enumerate() {
        for a in b.iter() {
            pi[a] = i;
        }
    }
    let image: Vec<ElemSet> = p.carrier().iter().map(|s| s.iter().map(|a| pi[a]).collect()).collect();
    let result = make_reduced(m + 1, &image)?;
    if contains_pa_m(result.realized(), m).is_none() {
        return Err(QuasivarError::Precondition(format!(
            "quotient lost the surjection onto B_{m}"
        )));
    }
    if !quasivariety_leq(result.realized(), p.realized()) {
        return Err(QuasivarError::Precondition(String::from(
            "quotient does not lie in the original quasivariety",
        )));
    }
    Ok(result)
}

fn check_cover_shape(base_size: usize, m: usize) -> Result<(), QuasivarError> {
    if m < 2 {
        return Err(QuasivarError::BadM { m, min: 2 });
    }
    if base_size != m + 1 {
        return Err(QuasivarError::BaseSize { expected: m + 1, found: base_size });
    }
    Ok(())
}

/// The three sets `{a,b}`, `M-{a}`, `M-{b}` for base `M = {0..base_size-1}`.
pub fn pair_triple(base_size: usize, a: usize, b: usize) -> [ElemSet; 3] {
    let base = ElemSet::full(base_size);
    let mut pair = ElemSet::singleton(a);
    pair.insert(b);
    [pair, base.difference(ElemSet::singleton(a)), base.difference(ElemSet::singleton(b))]
}

/// The lexicographically least pair `a < b` with `F ⊆ {{a,b}, M-{a}, M-{b}}`
/// (after absorbing the base and singletons), if any. Requires `|M| = m+1`
/// and `m >= 2`.
pub fn family_admits_pa_m(
    base_size: usize,
    family: &[ElemSet],
    m: usize,
) -> Result<Option<(usize, usize)>, QuasivarError> {
    check_cover_shape(base_size, m)?;
    let reduced = make_reduced(base_size, family)?;
    Ok(admitting_pair(&reduced))
}

fn admitting_pair(p: &ReducedPoset) -> Option<(usize, usize)> {
    let k = p.base_size();
    for a in 0..k {
        for b in a + 1..k {
            let triple = pair_triple(k, a, b);
            if p.family().iter().all(|s| triple.contains(s)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// `P(M, {{a,b}, M-{a}, M-{b}})` with `|M| = m+1` and `a, b` the first two
/// base elements.
pub fn the_cover(m: usize) -> Result<ReducedPoset, QuasivarError> {
    if m < 2 {
        return Err(QuasivarError::BadM { m, min: 2 });
    }
    make_reduced(m + 1, &pair_triple(m + 1, 0, 1))
}

/// Whether `Q(ε(p))` covers `Paₘ`, decided by the family shape: the family
/// must be the whole triple `{{a,b}, M-{a}, M-{b}}` for some pair.
pub fn is_cover_among_reduced(p: &ReducedPoset, m: usize) -> Result<bool, QuasivarError> {
    check_cover_shape(p.base_size(), m)?;
    if admitting_pair(p).is_none() {
        return Err(QuasivarError::Precondition(String::from(
            "family does not fit inside any pair triple, so Pa_m is not contained",
        )));
    }
    let k = p.base_size();
    for a in 0..k {
        for b in a + 1..k {
            let mut triple = pair_triple(k, a, b).to_vec();
            triple.sort_by_key(|s| (core::cmp::Reverse(s.len()), *s));
            triple.dedup();
            if triple.as_slice() == p.family() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Largest `m` accepted by the exhaustive checks below.
pub const EXHAUSTIVE_MAX_M: usize = 3;

/// Subsets of `{0..base_size-1}` with between 2 and `base_size - 1` elements,
/// in ascending bit order. Every family considered by the exhaustive checks
/// is a set of these.
pub fn proper_nonsingleton_subsets(base_size: usize) -> Vec<ElemSet> {
    (0..1u64 << base_size)
        .map(ElemSet)
        .filter(|s| s.len() >= 2 && s.len() < base_size)
        .collect()
}

/// Family number `code` over [`proper_nonsingleton_subsets`]: bit `i` of
/// `code` selects subset `i`.
pub fn family_from_code(subsets: &[ElemSet], code: u64) -> Vec<ElemSet> {
    subsets.iter().enumerate().filter(|&(i, _)| code >> i & 1 == 1).map(|(_, &s)| s).collect()
}

/// Brute-force cover test: `p` must contain `Paₘ` without lying in it, and no
/// reduced poset over an `(m+1)`-base may sit strictly between.
pub fn is_cover_exhaustive(p: &ReducedPoset, m: usize) -> Result<bool, QuasivarError> {
    check_cover_shape(p.base_size(), m)?;
    if m > EXHAUSTIVE_MAX_M {
        return Err(QuasivarError::BadM { m, min: 2 });
    }
    let x = p.realized();
    if contains_pa_m(x, m).is_none() || in_pa_m(x, m) {
        return Ok(false);
    }
    let subsets = proper_nonsingleton_subsets(m + 1);
    for code in 0..1u64 << subsets.len() {
        let c = make_reduced(m + 1, &family_from_code(&subsets, code))?;
        let y = c.realized();
        if contains_pa_m(y, m).is_some() && quasivariety_leq(y, x) && !quasivariety_leq(x, y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The exchange rule between families drawn from the slots `{p, q1, q2}`,
/// where `p` has 2 elements and `q1`, `q2` have `m`. Bit 0 of a mask is `p`,
/// bits 1 and 2 are `q1`, `q2`. `true` iff some size-preserving permutation of
/// the slots maps `f` into `g`.
pub fn slot_families_related(f: u8, g: u8, m: usize) -> bool {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let sizes = [2, m, m];
    PERMS.iter().any(|perm| {
        (0..3).all(|i| sizes[perm[i]] == sizes[i])
            && (0..3).all(|i| f >> i & 1 == 0 || g >> perm[i] & 1 == 1)
    })
}

/// The family for a slot mask over base `{0..m}` with the pair `{0,1}`.
pub fn slot_family(mask: u8, m: usize) -> Vec<ElemSet> {
    let triple = pair_triple(m + 1, 0, 1);
    (0..3).filter(|&i| mask >> i & 1 == 1).map(|i| triple[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use alloc::vec;

    fn s(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn reduced_with_empty_family_is_b3() {
        let p = make_reduced(3, &[]).unwrap();
        assert!(is_isomorphic(p.realized(), &Poset::bm(3)).is_some());
        assert_eq!(p.realized().display_name(0), "{1,2,3}");
    }

    #[test]
    fn degenerate_members_are_absorbed() {
        let p = make_reduced(3, &[s(&[0, 1, 2]), s(&[1]), s(&[0, 1]), s(&[0, 1])]).unwrap();
        assert_eq!(p.family(), &[s(&[0, 1])]);
        assert_eq!(p.realized().len(), 5);
        assert_eq!(make_reduced(1, &[s(&[0])]).unwrap().realized().len(), 1);
        assert_eq!(make_reduced(0, &[]).unwrap_err(), QuasivarError::EmptyBase);
        assert_eq!(make_reduced(3, &[ElemSet::EMPTY]).unwrap_err(), QuasivarError::EmptyFamilyMember);
        assert_eq!(make_reduced(2, &[s(&[0, 5])]).unwrap_err(), QuasivarError::FamilyMemberOutsideBase);
    }

    #[test]
    fn pa_m_membership_by_maxsets() {
        let r = the_cover(2).unwrap();
        assert!(in_pa_m(&Poset::bm(2), 2));
        assert!(!in_pa_m(r.realized(), 2));
        assert!(in_pa_m(r.realized(), 3));
        assert!(contains_pa_m(&Poset::antichain(2), 2).is_none());
        assert!(contains_pa_m(&Poset::bm(2), 2).is_some());
    }

    #[test]
    fn reduction_of_chain() {
        // Every element of a chain lies under the single top.
        let red = reduction(&Poset::chain(3));
        assert_eq!(red.poset.len(), 1);
        assert_eq!(red.map.map, vec![0, 0, 0]);
        red.map.check(&Poset::chain(3), &red.poset).unwrap();
    }

    #[test]
    fn cover_shapes() {
        let c3 = the_cover(3).unwrap();
        assert_eq!(c3.realized().len(), 8);
        assert!(the_cover(1).is_err());
        assert_eq!(family_admits_pa_m(4, &[s(&[0, 1]), s(&[2, 3])], 3).unwrap(), None);
        assert_eq!(family_admits_pa_m(3, &[], 2).unwrap(), Some((0, 1)));
        assert!(family_admits_pa_m(4, &[], 2).is_err());
        assert!(is_cover_among_reduced(&the_cover(2).unwrap(), 2).unwrap());
        assert!(!is_cover_among_reduced(&make_reduced(3, &[]).unwrap(), 2).unwrap());
    }

    #[test]
    fn slot_exchange_rule() {
        // m = 2: all three slots have size 2, so only the counts matter.
        for f in 0..8u8 {
            for g in 0..8u8 {
                assert_eq!(slot_families_related(f, g, 2), f.count_ones() <= g.count_ones());
            }
        }
        // m = 3: q1 and q2 swap, p is fixed.
        assert!(slot_families_related(0b010, 0b100, 3));
        assert!(!slot_families_related(0b001, 0b010, 3));
    }

    #[test]
    fn shrink_keeps_base_of_right_size() {
        let b4 = make_reduced(4, &[]).unwrap();
        let shrunk = shrink_to_base(&b4, 2).unwrap();
        assert_eq!(shrunk.base_size(), 3);
        assert!(shrunk.family().is_empty());
        assert!(shrink_to_base(&make_reduced(2, &[]).unwrap(), 2).is_err());
    }
}
