//! pp-morphisms: monotone maps `h` with `M(h(x)) = h[M(x)]` for every `x`.
//!
//! The search kernel assigns maximal elements first (they can only land on
//! maximal elements) and then walks the source top-down. Once everything
//! above `x` is mapped, `h(x)` is pinned to the target elements whose max-set
//! equals the image of `M(x)`, so most branches die immediately.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::error::{BudgetExceeded, PpFailure};
use crate::iso::{canonical_form, CanonicalForm};
use crate::poset::Poset;
use crate::set::ElemSet;

/// A pp-morphism given by its index array. The source and target posets are
/// supplied by the caller wherever the map is checked or applied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PpMorphism {
    pub map: Vec<usize>,
}

impl PpMorphism {
    pub fn new(map: Vec<usize>) -> Self {
        PpMorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        PpMorphism { map: (0..n).collect() }
    }

    /// Constant map onto `target` from a source with `n` elements.
    pub fn constant(n: usize, target: usize) -> Self {
        PpMorphism { map: vec![target; n] }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image(&self) -> ElemSet {
        self.map.iter().copied().collect()
    }

    pub fn is_surjective_onto(&self, q: &Poset) -> bool {
        self.image() == q.all()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &PpMorphism) -> PpMorphism {
        PpMorphism { map: self.map.iter().map(|&y| then.map[y]).collect() }
    }

    /// Checks this map as a pp-morphism `p -> q`.
    pub fn check(&self, p: &Poset, q: &Poset) -> Result<(), PpFailure> {
        is_pp_morphism(&self.map, p, q)
    }
}

/// Checks that `map` is a pp-morphism `p -> q`.
///
/// Maxima preservation is checked for every element before monotonicity, and
/// the first failing element (in index order) is reported.
pub fn is_pp_morphism(map: &[usize], p: &Poset, q: &Poset) -> Result<(), PpFailure> {
    if map.len() != p.len() {
        return Err(PpFailure::Arity { expected: p.len(), found: map.len() });
    }
    if let Some((x, &image)) = map.iter().enumerate().find(|(_, &y)| y >= q.len()) {
        return Err(PpFailure::Range { x, image, target_len: q.len() });
    }
    for x in p.elements() {
        let image_of_maxima: ElemSet = p.max_set(x).iter().map(|m| map[m]).collect();
        if image_of_maxima != q.max_set(map[x]) {
            return Err(PpFailure::MaximaPreservation { x });
        }
    }
    for x in p.elements() {
        for y in p.up(x).iter() {
            if !q.leq(map[x], map[y]) {
                return Err(PpFailure::Monotonicity { x, y });
            }
        }
    }
    Ok(())
}

/// Backtracking search for pp-morphisms `p -> q` whose image contains `required`.
struct Search<'a> {
    p: &'a Poset,
    q: &'a Poset,
    order: Vec<usize>,
    /// Strict upper covers of each source element.
    upper: Vec<ElemSet>,
    /// Target elements grouped by their max-set.
    by_maxset: BTreeMap<ElemSet, Vec<usize>>,
    q_maxima: Vec<usize>,
    required: ElemSet,
    /// Source elements that may map onto each target element.
    compatible: Vec<ElemSet>,
    map: Vec<usize>,
    hits: Vec<u32>,
    unassigned: ElemSet,
    missing: usize,
}

impl<'a> Search<'a> {
    fn new(p: &'a Poset, q: &'a Poset, required: ElemSet) -> Self {
        let mut order: Vec<usize> = p.elements().collect();
        // Everything above x has a strictly smaller up-set, so this is top-down.
        order.sort_by_key(|&x| (p.up(x).len(), x));
        let upper = p.elements().map(|x| p.upper_covers(x)).collect();
        let mut by_maxset: BTreeMap<ElemSet, Vec<usize>> = BTreeMap::new();
        for y in q.elements() {
            by_maxset.entry(q.max_set(y)).or_default().push(y);
        }
        let compatible = q
            .elements()
            .map(|y| {
                p.elements()
                    .filter(|&x| {
                        p.max_set(x).len() >= q.max_set(y).len()
                            && (q.is_maximal(y) || !p.is_maximal(x))
                    })
                    .collect()
            })
            .collect();
        Search {
            p,
            q,
            order,
            upper,
            by_maxset,
            q_maxima: q.maxima().iter().collect(),
            required,
            compatible,
            map: vec![usize::MAX; p.len()],
            hits: vec![0; q.len()],
            unassigned: p.all(),
            missing: required.len(),
        }
    }

    fn feasible(&self) -> bool {
        if self.missing == 0 {
            return true;
        }
        if self.missing > self.unassigned.len() {
            return false;
        }
        self.required
            .iter()
            .filter(|&y| self.hits[y] == 0)
            .all(|y| !self.compatible[y].intersection(self.unassigned).is_empty())
    }

    fn run<F: FnMut(&[usize]) -> ControlFlow<()>>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()> {
        if depth == self.order.len() {
            return if self.missing == 0 { visit(&self.map) } else { ControlFlow::Continue(()) };
        }
        let x = self.order[depth];
        let candidates: &[usize] = if self.p.is_maximal(x) {
            &self.q_maxima
        } else {
            let image: ElemSet = self.p.max_set(x).iter().map(|m| self.map[m]).collect();
            match self.by_maxset.get(&image) {
                Some(c) => c,
                None => return ControlFlow::Continue(()),
            }
        };
        // Detach the borrow of `self` from the candidate list.
        let candidates: Vec<usize> = candidates.to_vec();
        self.unassigned.remove(x);
        for y in candidates {
            if !self.upper[x].iter().all(|z| self.q.leq(y, self.map[z])) {
                continue;
            }
            self.map[x] = y;
            self.hits[y] += 1;
            let newly = self.hits[y] == 1 && self.required.contains(y);
            if newly {
                self.missing -= 1;
            }
            let flow = if self.feasible() { self.run(depth + 1, visit) } else { ControlFlow::Continue(()) };
            if newly {
                self.missing += 1;
            }
            self.hits[y] -= 1;
            self.map[x] = usize::MAX;
            if flow.is_break() {
                self.unassigned.insert(x);
                return flow;
            }
        }
        self.unassigned.insert(x);
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every pp-morphism `p -> q` whose image contains
/// `required`, in search order, until it breaks.
pub fn for_each_pp_morphism<F>(p: &Poset, q: &Poset, required: ElemSet, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if !required.is_subset(q.all()) {
        return ControlFlow::Continue(());
    }
    let mut search = Search::new(p, q, required);
    if !search.feasible() {
        return ControlFlow::Continue(());
    }
    search.run(0, &mut visit)
}

/// First pp-morphism (in search order) whose image contains `required`.
pub fn find_pp_morphism(p: &Poset, q: &Poset, required: ElemSet) -> Option<PpMorphism> {
    let mut found = None;
    let _ = for_each_pp_morphism(p, q, required, |map| {
        found = Some(PpMorphism::new(map.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// All pp-morphisms `p -> q` in lexicographic order of their index arrays,
/// truncated to `limit` if given.
pub fn enumerate_pp_morphisms(p: &Poset, q: &Poset, limit: Option<usize>) -> Vec<PpMorphism> {
    let mut all = Vec::new();
    let _ = for_each_pp_morphism(p, q, ElemSet::EMPTY, |map| {
        all.push(PpMorphism::new(map.to_vec()));
        ControlFlow::Continue(())
    });
    all.sort();
    if let Some(limit) = limit {
        all.truncate(limit);
    }
    all
}

/// A surjective pp-morphism `p ->> q`, if one exists.
pub fn exists_surjective_pp(p: &Poset, q: &Poset) -> Option<PpMorphism> {
    if p.len() < q.len() || p.maxima().len() < q.maxima().len() {
        return None;
    }
    find_pp_morphism(p, q, q.all())
}

/// Which target points lie in the image of some pp-morphism from the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub target_len: usize,
    pub covered: ElemSet,
    pub witnesses: Vec<PpMorphism>,
    /// For each target point, the index into `witnesses` of a witness whose image contains it.
    pub witness_for: Vec<Option<usize>>,
}

impl CoverageReport {
    pub fn is_complete(&self) -> bool {
        self.covered == ElemSet::full(self.target_len)
    }

    pub fn uncovered(&self) -> ElemSet {
        ElemSet::full(self.target_len).difference(self.covered)
    }
}

/// Points of `q` hit by some pp-morphism `p -> q`.
///
/// Points are tried from the largest max-set down, and a new witness is
/// searched for only when no earlier witness already hits the point.
pub fn covered_points(p: &Poset, q: &Poset) -> CoverageReport {
    let mut points: Vec<usize> = q.elements().collect();
    points.sort_by_key(|&y| (core::cmp::Reverse(q.max_set(y).len()), y));
    let mut witnesses: Vec<PpMorphism> = Vec::new();
    let mut images: Vec<ElemSet> = Vec::new();
    let mut witness_for = vec![None; q.len()];
    let mut covered = ElemSet::EMPTY;
    for y in points {
        if let Some(i) = images.iter().position(|img| img.contains(y)) {
            witness_for[y] = Some(i);
            covered.insert(y);
            continue;
        }
        if let Some(h) = find_pp_morphism(p, q, ElemSet::singleton(y)) {
            images.push(h.image());
            witnesses.push(h);
            witness_for[y] = Some(witnesses.len() - 1);
            covered.insert(y);
        }
    }
    CoverageReport { target_len: q.len(), covered, witnesses, witness_for }
}

/// Images of pp-morphisms `p -> q`, each with its lexicographically least
/// witness. `None` if more than `budget` morphisms would have to be visited.
pub fn distinct_images(p: &Poset, q: &Poset, budget: u64) -> Option<BTreeMap<ElemSet, PpMorphism>> {
    let mut images: BTreeMap<ElemSet, PpMorphism> = BTreeMap::new();
    let mut visited = 0u64;
    let flow = for_each_pp_morphism(p, q, ElemSet::EMPTY, |map| {
        visited += 1;
        if visited > budget {
            return ControlFlow::Break(());
        }
        let img: ElemSet = map.iter().copied().collect();
        match images.get_mut(&img) {
            Some(w) if w.map.as_slice() <= map => {}
            Some(w) => w.map = map.to_vec(),
            None => {
                images.insert(img, PpMorphism::new(map.to_vec()));
            }
        }
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        None
    } else {
        Some(images)
    }
}

/// Morphisms visited before [`exists_surjection_from_copies`] gives up on a
/// minimum certificate and keeps the coverage witnesses instead.
pub const MIN_COVER_BUDGET: u64 = 1 << 20;

/// A surjective pp-morphism from finitely many copies of `p` onto `q`, given
/// as one pp-morphism `p -> q` per copy.
///
/// A map out of a disjoint union is a pp-morphism exactly when each
/// restriction to a component is, so this exists iff every point of `q` is
/// covered by some pp-morphism `p -> q`. The returned copy count is minimal
/// whenever the images can be enumerated within [`MIN_COVER_BUDGET`], and is
/// never more than `|q|`.
pub fn exists_surjection_from_copies(p: &Poset, q: &Poset) -> Option<Vec<PpMorphism>> {
    cover_from_sources(&[p], q).ok().map(|ws| ws.into_iter().map(|(_, h)| h).collect())
}

/// Several sources at once: pp-morphisms, each tagged with the index of its
/// source, whose images jointly cover `q`. On failure returns the points of
/// `q` that no pp-morphism from any source reaches.
pub fn cover_from_sources(sources: &[&Poset], q: &Poset) -> Result<Vec<(usize, PpMorphism)>, ElemSet> {
    let mut covered = ElemSet::EMPTY;
    let mut fallback = Vec::new();
    for (i, p) in sources.iter().enumerate() {
        if covered == q.all() {
            break;
        }
        let report = covered_points(p, q);
        for h in report.witnesses {
            if !h.image().is_subset(covered) {
                covered = covered.union(h.image());
                fallback.push((i, h));
            }
        }
    }
    if covered != q.all() {
        return Err(q.all().difference(covered));
    }
    let fallback = prune_redundant(fallback, q);
    let mut images: Vec<(ElemSet, (usize, PpMorphism))> = Vec::new();
    let mut remaining = MIN_COVER_BUDGET;
    for (i, p) in sources.iter().enumerate() {
        match distinct_images(p, q, remaining) {
            Some(found) => {
                remaining = remaining.saturating_sub(found.len() as u64);
                for (img, h) in found {
                    if !images.iter().any(|(other, _)| img.is_subset(*other)) {
                        images.retain(|(other, _)| !other.is_subset(img));
                        images.push((img, (i, h)));
                    }
                }
            }
            None => return Ok(fallback),
        }
    }
    Ok(minimum_cover(&images, q.all()).unwrap_or(fallback))
}

fn prune_redundant(mut witnesses: Vec<(usize, PpMorphism)>, q: &Poset) -> Vec<(usize, PpMorphism)> {
    let mut i = witnesses.len();
    while i > 0 {
        i -= 1;
        let others = witnesses
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(ElemSet::EMPTY, |acc, (_, (_, w))| acc.union(w.image()));
        if others == q.all() {
            witnesses.remove(i);
        }
    }
    witnesses
}

/// Smallest set of images covering `target` (ties broken by input order).
fn minimum_cover<T: Clone>(images: &[(ElemSet, T)], target: ElemSet) -> Option<Vec<T>> {
    fn go<T>(
        images: &[(ElemSet, T)],
        target: ElemSet,
        covered: ElemSet,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
    ) {
        let Some(u) = target.difference(covered).first() else {
            if best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                *best = Some(chosen.clone());
            }
            return;
        };
        if best.as_ref().is_some_and(|b| chosen.len() + 1 >= b.len()) {
            return;
        }
        let mut options: Vec<usize> = (0..images.len()).filter(|&i| images[i].0.contains(u)).collect();
        options.sort_by_key(|&i| (core::cmp::Reverse(images[i].0.difference(covered).len()), i));
        for i in options {
            chosen.push(i);
            go(images, target, covered.union(images[i].0), chosen, best);
            chosen.pop();
        }
    }
    let mut best = None;
    go(images, target, ElemSet::EMPTY, &mut Vec::new(), &mut best);
    best.map(|idx| idx.into_iter().map(|i| images[i].1.clone()).collect())
}

/// All surjective pp-morphic images of `p`, one per isomorphism class, found
/// by testing every candidate poset with at most `|p|` elements.
pub fn pp_morphic_images(p: &Poset, bound: usize) -> Result<Vec<Poset>, BudgetExceeded> {
    if p.len() > bound {
        return Err(BudgetExceeded {
            what: "pp-morphic image computation (poset size)",
            requested: p.len() as u64,
            limit: bound as u64,
        });
    }
    let mut out: BTreeMap<CanonicalForm, Poset> = BTreeMap::new();
    for level in crate::enumerate::Levels::new().take(p.len() + 1) {
        for form in level {
            let candidate = form.to_poset();
            if exists_surjective_pp(p, &candidate).is_some() {
                out.insert(form, candidate);
            }
        }
    }
    Ok(out.into_values().collect())
}

/// Whether the map `x -> M(x)` is an order isomorphism onto the poset of
/// max-sets under reverse inclusion.
pub fn is_reduced(p: &Poset) -> bool {
    for x in p.elements() {
        for y in p.elements() {
            let by_maxima = p.max_set(y).is_subset(p.max_set(x));
            if by_maxima != p.leq(x, y) {
                return false;
            }
        }
    }
    true
}

/// The members of [`pp_morphic_images`] that are reduced posets; these are
/// exactly the reductions of all images.
pub fn reduced_pp_morphic_images(p: &Poset, bound: usize) -> Result<Vec<Poset>, BudgetExceeded> {
    Ok(pp_morphic_images(p, bound)?.into_iter().filter(is_reduced).collect())
}

/// Canonical form helper for callers comparing image sets.
pub fn image_forms(images: &[Poset]) -> Vec<CanonicalForm> {
    images.iter().map(canonical_form).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::disjoint_union;

    #[test]
    fn constant_map_to_point() {
        let p = Poset::bm(3);
        assert_eq!(is_pp_morphism(&[0; 4], &p, &Poset::point()), Ok(()));
        assert_eq!(enumerate_pp_morphisms(&p, &Poset::point(), None), [PpMorphism::constant(4, 0)]);
    }

    #[test]
    fn arity_and_range_errors() {
        let p = Poset::chain(2);
        assert_eq!(
            is_pp_morphism(&[0], &p, &p),
            Err(PpFailure::Arity { expected: 2, found: 1 })
        );
        assert_eq!(
            is_pp_morphism(&[0, 7], &p, &p),
            Err(PpFailure::Range { x: 1, image: 7, target_len: 2 })
        );
    }

    #[test]
    fn chain_to_chain_has_two() {
        let c = Poset::chain(2);
        let all = enumerate_pp_morphisms(&c, &c, None);
        assert_eq!(all, [PpMorphism::new(vec![0, 1]), PpMorphism::new(vec![1, 1])]);
        assert_eq!(enumerate_pp_morphisms(&c, &c, Some(1)).len(), 1);
    }

    #[test]
    fn point_to_b2_hits_only_maxima() {
        let all = enumerate_pp_morphisms(&Poset::point(), &Poset::bm(2), None);
        assert_eq!(all, [PpMorphism::new(vec![1]), PpMorphism::new(vec![2])]);
    }

    #[test]
    fn empty_source() {
        let e = Poset::empty();
        assert_eq!(enumerate_pp_morphisms(&e, &Poset::bm(2), None), [PpMorphism::new(vec![])]);
        assert!(exists_surjective_pp(&e, &Poset::point()).is_none());
        assert_eq!(exists_surjective_pp(&e, &e), Some(PpMorphism::new(vec![])));
        assert_eq!(exists_surjection_from_copies(&e, &e), Some(vec![]));
        assert!(exists_surjection_from_copies(&e, &Poset::point()).is_none());
        assert!(enumerate_pp_morphisms(&Poset::point(), &e, None).is_empty());
    }

    #[test]
    fn antichain_does_not_cover_b2() {
        let b2 = Poset::bm(2);
        let a2 = Poset::antichain(2);
        assert!(exists_surjective_pp(&a2, &b2).is_none());
        let report = covered_points(&a2, &b2);
        assert_eq!(report.uncovered(), ElemSet::singleton(0));
        // Constant maps send B2 onto either point, so two copies cover.
        assert_eq!(exists_surjection_from_copies(&b2, &a2).unwrap().len(), 2);
        let u = disjoint_union(&[Poset::point(), Poset::point()]).unwrap();
        assert_eq!(exists_surjection_from_copies(&Poset::point(), &u.poset).unwrap().len(), 2);
    }

    #[test]
    fn images_of_small_posets() {
        let forms = image_forms(&pp_morphic_images(&Poset::chain(2), 6).unwrap());
        assert_eq!(forms.len(), 2);
        assert!(forms.contains(&canonical_form(&Poset::chain(2))));
        assert!(forms.contains(&canonical_form(&Poset::point())));
        assert_eq!(pp_morphic_images(&Poset::point(), 6).unwrap().len(), 1);
        assert!(pp_morphic_images(&Poset::antichain(8), 6).is_err());
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&Poset::bm(3)));
        assert!(is_reduced(&Poset::point()));
        assert!(!is_reduced(&Poset::chain(2)));
        // bottom under three maxima, and an element under two of them but
        // not above the bottom
        let p = Poset::from_le_pairs(5, &[(0, 1), (0, 2), (0, 3), (4, 1), (4, 2)]).unwrap();
        assert!(!is_reduced(&p));
    }
}
