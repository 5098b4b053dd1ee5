//! Finite posets on dense indices `0..n`.
//!
//! The order is stored as the full relation: `up[x]` holds every `y` with
//! `x <= y` and `down[x]` every `y` with `y <= x`. Covers are derived on demand.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{OrderViolation, PosetError};
use crate::set::ElemSet;
use crate::MAX_ELEMENTS;

/// A raw binary relation on `0..n`, not yet known to be a partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    leq: Vec<bool>,
}

impl Relation {
    pub fn new(n: usize) -> Self {
        Relation { n, leq: vec![false; n * n] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.leq[x * self.n + y] = value;
    }

    /// Checks reflexivity, antisymmetry and transitivity, in that order,
    /// reporting the first violated axiom with its lexicographically first witness.
    pub fn validate(&self) -> Result<(), OrderViolation> {
        let n = self.n;
        if let Some(x) = (0..n).find(|&x| !self.get(x, x)) {
            return Err(OrderViolation::Reflexivity { x });
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.get(x, y) && self.get(y, x) {
                    return Err(OrderViolation::Antisymmetry { x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !self.get(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.get(y, z) && !self.get(x, z) {
                        return Err(OrderViolation::Transitivity { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }
}

/// The maximal elements above `owner`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaxSet {
    pub owner: usize,
    pub maxima: ElemSet,
}

/// A finite partial order with optional per-element labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
    maxima: ElemSet,
    labels: Vec<Option<String>>,
}

impl Default for Poset {
    fn default() -> Self {
        Poset::empty()
    }
}

impl Poset {
    fn from_up_sets(up: Vec<ElemSet>) -> Self {
        let n = up.len();
        let mut down = vec![ElemSet::EMPTY; n];
        for (x, u) in up.iter().enumerate() {
            for y in u.iter() {
                down[y].insert(x);
            }
        }
        let maxima = (0..n).filter(|&x| up[x].len() == 1).collect();
        Poset { up, down, maxima, labels: vec![None; n] }
    }

    pub fn empty() -> Self {
        Poset::from_up_sets(Vec::new())
    }

    pub fn point() -> Self {
        Poset::antichain(1)
    }

    pub fn antichain(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        Poset::from_up_sets((0..n).map(ElemSet::singleton).collect())
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        Poset::from_up_sets((0..n).map(|x| ElemSet::full(n).difference(ElemSet::full(x))).collect())
    }

    /// One bottom with `m` pairwise incomparable maxima above it; a single
    /// point when `m == 0`. Element 0 is the bottom, `1..=m` the maxima.
    pub fn bm(m: usize) -> Self {
        assert!(m < MAX_ELEMENTS);
        if m == 0 {
            return Poset::point();
        }
        let mut up = vec![ElemSet::full(m + 1)];
        up.extend((1..=m).map(ElemSet::singleton));
        Poset::from_up_sets(up)
    }

    /// Validates `rel` and builds the poset it describes.
    pub fn from_relation(rel: &Relation) -> Result<Self, PosetError> {
        let n = rel.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge { n, max: MAX_ELEMENTS });
        }
        rel.validate()?;
        let up = (0..n).map(|x| (0..n).filter(|&y| rel.get(x, y)).collect()).collect();
        Ok(Poset::from_up_sets(up))
    }

    /// Builds the reflexive-transitive closure of `pairs` (each `(x, y)`
    /// meaning `x <= y`) and rejects it if it is not antisymmetric.
    pub fn from_le_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge { n, max: MAX_ELEMENTS });
        }
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(x, y) in pairs {
            for index in [x, y] {
                if index >= n {
                    return Err(PosetError::IndexOutOfRange { index, n });
                }
            }
            up[x].insert(y);
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            let row = up[k];
            for u in up.iter_mut() {
                if u.contains(k) {
                    *u = u.union(row);
                }
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    let (x, y) = (x.min(y), x.max(y));
                    return Err(OrderViolation::Antisymmetry { x, y }.into());
                }
            }
        }
        Ok(Poset::from_up_sets(up))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.up.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `{y : x <= y}`
    #[inline]
    pub fn up(&self, x: usize) -> ElemSet {
        self.up[x]
    }

    /// `{y : y <= x}`
    #[inline]
    pub fn down(&self, x: usize) -> ElemSet {
        self.down[x]
    }

    #[inline]
    pub fn maxima(&self) -> ElemSet {
        self.maxima
    }

    #[inline]
    pub fn is_maximal(&self, x: usize) -> bool {
        self.maxima.contains(x)
    }

    /// `M(x)` as a bit set; `x` must be in range.
    #[inline]
    pub fn max_set(&self, x: usize) -> ElemSet {
        self.up[x].intersection(self.maxima)
    }

    /// `M(x)`: the maximal elements above `x`.
    pub fn maximal_above(&self, x: usize) -> Result<MaxSet, PosetError> {
        if x >= self.len() {
            return Err(PosetError::IndexOutOfRange { index: x, n: self.len() });
        }
        Ok(MaxSet { owner: x, maxima: self.max_set(x) })
    }

    /// Smallest set containing `s` and closed downwards.
    pub fn down_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn up_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    pub fn is_upset(&self, s: ElemSet) -> bool {
        self.up_closure(s) == s
    }

    pub fn is_downset(&self, s: ElemSet) -> bool {
        self.down_closure(s) == s
    }

    /// The cover relation: pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.up[x].iter() {
                if y == x {
                    continue;
                }
                let between = self.up[x].intersection(self.down[y]).len();
                if between == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> ElemSet {
        let mut strict = self.up[x];
        strict.remove(x);
        strict
            .iter()
            .filter(|&y| self.up[x].intersection(self.down[y]).len() == 2)
            .collect()
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.get(x).and_then(|l| l.as_deref())
    }

    /// Label if present, otherwise the index.
    pub fn display_name(&self, x: usize) -> String {
        match self.label(x) {
            Some(l) => String::from(l),
            None => alloc::format!("{x}"),
        }
    }

    pub fn set_label(&mut self, x: usize, label: impl Into<String>) {
        self.labels[x] = Some(label.into());
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        for (x, l) in labels.into_iter().enumerate().take(self.len()) {
            self.labels[x] = Some(l.into());
        }
        self
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn to_relation(&self) -> Relation {
        let mut rel = Relation::new(self.len());
        for x in self.elements() {
            for y in self.up[x].iter() {
                rel.set(x, y, true);
            }
        }
        rel
    }

    /// The same order with element `x` renamed to `perm[x]`. Labels follow their elements.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut up = vec![ElemSet::EMPTY; n];
        for x in 0..n {
            up[perm[x]] = self.up[x].iter().map(|y| perm[y]).collect();
        }
        let mut p = Poset::from_up_sets(up);
        for (x, label) in self.labels.iter().enumerate() {
            p.labels[perm[x]] = label.clone();
        }
        p
    }

    /// Adds a new element `n` above every element of the down-closure of `below`.
    pub fn extended_above(&self, below: ElemSet) -> Poset {
        let n = self.len();
        assert!(n < MAX_ELEMENTS);
        let below = self.down_closure(below);
        let mut up: Vec<ElemSet> = self.up.clone();
        for x in below.iter() {
            up[x].insert(n);
        }
        up.push(ElemSet::singleton(n));
        let mut p = Poset::from_up_sets(up);
        p.labels[..n].clone_from_slice(&self.labels);
        p
    }

    /// The subposet induced on `keep`, re-indexed in ascending order.
    pub fn induced(&self, keep: ElemSet) -> Poset {
        let index: Vec<usize> = keep.iter().collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in index.iter().enumerate() {
            pos[x] = i;
        }
        let up = index
            .iter()
            .map(|&x| self.up[x].intersection(keep).iter().map(|y| pos[y]).collect())
            .collect();
        let mut p = Poset::from_up_sets(up);
        for (i, &x) in index.iter().enumerate() {
            p.labels[i] = self.labels[x].clone();
        }
        p
    }
}

/// Result of [`disjoint_union`].
#[derive(Clone, Debug)]
pub struct DisjointUnion {
    pub poset: Poset,
    /// Component of every element of the union.
    pub component: Vec<usize>,
    /// Index of the first element of each component.
    pub offsets: Vec<usize>,
}

impl DisjointUnion {
    /// Element of the union corresponding to element `x` of component `c`.
    pub fn embed(&self, c: usize, x: usize) -> usize {
        self.offsets[c] + x
    }

    /// Component and local index of element `z` of the union.
    pub fn locate(&self, z: usize) -> (usize, usize) {
        let c = self.component[z];
        (c, z - self.offsets[c])
    }
}

/// Side-by-side union; components are laid out consecutively in input order.
pub fn disjoint_union(parts: &[Poset]) -> Result<DisjointUnion, PosetError> {
    let total: usize = parts.iter().map(Poset::len).sum();
    if total > MAX_ELEMENTS {
        return Err(PosetError::TooLarge { n: total, max: MAX_ELEMENTS });
    }
    let mut up = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    let mut component = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(parts.len());
    for (c, p) in parts.iter().enumerate() {
        let off = up.len();
        offsets.push(off);
        for x in p.elements() {
            up.push(ElemSet(p.up(x).0 << off));
            labels.push(p.labels[x].clone());
            component.push(c);
        }
    }
    let mut poset = Poset::from_up_sets(up);
    poset.labels = labels;
    Ok(DisjointUnion { poset, component, offsets })
}
