//! Isomorphism and canonical forms for small posets.
//!
//! Both start from an isomorphism-invariant colouring obtained by iterated
//! refinement of (up-set size, down-set size) with the colours of strict
//! upper and lower neighbours, then backtrack inside colour classes.

use alloc::vec;
use alloc::vec::Vec;

use crate::poset::Poset;

/// Stable colouring of the elements. Colour ids are ranks of sorted
/// signatures, so isomorphic posets receive identical colour multisets.
pub fn refined_colors(p: &Poset) -> Vec<u32> {
    let n = p.len();
    let mut colors: Vec<u32> = {
        let sigs: Vec<(usize, usize)> = p.elements().map(|x| (p.up(x).len(), p.down(x).len())).collect();
        rank(&sigs)
    };
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<Vec<u32>> = (0..n)
            .map(|x| {
                let mut ups: Vec<u32> = p.up(x).iter().filter(|&y| y != x).map(|y| colors[y]).collect();
                let mut downs: Vec<u32> =
                    p.down(x).iter().filter(|&y| y != x).map(|y| colors[y]).collect();
                ups.sort_unstable();
                downs.sort_unstable();
                let mut sig = Vec::with_capacity(ups.len() + downs.len() + 2);
                sig.push(colors[x]);
                sig.extend(ups);
                sig.push(u32::MAX);
                sig.extend(downs);
                sig
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap() as u32).collect()
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// An order isomorphism `p -> q` as an index array, if one exists.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.maxima().len() != q.maxima().len() {
        return None;
    }
    let cp = refined_colors(p);
    let cq = refined_colors(q);
    let mut sp = cp.clone();
    let mut sq = cq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    // Assign rare colours first.
    let mut order: Vec<usize> = p.elements().collect();
    let class_size = |c: u32| cp.iter().filter(|&&d| d == c).count();
    order.sort_by_key(|&x| (class_size(cp[x]), cp[x], x));

    let n = p.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_iso(p, q, &cp, &cq, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    p: &Poset,
    q: &Poset,
    cp: &[u32],
    cq: &[u32],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in q.elements() {
        if used[y] || cq[y] != cp[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&z| {
            let w = map[z];
            p.leq(x, z) == q.leq(y, w) && p.leq(z, x) == q.leq(w, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend_iso(p, q, cp, cq, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// Canonical form of a poset: equal forms iff isomorphic posets.
///
/// Exponential in the size of the largest colour class; meant for the small
/// posets produced by enumeration and image computations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    colors: Vec<u32>,
    code: Vec<u64>,
}

impl CanonicalForm {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Rebuilds a representative poset from the form.
    pub fn to_poset(&self) -> Poset {
        let n = self.n;
        let mut pairs = Vec::new();
        let mut bit = 0usize;
        for k in 0..n {
            for i in 0..k {
                if self.code[bit / 64] >> (bit % 64) & 1 == 1 {
                    pairs.push((i, k));
                }
                if self.code[(bit + 1) / 64] >> ((bit + 1) % 64) & 1 == 1 {
                    pairs.push((k, i));
                }
                bit += 2;
            }
        }
        Poset::from_le_pairs(n, &pairs).expect("canonical code encodes a partial order")
    }
}

/// The lexicographically least adjacency code over all colour-respecting
/// orderings; the code for position `k` lists `(σi <= σk, σk <= σi)` for `i < k`.
pub fn canonical_form(p: &Poset) -> CanonicalForm {
    let n = p.len();
    let colors = refined_colors(p);
    let mut target: Vec<u32> = colors.clone();
    target.sort_unstable();

    let mut search = CanonSearch {
        p,
        colors: &colors,
        target: &target,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        bits: Vec::with_capacity(n * n),
        best: None,
    };
    search.run();
    let bits = search.best.unwrap_or_default();
    let mut code = vec![0u64; bits.len().div_ceil(64).max(1)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            code[i / 64] |= 1 << (i % 64);
        }
    }
    CanonicalForm { n, colors: target, code }
}

struct CanonSearch<'a> {
    p: &'a Poset,
    colors: &'a [u32],
    target: &'a [u32],
    perm: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let k = self.perm.len();
        if k == self.p.len() {
            if self.best.as_ref().is_none_or(|b| self.bits < *b) {
                self.best = Some(self.bits.clone());
            }
            return;
        }
        for y in self.p.elements() {
            if self.used[y] || self.colors[y] != self.target[k] {
                continue;
            }
            let mark = self.bits.len();
            for &x in &self.perm {
                self.bits.push(self.p.leq(x, y));
                self.bits.push(self.p.leq(y, x));
            }
            let worse = match &self.best {
                Some(best) => self.bits[..] > best[..self.bits.len()],
                None => false,
            };
            if !worse {
                self.perm.push(y);
                self.used[y] = true;
                self.run();
                self.used[y] = false;
                self.perm.pop();
            }
            self.bits.truncate(mark);
        }
    }
}
