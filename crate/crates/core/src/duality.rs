//! The finite duality between posets and distributive p-algebras.
//!
//! `epsilon` sends a poset to the p-algebra of its up-sets, `delta` sends a
//! finite p-algebra to its join-irreducibles under the converse order. For a
//! finite poset `P`, `delta(epsilon(P))` is isomorphic to `P`, and surjective
//! pp-morphisms `P ->> Q` correspond to embeddings `epsilon(Q) -> epsilon(P)`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::enumerate::downsets;
use crate::error::{AlgebraViolation, BudgetExceeded};
use crate::poset::Poset;
use crate::set::ElemSet;

/// Largest poset accepted by [`epsilon`] by default.
pub const DEFAULT_EPSILON_POSET_BOUND: usize = 20;
/// Largest algebra [`epsilon`] will tabulate by default.
pub const DEFAULT_EPSILON_ALGEBRA_BOUND: usize = 4096;
/// Default number of tuples [`evaluate_ibm`] may visit.
pub const DEFAULT_IB_BUDGET: u64 = 1 << 30;

/// A finite algebra `(A, meet, join, star, zero, one)` given by tables.
/// Nothing is assumed about the tables until [`is_p_algebra`] accepts them.
#[derive(Clone, PartialEq, Eq)]
pub struct PAlgebra {
    size: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    star: Vec<usize>,
    zero: usize,
    one: usize,
    /// For algebras built by [`epsilon`], the up-set each element denotes.
    upsets: Option<Vec<ElemSet>>,
}

impl fmt::Debug for PAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PAlgebra")
            .field("size", &self.size)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .field("star", &self.star)
            .finish_non_exhaustive()
    }
}

impl PAlgebra {
    /// Wraps raw tables; `meet` and `join` are row-major `size * size`.
    pub fn from_tables(
        size: usize,
        meet: Vec<usize>,
        join: Vec<usize>,
        star: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Self {
        PAlgebra { size, meet, join, star, zero, one, upsets: None }
    }

    /// The one-element algebra.
    pub fn trivial() -> Self {
        PAlgebra::from_tables(1, vec![0], vec![0], vec![0], 0, 0)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn star(&self, x: usize) -> usize {
        self.star[x]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Lattice order: `x <= y` iff `x meet y = x`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    pub fn upsets(&self) -> Option<&[ElemSet]> {
        self.upsets.as_deref()
    }

    pub fn star_table_mut(&mut self) -> &mut [usize] {
        &mut self.star
    }

    pub fn meet_table(&self) -> &[usize] {
        &self.meet
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn star_table(&self) -> &[usize] {
        &self.star
    }
}

/// Size limits for [`epsilon_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EpsilonBudget {
    pub max_poset: usize,
    pub max_algebra: usize,
}

impl Default for EpsilonBudget {
    fn default() -> Self {
        EpsilonBudget {
            max_poset: DEFAULT_EPSILON_POSET_BOUND,
            max_algebra: DEFAULT_EPSILON_ALGEBRA_BOUND,
        }
    }
}

/// `epsilon` with the default budget.
pub fn epsilon(p: &Poset) -> Result<PAlgebra, BudgetExceeded> {
    epsilon_with(p, EpsilonBudget::default())
}

/// The p-algebra of up-sets of `p`: meet is intersection, join is union and
/// `star(U)` is the complement of the down-closure of `U`. Elements are the
/// up-sets in ascending bit order, so `zero` is element 0.
pub fn epsilon_with(p: &Poset, budget: EpsilonBudget) -> Result<PAlgebra, BudgetExceeded> {
    if p.len() > budget.max_poset {
        return Err(BudgetExceeded {
            what: "epsilon (poset size)",
            requested: p.len() as u64,
            limit: budget.max_poset as u64,
        });
    }
    let all = p.all();
    let mut upsets: Vec<ElemSet> = downsets(p).into_iter().map(|d| all.difference(d)).collect();
    upsets.sort();
    let size = upsets.len();
    if size > budget.max_algebra {
        return Err(BudgetExceeded {
            what: "epsilon (algebra size)",
            requested: size as u64,
            limit: budget.max_algebra as u64,
        });
    }
    let index = |s: ElemSet| upsets.binary_search(&s).expect("closed under the operation");
    let mut meet = vec![0; size * size];
    let mut join = vec![0; size * size];
    for i in 0..size {
        for j in i..size {
            let m = index(upsets[i].intersection(upsets[j]));
            let u = index(upsets[i].union(upsets[j]));
            meet[i * size + j] = m;
            meet[j * size + i] = m;
            join[i * size + j] = u;
            join[j * size + i] = u;
        }
    }
    let star = upsets.iter().map(|&u| index(all.difference(p.down_closure(u)))).collect();
    let zero = index(ElemSet::EMPTY);
    let one = index(all);
    Ok(PAlgebra { size, meet, join, star, zero, one, upsets: Some(upsets) })
}

/// Join-irreducible elements of `a`, ascending.
pub fn join_irreducibles(a: &PAlgebra) -> Vec<usize> {
    (0..a.len())
        .filter(|&x| {
            if x == a.zero() {
                return false;
            }
            let below = (0..a.len())
                .filter(|&u| u != x && a.leq(u, x))
                .fold(a.zero(), |acc, u| a.join(acc, u));
            below != x
        })
        .collect()
}

/// The dual poset of `a`: its join-irreducibles, with `j <= k` in the poset
/// iff `k <= j` in `a`. Element `i` of the poset is the `i`-th
/// join-irreducible in ascending index order.
pub fn delta(a: &PAlgebra) -> Result<Poset, AlgebraViolation> {
    is_p_algebra(a)?;
    Ok(delta_unchecked(a))
}

/// [`delta`] without validating the tables first.
pub fn delta_unchecked(a: &PAlgebra) -> Poset {
    let ji = join_irreducibles(a);
    let mut pairs = Vec::new();
    for (i, &x) in ji.iter().enumerate() {
        for (j, &y) in ji.iter().enumerate() {
            if i != j && a.leq(y, x) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_le_pairs(ji.len(), &pairs).expect("lattice order restricted to join-irreducibles")
}

/// Checks every bounded distributive lattice axiom and the pseudocomplement
/// law `x meet y = 0 iff x <= y*` exhaustively.
pub fn is_p_algebra(a: &PAlgebra) -> Result<(), AlgebraViolation> {
    use AlgebraViolation as V;
    let n = a.size;
    if n == 0 {
        return Err(V::Empty);
    }
    if a.meet.len() != n * n {
        return Err(V::TableShape { table: "meet" });
    }
    if a.join.len() != n * n {
        return Err(V::TableShape { table: "join" });
    }
    if a.star.len() != n {
        return Err(V::TableShape { table: "star" });
    }
    for (table, values) in [("meet", &a.meet), ("join", &a.join), ("star", &a.star)] {
        if values.iter().any(|&v| v >= n) {
            return Err(V::OutOfRange { table });
        }
    }
    if a.zero >= n {
        return Err(V::OutOfRange { table: "zero" });
    }
    if a.one >= n {
        return Err(V::OutOfRange { table: "one" });
    }
    type BinOp = fn(&PAlgebra, usize, usize) -> usize;
    let ops: [(&'static str, BinOp); 2] = [("meet", PAlgebra::meet), ("join", PAlgebra::join)];
    for (op, f) in ops {
        for x in 0..n {
            if f(a, x, x) != x {
                return Err(V::Idempotence { op, x });
            }
            for y in 0..n {
                if f(a, x, y) != f(a, y, x) {
                    return Err(V::Commutativity { op, x, y });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = f(a, x, y);
                for z in 0..n {
                    if f(a, xy, z) != f(a, x, f(a, y, z)) {
                        return Err(V::Associativity { op, x, y, z });
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if a.meet(x, a.join(x, y)) != x || a.join(x, a.meet(x, y)) != x {
                return Err(V::Absorption { x, y });
            }
        }
    }
    for x in 0..n {
        if a.meet(x, a.zero) != a.zero || a.join(x, a.one) != a.one {
            return Err(V::Bounds { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)) {
                    return Err(V::Distributivity { x, y, z });
                }
            }
        }
    }
    // Boundary witnesses first: y = zero and x = one catch a broken star(0).
    let boundary_first = |first: usize| core::iter::once(first).chain((0..n).filter(move |&v| v != first));
    for y in boundary_first(a.zero) {
        let s = a.star(y);
        for x in boundary_first(a.one) {
            if (a.meet(x, y) == a.zero) != a.leq(x, s) {
                return Err(V::Pseudocomplement { x, y });
            }
        }
    }
    Ok(())
}

/// Result of evaluating the identity `ib_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IbOutcome {
    Satisfied,
    /// Lexicographically first `(m+1)`-tuple on which the identity fails.
    Falsified(Vec<usize>),
}

impl IbOutcome {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, IbOutcome::Satisfied)
    }
}

/// Left-hand side of `ib_m` on one tuple:
/// `join over i of (x_i meet (meet over j != i of x_j*))*`.
pub fn ibm_value(a: &PAlgebra, xs: &[usize]) -> usize {
    let k = xs.len();
    // prefix[i] = meet of star(x_j) for j < i, suffix likewise for j > i.
    let mut prefix = vec![a.one(); k + 1];
    for i in 0..k {
        prefix[i + 1] = a.meet(prefix[i], a.star(xs[i]));
    }
    let mut suffix = a.one();
    let mut acc = a.zero();
    for i in (0..k).rev() {
        let others = a.meet(prefix[i], suffix);
        let term = a.star(a.meet(xs[i], others));
        acc = a.join(acc, term);
        suffix = a.meet(suffix, a.star(xs[i]));
    }
    acc
}

/// Evaluates `ib_m` over every `(m+1)`-tuple, in lexicographic order.
pub fn evaluate_ibm(a: &PAlgebra, m: usize, budget: u64) -> Result<IbOutcome, BudgetExceeded> {
    evaluate_ibm_slice(a, m, 0..a.len(), budget)
}

/// [`evaluate_ibm`] restricted to tuples whose first coordinate lies in
/// `first`. The lexicographically first falsifier overall is the first
/// falsifier of the earliest slice that has one.
pub fn evaluate_ibm_slice(
    a: &PAlgebra,
    m: usize,
    first: Range<usize>,
    budget: u64,
) -> Result<IbOutcome, BudgetExceeded> {
    assert!(m >= 1, "ib_m is defined for m >= 1");
    let n = a.len();
    let arity = m + 1;
    let tuples = (n as u64).checked_pow(arity as u32).unwrap_or(u64::MAX);
    if tuples > budget {
        return Err(BudgetExceeded { what: "ib_m evaluation (tuples)", requested: tuples, limit: budget });
    }
    if first.is_empty() || n == 0 {
        return Ok(IbOutcome::Satisfied);
    }
    let mut xs = vec![0usize; arity];
    xs[0] = first.start;
    loop {
        if ibm_value(a, &xs) != a.one() {
            return Ok(IbOutcome::Falsified(xs));
        }
        // odometer, last coordinate fastest
        let mut i = arity;
        loop {
            if i == 0 {
                return Ok(IbOutcome::Satisfied);
            }
            i -= 1;
            xs[i] += 1;
            let limit = if i == 0 { first.end } else { n };
            if xs[i] < limit {
                break;
            }
            if i == 0 {
                return Ok(IbOutcome::Satisfied);
            }
            xs[i] = 0;
        }
    }
}

/// Componentwise product; element `(i, j)` has index `i * |b| + j`.
pub fn product(a: &PAlgebra, b: &PAlgebra) -> PAlgebra {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let pair = |i: usize, j: usize| i * nb + j;
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            meet[x * n + y] = pair(a.meet(xa, ya), b.meet(xb, yb));
            join[x * n + y] = pair(a.join(xa, ya), b.join(xb, yb));
        }
    }
    let star = (0..n).map(|x| pair(a.star(x / nb), b.star(x % nb))).collect();
    PAlgebra::from_tables(n, meet, join, star, pair(a.zero(), b.zero()), pair(a.one(), b.one()))
}

/// An injective map `a -> b` preserving meet, join, star, zero and one.
///
/// Backtracking with propagation: every fixed value forces the images of its
/// meets, joins and pseudocomplements with all other fixed values.
pub fn find_embedding(a: &PAlgebra, b: &PAlgebra) -> Option<Vec<usize>> {
    if a.len() > b.len() || a.is_empty() {
        return None;
    }
    let mut state = Embedding { a, b, map: vec![usize::MAX; a.len()], used: vec![false; b.len()], trail: Vec::new() };
    if !state.assign(a.zero(), b.zero()) || !state.assign(a.one(), b.one()) {
        return None;
    }
    if state.search() {
        Some(state.map)
    } else {
        None
    }
}

/// Whether two p-algebras are isomorphic as algebras.
pub fn algebras_isomorphic(a: &PAlgebra, b: &PAlgebra) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    find_embedding(a, b)
}

struct Embedding<'a> {
    a: &'a PAlgebra,
    b: &'a PAlgebra,
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl Embedding<'_> {
    /// Fixes `x -> y` and propagates; on conflict returns false, leaving the
    /// partial assignments on the trail for the caller to undo.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = VecDeque::new();
        queue.push_back((x, y));
        while let Some((x, y)) = queue.pop_front() {
            if self.map[x] != usize::MAX {
                if self.map[x] != y {
                    return false;
                }
                continue;
            }
            if self.used[y] {
                return false;
            }
            self.map[x] = y;
            self.used[y] = true;
            self.trail.push(x);
            queue.push_back((self.a.star(x), self.b.star(y)));
            for z in 0..self.a.len() {
                let w = self.map[z];
                if w == usize::MAX {
                    continue;
                }
                queue.push_back((self.a.meet(x, z), self.b.meet(y, w)));
                queue.push_back((self.a.join(x, z), self.b.join(y, w)));
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.used[self.map[x]] = false;
            self.map[x] = usize::MAX;
        }
    }

    fn search(&mut self) -> bool {
        let Some(x) = self.map.iter().position(|&v| v == usize::MAX) else {
            return true;
        };
        for y in 0..self.b.len() {
            if self.used[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}
