//! Executable checks of the structural claims, each producing a report with
//! re-checkable certificates.
//!
//! Work inside a check is spread over the rayon pool; results are merged in
//! input order, so reports do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use paq_core::catalog;
use paq_core::duality::{algebras_isomorphic, delta, epsilon, evaluate_ibm, find_embedding, is_p_algebra, IbOutcome};
use paq_core::enumerate::enumerate_posets;
use paq_core::iso::{canonical_form, is_isomorphic};
use paq_core::morphism::{exists_surjection_from_copies, exists_surjective_pp, is_reduced, pp_morphic_images};
use paq_core::quasivar::{
    contains_pa_m, family_admits_pa_m, family_from_code, in_pa_m, is_cover_among_reduced, make_reduced, member,
    proper_nonsingleton_subsets, quasivariety_leq, reduction, slot_families_related, slot_family, the_cover,
    ReducedPoset,
};
use paq_core::{BudgetExceeded, ElemSet, Poset, PpMorphism};

use crate::format::{write_poset, write_ppmap, write_reduced};

/// Largest poset size the enumerating checks accept.
pub const MAX_CHECK_N: usize = 6;
/// Largest `m` the exhaustive checks accept.
pub const MAX_CHECK_M: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckVerdict {
    Pass,
    Fail,
}

/// A named piece of text attached to a report: a poset, a map, a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub label: String,
    pub text: String,
}

impl Artifact {
    fn new(label: impl Into<String>, text: impl Into<String>) -> Self {
        Artifact { label: label.into(), text: text.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub verdict: CheckVerdict,
    pub notes: Vec<String>,
    pub certificates: Vec<Artifact>,
    pub counterexample: Option<Artifact>,
    pub wall_time_ms: f64,
}

impl CheckReport {
    fn start(name: &str) -> (CheckReport, Instant) {
        let report = CheckReport {
            name: name.to_string(),
            params: BTreeMap::new(),
            verdict: CheckVerdict::Pass,
            notes: Vec::new(),
            certificates: Vec::new(),
            counterexample: None,
            wall_time_ms: 0.0,
        };
        (report, Instant::now())
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Records a failure; the first counterexample given is kept.
    fn fail(&mut self, why: impl Into<String>, counterexample: Option<Artifact>) {
        self.verdict = CheckVerdict::Fail;
        self.notes.push(format!("FAIL: {}", why.into()));
        if self.counterexample.is_none() {
            self.counterexample = counterexample;
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(format!("ok: {what}"));
        } else {
            self.fail(what, None);
        }
    }

    fn finish(mut self, started: Instant) -> CheckReport {
        self.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == CheckVerdict::Pass
    }

    /// All certificates in one text blob, for writing to a file.
    pub fn certificate_text(&self) -> String {
        let mut out = String::new();
        for c in self.certificates.iter().chain(&self.counterexample) {
            out.push_str(&format!("# {}\n{}", c.label, c.text));
            if !c.text.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "{verdict} {} [{}] {:.1} ms", self.name, params.join(" "), self.wall_time_ms)?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample ({}):", c.label)?;
            for l in c.text.lines() {
                writeln!(f, "    {l}")?;
            }
        }
        Ok(())
    }
}

/// Faults that can be seeded into the checks to confirm they notice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// The arrow test in [`check_duality`] accepts any monotone surjection.
    DropMaximaPreservation,
    /// [`check_lemma_mplus1`] sets `star(0) = 0` in every algebra.
    CorruptStar,
    /// [`check_unique_cover`] skips the family of the expected cover.
    SkipCoverFamily,
}

#[derive(Debug)]
pub enum VerifyError {
    Budget(BudgetExceeded),
    Parameter(String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Budget(e) => e.fmt(f),
            VerifyError::Parameter(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<BudgetExceeded> for VerifyError {
    fn from(e: BudgetExceeded) -> Self {
        VerifyError::Budget(e)
    }
}

fn over(what: &'static str, requested: usize, limit: usize) -> Result<(), VerifyError> {
    if requested > limit {
        return Err(BudgetExceeded { what, requested: requested as u64, limit: limit as u64 }.into());
    }
    Ok(())
}

/// Max-set criterion against brute-force evaluation of `ib_m` on `ε(p)`, for
/// every poset with at most `n_max` elements and every `1 <= m <= m_max`.
pub fn check_lemma_mplus1(
    n_max: usize,
    m_max: usize,
    ib_budget: u64,
    mutation: Option<Mutation>,
) -> Result<CheckReport, VerifyError> {
    over("poset size for lemma-mplus1", n_max, MAX_CHECK_N)?;
    over("m for lemma-mplus1", m_max, MAX_CHECK_M)?;
    let (mut report, started) = CheckReport::start("lemma-mplus1");
    report.param("n_max", n_max);
    report.param("m_max", m_max);
    let posets = enumerate_posets(n_max)?;
    let corrupt = mutation == Some(Mutation::CorruptStar);
    let outcomes: Vec<Result<Option<(String, Artifact)>, BudgetExceeded>> = posets
        .par_iter()
        .map(|p| {
            let mut a = epsilon(p)?;
            if corrupt {
                let zero = a.zero();
                a.star_table_mut()[zero] = zero;
            }
            if let Err(v) = is_p_algebra(&a) {
                return Ok(Some((
                    format!("epsilon of a {}-element poset is not a p-algebra: {v}", p.len()),
                    Artifact::new("poset", write_poset(p)),
                )));
            }
            for m in 1..=m_max {
                let by_maxsets = in_pa_m(p, m);
                let by_identity = evaluate_ibm(&a, m, ib_budget)?;
                if by_maxsets != by_identity.is_satisfied() {
                    let detail = match by_identity {
                        IbOutcome::Satisfied => String::from("identity holds"),
                        IbOutcome::Falsified(xs) => format!("identity fails at {xs:?}"),
                    };
                    return Ok(Some((
                        format!("m={m}: max-set criterion says {by_maxsets}, {detail}"),
                        Artifact::new("poset", write_poset(p)),
                    )));
                }
            }
            Ok(None)
        })
        .collect();
    let mut checked = 0usize;
    for outcome in outcomes {
        if let Some((why, cex)) = outcome? {
            report.fail(why, Some(cex));
            break;
        }
        checked += 1;
    }
    report.note(format!("{checked} of {} posets agree for m = 1..={m_max}", posets.len()));
    Ok(report.finish(started))
}

fn copies_text(witnesses: &[(usize, PpMorphism)]) -> String {
    witnesses.iter().map(|(g, h)| write_ppmap(h, Some(*g))).collect()
}

/// The chain `Pa₂ ⊊ Q(one-of-three) ⊊ Q(two) ⊊ Q(one) ⊊ Pa₃` among the
/// reduced posets on a 3-base, with certificates for every inclusion and a
/// blocker for every failed reverse inclusion.
pub fn check_m2_chain() -> CheckReport {
    let (mut report, started) = CheckReport::start("m2-chain");
    report.param("m", 2);
    let (p, q, r) = (catalog::one_pair(), catalog::two_pairs(), catalog::three_pairs());
    let b2 = Poset::bm(2);
    let b3 = make_reduced(3, &[]).expect("valid").into_realized();
    let named: [(&str, &Poset); 5] =
        [("B2", &b2), ("R", r.realized()), ("Q", q.realized()), ("P", p.realized()), ("B3", &b3)];

    for (name, x) in &named[1..4] {
        report.require(contains_pa_m(x, 2).is_some(), format!("{name} maps onto B2"));
        report.require(!in_pa_m(x, 2), format!("{name} has an element below three maxima"));
    }

    let mut witnesses_for = BTreeMap::new();
    for pair in named.windows(2) {
        let ((lo_name, lo), (hi_name, hi)) = (pair[0], pair[1]);
        let up = member(lo, std::slice::from_ref(hi));
        let down = member(hi, std::slice::from_ref(lo));
        let up_ok = up.is_member() && up.recheck(lo, std::slice::from_ref(hi));
        report.require(
            up_ok,
            format!("{lo_name} is covered by {} copies of {hi_name}", up.witnesses.len()),
        );
        if up_ok {
            report.certificates.push(Artifact::new(
                format!("{hi_name} copies onto {lo_name}"),
                copies_text(&up.witnesses),
            ));
        }
        let blocker = down.blocker;
        let down_ok = !down.is_member() && down.recheck(hi, std::slice::from_ref(lo));
        report.require(
            down_ok,
            format!(
                "{hi_name} is not covered by copies of {lo_name}; blocker {}",
                blocker.map_or_else(|| String::from("-"), |b| hi.display_name(b))
            ),
        );
        witnesses_for.insert(lo_name, up.witnesses);
    }

    let q_from_p = &witnesses_for["Q"];
    let r_from_q = &witnesses_for["R"];
    report.require(q_from_p.len() <= 2, "P covers Q with at most two copies");
    report.require(r_from_q.len() <= 2, "Q covers R with at most two copies");

    let q_blocker = member(q.realized(), std::slice::from_ref(r.realized())).blocker;
    report.require(q_blocker == Some(0), "the blocker for Q over R is the bottom of Q");
    let p_blocker = member(p.realized(), std::slice::from_ref(q.realized())).blocker;
    report.require(p_blocker == Some(0), "the blocker for P over Q is the bottom of P");

    // Composition gives four copies of P onto R.
    let mut composed = Vec::new();
    for (_, h) in q_from_p {
        for (_, k) in r_from_q {
            composed.push(h.then(k));
        }
    }
    let mut image = ElemSet::EMPTY;
    let mut all_valid = true;
    for c in &composed {
        all_valid &= c.check(p.realized(), r.realized()).is_ok();
        image = image.union(c.image());
    }
    report.require(
        all_valid && image == r.realized().all() && composed.len() <= 4,
        format!("{} composed copies of P cover R", composed.len()),
    );
    report.certificates.push(Artifact::new(
        "P copies onto R (composed)",
        composed.iter().map(|h| write_ppmap(h, Some(0))).collect::<String>(),
    ));

    // The hand-drawn maps.
    let fig: Vec<(&str, bool)> = vec![
        (
            "hand-built P copies onto Q",
            catalog::one_pair_onto_two_pairs().iter().all(|h| h.check(p.realized(), q.realized()).is_ok()),
        ),
        (
            "hand-built Q copies onto R",
            catalog::two_pairs_onto_three_pairs().iter().all(|h| h.check(q.realized(), r.realized()).is_ok()),
        ),
        ("folding Q onto P breaks maxima", catalog::failed_fold_two_to_one().check(q.realized(), p.realized()).is_err()),
        (
            "folding R onto Q breaks maxima",
            catalog::failed_fold_three_to_two().check(r.realized(), q.realized()).is_err(),
        ),
    ];
    for (what, ok) in fig {
        report.require(ok, what);
    }
    report.finish(started)
}

/// Every reduced poset over an `(m+1)`-base, minimal ones above `Paₘ`.
pub fn check_unique_cover(m: usize, mutation: Option<Mutation>) -> Result<CheckReport, VerifyError> {
    if m < 2 {
        return Err(VerifyError::Parameter(format!("unique-cover needs m >= 2, got {m}")));
    }
    over("m for unique-cover", m, MAX_CHECK_M)?;
    let (mut report, started) = CheckReport::start("unique-cover");
    report.param("m", m);
    let k = m + 1;
    let subsets = proper_nonsingleton_subsets(k);
    let total = 1u64 << subsets.len();
    let expected = the_cover(m).expect("m >= 2");
    let skip_family: Vec<ElemSet> = expected.family().to_vec();

    let mut families = Vec::new();
    for code in 0..total {
        let family = family_from_code(&subsets, code);
        let reduced = make_reduced(k, &family).expect("families over the base are valid");
        if mutation == Some(Mutation::SkipCoverFamily) && reduced.family() == skip_family.as_slice() {
            continue;
        }
        families.push((family, reduced));
    }
    report.require(
        families.len() as u64 == total,
        format!("enumerated {} of {total} families", families.len()),
    );

    // Which families admit Pa_m, by the family shape and by direct search.
    let admits: Vec<(bool, bool)> = families
        .par_iter()
        .map(|(family, reduced)| {
            let by_shape = family_admits_pa_m(k, family, m).expect("shape checked").is_some();
            let by_search = contains_pa_m(reduced.realized(), m).is_some();
            (by_shape, by_search)
        })
        .collect();
    let mut candidates: Vec<&ReducedPoset> = Vec::new();
    for ((_, reduced), &(by_shape, by_search)) in families.iter().zip(&admits) {
        if by_shape != by_search {
            report.fail(
                format!("family shape says {by_shape}, search says {by_search}"),
                Some(Artifact::new("reduced poset", write_reduced(reduced))),
            );
        }
        if by_search {
            candidates.push(reduced);
        }
    }
    report.note(format!("{} families contain Pa_{m}", candidates.len()));
    let above: Vec<&ReducedPoset> = candidates.into_iter().filter(|c| !in_pa_m(c.realized(), m)).collect();

    let n = above.len();
    let leq: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| i == j || quasivariety_leq(above[i].realized(), above[j].realized())).collect())
        .collect();
    let minimal: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| !leq[j][i] || leq[i][j])).collect();

    let mut classes: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for &i in &minimal {
        classes.entry(canonical_form(above[i].realized())).or_default().push(i);
    }
    report.note(format!(
        "{} minimal families in {} isomorphism class(es)",
        minimal.len(),
        classes.len()
    ));
    report.require(classes.len() == 1, "exactly one cover up to isomorphism");
    if let Some(&i) = minimal.first() {
        let iso = is_isomorphic(above[i].realized(), expected.realized()).is_some();
        if iso {
            report.note("the cover is isomorphic to the expected one");
        } else {
            report.fail(
                "minimal family is not isomorphic to the expected cover",
                Some(Artifact::new("minimal reduced poset", write_reduced(above[i]))),
            );
        }
        report.certificates.push(Artifact::new("cover", write_reduced(above[i])));
    }

    let disagreement = above.iter().enumerate().find(|&(i, c)| {
        is_cover_among_reduced(c, m).expect("candidates satisfy the preconditions") != minimal.contains(&i)
    });
    match disagreement {
        Some((_, c)) => report.fail(
            "family-shape cover test disagrees with the exhaustive order",
            Some(Artifact::new("reduced poset", write_reduced(c))),
        ),
        None => report.note("ok: family-shape cover test matches the exhaustive order"),
    }

    if m == 2 {
        for (name, x) in [("P", catalog::one_pair()), ("Q", catalog::two_pairs())] {
            let excluded = minimal.iter().all(|&i| is_isomorphic(above[i].realized(), x.realized()).is_none());
            report.require(excluded, format!("{name} is not a cover"));
        }
    }
    Ok(report.finish(started))
}

/// Images of the three-pair poset over a 3-base.
pub fn check_images_r() -> CheckReport {
    let (mut report, started) = CheckReport::start("images-r");
    let r = catalog::three_pairs();
    let images = pp_morphic_images(r.realized(), r.realized().len()).expect("seven elements is within bound");
    let reduced: Vec<&Poset> = images.iter().filter(|x| is_reduced(x)).collect();
    report.note(format!("{} images up to isomorphism, {} of them reduced", images.len(), reduced.len()));

    let b2 = Poset::bm(2);
    let shapes = [("R", r.realized().clone()), ("B2", b2.clone()), ("point", Poset::point())];
    let mut matched = [false; 3];
    for x in &reduced {
        match shapes.iter().position(|(_, s)| is_isomorphic(x, s).is_some()) {
            Some(i) => matched[i] = true,
            None => report.fail("unexpected reduced image", Some(Artifact::new("image", write_poset(x)))),
        }
    }
    report.require(reduced.len() == 3 && matched.iter().all(|&b| b), "reduced images are R, B2 and the point");

    // Every image collapses onto one of the three by its reduction, which
    // stays inside the image's quasivariety.
    let mut collapses = true;
    for x in &images {
        let red = reduction(x).poset;
        let same_class =
            shapes.iter().any(|(_, s)| is_isomorphic(&red, s).is_some()) && quasivariety_leq(&red, x);
        if !same_class {
            collapses = false;
            report.fail("an image reduces to an unexpected poset", Some(Artifact::new("image", write_poset(x))));
        }
    }
    report.require(collapses, "every image reduces to R, B2 or the point, inside its own quasivariety");

    let found = |shape: &Poset| reduced.iter().find(|x| is_isomorphic(x, shape).is_some()).copied();
    report.require(
        found(&b2).is_some_and(|x| quasivariety_leq(x, &b2) && quasivariety_leq(&b2, x)),
        "the B2 image generates Pa_2",
    );
    report.require(
        found(&Poset::point()).is_some_and(|x| contains_pa_m(x, 2).is_none()),
        "the point image does not contain Pa_2",
    );
    for (name, s) in &shapes {
        report.certificates.push(Artifact::new(format!("image {name}"), write_poset(s)));
    }
    report.finish(started)
}

/// Brute-force stand-in for [`exists_surjective_pp`] that only asks for a
/// monotone surjection.
fn exists_monotone_surjection(p: &Poset, q: &Poset) -> bool {
    fn go(p: &Poset, q: &Poset, x: usize, map: &mut Vec<usize>) -> bool {
        if x == p.len() {
            return map.iter().copied().collect::<ElemSet>() == q.all();
        }
        for y in q.elements() {
            if (0..x).all(|z| (!p.leq(z, x) || q.leq(map[z], y)) && (!p.leq(x, z) || q.leq(y, map[z]))) {
                map.push(y);
                if go(p, q, x + 1, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(p, q, 0, &mut Vec::new())
}

/// Round trips between posets and their algebras of up-sets, and the
/// correspondence between surjective pp-morphisms and subalgebras.
pub fn check_duality(n_max: usize, arrow_max: usize, mutation: Option<Mutation>) -> Result<CheckReport, VerifyError> {
    over("poset size for duality", n_max, MAX_CHECK_N)?;
    over("poset size for the arrow test", arrow_max, 5)?;
    let (mut report, started) = CheckReport::start("duality");
    report.param("n_max", n_max);
    report.param("arrow_max", arrow_max);
    let posets = enumerate_posets(n_max)?;

    let trips: Vec<Option<(String, Artifact)>> = posets
        .par_iter()
        .map(|p| {
            let cex = || Artifact::new("poset", write_poset(p));
            let a = match epsilon(p) {
                Ok(a) => a,
                Err(e) => return Some((e.to_string(), cex())),
            };
            let back = match delta(&a) {
                Ok(d) => d,
                Err(e) => return Some((format!("epsilon output rejected: {e}"), cex())),
            };
            if is_isomorphic(&back, p).is_none() {
                return Some((String::from("delta(epsilon(p)) is not isomorphic to p"), cex()));
            }
            if p.len() <= 5 {
                let again = epsilon(&back).expect("same size as p");
                if algebras_isomorphic(&again, &a).is_none() {
                    return Some((String::from("epsilon(delta(epsilon(p))) differs from epsilon(p)"), cex()));
                }
            }
            None
        })
        .collect();
    let failures = trips.iter().flatten().count();
    if let Some((why, cex)) = trips.into_iter().flatten().next() {
        report.fail(why, Some(cex));
    }
    report.note(format!(
        "round trips on {} posets ({} with the algebra round trip): {failures} failures",
        posets.len(),
        posets.iter().filter(|p| p.len() <= 5).count()
    ));

    let small: Vec<&Poset> = posets.iter().filter(|p| p.len() <= arrow_max).collect();
    let algebras: Vec<_> = small.iter().map(|p| epsilon(p).expect("small")).collect();
    let pairs: Vec<(usize, usize)> =
        (0..small.len()).flat_map(|i| (0..small.len()).map(move |j| (i, j))).collect();
    let drop_maxima = mutation == Some(Mutation::DropMaximaPreservation);
    let arrows: Vec<Option<(String, Artifact)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (p, q) = (small[i], small[j]);
            let onto = if drop_maxima {
                exists_monotone_surjection(p, q)
            } else {
                exists_surjective_pp(p, q).is_some()
            };
            let embeds = find_embedding(&algebras[j], &algebras[i]).is_some();
            (onto != embeds).then(|| {
                (
                    format!("surjection p ->> q: {onto}, embedding e(q) -> e(p): {embeds}"),
                    Artifact::new("p then q", format!("{}{}", write_poset(p), write_poset(q))),
                )
            })
        })
        .collect();
    let arrow_failures = arrows.iter().flatten().count();
    if let Some((why, cex)) = arrows.into_iter().flatten().next() {
        report.fail(why, Some(cex));
    }
    report.note(format!("arrow test on {} ordered pairs: {arrow_failures} failures", pairs.len()));
    Ok(report.finish(started))
}

/// A base permutation `φ` with `φ[F] ⊆ G`, searched directly.
fn permutation_maps_into(f: &[ElemSet], g: &[ElemSet], k: usize) -> bool {
    fn go(perm: &mut Vec<usize>, used: ElemSet, k: usize, f: &[ElemSet], g: &[ElemSet]) -> bool {
        if perm.len() == k {
            return f.iter().all(|s| g.contains(&s.iter().map(|a| perm[a]).collect()));
        }
        for b in 0..k {
            if !used.contains(b) {
                perm.push(b);
                let mut u = used;
                u.insert(b);
                if go(perm, u, k, f, g) {
                    return true;
                }
                perm.pop();
            }
        }
        false
    }
    go(&mut Vec::new(), ElemSet::EMPTY, k, f, g)
}

/// For all 64 ordered pairs of families drawn from `{p, q1, q2}`: copies of
/// `P_F` cover `P_G` iff `F` maps into `G` by a size-preserving exchange.
pub fn check_calfg(m: usize) -> Result<CheckReport, VerifyError> {
    if m < 2 {
        return Err(VerifyError::Parameter(format!("calfg needs m >= 2, got {m}")));
    }
    over("m for calfg", m, MAX_CHECK_M)?;
    let (mut report, started) = CheckReport::start("calfg");
    report.param("m", m);
    let posets: Vec<ReducedPoset> =
        (0..8u8).map(|mask| make_reduced(m + 1, &slot_family(mask, m)).expect("valid")).collect();
    let pairs: Vec<(u8, u8)> = (0..8u8).flat_map(|f| (0..8u8).map(move |g| (f, g))).collect();
    let rows: Vec<(u8, u8, Option<usize>, bool, bool)> = pairs
        .par_iter()
        .map(|&(f, g)| {
            let copies = exists_surjection_from_copies(posets[f as usize].realized(), posets[g as usize].realized())
                .map(|c| c.len());
            let rule = slot_families_related(f, g, m);
            let by_perm =
                permutation_maps_into(posets[f as usize].family(), posets[g as usize].family(), m + 1);
            (f, g, copies, rule, by_perm)
        })
        .collect();
    let slot = |mask: u8| -> String {
        let names: Vec<&str> =
            ["p", "q1", "q2"].iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, n)| *n).collect();
        format!("{{{}}}", names.join(","))
    };
    let mut table = String::new();
    let mut mismatches = 0;
    for &(f, g, copies, rule, by_perm) in &rows {
        let present = copies.is_some();
        table.push_str(&format!(
            "{:<10} {:<10} copies={:<5} rule={rule:<5} permutation={by_perm}\n",
            slot(f),
            slot(g),
            copies.map_or_else(|| String::from("-"), |c| c.to_string())
        ));
        if present != rule || rule != by_perm {
            mismatches += 1;
            if report.passed() {
                report.fail(
                    format!("F={} G={}: copies {present}, rule {rule}, permutation {by_perm}", slot(f), slot(g)),
                    None,
                );
            }
        }
    }
    report.note(format!("{} ordered pairs, {mismatches} mismatches", rows.len()));
    report.certificates.push(Artifact::new("table", table));
    Ok(report.finish(started))
}

/// Every check at its default size.
pub fn check_all(ib_budget: u64) -> Result<Vec<CheckReport>, VerifyError> {
    Ok(vec![
        check_lemma_mplus1(6, 2, ib_budget, None)?,
        check_m2_chain(),
        check_unique_cover(2, None)?,
        check_unique_cover(3, None)?,
        check_images_r(),
        check_duality(6, 4, None)?,
        check_calfg(2)?,
        check_calfg(3)?,
    ])
}
