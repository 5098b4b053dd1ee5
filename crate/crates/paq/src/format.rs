//! Line-oriented text formats.
//!
//! ```text
//! poset 3          palg 2           reduced 3        ppmap 2 0
//! le 0 1           meet 0 0 0       set 1,2          pair 0 1
//! label 0 bottom   ...              set 2,3          pair 1 2
//! ```
//!
//! `#` starts a comment anywhere on a line. Poset orders are closed
//! reflexively and transitively on load. Reduced-poset base elements are
//! numbered from 1. Certificate files hold any number of `ppmap` blocks; the
//! optional number after the size is the generator the map starts from.

use std::fmt::{self, Write as _};

use paq_core::duality::{is_p_algebra, PAlgebra};
use paq_core::quasivar::{make_reduced, ReducedPoset};
use paq_core::{AlgebraViolation, ElemSet, Poset, PosetError, PpMorphism, QuasivarError};

#[derive(Debug)]
pub enum FormatError {
    /// Malformed text; `line` is 1-based.
    Syntax { line: usize, message: String },
    /// Well-formed text describing something that is not a partial order.
    Poset(PosetError),
    Algebra(AlgebraViolation),
    Reduced(QuasivarError),
}

impl FormatError {
    /// Whether the text parsed but the object it describes is invalid.
    pub fn is_semantic(&self) -> bool {
        !matches!(self, FormatError::Syntax { .. })
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            FormatError::Poset(e) => write!(f, "invalid poset: {e}"),
            FormatError::Algebra(e) => write!(f, "invalid p-algebra: {e}"),
            FormatError::Reduced(e) => write!(f, "invalid reduced poset: {e}"),
        }
    }
}

impl std::error::Error for FormatError {}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number(line: usize, word: Option<&str>, what: &str) -> Result<usize, FormatError> {
    let word = word.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    word.parse().map_err(|_| syntax(line, format!("bad {what} `{word}`")))
}

fn index(line: usize, word: Option<&str>, n: usize) -> Result<usize, FormatError> {
    let i = number(line, word, "element index")?;
    if i >= n {
        return Err(syntax(line, format!("index {i} out of range for {n} elements")));
    }
    Ok(i)
}

fn no_more<'a>(line: usize, mut words: impl Iterator<Item = &'a str>) -> Result<(), FormatError> {
    match words.next() {
        Some(w) => Err(syntax(line, format!("unexpected `{w}`"))),
        None => Ok(()),
    }
}

fn header<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (line, text) = it.next().ok_or_else(|| syntax(1, format!("expected `{keyword} <n>`")))?;
    let mut words = text.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(syntax(line, format!("expected `{keyword} <n>`")));
    }
    Ok((line, words.collect()))
}

/// First keyword of the first non-comment line.
pub fn sniff(text: &str) -> Option<&str> {
    lines(text).next().and_then(|(_, l)| l.split_whitespace().next())
}

pub fn parse_poset(text: &str) -> Result<Poset, FormatError> {
    let mut it = lines(text);
    let (line, args) = header(&mut it, "poset")?;
    let n = number(line, args.first().copied(), "size")?;
    no_more(line, args.into_iter().skip(1))?;
    if n > paq_core::MAX_ELEMENTS {
        return Err(FormatError::Poset(PosetError::TooLarge { n, max: paq_core::MAX_ELEMENTS }));
    }
    let mut pairs = Vec::new();
    let mut labels: Vec<Option<String>> = vec![None; n];
    for (line, text) in it {
        let mut words = text.split_whitespace();
        match words.next() {
            Some("le") => {
                let i = index(line, words.next(), n)?;
                let j = index(line, words.next(), n)?;
                no_more(line, words)?;
                pairs.push((i, j));
            }
            Some("label") => {
                let i = index(line, words.next(), n)?;
                let rest: Vec<&str> = words.collect();
                if rest.is_empty() {
                    return Err(syntax(line, "missing label text"));
                }
                labels[i] = Some(rest.join(" "));
            }
            Some(other) => return Err(syntax(line, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }
    let mut p = Poset::from_le_pairs(n, &pairs).map_err(FormatError::Poset)?;
    for (i, l) in labels.into_iter().enumerate() {
        if let Some(l) = l {
            p.set_label(i, l);
        }
    }
    Ok(p)
}

/// Writes labels and the cover relation; re-parsing gives back the same order.
pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("poset {}\n", p.len());
    for x in p.elements() {
        if let Some(l) = p.label(x) {
            let clean: String = l.chars().map(|c| if c == '#' || c.is_control() { '_' } else { c }).collect();
            writeln!(out, "label {x} {clean}").unwrap();
        }
    }
    for (x, y) in p.covers() {
        writeln!(out, "le {x} {y}").unwrap();
    }
    out
}

/// Reads a poset from either the poset or the reduced-poset format.
pub fn parse_any_poset(text: &str) -> Result<Poset, FormatError> {
    match sniff(text) {
        Some("reduced") => Ok(parse_reduced(text)?.into_realized()),
        _ => parse_poset(text),
    }
}

/// Parses and validates an algebra dump.
pub fn parse_algebra(text: &str) -> Result<PAlgebra, FormatError> {
    let a = parse_algebra_tables(text)?;
    is_p_algebra(&a).map_err(FormatError::Algebra)?;
    Ok(a)
}

/// Parses an algebra dump without checking the axioms.
pub fn parse_algebra_tables(text: &str) -> Result<PAlgebra, FormatError> {
    let mut it = lines(text);
    let (line, args) = header(&mut it, "palg")?;
    let n = number(line, args.first().copied(), "size")?;
    no_more(line, args.into_iter().skip(1))?;
    if n == 0 {
        return Err(syntax(line, "an algebra needs at least one element"));
    }
    let mut meet = vec![None; n * n];
    let mut join = vec![None; n * n];
    let mut star = vec![None; n];
    let (mut zero, mut one) = (None, None);
    let set = |slot: &mut Option<usize>, v: usize, line: usize| -> Result<(), FormatError> {
        match slot {
            Some(old) if *old != v => Err(syntax(line, "conflicting table entry")),
            _ => {
                *slot = Some(v);
                Ok(())
            }
        }
    };
    for (line, text) in it {
        let mut words = text.split_whitespace();
        let keyword = words.next().expect("blank lines are skipped");
        match keyword {
            "meet" | "join" => {
                let i = index(line, words.next(), n)?;
                let j = index(line, words.next(), n)?;
                let k = index(line, words.next(), n)?;
                no_more(line, words)?;
                let table = if keyword == "meet" { &mut meet } else { &mut join };
                set(&mut table[i * n + j], k, line)?;
            }
            "star" => {
                let i = index(line, words.next(), n)?;
                let k = index(line, words.next(), n)?;
                no_more(line, words)?;
                set(&mut star[i], k, line)?;
            }
            "zero" | "one" => {
                let i = index(line, words.next(), n)?;
                no_more(line, words)?;
                set(if keyword == "zero" { &mut zero } else { &mut one }, i, line)?;
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let complete = |t: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>, FormatError> {
        t.iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| syntax(last, format!("missing {what} entry {i}"))))
            .collect()
    };
    let meet = complete(meet, "meet")?;
    let join = complete(join, "join")?;
    let star = complete(star, "star")?;
    let zero = zero.ok_or_else(|| syntax(last, "missing `zero`"))?;
    let one = one.ok_or_else(|| syntax(last, "missing `one`"))?;
    Ok(PAlgebra::from_tables(n, meet, join, star, zero, one))
}

pub fn write_algebra(a: &PAlgebra) -> String {
    let n = a.len();
    let mut out = format!("palg {n}\n");
    if let Some(upsets) = a.upsets() {
        for (i, u) in upsets.iter().enumerate() {
            writeln!(out, "# {i} = {u}").unwrap();
        }
    }
    for i in 0..n {
        for j in 0..n {
            writeln!(out, "meet {i} {j} {}", a.meet(i, j)).unwrap();
        }
    }
    for i in 0..n {
        for j in 0..n {
            writeln!(out, "join {i} {j} {}", a.join(i, j)).unwrap();
        }
    }
    for i in 0..n {
        writeln!(out, "star {i} {}", a.star(i)).unwrap();
    }
    writeln!(out, "zero {}", a.zero()).unwrap();
    writeln!(out, "one {}", a.one()).unwrap();
    out
}

pub fn parse_reduced(text: &str) -> Result<ReducedPoset, FormatError> {
    let mut it = lines(text);
    let (line, args) = header(&mut it, "reduced")?;
    let k = number(line, args.first().copied(), "base size")?;
    no_more(line, args.into_iter().skip(1))?;
    let mut family = Vec::new();
    for (line, text) in it {
        let mut words = text.split_whitespace();
        match words.next() {
            Some("set") => {
                let list = words.next().ok_or_else(|| syntax(line, "missing set members"))?;
                no_more(line, words)?;
                let mut s = ElemSet::EMPTY;
                for w in list.split(',').filter(|w| !w.is_empty()) {
                    let a: usize = w.parse().map_err(|_| syntax(line, format!("bad base element `{w}`")))?;
                    if a == 0 || a > k {
                        return Err(syntax(line, format!("base element {a} outside 1..={k}")));
                    }
                    s.insert(a - 1);
                }
                family.push(s);
            }
            Some(other) => return Err(syntax(line, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }
    make_reduced(k, &family).map_err(FormatError::Reduced)
}

pub fn write_reduced(p: &ReducedPoset) -> String {
    let mut out = format!("reduced {}\n", p.base_size());
    for s in p.family() {
        let names: Vec<String> = s.iter().map(|a| (a + 1).to_string()).collect();
        writeln!(out, "set {}", names.join(",")).unwrap();
    }
    out
}

/// One map of a certificate file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertMap {
    pub generator: usize,
    pub map: PpMorphism,
}

pub fn parse_certificate(text: &str) -> Result<Vec<CertMap>, FormatError> {
    let mut out = Vec::new();
    let mut current: Option<(usize, usize, Vec<Option<usize>>)> = None;
    let finish = |cur: Option<(usize, usize, Vec<Option<usize>>)>,
                  out: &mut Vec<CertMap>,
                  line: usize|
     -> Result<(), FormatError> {
        if let Some((_, generator, pairs)) = cur {
            let map = pairs
                .iter()
                .enumerate()
                .map(|(s, d)| d.ok_or_else(|| syntax(line, format!("no `pair` for source element {s}"))))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(CertMap { generator, map: PpMorphism::new(map) });
        }
        Ok(())
    };
    for (line, text) in lines(text) {
        let mut words = text.split_whitespace();
        match words.next() {
            Some("ppmap") => {
                finish(current.take(), &mut out, line)?;
                let k = number(line, words.next(), "source size")?;
                let generator = match words.next() {
                    Some(w) => w.parse().map_err(|_| syntax(line, format!("bad generator `{w}`")))?,
                    None => 0,
                };
                no_more(line, words)?;
                current = Some((line, generator, vec![None; k]));
            }
            Some("pair") => {
                let Some((_, _, pairs)) = current.as_mut() else {
                    return Err(syntax(line, "`pair` before `ppmap`"));
                };
                let s = index(line, words.next(), pairs.len())?;
                let d = number(line, words.next(), "target index")?;
                no_more(line, words)?;
                if pairs[s].is_some_and(|old| old != d) {
                    return Err(syntax(line, format!("source element {s} mapped twice")));
                }
                pairs[s] = Some(d);
            }
            Some(other) => return Err(syntax(line, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }
    let last = text.lines().count().max(1);
    finish(current, &mut out, last)?;
    Ok(out)
}

pub fn write_ppmap(h: &PpMorphism, generator: Option<usize>) -> String {
    let mut out = match generator {
        Some(g) => format!("ppmap {} {g}\n", h.len()),
        None => format!("ppmap {}\n", h.len()),
    };
    for (s, d) in h.map.iter().enumerate() {
        writeln!(out, "pair {s} {d}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use paq_core::iso::is_isomorphic;

    #[test]
    fn poset_round_trip() {
        let p = Poset::bm(3).with_labels(["bottom", "x", "y", "z"]);
        let back = parse_poset(&write_poset(&p)).unwrap();
        assert!(is_isomorphic(&p, &back).is_some());
        assert_eq!(back.label(0), Some("bottom"));
    }

    #[test]
    fn poset_errors() {
        assert!(matches!(parse_poset("poset 2\nle 0 1\nle 1 0\n"), Err(FormatError::Poset(_))));
        assert!(matches!(parse_poset("poset 2\nle 0 5\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_poset("# nothing\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_poset("poset 2\nfoo\n"), Err(FormatError::Syntax { line: 2, .. })));
    }

    #[test]
    fn reduced_round_trip() {
        let r = parse_reduced("reduced 3\nset 1,2\nset 1,3 # comment\nset 2,3\n").unwrap();
        assert_eq!(r.realized().len(), 7);
        assert_eq!(write_reduced(&r), "reduced 3\nset 1,2\nset 1,3\nset 2,3\n");
        assert!(parse_reduced("reduced 3\nset 0,1\n").is_err());
    }

    #[test]
    fn algebra_round_trip() {
        let a = paq_core::duality::epsilon(&Poset::bm(2)).unwrap();
        let back = parse_algebra(&write_algebra(&a)).unwrap();
        assert_eq!(back.meet_table(), a.meet_table());
        assert_eq!(back.star_table(), a.star_table());
        assert!(parse_algebra_tables("palg 2\nzero 0\n").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let h = PpMorphism::new(vec![2, 0, 1]);
        let text = format!("{}{}", write_ppmap(&h, Some(1)), write_ppmap(&h, None));
        let maps = parse_certificate(&text).unwrap();
        assert_eq!(maps, [CertMap { generator: 1, map: h.clone() }, CertMap { generator: 0, map: h }]);
        assert!(parse_certificate("ppmap 2\npair 0 0\n").is_err());
        assert!(parse_certificate("pair 0 0\n").is_err());
    }
}
