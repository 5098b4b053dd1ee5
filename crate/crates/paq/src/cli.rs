//! Command-line front end.
//!
//! Exit status: 0 when the answer is yes or the check passes, 1 when it is
//! no or the check fails, 2 on usage, parse or IO errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use paq_core::duality::{delta, epsilon, evaluate_ibm, is_p_algebra, IbOutcome, PAlgebra};
use paq_core::morphism::{enumerate_pp_morphisms, exists_surjective_pp, find_pp_morphism, pp_morphic_images};
use paq_core::quasivar::{
    contains_pa_m, in_pa_m, is_cover_among_reduced, is_cover_exhaustive, member, reduction, shrink_to_base,
    the_cover, ReducedPoset, EXHAUSTIVE_MAX_M,
};
use paq_core::{ElemSet, Poset};

use crate::budget::Budget;
use crate::dot::to_dot;
use crate::format::{
    parse_algebra, parse_algebra_tables, parse_any_poset, parse_certificate, parse_poset, parse_reduced, sniff,
    write_algebra, write_poset, write_ppmap, write_reduced, FormatError,
};
use crate::verify::{self, CheckReport, Mutation};

#[derive(Parser, Debug)]
#[command(name = "paq", version, about = "Quasivarieties of finite p-algebras through their dual posets")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Human-readable text.
    Text,
    /// One JSON object per line.
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a poset, algebra, reduced-poset or certificate file.
    Validate { file: PathBuf },
    /// Check the maps in a certificate file as pp-morphisms.
    CheckPp {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Search for pp-morphisms between two posets.
    FindPp {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Only surjective maps.
        #[arg(long)]
        surjective: bool,
        /// List every map instead of the first.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        cert: CertArg,
    },
    /// Decide whether the target lies in the quasivariety of the generators.
    Member {
        #[arg(long)]
        target: PathBuf,
        #[arg(long = "gen", required = true)]
        gens: Vec<PathBuf>,
        #[command(flatten)]
        cert: CertArg,
    },
    /// Decide inclusion of the quasivariety of the first poset in that of the second.
    Leq {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        cert: CertArg,
    },
    /// Decide whether the algebra of up-sets lies in Pa_m.
    InPam {
        file: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Decide whether Pa_m is contained in the quasivariety of the poset.
    ContainsPam {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        cert: CertArg,
    },
    /// Collapse elements with the same maxima above them.
    Reduce { file: PathBuf },
    /// Quotient a reduced poset onto a base of m+1 elements.
    Shrink {
        file: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Print the cover of Pa_m, or test whether a reduced poset is one.
    Cover {
        #[arg(long)]
        m: usize,
        /// Write the Hasse diagram here instead of printing it.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Reduced poset to test instead of printing the cover.
        #[arg(long)]
        test: Option<PathBuf>,
        /// Also decide by brute force over all reduced posets (m <= 3).
        #[arg(long)]
        exhaustive: bool,
    },
    /// List the surjective pp-morphic images of a poset.
    Images {
        file: PathBuf,
        /// Only reduced images.
        #[arg(long)]
        reduced: bool,
        /// Largest source size accepted.
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Dump the p-algebra of up-sets.
    Epsilon { file: PathBuf },
    /// Poset of join-irreducibles of a p-algebra.
    Delta { file: PathBuf },
    /// Evaluate the identity ib_m on an algebra (or on the up-sets of a poset).
    Ibm {
        file: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Run verification checks.
    Verify(VerifyArgs),
    /// Re-verify a membership certificate.
    CheckCert {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long = "gen", required = true)]
        gens: Vec<PathBuf>,
        /// Accept maps whose images do not cover the target.
        #[arg(long)]
        partial: bool,
    },
    /// Hasse diagram in Graphviz format.
    Dot {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "P")]
        name: String,
    },
}

#[derive(Args, Debug)]
struct CertArg {
    /// Write the certificate to this file.
    #[arg(long = "cert")]
    path: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: CheckName,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    arrow_max: Option<usize>,
    /// Seed a fault to confirm the check notices it.
    #[arg(long, value_enum)]
    mutate: Option<MutationArg>,
    /// Write one JSON record per check to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write each check's certificates into this directory.
    #[arg(long)]
    cert_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckName {
    All,
    LemmaMplus1,
    M2Chain,
    UniqueCover,
    ImagesR,
    Duality,
    Calfg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MutationArg {
    DropMaximaPreservation,
    CorruptStar,
    SkipCoverFamily,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::DropMaximaPreservation => Mutation::DropMaximaPreservation,
            MutationArg::CorruptStar => Mutation::CorruptStar,
            MutationArg::SkipCoverFamily => Mutation::SkipCoverFamily,
        }
    }
}

/// Error that ends a command with exit status 2.
#[derive(Debug)]
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<bool, Fatal>;

struct Out {
    format: OutputFormat,
}

impl Out {
    fn text(&self, s: &str) {
        if self.format == OutputFormat::Text {
            print!("{s}");
            if !s.is_empty() && !s.ends_with('\n') {
                println!();
            }
        }
    }

    fn record(&self, v: Value) {
        if self.format == OutputFormat::Records {
            println!("{v}");
        }
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fatal> {
    fs::write(path, text).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<Poset, Fatal> {
    parse_any_poset(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load_reduced(path: &Path) -> Result<ReducedPoset, Fatal> {
    parse_reduced(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load_gens(paths: &[PathBuf]) -> Result<Vec<Poset>, Fatal> {
    paths.iter().map(|p| load_poset(p)).collect()
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return 2;
        }
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let out = Out { format: cli.format };
    match dispatch(cli.command, &out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &Out) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file, out),
        Command::CheckPp { source, target, map } => check_pp(&source, &target, &map, out),
        Command::FindPp { source, target, surjective, all, limit, cert } => {
            find_pp(&source, &target, surjective, all, limit, cert.path.as_deref(), out)
        }
        Command::Member { target, gens, cert } => {
            let x = load_poset(&target)?;
            let gens = load_gens(&gens)?;
            decide_member("member", &x, &gens, cert.path.as_deref(), out)
        }
        Command::Leq { first, second, cert } => {
            let p = load_poset(&first)?;
            let q = load_poset(&second)?;
            decide_member("leq", &p, &[q], cert.path.as_deref(), out)
        }
        Command::InPam { file, m } => in_pam(&file, m, out),
        Command::ContainsPam { file, m, cert } => contains_pam(&file, m, cert.path.as_deref(), out),
        Command::Reduce { file } => reduce(&file, out),
        Command::Shrink { file, m } => shrink(&file, m, out),
        Command::Cover { m, dot, test, exhaustive } => cover(m, dot.as_deref(), test.as_deref(), exhaustive, out),
        Command::Images { file, reduced, bound } => images(&file, reduced, bound, out),
        Command::Epsilon { file } => {
            let p = load_poset(&file)?;
            let a = epsilon(&p)?;
            out.text(&write_algebra(&a));
            out.record(json!({"command": "epsilon", "size": a.len(), "algebra": write_algebra(&a)}));
            Ok(true)
        }
        Command::Delta { file } => {
            let a = match parse_algebra(&read(&file)?) {
                Ok(a) => a,
                Err(e) if e.is_semantic() => {
                    out.text(&format!("{e}\n"));
                    out.record(json!({"command": "delta", "valid": false, "error": e.to_string()}));
                    return Ok(false);
                }
                Err(e) => return Err(Fatal(format!("{}: {e}", file.display()))),
            };
            let p = delta(&a)?;
            out.text(&write_poset(&p));
            out.record(json!({"command": "delta", "valid": true, "poset": write_poset(&p)}));
            Ok(true)
        }
        Command::Ibm { file, m } => ibm(&file, m, out),
        Command::Verify(args) => run_verify(args, out),
        Command::CheckCert { cert, target, gens, partial } => check_cert(&cert, &target, &gens, partial, out),
        Command::Dot { file, out: path, name } => {
            let p = load_poset(&file)?;
            let dot = to_dot(&p, &name);
            match path {
                Some(path) => write(&path, &dot)?,
                None => out.text(&dot),
            }
            out.record(json!({"command": "dot", "dot": dot}));
            Ok(true)
        }
    }
}

fn validate(file: &Path, out: &Out) -> Outcome {
    let text = read(file)?;
    let kind = sniff(&text).unwrap_or("").to_string();
    let result: Result<String, FormatError> = match kind.as_str() {
        "poset" => parse_poset(&text).map(|p| format!("poset with {} elements", p.len())),
        "palg" => parse_algebra(&text).map(|a| format!("p-algebra with {} elements", a.len())),
        "reduced" => parse_reduced(&text)
            .map(|r| format!("reduced poset on a {}-element base with {} elements", r.base_size(), r.realized().len())),
        "ppmap" => parse_certificate(&text).map(|c| format!("certificate with {} maps", c.len())),
        other => return Err(Fatal(format!("{}: unknown file kind `{other}`", file.display()))),
    };
    match result {
        Ok(what) => {
            out.text(&format!("valid {what}\n"));
            out.record(json!({"command": "validate", "kind": kind, "valid": true, "detail": what}));
            Ok(true)
        }
        Err(e) if e.is_semantic() => {
            out.text(&format!("invalid: {e}\n"));
            out.record(json!({"command": "validate", "kind": kind, "valid": false, "error": e.to_string()}));
            Ok(false)
        }
        Err(e) => Err(Fatal(format!("{}: {e}", file.display()))),
    }
}

fn check_pp(source: &Path, target: &Path, map: &Path, out: &Out) -> Outcome {
    let p = load_poset(source)?;
    let q = load_poset(target)?;
    let maps = parse_certificate(&read(map)?).map_err(|e| Fatal(format!("{}: {e}", map.display())))?;
    if maps.is_empty() {
        return Err(Fatal(format!("{}: no ppmap blocks", map.display())));
    }
    let mut ok = true;
    for (i, c) in maps.iter().enumerate() {
        let result = c.map.check(&p, &q);
        let verdict = match &result {
            Ok(()) => String::from("pp-morphism"),
            Err(e) => format!("not a pp-morphism: {e}"),
        };
        ok &= result.is_ok();
        out.text(&format!("map {i}: {verdict}\n"));
        out.record(json!({"command": "check-pp", "map": i, "valid": result.is_ok(), "detail": verdict}));
    }
    Ok(ok)
}

fn find_pp(
    source: &Path,
    target: &Path,
    surjective: bool,
    all: bool,
    limit: Option<usize>,
    cert: Option<&Path>,
    out: &Out,
) -> Outcome {
    let p = load_poset(source)?;
    let q = load_poset(target)?;
    let maps = if all {
        let mut maps = enumerate_pp_morphisms(&p, &q, None);
        if surjective {
            maps.retain(|h| h.is_surjective_onto(&q));
        }
        if let Some(limit) = limit {
            maps.truncate(limit);
        }
        maps
    } else if surjective {
        exists_surjective_pp(&p, &q).into_iter().collect()
    } else {
        find_pp_morphism(&p, &q, ElemSet::EMPTY).into_iter().collect()
    };
    let text: String = maps.iter().map(|h| write_ppmap(h, None)).collect();
    if let Some(path) = cert {
        write(path, &text)?;
    }
    if maps.is_empty() {
        out.text("no pp-morphism\n");
    } else {
        out.text(&text);
    }
    out.record(json!({
        "command": "find-pp",
        "found": maps.len(),
        "maps": maps.iter().map(|h| h.map.clone()).collect::<Vec<_>>(),
    }));
    Ok(!maps.is_empty())
}

fn decide_member(command: &str, x: &Poset, gens: &[Poset], cert: Option<&Path>, out: &Out) -> Outcome {
    let c = member(x, gens);
    if c.is_member() {
        let text: String = c.witnesses.iter().map(|(g, h)| write_ppmap(h, Some(*g))).collect();
        if let Some(path) = cert {
            write(path, &text)?;
        }
        out.text(&format!("member: {} maps cover the target\n{text}", c.witnesses.len()));
        out.record(json!({
            "command": command,
            "verdict": "member",
            "witnesses": c.witnesses.iter().map(|(g, h)| json!({"generator": g, "map": h.map})).collect::<Vec<_>>(),
        }));
        Ok(true)
    } else {
        let b = c.blocker.expect("non-members carry a blocker");
        out.text(&format!(
            "non-member: target element {b} ({}) is in no image of any pp-morphism from the generators\n",
            x.display_name(b)
        ));
        out.record(json!({"command": command, "verdict": "non-member", "blocker": b, "blocker_name": x.display_name(b)}));
        Ok(false)
    }
}

fn in_pam(file: &Path, m: usize, out: &Out) -> Outcome {
    let p = load_poset(file)?;
    let ok = in_pa_m(&p, m);
    if ok {
        out.text(&format!("in Pa_{m}: every element has at most {m} maxima above it\n"));
        out.record(json!({"command": "in-pam", "m": m, "verdict": true}));
    } else {
        let x = p.elements().find(|&x| p.max_set(x).len() > m).expect("some element has too many maxima");
        out.text(&format!(
            "not in Pa_{m}: element {x} ({}) has {} maxima above it\n",
            p.display_name(x),
            p.max_set(x).len()
        ));
        out.record(json!({"command": "in-pam", "m": m, "verdict": false, "witness": x}));
    }
    Ok(ok)
}

fn contains_pam(file: &Path, m: usize, cert: Option<&Path>, out: &Out) -> Outcome {
    let p = load_poset(file)?;
    match contains_pa_m(&p, m) {
        Some(h) => {
            let text = write_ppmap(&h, None);
            if let Some(path) = cert {
                write(path, &text)?;
            }
            out.text(&format!("contains Pa_{m}: surjection onto B_{m}\n{text}"));
            out.record(json!({"command": "contains-pam", "m": m, "verdict": true, "map": h.map}));
            Ok(true)
        }
        None => {
            out.text(&format!("does not contain Pa_{m}: no surjective pp-morphism onto B_{m}\n"));
            out.record(json!({"command": "contains-pam", "m": m, "verdict": false}));
            Ok(false)
        }
    }
}

fn reduce(file: &Path, out: &Out) -> Outcome {
    let p = load_poset(file)?;
    let red = reduction(&p);
    let text = format!("{}{}", write_poset(&red.poset), write_ppmap(&red.map, None));
    out.text(&text);
    out.record(json!({"command": "reduce", "poset": write_poset(&red.poset), "map": red.map.map}));
    Ok(true)
}

fn shrink(file: &Path, m: usize, out: &Out) -> Outcome {
    let p = load_reduced(file)?;
    match shrink_to_base(&p, m) {
        Ok(r) => {
            out.text(&write_reduced(&r));
            out.record(json!({"command": "shrink", "m": m, "reduced": write_reduced(&r)}));
            Ok(true)
        }
        Err(e) => {
            out.text(&format!("{e}\n"));
            out.record(json!({"command": "shrink", "m": m, "error": e.to_string()}));
            Ok(false)
        }
    }
}

fn cover(m: usize, dot: Option<&Path>, test: Option<&Path>, exhaustive: bool, out: &Out) -> Outcome {
    if exhaustive && m > EXHAUSTIVE_MAX_M {
        return Err(Fatal(format!("--exhaustive supports m <= {EXHAUSTIVE_MAX_M}")));
    }
    if let Some(path) = test {
        let p = load_reduced(path)?;
        let by_shape = match is_cover_among_reduced(&p, m) {
            Ok(b) => b,
            Err(e) => {
                out.text(&format!("{e}\n"));
                out.record(json!({"command": "cover", "m": m, "error": e.to_string()}));
                return Ok(false);
            }
        };
        let mut text = format!("cover of Pa_{m}: {by_shape}\n");
        let mut agree = true;
        if exhaustive {
            let brute = is_cover_exhaustive(&p, m)?;
            agree = brute == by_shape;
            writeln!(text, "exhaustive search: {brute}").unwrap();
        }
        out.text(&text);
        out.record(json!({"command": "cover", "m": m, "verdict": by_shape, "exhaustive_agrees": agree}));
        if !agree {
            return Err(Fatal(String::from("family-shape test and exhaustive search disagree")));
        }
        return Ok(by_shape);
    }
    let c = the_cover(m)?;
    let dot_text = to_dot(c.realized(), &format!("cover{m}"));
    let mut text = format!("{}{}", write_reduced(&c), write_poset(c.realized()));
    if exhaustive {
        writeln!(text, "# exhaustive search confirms the cover: {}", is_cover_exhaustive(&c, m)?).unwrap();
    }
    match dot {
        Some(path) => write(path, &dot_text)?,
        None => text.push_str(&dot_text),
    }
    out.text(&text);
    out.record(json!({
        "command": "cover",
        "m": m,
        "reduced": write_reduced(&c),
        "poset": write_poset(c.realized()),
        "dot": dot_text,
    }));
    Ok(true)
}

fn images(file: &Path, reduced_only: bool, bound: usize, out: &Out) -> Outcome {
    let p = load_poset(file)?;
    let mut images = pp_morphic_images(&p, bound)?;
    if reduced_only {
        images.retain(paq_core::morphism::is_reduced);
    }
    let mut text = format!("# {} images\n", images.len());
    for x in &images {
        text.push_str(&write_poset(x));
    }
    out.text(&text);
    out.record(json!({
        "command": "images",
        "count": images.len(),
        "images": images.iter().map(write_poset).collect::<Vec<_>>(),
    }));
    Ok(true)
}

fn ibm(file: &Path, m: usize, out: &Out) -> Outcome {
    if m == 0 {
        return Err(Fatal(String::from("--m must be at least 1")));
    }
    let text = read(file)?;
    let a: PAlgebra = if sniff(&text) == Some("palg") {
        let a = parse_algebra_tables(&text).map_err(|e| Fatal(format!("{}: {e}", file.display())))?;
        if let Err(v) = is_p_algebra(&a) {
            out.text(&format!("invalid p-algebra: {v}\n"));
            out.record(json!({"command": "ibm", "m": m, "error": v.to_string()}));
            return Ok(false);
        }
        a
    } else {
        epsilon(&parse_any_poset(&text).map_err(|e| Fatal(format!("{}: {e}", file.display())))?)?
    };
    let budget = Budget::from_env().map_err(Fatal)?;
    match evaluate_ibm(&a, m, budget.ib_tuples)? {
        IbOutcome::Satisfied => {
            out.text(&format!("ib_{m} holds on all {}-tuples\n", m + 1));
            out.record(json!({"command": "ibm", "m": m, "verdict": "satisfied"}));
            Ok(true)
        }
        IbOutcome::Falsified(xs) => {
            out.text(&format!("ib_{m} fails at {xs:?}\n"));
            out.record(json!({"command": "ibm", "m": m, "verdict": "falsified", "tuple": xs}));
            Ok(false)
        }
    }
}

fn run_verify(args: VerifyArgs, out: &Out) -> Outcome {
    let budget = Budget::from_env().map_err(Fatal)?;
    let mutation = args.mutate.map(Mutation::from);
    let reports: Vec<CheckReport> = match args.check {
        CheckName::All => verify::check_all(budget.ib_tuples)?,
        CheckName::LemmaMplus1 => vec![verify::check_lemma_mplus1(
            args.n_max.unwrap_or(6),
            args.m_max.unwrap_or(2),
            budget.ib_tuples,
            mutation,
        )?],
        CheckName::M2Chain => vec![verify::check_m2_chain()],
        CheckName::UniqueCover => vec![verify::check_unique_cover(args.m.unwrap_or(2), mutation)?],
        CheckName::ImagesR => vec![verify::check_images_r()],
        CheckName::Duality => {
            vec![verify::check_duality(args.n_max.unwrap_or(6), args.arrow_max.unwrap_or(4), mutation)?]
        }
        CheckName::Calfg => vec![verify::check_calfg(args.m.unwrap_or(2))?],
    };
    if let Some(dir) = &args.cert_dir {
        fs::create_dir_all(dir).map_err(|e| Fatal(format!("{}: {e}", dir.display())))?;
    }
    let mut records = String::new();
    for r in &reports {
        let cert_path = match &args.cert_dir {
            Some(dir) => {
                let suffix = r.params.get("m").map(|m| format!("-m{m}")).unwrap_or_default();
                let path = dir.join(format!("{}{suffix}.cert", r.name));
                write(&path, &r.certificate_text())?;
                Some(path.display().to_string())
            }
            None => None,
        };
        let record = json!({
            "name": r.name,
            "params": r.params,
            "verdict": r.verdict,
            "certificate_path": cert_path,
            "wall_time_ms": r.wall_time_ms,
            "notes": r.notes,
            "counterexample": r.counterexample,
        });
        records.push_str(&record.to_string());
        records.push('\n');
        out.text(&r.to_string());
        out.record(record);
    }
    if let Some(path) = &args.report {
        write(path, &records)?;
    }
    Ok(reports.iter().all(CheckReport::passed))
}

fn check_cert(cert: &Path, target: &Path, gens: &[PathBuf], partial: bool, out: &Out) -> Outcome {
    let x = load_poset(target)?;
    let gens = load_gens(gens)?;
    let maps = parse_certificate(&read(cert)?).map_err(|e| Fatal(format!("{}: {e}", cert.display())))?;
    let mut covered = ElemSet::EMPTY;
    let mut problems = Vec::new();
    for (i, c) in maps.iter().enumerate() {
        let Some(g) = gens.get(c.generator) else {
            problems.push(format!("map {i}: no generator {}", c.generator));
            continue;
        };
        match c.map.check(g, &x) {
            Ok(()) => covered = covered.union(c.map.image()),
            Err(e) => problems.push(format!("map {i}: {e}")),
        }
    }
    if !partial && covered != x.all() {
        let missing: Vec<usize> = x.all().difference(covered).iter().collect();
        problems.push(format!("target elements {missing:?} are not covered"));
    }
    let ok = problems.is_empty();
    let mut text = format!("{} maps checked: {}\n", maps.len(), if ok { "certificate valid" } else { "certificate invalid" });
    for p in &problems {
        writeln!(text, "  {p}").unwrap();
    }
    out.text(&text);
    out.record(json!({"command": "check-cert", "maps": maps.len(), "valid": ok, "problems": problems}));
    Ok(ok)
}
