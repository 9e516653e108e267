//! The `ldiv` command-line tool: analyze family files, build the standard
//! constructions, run the lemma checkers and the extremal search, all with
//! JSON reports on stdout.
//!
//! Exit codes: 0 holds or success, 1 violated, 2 parse or usage error,
//! 3 internal error or exhausted budget, 4 not applicable.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    cross_product_bound_check, exhaustive_max_family, greedy_removal_to_closed,
    oddtown_pairs_check, SearchConfig, SearchMode, DEFAULT_BUDGET_NODES,
};
use crate::arith::{factorize, Prime};
use crate::constructions::{
    atomic_family, consecutive_parts, cross_extremal_families, s_family, subspace_stability_family,
    AtomSpec,
};
use crate::error::{Error, Result};
use crate::family::{
    format_family, is_k_closed, is_weakly_k_closed, parse_family, parse_header, parse_vectors,
    twin_decomposition, ClosureReport, SetFamily,
};
use crate::linalg::{rref_rows, SubspaceBasis, DEFAULT_ENUMERATION_BUDGET};
use crate::structure::{
    build_certificate_for_basis, check_bilinear_bound, check_claim_coordinates, check_lemma_prime,
    check_lemma_primepower, check_lemma_smalldim, compute_k_threshold, compute_stab_threshold,
    stability_projection, structure_decompose, Epsilon, StructureCertificate,
};
use crate::verdict::Status;

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

/// Environment variable overriding the default search node budget.
pub const BUDGET_ENV: &str = "LDIV_BUDGET_NODES";

#[derive(Debug, Parser)]
#[command(
    name = "ldiv",
    version,
    about = "Exact tooling for l-divisible set families"
)]
struct Cli {
    /// Omit the `meta` block (timing, version) so output is byte-stable.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report twin classes, span dimensions, structure and closure data.
    Analyze(AnalyzeArgs),
    /// Print a family file for one of the built-in constructions.
    Construct(ConstructArgs),
    /// Run one lemma or theorem checker.
    Verify(VerifyArgs),
    /// Exhaustive search for the largest valid family.
    Search(SearchArgs),
    /// Closure orders from the explicit threshold formulas.
    Threshold(ThresholdArgs),
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Family file, or a residue-vector file with `--vectors`.
    input: PathBuf,
    /// Primes for span dimensions and structure (default: primes dividing
    /// the file's modulus).
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u32>,
    /// Closure checks as `k:l`, e.g. `3:2`; repeatable.
    #[arg(long = "closure", value_name = "K:L")]
    closures: Vec<String>,
    /// Read general residue vectors and report on their span.
    #[arg(long)]
    vectors: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Generator {
    /// `S(n, l)`: unions of consecutive blocks of size `l`.
    S,
    /// All unions of atoms of the given sizes.
    Atomic,
    /// Subspace-and-hyperplane family that is `k`-wise divisible by `p`.
    Subspace,
    /// `k` families `2^([n] \ A_i)` for a partition `A_1..A_k`.
    Cross,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    generator: Generator,
    #[arg(long)]
    n: Option<usize>,
    /// Block size for `s`; modulus written to the file header.
    #[arg(long = "mod")]
    modulus: Option<u32>,
    /// Atom sizes for `atomic`, consecutive from coordinate 0.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Part sizes for `cross`, consecutive from coordinate 0.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    /// For `cross`: write `cross_<i>.fam` files here instead of stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lemma {
    Bilinear,
    Prime,
    Primepower,
    Smalldim,
    Odim,
    Oddtown,
    Removal,
    Cross,
    Structure,
    Stability,
    Coordinates,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    lemma: Lemma,
    /// Input files; `cross` takes one per family.
    #[arg(long = "in", value_name = "PATH", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    p: Option<u32>,
    /// The modulus `l` (default: the input file's modulus).
    #[arg(long = "mod")]
    modulus: Option<u32>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Form coefficients for `bilinear`.
    #[arg(long, value_delimiter = ',')]
    b: Vec<u32>,
    /// Partition classes as `0,1;2,3`.
    #[arg(long)]
    classes: Option<String>,
    /// Residual coordinates for `primepower`, or `I` for `coordinates`, as `0,4,5`.
    #[arg(long)]
    coords: Option<String>,
    /// Residual dimension bound for `primepower`.
    #[arg(long)]
    h: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Pairwise,
    Distinct,
    Repetition,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Pairwise => SearchMode::Pairwise,
            ModeArg::Distinct => SearchMode::Distinct,
            ModeArg::Repetition => SearchMode::Repetition,
        }
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "mod", default_value_t = 2)]
    modulus: u32,
    #[arg(long, default_value_t = 2)]
    k: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Pairwise)]
    mode: ModeArg,
    /// Node budget (default from `LDIV_BUDGET_NODES`, else 200000000).
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Directory for one family file per extremal class.
    #[arg(long, value_name = "DIR")]
    emit_extremal: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    #[arg(long)]
    l: u64,
    /// Also compute the stability threshold for this epsilon (`6`, `1/3`, `0.5`).
    #[arg(long)]
    epsilon: Option<String>,
}

/// A finished command: the JSON body and the exit code it implies.
struct Outcome {
    body: Value,
    code: i32,
    /// Plain-text output that replaces JSON (family files).
    text: Option<String>,
}

impl Outcome {
    fn json(body: Value, code: i32) -> Self {
        Outcome {
            body,
            code,
            text: None,
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Argument(_)
        | Error::Spec(_)
        | Error::Shape(_)
        | Error::Residue { .. }
        | Error::Modulus(_)
        | Error::ModulusRange(_) => 2,
        Error::Reduction(_)
        | Error::Structure(_)
        | Error::Budget { .. }
        | Error::SearchBudget { .. } => 3,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))
}

fn load_family(path: &Path) -> Result<(SetFamily, u32)> {
    let file = parse_family(&read(path)?)?;
    Ok((file.family, file.modulus))
}

fn load_basis(path: &Path) -> Result<SubspaceBasis> {
    let (n, modulus, rows) = parse_vectors(&read(path)?)?;
    rref_rows(Prime::new(modulus)?, n, rows)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Argument(format!("`{t}` is not a coordinate")))
        })
        .collect()
}

fn parse_classes(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';').map(parse_list).collect()
}

fn prime_divisors(m: u32) -> Vec<u32> {
    factorize(m as u64)
        .into_iter()
        .map(|(p, _)| p as u32)
        .collect()
}

fn closure_json(f: &SetFamily, r: &ClosureReport) -> Value {
    let witness: Option<Vec<Vec<usize>>> = r
        .witness
        .as_ref()
        .map(|_| r.witness_sets(f).iter().map(|v| v.support()).collect());
    json!({
        "k": r.k,
        "modulus": r.modulus,
        "holds": r.holds,
        "witness": witness,
        "stabilized_at": r.stabilized_at,
    })
}

fn certificate_summary(cert: &StructureCertificate) -> Value {
    json!({
        "d": cert.d,
        "h": cert.h,
        "sibling_class_sizes": cert.siblings.class_sizes(),
        "b_prime": cert.siblings.b_prime,
        "b_prime_size": cert.siblings.b_prime.len(),
        "c": cert.c,
        "dim_w": cert.dim_w,
        "i": cert.i,
        "atoms": cert.atoms,
        "b": cert.b,
        "dim_vb": cert.dim_vb,
        "two_h": 2 * cert.h,
        "checks": to_value(&cert.checks),
        "checks_pass": cert.checks.all(),
    })
}

fn analyze(args: &AnalyzeArgs) -> Result<Outcome> {
    if args.vectors {
        let basis = load_basis(&args.input)?;
        let cert = build_certificate_for_basis(&basis)?;
        let code = if cert.checks.all() { 0 } else { 3 };
        return Ok(Outcome::json(
            json!({
                "kind": "vectors",
                "n": basis.ncols(),
                "prime": basis.prime().get(),
                "dim": basis.dim(),
                "pivots": basis.pivots(),
                "structure": certificate_summary(&cert),
            }),
            code,
        ));
    }
    let (family, modulus) = load_family(&args.input)?;
    let primes = if args.primes.is_empty() {
        prime_divisors(modulus)
    } else {
        args.primes.clone()
    };
    let twins = twin_decomposition(&family);
    let mut per_prime = Vec::new();
    let mut code = 0;
    for &p in &primes {
        let prime = Prime::new(p)?;
        let r = structure_decompose(&family, prime)?;
        if !r.all_checks() {
            code = 3;
        }
        let mut summary = certificate_summary(&r.certificate);
        summary["b"] = to_value(&r.b);
        summary["b_size"] = json!(r.b.len());
        summary["dim_fb"] = json!(r.dim_fb);
        summary["all_checks"] = json!(r.all_checks());
        per_prime.push(json!({
            "p": p,
            "dim": r.d,
            "dim_doubled": r.d + r.h,
            "h": r.h,
            "structure": summary,
        }));
    }
    let mut closures = Vec::new();
    for spec in &args.closures {
        let (k, l) = spec
            .split_once(':')
            .ok_or_else(|| Error::Argument(format!("closure spec `{spec}` is not `k:l`")))?;
        let k: u64 = k
            .parse()
            .map_err(|_| Error::Argument(format!("bad k in `{spec}`")))?;
        let l: u32 = l
            .parse()
            .map_err(|_| Error::Argument(format!("bad l in `{spec}`")))?;
        let strong = is_k_closed(&family, k, l)?;
        let weak = is_weakly_k_closed(&family, k, l)?;
        closures.push(json!({
            "k": k,
            "l": l,
            "closed": closure_json(&family, &strong),
            "weakly_closed": closure_json(&family, &weak),
        }));
    }
    Ok(Outcome::json(
        json!({
            "kind": "family",
            "n": family.ground_size(),
            "modulus": modulus,
            "family_size": family.len(),
            "twin_classes": twins.class_sets(),
            "twin_class_sizes": twins.class_sizes(),
            "uncovered": twins.uncovered,
            "primes": per_prime,
            "closure": closures,
        }),
        code,
    ))
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Argument(format!("{what} needs --{flag}")))
}

fn construct(args: &ConstructArgs) -> Result<Outcome> {
    let family_text = |f: &SetFamily, m: u32| Outcome {
        body: Value::Null,
        code: 0,
        text: Some(format_family(f, m)),
    };
    match args.generator {
        Generator::S => {
            let n = need(args.n, "n", "construct s")?;
            let l = need(args.modulus, "mod", "construct s")?;
            if l < 2 {
                return Err(Error::Spec("block size must be at least 2".into()));
            }
            Ok(family_text(&s_family(n, l as usize), l))
        }
        Generator::Atomic => {
            let n = need(args.n, "n", "construct atomic")?;
            let l = need(args.modulus, "mod", "construct atomic")?;
            let spec = AtomSpec::consecutive(n, &args.sizes)?;
            Ok(family_text(&atomic_family(&spec), l))
        }
        Generator::Subspace => {
            let p = need(args.p, "p", "construct subspace")?;
            let k = need(args.k, "k", "construct subspace")?;
            let q = need(args.q, "q", "construct subspace")?;
            let r = need(args.r, "r", "construct subspace")?;
            Ok(family_text(&subspace_stability_family(p, k, q, r)?, p))
        }
        Generator::Cross => {
            let n = need(args.n, "n", "construct cross")?;
            if args.parts.iter().sum::<usize>() != n {
                return Err(Error::Spec(format!(
                    "part sizes {:?} do not sum to n = {n}",
                    args.parts
                )));
            }
            let modulus = args.modulus.unwrap_or(2);
            let fams = cross_extremal_families(n, &consecutive_parts(&args.parts))?;
            match &args.out_dir {
                Some(dir) => {
                    fs::create_dir_all(dir).map_err(|e| {
                        Error::Argument(format!("cannot create {}: {e}", dir.display()))
                    })?;
                    let mut files = Vec::new();
                    for (i, f) in fams.iter().enumerate() {
                        let path = dir.join(format!("cross_{}.fam", i + 1));
                        write_file(&path, &format_family(f, modulus))?;
                        files.push(path.display().to_string());
                    }
                    Ok(Outcome::json(
                        json!({
                            "sizes": fams.iter().map(SetFamily::len).collect::<Vec<_>>(),
                            "files": files,
                        }),
                        0,
                    ))
                }
                None => {
                    let text = fams
                        .iter()
                        .enumerate()
                        .map(|(i, f)| format!("# family {}\n{}", i + 1, format_family(f, modulus)))
                        .collect::<Vec<_>>()
                        .join("\n");
                    Ok(Outcome {
                        body: Value::Null,
                        code: 0,
                        text: Some(text),
                    })
                }
            }
        }
    }
}

fn status_outcome(status: Status, lemma: Lemma, report: Value) -> Outcome {
    let mut body = json!({
        "lemma": to_value(&lemma_name(lemma)),
        "status": to_value(&status),
    });
    body["report"] = report;
    Outcome::json(body, status.exit_code())
}

fn lemma_name(l: Lemma) -> &'static str {
    match l {
        Lemma::Bilinear => "bilinear",
        Lemma::Prime => "prime",
        Lemma::Primepower => "primepower",
        Lemma::Smalldim => "smalldim",
        Lemma::Odim => "odim",
        Lemma::Oddtown => "oddtown",
        Lemma::Removal => "removal",
        Lemma::Cross => "cross",
        Lemma::Structure => "structure",
        Lemma::Stability => "stability",
        Lemma::Coordinates => "coordinates",
    }
}

type Pairs = Vec<(Vec<usize>, Vec<usize>)>;

/// Pairs file: the usual header, then one pair per line as two 0/1 strings.
fn load_pairs(path: &Path) -> Result<(usize, u32, Pairs)> {
    let text = read(path)?;
    let mut header = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let line_no = i + 1;
        let Some((n, _)) = header else {
            header = Some(parse_header(line_no, line)?);
            continue;
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: String| Error::Parse {
            line: line_no,
            message: msg,
        };
        if parts.len() != 2 {
            return Err(bad("expected two 0/1 strings `A B`".into()));
        }
        let mut pair = [Vec::new(), Vec::new()];
        for (slot, s) in pair.iter_mut().zip(&parts) {
            if s.len() != n {
                return Err(bad(format!(
                    "`{s}` has {} characters, expected {n}",
                    s.len()
                )));
            }
            for (j, c) in s.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => slot.push(j),
                    other => return Err(bad(format!("unexpected character `{other}`"))),
                }
            }
        }
        let [a, b] = pair;
        pairs.push((a, b));
    }
    let (n, m) = header.ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing `n=<int> mod=<int>` header".into(),
    })?;
    Ok((n, m, pairs))
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let input = &args.inputs[0];
    let lemma = args.lemma;
    match lemma {
        Lemma::Structure => {
            let (f, m) = load_family(input)?;
            let p = args.p.unwrap_or_else(|| prime_divisors(m)[0]);
            let r = structure_decompose(&f, Prime::new(p)?)?;
            let status = Status::from_bool(r.all_checks());
            Ok(status_outcome(
                status,
                lemma,
                json!({
                    "n": r.n, "prime": r.prime, "d": r.d, "h": r.h, "atoms": r.atoms, "b": r.b,
                    "dim_fb": r.dim_fb, "two_h": 2 * r.h,
                    "partition_valid": r.partition_valid,
                    "atoms_are_twin_classes": r.atoms_are_twin_classes,
                    "h_routes_agree": r.h_routes_agree,
                    "bound_holds": r.bound_holds,
                    "certificate": certificate_summary(&r.certificate),
                }),
            ))
        }
        Lemma::Bilinear => {
            let basis = load_basis(input)?;
            let r = check_bilinear_bound(&args.b, &basis)?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
        Lemma::Prime => {
            let (f, m) = load_family(input)?;
            let p = args.p.unwrap_or_else(|| prime_divisors(m)[0]);
            let basis = f.span(Prime::new(p)?)?;
            let classes = match &args.classes {
                Some(c) => parse_classes(c)?,
                None => twin_decomposition(&f).class_sets(),
            };
            let r = check_lemma_prime(&basis, &classes)?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
        Lemma::Primepower => {
            let (f, m) = load_family(input)?;
            let p = args.p.unwrap_or_else(|| prime_divisors(m)[0]);
            let prime = Prime::new(p)?;
            let alpha = need(args.alpha, "alpha", "verify primepower")?;
            let decomposition = structure_decompose(&f, prime)?;
            let classes = match &args.classes {
                Some(c) => parse_classes(c)?,
                None => decomposition.atoms.clone(),
            };
            let b = match &args.coords {
                Some(c) => parse_list(c)?,
                None => decomposition.b.clone(),
            };
            let h = args.h.unwrap_or(2 * decomposition.h);
            let r = check_lemma_primepower(&f, prime, alpha, &classes, &b, h)?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
        Lemma::Smalldim => {
            let (f, m) = load_family(input)?;
            let p = args.p.unwrap_or_else(|| prime_divisors(m)[0]);
            let alpha = need(args.alpha, "alpha", "verify smalldim")?;
            let t = need(args.t, "t", "verify smalldim")?;
            let r = check_lemma_smalldim(&f, Prime::new(p)?, alpha, t)?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
        Lemma::Odim => {
            let basis = load_basis(input)?;
            let count = basis.count_01_in_span(DEFAULT_ENUMERATION_BUDGET)?;
            let dim = basis.dim();
            let bound = 1u128 << dim;
            let status = Status::from_bool((count as u128) <= bound);
            Ok(status_outcome(
                status,
                lemma,
                json!({"n": basis.ncols(), "prime": basis.prime().get(), "dim": dim, "count_01": count, "bound": bound.to_string()}),
            ))
        }
        Lemma::Oddtown => {
            let (n, m, pairs) = load_pairs(input)?;
            let l = args.modulus.unwrap_or(m);
            let r = oddtown_pairs_check(n, &pairs, l)?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
        Lemma::Removal => {
            let (f, m) = load_family(input)?;
            let k = need(args.k, "k", "verify removal")?;
            let r = greedy_removal_to_closed(&f, k, args.modulus.unwrap_or(m))?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
        Lemma::Cross => {
            let mut fams = Vec::new();
            let mut modulus = None;
            for path in &args.inputs {
                let (f, m) = load_family(path)?;
                modulus.get_or_insert(m);
                fams.push(f);
            }
            let l = args.modulus.or(modulus).expect("at least one input");
            let r = cross_product_bound_check(&fams, l)?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
        Lemma::Stability => {
            let (f, m) = load_family(input)?;
            let r = stability_projection(&f, args.modulus.unwrap_or(m))?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
        Lemma::Coordinates => {
            let (f, m) = load_family(input)?;
            let p = args.p.unwrap_or_else(|| prime_divisors(m)[0]);
            let coords = parse_list(&need(args.coords.clone(), "coords", "verify coordinates")?)?;
            let r =
                check_claim_coordinates(&f, &coords, Prime::new(p)?, args.modulus.unwrap_or(m))?;
            Ok(status_outcome(r.status, lemma, to_value(&r)))
        }
    }
}

fn default_budget() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("{BUDGET_ENV}=`{v}` is not a node count"))),
        Err(_) => Ok(DEFAULT_BUDGET_NODES),
    }
}

fn search(args: &SearchArgs) -> Result<Outcome> {
    let mut cfg = SearchConfig::new(args.n, args.modulus, args.k, args.mode.into());
    cfg.budget_nodes = match args.budget_nodes {
        Some(b) => b,
        None => default_budget()?,
    };
    cfg.threads = args.threads;
    let r = match exhaustive_max_family(&cfg) {
        Ok(r) => r,
        Err(Error::SearchBudget {
            nodes,
            budget,
            best,
        }) => {
            return Ok(Outcome::json(
                json!({
                    "status": "budget-exhausted",
                    "nodes_explored": nodes,
                    "budget_nodes": budget,
                    "best_size": best,
                }),
                3,
            ))
        }
        Err(e) => return Err(e),
    };
    let mut body = to_value(&r);
    if let Some(dir) = &args.emit_extremal {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Argument(format!("cannot create {}: {e}", dir.display())))?;
        let mut files = Vec::new();
        for (i, f) in r.extremal_families.iter().enumerate() {
            let path = dir.join(format!("extremal_{}.fam", i + 1));
            write_file(&path, &format_family(f, r.modulus))?;
            files.push(path.display().to_string());
        }
        body["files"] = to_value(&files);
    }
    let code = if r.rechecked { 0 } else { 3 };
    Ok(Outcome::json(body, code))
}

fn threshold(args: &ThresholdArgs) -> Result<Outcome> {
    let mut body = json!({ "k_threshold": to_value(&compute_k_threshold(args.l)?) });
    if let Some(e) = &args.epsilon {
        let eps: Epsilon = e.parse()?;
        body["stab_threshold"] = to_value(&compute_stab_threshold(args.l, eps)?);
    }
    Ok(Outcome::json(body, 0))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Construct(_) => "construct",
        Command::Verify(_) => "verify",
        Command::Search(_) => "search",
        Command::Threshold(_) => "threshold",
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::Argument(format!("cannot write output: {e}"))),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(stdout, "{}", e.render());
            } else {
                let _ = write!(stderr, "{}", e.render());
            }
            return code;
        }
    };
    let started = Instant::now();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
        Command::Threshold(a) => threshold(a),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return error_code(&e);
        }
    };
    let text = match outcome.text {
        Some(t) => t,
        None => {
            let mut body = json!({ "schema": SCHEMA, "command": command_name(&cli.command) });
            if let (Value::Object(dst), Value::Object(src)) = (&mut body, outcome.body) {
                dst.extend(src);
            }
            if !cli.no_meta {
                body["meta"] = json!({
                    "tool": "ldiv",
                    "version": env!("CARGO_PKG_VERSION"),
                    "elapsed_ms": started.elapsed().as_millis() as u64,
                });
            }
            let mut s = serde_json::to_string_pretty(&body).expect("JSON values serialize");
            s.push('\n');
            s
        }
    };
    if let Err(e) = emit(&cli.out, &text, stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    outcome.code
}
