//! The `rigidity` command line.
//!
//! Each subcommand runs one experiment, prints a short summary on standard
//! output and, with `--out FILE`, writes a machine-readable report (CSV for
//! `scan`, JSON otherwise) plus run metadata in `FILE.meta.json`.
//!
//! Exit codes: 0 when every asserted property held, 1 when a violation was
//! found, 2 on usage or configuration errors.
//!
//! `--config FILE` reads flat `key = value` lines (`#` starts a comment);
//! keys are flag names without the dashes. Flags given on the command line
//! override the file.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand};
use serde::Serialize;

use crate::curve_q::{CurveQ, PointQ};
use crate::error::{Error, Result};
use crate::group::cohomology::{h1_classes, lemma1_report};
use crate::group::endo::endo_census;
use crate::group::matrix::{parse_matrix, Matrix, MatrixGroup};
use crate::group::semidirect::{lemma4_verify, Lemma4Mode, Lemma4Report};
use crate::mahler::{CongruenceViolation, MahlerSeries};
use crate::report::{cached_scan, default_cache_path, render_csv, CacheStats};
use crate::support::{density_report, ratio_string, trace_pairs, SupportProblem};
use crate::weil::{injectivity_threshold, injectivity_threshold_check, ratio_onset, weil_interval};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parsed command line: one experiment and its parameters.
#[derive(Debug, Parser)]
#[command(
    name = "rigidity",
    version,
    about = "Reduction and rigidity experiments"
)]
pub struct ScanConfig {
    #[command(subcommand)]
    pub experiment: Experiment,
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Compare ord(Q mod p) and ord(P mod p) over good primes.
    #[command(args_override_self = true)]
    Scan(ScanArgs),
    /// Fraction of good primes where ell divides ord(P mod p).
    #[command(args_override_self = true)]
    Density(DensityArgs),
    /// Check that the Weil interval is narrower than a factor two.
    #[command(args_override_self = true)]
    Weil(WeilArgs),
    /// Eigenvalue-one criterion on (F_ell^n + F_ell^n) x| G.
    #[command(args_override_self = true)]
    Lemma4(Lemma4Args),
    /// Census of endomorphisms of SL(2, Z/p).
    #[command(args_override_self = true)]
    Endos(EndosArgs),
    /// First cohomology classes and the action of a central element.
    #[command(args_override_self = true)]
    H1(H1Args),
    /// Congruences and non-polynomiality of phi(n) = psi(n^2).
    #[command(args_override_self = true)]
    Mahler(MahlerArgs),
    /// How often two curves share the trace a_p.
    #[command(name = "ap-compare", args_override_self = true)]
    ApCompare(ApCompareArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Defaults as `key = value` lines.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Report file; metadata goes to FILE.meta.json.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Worker threads (output does not depend on it).
    #[arg(long, default_value_t = 1, value_parser = parse_workers)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Curve y^2 = x^3 + a x + b as `a,b`.
    #[arg(long, allow_hyphen_values = true)]
    pub curve1: CurveQ,
    /// Point on curve1: `x,y` (rationals allowed) or `X:Y:Z`.
    #[arg(long, allow_hyphen_values = true)]
    pub point1: PointQ,
    /// Defaults to curve1.
    #[arg(long, allow_hyphen_values = true)]
    pub curve2: Option<CurveQ>,
    #[arg(long, allow_hyphen_values = true)]
    pub point2: PointQ,
    /// Largest prime scanned.
    #[arg(long, default_value_t = 10_000)]
    pub pmax: u64,
    /// Cache file; defaults to a file under $RIGIDITY_CACHE_DIR when set.
    #[arg(long, value_name = "FILE")]
    pub cache: Option<PathBuf>,
    /// Exit 1 if any counterexample prime is found.
    #[arg(long)]
    pub expect_clean: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub curve1: CurveQ,
    #[arg(long, allow_hyphen_values = true)]
    pub point1: PointQ,
    #[arg(long, default_value_t = 2)]
    pub ell: u64,
    #[arg(long, default_value_t = 10_000)]
    pub pmax: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WeilArgs {
    /// Dimension.
    #[arg(long, default_value_t = 1)]
    pub g: u32,
    /// Sweep every nm above the threshold up to this value.
    #[arg(long, default_value_t = 10_000)]
    pub nm_max: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Lemma4Args {
    #[arg(long, default_value_t = 3)]
    pub ell: u32,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// `conjugacy`, `linear` or `both`.
    #[arg(long, default_value = "both")]
    pub mode: String,
    /// Generators of G as `a,b,c,d;...` (row-major, mod ell); default GL(n, F_ell).
    #[arg(long, allow_hyphen_values = true)]
    pub gens: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EndosArgs {
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct H1Args {
    #[arg(long, default_value_t = 3)]
    pub ell: u32,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Generators of G; default GL(n, F_ell).
    #[arg(long, allow_hyphen_values = true)]
    pub gens: Option<String>,
    /// Central element whose action on H^1 is checked; default -I.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MahlerArgs {
    /// `ones:K` or `a0,a1,...`.
    #[arg(long, default_value = "ones:169", allow_hyphen_values = true)]
    pub coeffs: MahlerSeries,
    #[arg(long, default_value_t = 30)]
    pub mod_max: u64,
    #[arg(long, default_value_t = 7)]
    pub n_max: i64,
    #[arg(long, default_value_t = 12)]
    pub degree_max: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ApCompareArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub curve1: CurveQ,
    #[arg(long, allow_hyphen_values = true)]
    pub curve2: CurveQ,
    #[arg(long, default_value_t = 10_000)]
    pub pmax: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn parse_workers(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(w) => Ok(w),
        Err(e) => Err(e.to_string()),
    }
}

/// Parses `key = value` lines into `(key, value)` pairs.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("config line {}: expected `key = value`", i + 1))
        })?;
        let value = value.trim();
        let value = value
            .strip_prefix('"')
            .and_then(|v| v.strip_suffix('"'))
            .unwrap_or(value);
        out.push((key.trim().to_string(), value.to_string()));
    }
    Ok(out)
}

/// Inserts the flags from `--config FILE` right after the subcommand, so
/// that flags given on the command line come later and win.
fn expand_config(args: Vec<String>) -> Result<Vec<String>> {
    if args.len() < 2 || args[1].starts_with('-') {
        return Ok(args);
    }
    let mut path = None;
    let mut it = args[2..].iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = it.next().cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text =
        fs::read_to_string(&path).map_err(|e| Error::Parse(format!("config {path}: {e}")))?;
    let cmd = ScanConfig::command();
    let sub = cmd
        .find_subcommand(&args[1])
        .ok_or_else(|| Error::Parse(format!("unknown subcommand `{}`", args[1])))?;
    let mut injected = Vec::new();
    for (key, value) in parse_config(&text)? {
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()) && key != "config")
            .ok_or_else(|| {
                Error::Parse(format!(
                    "config {path}: unknown key `{key}` for `{}`",
                    args[1]
                ))
            })?;
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" => injected.push(format!("--{key}")),
                "false" => {}
                _ => {
                    return Err(Error::Parse(format!(
                        "config {path}: `{key}` takes true or false"
                    )))
                }
            }
        } else {
            injected.push(format!("--{key}={value}"));
        }
    }
    let mut out = args[..2].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[2..]);
    Ok(out)
}

/// Runs the command line, writing the summary to standard output.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    run_to(args, &mut lock)
}

/// As [`run`], with the summary written to `out`.
pub fn run_to<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let config = match ScanConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&config, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VIOLATION,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs one experiment; `Ok(false)` means a checked property failed.
pub fn execute(config: &ScanConfig, out: &mut dyn Write) -> Result<bool> {
    let start = Instant::now();
    let (common, name, outcome) = match &config.experiment {
        Experiment::Scan(a) => (&a.common, "scan", scan(a, out)?),
        Experiment::Density(a) => (&a.common, "density", density(a, out)?),
        Experiment::Weil(a) => (&a.common, "weil", weil(a, out)?),
        Experiment::Lemma4(a) => (&a.common, "lemma4", lemma4(a, out)?),
        Experiment::Endos(a) => (&a.common, "endos", endos(a, out)?),
        Experiment::H1(a) => (&a.common, "h1", h1(a, out)?),
        Experiment::Mahler(a) => (&a.common, "mahler", mahler(a, out)?),
        Experiment::ApCompare(a) => (&a.common, "ap-compare", ap_compare(a, out)?),
    };
    if let Some(path) = &common.out {
        write_file(path, &outcome.report)?;
        let meta = Meta {
            subcommand: name,
            version: env!("CARGO_PKG_VERSION"),
            workers: common.workers,
            elapsed_ms: start.elapsed().as_millis() as u64,
            holds: outcome.holds,
            cache: outcome.cache,
        };
        write_file(&meta_path(path), &to_json(&meta))?;
    }
    Ok(outcome.holds)
}

/// `FILE.meta.json` next to `FILE`.
pub fn meta_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".meta.json");
    PathBuf::from(name)
}

#[derive(Serialize)]
struct Meta {
    subcommand: &'static str,
    version: &'static str,
    workers: usize,
    elapsed_ms: u64,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cache: Option<CacheMeta>,
}

#[derive(Serialize, Clone, Copy)]
struct CacheMeta {
    reused: usize,
    computed: usize,
    invalidated: bool,
}

impl From<CacheStats> for CacheMeta {
    fn from(s: CacheStats) -> Self {
        CacheMeta {
            reused: s.reused,
            computed: s.computed,
            invalidated: s.invalidated,
        }
    }
}

struct Outcome {
    holds: bool,
    report: String,
    cache: Option<CacheMeta>,
}

impl Outcome {
    fn json<T: Serialize>(holds: bool, value: &T) -> Self {
        Outcome {
            holds,
            report: to_json(value),
            cache: None,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable report");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn say(out: &mut dyn Write, line: std::fmt::Arguments<'_>) {
    // a closed stdout should not turn a result into an error
    let _ = writeln!(out, "{line}");
}

fn scan(a: &ScanArgs, out: &mut dyn Write) -> Result<Outcome> {
    if a.pmax < 5 {
        return Err(Error::Precondition(format!("--pmax {} < 5", a.pmax)));
    }
    let e2 = a.curve2.unwrap_or(a.curve1);
    let problem = SupportProblem::new(a.curve1, a.point1.clone(), e2, a.point2.clone())?;
    let cache = a.cache.clone().or_else(|| default_cache_path(&problem));
    let (records, stats) = cached_scan(&problem, a.pmax, a.common.workers, cache.as_deref())?;
    let verdict = problem.verdict(&records);
    say(
        out,
        format_args!(
            "scan: {} good primes <= {} ({} computed, {} from cache)",
            verdict.scanned, a.pmax, stats.computed, stats.reused
        ),
    );
    match verdict.counterexamples.first() {
        None => say(out, format_args!("counterexamples: none")),
        Some(first) => say(
            out,
            format_args!(
                "counterexamples: {} (first p = {first})",
                verdict.counterexamples.len()
            ),
        ),
    }
    if problem.same_curve() && verdict.counterexamples.is_empty() {
        match verdict.inferred_m {
            Some(m) => say(out, format_args!("verdict: Q = m P with m={m}")),
            None => say(
                out,
                format_args!("verdict: no relation m P = Q with |m| < 2^64 found"),
            ),
        }
    }
    Ok(Outcome {
        holds: !(a.expect_clean && !verdict.counterexamples.is_empty()),
        report: render_csv(&records),
        cache: cache.map(|_| stats.into()),
    })
}

#[derive(Serialize)]
struct DensityJson {
    curve: String,
    point: String,
    ell: u64,
    pmax: u64,
    primes: u64,
    divisible: String,
    coprime: String,
}

fn density(a: &DensityArgs, out: &mut dyn Write) -> Result<Outcome> {
    let r = density_report(&a.curve1, &a.point1, a.ell, a.pmax, a.common.workers)?;
    if r.total == 0 {
        return Err(Error::EmptyPrimeRange(a.pmax));
    }
    let (div, cop) = (r.divisible_fraction(), r.coprime_fraction());
    say(
        out,
        format_args!(
            "density: ell = {}, {} good primes <= {}: divisible {} ({:.4}), coprime {} ({:.4})",
            a.ell,
            r.total,
            a.pmax,
            ratio_string(&div),
            r.divisible as f64 / r.total as f64,
            ratio_string(&cop),
            (r.total - r.divisible) as f64 / r.total as f64,
        ),
    );
    let json = DensityJson {
        curve: format!("{},{}", a.curve1.a(), a.curve1.b()),
        point: a.point1.to_string(),
        ell: a.ell,
        pmax: a.pmax,
        primes: r.total,
        divisible: ratio_string(&div),
        coprime: ratio_string(&cop),
    };
    Ok(Outcome::json(
        r.divisible > 0 && r.divisible < r.total,
        &json,
    ))
}

#[derive(Serialize)]
struct WeilJson {
    g: u32,
    threshold: u64,
    nm_max: u64,
    holds: bool,
    /// Smallest nm from which the ratio stays below two within the sweep.
    onset: Option<u64>,
    /// Integer hull at nm = nm_max.
    hull_at_max: (String, String),
}

fn weil(a: &WeilArgs, out: &mut dyn Write) -> Result<Outcome> {
    let holds = injectivity_threshold_check(a.g, a.nm_max)?;
    let onset = ratio_onset(a.g, a.nm_max)?;
    let (lo, hi) = weil_interval(a.nm_max, a.g)?.integer_hull();
    let threshold = injectivity_threshold(a.g);
    say(
        out,
        format_args!(
            "weil: g = {}, upper < 2 lower for all {} < nm <= {}: {}",
            a.g,
            threshold,
            a.nm_max,
            if holds { "yes" } else { "NO" }
        ),
    );
    if let Some(o) = onset {
        say(
            out,
            format_args!("weil: ratio below two from nm = {o} in the sweep"),
        );
    }
    let json = WeilJson {
        g: a.g,
        threshold,
        nm_max: a.nm_max,
        holds,
        onset,
        hull_at_max: (lo.to_string(), hi.to_string()),
    };
    Ok(Outcome::json(holds, &json))
}

fn parse_gens(list: &str, ell: u32, n: usize) -> Result<Vec<Matrix>> {
    list.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let m = parse_matrix(s, ell)?;
            if m.dim() != n {
                return Err(Error::Parse(format!("generator `{s}` is not {n}x{n}")));
            }
            if !m.is_invertible() {
                return Err(Error::Domain(format!(
                    "generator `{s}` is singular mod {ell}"
                )));
            }
            Ok(m)
        })
        .collect()
}

fn build_group(ell: u32, n: usize, gens: Option<&str>) -> Result<MatrixGroup> {
    match gens {
        None => MatrixGroup::general_linear(ell, n),
        Some(list) => MatrixGroup::generated(ell, n, parse_gens(list, ell, n)?),
    }
}

#[derive(Serialize)]
struct Lemma4Json {
    ell: u32,
    n: usize,
    group_order: usize,
    violations: usize,
    modes_agree: bool,
    reports: Vec<Lemma4Report>,
}

fn lemma4(a: &Lemma4Args, out: &mut dyn Write) -> Result<Outcome> {
    let modes = match a.mode.as_str() {
        "both" => vec![Lemma4Mode::Conjugacy, Lemma4Mode::Linear],
        m => vec![m.parse::<Lemma4Mode>()?],
    };
    let group = build_group(a.ell, a.n, a.gens.as_deref())?;
    let reports = modes
        .iter()
        .map(|&m| lemma4_verify(&group, m))
        .collect::<Result<Vec<_>>>()?;
    let modes_agree = reports.windows(2).all(|w| {
        w[0].verdicts
            .iter()
            .zip(&w[1].verdicts)
            .all(|(x, y)| x.sigma == y.sigma && x.hyp == y.hyp)
    });
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    for r in &reports {
        let [tt, tf, ft, ff] = r.tally();
        say(
            out,
            format_args!(
                "lemma4 ({:?}): |G| = {}, hyp&eig1 {tt}, hyp only {tf}, eig1 only {ft}, neither {ff}",
                r.mode,
                r.group_order
            ),
        );
    }
    say(
        out,
        format_args!(
            "lemma4: {violations} violations{}",
            if reports.len() > 1 {
                if modes_agree {
                    ", modes agree"
                } else {
                    ", MODES DISAGREE"
                }
            } else {
                ""
            }
        ),
    );
    let json = Lemma4Json {
        ell: a.ell,
        n: a.n,
        group_order: group.order(),
        violations,
        modes_agree,
        reports,
    };
    Ok(Outcome::json(violations == 0 && modes_agree, &json))
}

fn endos(a: &EndosArgs, out: &mut dyn Write) -> Result<Outcome> {
    let census = endo_census(a.p, a.common.workers)?;
    say(
        out,
        format_args!(
            "endos: SL(2,Z/{}) of order {}: {} endomorphisms, {} nontrivial ({} bijective, {} inner), {} conjugation maps",
            census.p,
            census.group_order,
            census.endomorphisms,
            census.nontrivial,
            census.nontrivial_bijective,
            census.inner,
            census.conjugation_maps
        ),
    );
    Ok(Outcome::json(census.holds(), &census))
}

#[derive(Serialize)]
struct H1Json {
    ell: u32,
    n: usize,
    group_order: usize,
    cocycles: usize,
    coboundaries: usize,
    classes: usize,
    tau: String,
    failures: usize,
}

fn h1(a: &H1Args, out: &mut dyn Write) -> Result<Outcome> {
    let group = build_group(a.ell, a.n, a.gens.as_deref())?;
    let tau = match &a.tau {
        Some(t) => parse_matrix(t, a.ell)?,
        None => Matrix::scalar(a.ell, a.n, -1),
    };
    let classes = h1_classes(&group)?;
    let lemma = lemma1_report(&group, &tau)?;
    say(
        out,
        format_args!(
            "h1: |G| = {}, {} cocycles / {} coboundaries = {} classes; tau = {}: {} failures",
            group.order(),
            classes.cocycles,
            classes.coboundaries,
            classes.class_count(),
            tau,
            lemma.failures
        ),
    );
    let json = H1Json {
        ell: a.ell,
        n: a.n,
        group_order: group.order(),
        cocycles: classes.cocycles,
        coboundaries: classes.coboundaries,
        classes: classes.class_count(),
        tau: tau.to_string(),
        failures: lemma.failures,
    };
    Ok(Outcome::json(lemma.holds(), &json))
}

#[derive(Serialize)]
struct MahlerJson {
    coeffs: String,
    psi: Vec<String>,
    mod_max: u64,
    n_max: i64,
    violations: Vec<CongruenceViolation>,
    degree_max: usize,
    nonpolynomial: bool,
}

fn mahler(a: &MahlerArgs, out: &mut dyn Write) -> Result<Outcome> {
    let s = &a.coeffs;
    let shown = s.max_index().min(4) as i64;
    let psi = (0..=shown)
        .map(|n| s.psi(n).map(|v| v.to_string()))
        .collect::<Result<Vec<_>>>()?;
    let violations = s.congruence_check(a.mod_max, a.n_max)?;
    let nonpolynomial = s.nonpolynomiality_certificate(a.degree_max)?;
    say(
        out,
        format_args!("mahler: psi(0..{shown}) = {}", psi.join(", ")),
    );
    say(
        out,
        format_args!(
            "mahler: {} congruence violations for N <= {}, |m|,|n| <= {}; not a polynomial of degree <= {}: {}",
            violations.len(),
            a.mod_max,
            a.n_max,
            a.degree_max,
            nonpolynomial
        ),
    );
    let holds = violations.is_empty() && nonpolynomial;
    let json = MahlerJson {
        coeffs: s.to_string(),
        psi,
        mod_max: a.mod_max,
        n_max: a.n_max,
        violations,
        degree_max: a.degree_max,
        nonpolynomial,
    };
    Ok(Outcome::json(holds, &json))
}

#[derive(Serialize)]
struct ApJson {
    curve1: String,
    curve2: String,
    pmax: u64,
    primes: usize,
    equal: String,
}

fn ap_compare(a: &ApCompareArgs, out: &mut dyn Write) -> Result<Outcome> {
    let pairs = trace_pairs(&a.curve1, &a.curve2, a.pmax, a.common.workers)?;
    if pairs.is_empty() {
        return Err(Error::EmptyPrimeRange(a.pmax));
    }
    let equal = pairs.iter().filter(|(_, x, y)| x == y).count() as u64;
    let frac = num_rational::Ratio::new(equal, pairs.len() as u64);
    say(
        out,
        format_args!(
            "ap-compare: a_p equal at {equal} of {} common good primes <= {} ({})",
            pairs.len(),
            a.pmax,
            ratio_string(&frac)
        ),
    );
    let json = ApJson {
        curve1: format!("{},{}", a.curve1.a(), a.curve1.b()),
        curve2: format!("{},{}", a.curve2.a(), a.curve2.b()),
        pmax: a.pmax,
        primes: pairs.len(),
        equal: ratio_string(&frac),
    };
    Ok(Outcome::json(true, &json))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run_to(
            std::iter::once("rigidity").chain(args.iter().copied()),
            &mut buf,
        );
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn config_lines() {
        let cfg =
            parse_config("# defaults\npmax = 500\n\ncurve1 = \"0,-2\"  # y^2 = x^3 - 2\n").unwrap();
        assert_eq!(
            cfg,
            vec![
                ("pmax".to_string(), "500".to_string()),
                ("curve1".to_string(), "0,-2".to_string())
            ]
        );
        assert!(parse_config("pmax 500").is_err());
    }

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("w.conf");
        fs::write(&cfg, "g = 1\nnm-max = 100\n").unwrap();
        let cfg = cfg.to_str().unwrap();
        let (code, text) = run_capture(&["weil", "--config", cfg, "--nm-max", "200"]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("<= 200"), "{text}");
        fs::write(dir.path().join("bad.conf"), "colour = red\n").unwrap();
        let bad = dir.path().join("bad.conf");
        assert_eq!(
            run_capture(&["weil", "--config", bad.to_str().unwrap()]).0,
            2
        );
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["weil", "--bogus"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["weil", "--workers", "0"]).0, 2);
        // threshold for g = 1 is 144
        assert_eq!(run_capture(&["weil", "--nm-max", "100"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn meta_sidecar_name() {
        assert_eq!(
            meta_path(Path::new("a/b.csv")),
            PathBuf::from("a/b.csv.meta.json")
        );
    }

    #[test]
    fn expect_clean_reports_violation() {
        let args = [
            "scan", "--curve1", "0,-2", "--point1", "3,5", "--curve2", "1,1", "--point2", "0,1",
            "--pmax", "200",
        ];
        assert_eq!(run_capture(&args).0, 0);
        let mut strict = args.to_vec();
        strict.push("--expect-clean");
        let (code, text) = run_capture(&strict);
        assert_eq!(code, 1, "{text}");
        assert!(text.contains("first p ="));
    }
}
