//! The `lwp` command line: argument parsing, config layering, report
//! emission and exit codes.
//!
//! Exit codes: 0 on success with every check passing, 2 when a check fails
//! (`Error::CheckFailed`), 1 on any other error.

mod config;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::{RunConfig, Tolerances};

use crate::bohr::{
    build_bohr, find_regular_value, size_bounds_check, verify_regular, CharacterSet, RationalRadius,
};
use crate::construct::{build_big_f_unchecked, gowers_set_from, ConstructionConfig};
use crate::decompose::{
    auto_epsilon_start, gowers_locate_sets, littlewood_lower_report, run_decomposition,
    validate_certificate, DecompositionParams, EpsChoice,
};
use crate::error::{Error, Result};
use crate::report::CheckList;
use crate::search::{
    exhaustive_littlewood, local_search_littlewood, scaling_study, write_scaling_csv, StudyConfig,
};
use crate::zp::io::{
    format_set, parse_set, read_function_csv, write_function_csv, write_spectrum_csv,
};
use crate::zp::{forward_transform, norms, spectral_energy, spectral_l1};

/// Version string embedded in reports.
pub const VERSION: &str = env!("LWP_GIT_DESCRIBE");

/// Report schema version.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "lwp", version = VERSION, about = "Fourier analysis, decompositions and constructions on Z/pZ")]
pub struct Cli {
    /// Seed for every random stream.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "LWP_THREADS")]
    pub threads: Option<usize>,
    /// Config file of `section.key = value` lines, applied before flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Tolerance override `name=value`, e.g. `residual=1e-9`; repeatable.
    #[arg(long, global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum of a function given as `x,value` CSV; writes `r,re,im` CSV.
    Transform {
        #[arg(long)]
        p: u64,
        #[arg(long = "fn", value_name = "CSV")]
        function: PathBuf,
        /// Spectrum CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report with norms and the Parseval residual.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Size, size-bound checks and regularity of a Bohr set.
    Bohr {
        #[arg(long)]
        p: u64,
        /// Comma separated frequencies.
        #[arg(long)]
        gamma: String,
        /// Radius as `num/den`.
        #[arg(long)]
        eta: String,
        /// Replace eta by a regular value in `[delta, 2 delta)`.
        #[arg(long, requires = "delta")]
        regularize: bool,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decomposes a function into `f1 + f2 + f3` and writes a certificate.
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long = "fn", value_name = "CSV")]
        function: PathBuf,
        /// A number in (0, 1/2], or `auto` for the starting value of the
        /// automatic schedule.
        #[arg(long)]
        epsilon: Option<String>,
        /// Certificate path; `f1`, `f2`, `f3` are written next to it.
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified lower bound on the spectral norm of `2·1_A - 1`.
    Locate {
        #[arg(long)]
        p: u64,
        /// File of residues, whitespace or comma separated.
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A shift x with `|A ∩ (B + x)|` close to `|A||B|/p`.
    GowersLocate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        set_a: PathBuf,
        #[arg(long)]
        set_b: PathBuf,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explicit constructions.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Exact and heuristic values of S(p).
    #[command(subcommand)]
    Search(SearchCommand),
    /// Experiments across several moduli.
    #[command(subcommand)]
    Study(StudyCommand),
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// The smoothed autocorrelation F.
    #[command(name = "F")]
    BigF {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        c_const: Option<f64>,
        /// F as `x,value` CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report (default: stdout).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// A set of size `⌊p/2⌋` from F by random signs and rounding.
    GowersSet {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        c_const: Option<f64>,
        /// The set, one residue per line.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Exact S(p) for p <= 31.
    Exhaustive {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper bound on S(p) by single-swap descent.
    Local {
        #[arg(long)]
        p: u64,
        /// Maximum swaps per start.
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum StudyCommand {
    /// One CSV row per modulus.
    Scaling {
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Seeds for the set construction (default: --seed).
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<u64>,
        /// JSON report (default: stdout).
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    version: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    result: &'a T,
}

/// Writes to `path`, or to stdout when it is `None`.
fn with_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn emit<T: Serialize>(
    path: Option<&Path>,
    command: &str,
    config: &RunConfig,
    result: &T,
) -> Result<()> {
    let env = Envelope {
        schema: SCHEMA,
        version: VERSION,
        command,
        config,
        result,
    };
    with_output(path, |w| {
        serde_json::to_writer_pretty(&mut *w, &env)?;
        writeln!(w)?;
        Ok(())
    })
}

fn read_set(p: u64, path: &Path) -> Result<Vec<u64>> {
    parse_set(p, &std::fs::read_to_string(path)?)
}

fn read_function(p: u64, path: &Path) -> Result<crate::zp::ZpFunction> {
    read_function_csv(p, File::open(path)?)
}

fn parse_gamma(p: u64, text: &str) -> Result<CharacterSet> {
    let gamma = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map(|v| v.rem_euclid(p as i64) as u64)
                .map_err(|_| Error::Parse(format!("bad frequency `{t}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    CharacterSet::new(p, gamma)
}

/// `Err(CheckFailed)` naming the first failure across `lists`.
fn all_checks<'a>(lists: impl IntoIterator<Item = &'a CheckList>) -> Result<()> {
    for list in lists {
        list.clone().into_result()?;
    }
    Ok(())
}

fn resolve(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    for item in &cli.tol {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--tol expects NAME=VALUE, got `{item}`")))?;
        cfg.set(&format!("tol.{}", k.trim()), v)?;
    }
    cfg.construct.seed = cfg.seed;
    Ok(cfg)
}

fn set_epsilon(cfg: &mut RunConfig, flag: &Option<String>) -> Result<()> {
    if let Some(e) = flag {
        cfg.epsilon = e.parse()?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TransformReport {
    p: u64,
    spectral_l1: f64,
    l2: f64,
    linf: f64,
    mean: f64,
    spectral_energy: f64,
    parseval_residual: f64,
}

#[derive(Serialize)]
struct BohrReport {
    p: u64,
    gamma: Vec<u64>,
    size: usize,
    lower_ok: bool,
    doubling_ok: bool,
    regular: bool,
    eta_used: RationalRadius,
}

#[derive(Serialize)]
struct CertificateFile<'a> {
    schema: u32,
    version: &'static str,
    params: CertParams<'a>,
    ledger: &'a [crate::decompose::StageRecord],
    bounds: &'a crate::decompose::Bounds,
    f1: String,
    f2: String,
    f3: String,
}

#[derive(Serialize)]
struct CertParams<'a> {
    p: u64,
    epsilon: f64,
    j_cap: usize,
    i_cap: usize,
    gamma_final: &'a [u64],
    eta: &'a crate::bohr::Ratio,
    eta_prime: &'a RationalRadius,
    u_set: &'a [u64],
}

#[derive(Serialize)]
struct DecomposeSummary<'a> {
    cert: String,
    epsilon: f64,
    bounds: &'a crate::decompose::Bounds,
    checks: &'a CheckList,
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.csv"))
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = resolve(&cli)?;
    if let Some(n) = cfg.threads {
        // a pool built by an earlier call in the same process stays in place
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match &cli.command {
        Command::Transform {
            p,
            function,
            out,
            report,
        } => {
            let f = read_function(*p, function)?;
            let s = forward_transform(&f);
            with_output(out.as_deref(), |w| write_spectrum_csv(&s, w))?;
            let n = norms(&f);
            let energy = spectral_energy(&s);
            let l2sq = n.l2 * n.l2;
            let residual = (energy - l2sq).abs() / l2sq.max(f64::MIN_POSITIVE);
            if let Some(path) = report {
                let r = TransformReport {
                    p: *p,
                    spectral_l1: spectral_l1(&s),
                    l2: n.l2,
                    linf: n.linf,
                    mean: n.mean,
                    spectral_energy: energy,
                    parseval_residual: residual,
                };
                emit(Some(path), "transform", &cfg, &r)?;
            }
            if residual > cfg.tol.residual && l2sq > 0.0 {
                return Err(Error::check(
                    "parseval",
                    format!("residual {residual:e} exceeds {:e}", cfg.tol.residual),
                ));
            }
        }
        Command::Bohr {
            p,
            gamma,
            eta,
            regularize,
            delta,
            out,
        } => {
            let chars = parse_gamma(*p, gamma)?;
            let mut eta_used: RationalRadius = eta.parse()?;
            if *regularize {
                let delta: RationalRadius = delta.as_deref().unwrap_or_default().parse()?;
                eta_used = find_regular_value(&chars, &delta)?;
            }
            let b = build_bohr(&chars, &eta_used);
            let bounds = size_bounds_check(&b);
            let r = BohrReport {
                p: *p,
                gamma: chars.gamma().to_vec(),
                size: b.size(),
                lower_ok: bounds.lower_ok,
                doubling_ok: bounds.doubling_ok,
                regular: verify_regular(&chars, &eta_used),
                eta_used,
            };
            emit(out.as_deref(), "bohr", &cfg, &r)?;
            if !(r.lower_ok && r.doubling_ok) {
                return Err(Error::check(
                    "bohr_size_bounds",
                    "lower or doubling bound failed",
                ));
            }
        }
        Command::Decompose {
            p,
            function,
            epsilon,
            cert,
            out,
        } => {
            set_epsilon(&mut cfg, epsilon)?;
            let f = read_function(*p, function)?;
            let eps = match cfg.epsilon {
                EpsChoice::Fixed(e) => e,
                EpsChoice::Auto { c_eps } => auto_epsilon_start(*p, c_eps),
            };
            let params = DecompositionParams::new(eps)?;
            let c = run_decomposition(&f, &params)?;
            let checks = validate_certificate(&f, &c);
            let (p1, p2, p3) = (
                sibling(cert, "f1"),
                sibling(cert, "f2"),
                sibling(cert, "f3"),
            );
            for (path, g) in [(&p1, &c.f1), (&p2, &c.f2), (&p3, &c.f3)] {
                write_function_csv(g, BufWriter::new(File::create(path)?))?;
            }
            let name = |q: &Path| {
                q.file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default()
            };
            let file = CertificateFile {
                schema: SCHEMA,
                version: VERSION,
                params: CertParams {
                    p: *p,
                    epsilon: params.epsilon,
                    j_cap: params.j_cap,
                    i_cap: params.i_cap,
                    gamma_final: c.gamma_final.gamma(),
                    eta: &c.eta,
                    eta_prime: &c.eta_prime,
                    u_set: &c.u_set,
                },
                ledger: &c.ledger,
                bounds: &c.bounds,
                f1: name(&p1),
                f2: name(&p2),
                f3: name(&p3),
            };
            with_output(Some(cert), |w| {
                serde_json::to_writer_pretty(&mut *w, &file)?;
                writeln!(w)?;
                Ok(())
            })?;
            let summary = DecomposeSummary {
                cert: cert.display().to_string(),
                epsilon: params.epsilon,
                bounds: &c.bounds,
                checks: &checks,
            };
            emit(out.as_deref(), "decompose", &cfg, &summary)?;
            all_checks([&checks])?;
        }
        Command::Locate {
            p,
            set,
            epsilon,
            out,
        } => {
            set_epsilon(&mut cfg, epsilon)?;
            let a = read_set(*p, set)?;
            let r = littlewood_lower_report(*p, &a, cfg.epsilon)?;
            emit(out.as_deref(), "locate", &cfg, &r)?;
        }
        Command::GowersLocate {
            p,
            set_a,
            set_b,
            epsilon,
            out,
        } => {
            set_epsilon(&mut cfg, epsilon)?;
            let a = read_set(*p, set_a)?;
            let b = read_set(*p, set_b)?;
            let r = gowers_locate_sets(*p, &a, &b, cfg.epsilon)?;
            emit(out.as_deref(), "gowers-locate", &cfg, &r)?;
        }
        Command::Construct(ConstructCommand::BigF {
            p,
            c_const,
            out,
            report,
        }) => {
            if let Some(c) = c_const {
                cfg.construct.c_const = *c;
            }
            let r = build_big_f_unchecked(*p, &cfg.construct)?;
            if let Some(path) = out {
                write_function_csv(&r.big_f, BufWriter::new(File::create(path)?))?;
            }
            emit(report.as_deref(), "construct F", &cfg, &r)?;
            all_checks([&r.checks])?;
        }
        Command::Construct(ConstructCommand::GowersSet {
            p,
            c_const,
            out,
            report,
        }) => {
            if let Some(c) = c_const {
                cfg.construct.c_const = *c;
            }
            let construction = build_big_f_unchecked(*p, &cfg.construct)?;
            let r = gowers_set_from(construction, &cfg.construct)?;
            if let Some(path) = out {
                std::fs::write(path, format_set(&r.rounding.a))?;
            }
            emit(report.as_deref(), "construct gowers-set", &cfg, &r)?;
            all_checks([&r.construction.checks, &r.rounding.checks])?;
        }
        Command::Search(SearchCommand::Exhaustive { p, out }) => {
            let r = exhaustive_littlewood(*p)?;
            emit(out.as_deref(), "search exhaustive", &cfg, &r)?;
        }
        Command::Search(SearchCommand::Local { p, iters, out }) => {
            let r = local_search_littlewood(*p, cfg.seed, *iters)?;
            emit(out.as_deref(), "search local", &cfg, &r)?;
        }
        Command::Study(StudyCommand::Scaling {
            p_list,
            out,
            seeds,
            report,
        }) => {
            let study = StudyConfig {
                construction: ConstructionConfig {
                    seed: cfg.seed,
                    ..cfg.construct.clone()
                },
                eps: cfg.epsilon,
                seeds: if seeds.is_empty() {
                    vec![cfg.seed]
                } else {
                    seeds.clone()
                },
            };
            let rows = scaling_study(p_list, &study)?;
            write_scaling_csv(&rows, BufWriter::new(File::create(out)?))?;
            emit(report.as_deref(), "study scaling", &cfg, &rows)?;
        }
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the command, and returns the
/// process exit code. Diagnostics go to standard error.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lwp: {e}");
            if matches!(e, Error::CheckFailed { .. }) {
                2
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(dispatch(["lwp", "frobnicate"]), 1);
        assert_eq!(dispatch(["lwp", "search", "exhaustive"]), 1);
        assert_eq!(dispatch(["lwp", "search", "exhaustive", "--p", "37"]), 1);
        assert_eq!(dispatch(["lwp", "--help"]), 0);
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "run.seed = 5\ntol.residual = 1e-6\n").unwrap();
        let cli = Cli::try_parse_from([
            "lwp",
            "--config",
            path.to_str().unwrap(),
            "--seed",
            "9",
            "search",
            "local",
            "--p",
            "13",
        ])
        .unwrap();
        let cfg = resolve(&cli).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.construct.seed, 9);
        assert_eq!(cfg.tol.residual, 1e-6);
    }
}
