//! Command line front end: norms of step profiles and grids, named check
//! suites, ratio searches, growth fits and per-cube exports.
//!
//! Exit codes: 0 success (and suite pass), 1 a suite or fit ran but failed,
//! 2 the input file would not parse, 3 anything else the caller got wrong
//! (indices out of range, unknown names, malformed flags).

mod config;
mod exports;
mod spaceid;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use harness::growth::{growth_fit, GrowthFamily};
use harness::report::fmt_num;
use harness::search::{extremal_search, SearchConfig, SearchObjective};
use harness::suites::{render_suite_json, run_suite, suite_passes, Suite, SuiteOptions};
use spaces::{load_function, Error, Exponent, InputFunction};

use config::ConfigFile;
use spaceid::SpaceId;

#[derive(Parser)]
#[command(name = "spacecheck", version, about = "norms and inequality checks for step profiles and grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one norm of an input function
    Norm(NormArgs),
    /// Run a named check suite and print its report
    Verify(VerifyArgs),
    /// Hill-climb a normalized ratio and store the best candidate
    Search(SearchArgs),
    /// Fit the exponent growth of the integrability ratio on a canonical family
    Growth(GrowthArgs),
    /// Write the per-cube terms of a family norm as CSV
    Export(ExportArgs),
}

#[derive(Args)]
struct NormArgs {
    /// Input JSON file (step profile or grid)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Space selector: lp, weak-lp, lorentz, w, morrey, weak-morrey, lm, lm-star, bmo
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    /// Secondary exponent; a number or "inf"
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    kappa: Option<f64>,
    /// key=value file supplying defaults for any flag not given
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// identities, keys, lorentz-interp, morrey-interp, embeddings, bilinear, jn, special or all
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    kappa: Option<f64>,
    /// Exponent grid: comma list "4,8,16" or doubling range "4..64"
    #[arg(long)]
    q: Option<String>,
    /// Also write the report here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// thm31, thm41, appendix or bmo-growth
    #[arg(long)]
    objective: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iters: Option<usize>,
    /// Best candidate is written here; its trajectory lands next to it
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GrowthArgs {
    /// trunc-log or indicator
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    /// Exponent grid: comma list "4,8,16" or doubling range "4..64"
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv (the ratio curve) or json (the fit report)
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Space whose per-cube term fills the value column
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Failure that already knows its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Norm(args) => cmd_norm(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Search(args) => cmd_search(args),
        Command::Growth(args) => cmd_growth(args),
        Command::Export(args) => cmd_export(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Any failure to turn the input file into a usable function is an input
/// error, whichever validation step caught it.
fn load_input(path: &std::path::Path) -> Result<InputFunction, Failure> {
    load_function(path).map_err(|e| Failure {
        code: 2,
        message: e.to_string(),
    })
}

fn parse_exponent(s: &str) -> Result<Exponent, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "oo" => Ok(Exponent::Infinite),
        other => other
            .parse::<f64>()
            .map(Exponent::Finite)
            .map_err(|_| Failure::usage(format!("secondary exponent must be a number or \"inf\", got {s:?}"))),
    }
}

/// "4,8,16" or a doubling range "4..64" (both ends included when hit).
fn parse_q_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let bad = |msg: String| Err(Failure::usage(msg));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("malformed exponent range {s:?}")))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("malformed exponent range {s:?}")))?;
        if !(lo.is_finite() && hi.is_finite() && lo >= 1.0 && hi >= lo) {
            return bad(format!("exponent range must satisfy 1 <= lo <= hi, got {s:?}"));
        }
        let mut q = lo;
        let mut grid = Vec::new();
        while q <= hi * (1.0 + 1e-12) {
            grid.push(q);
            q *= 2.0;
        }
        if grid.len() < 2 {
            return bad(format!("exponent range {s:?} yields fewer than two points"));
        }
        return Ok(grid);
    }
    let mut grid = Vec::new();
    for part in s.split(',') {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("malformed exponent list entry {part:?}")))?;
        if !(v.is_finite() && v >= 1.0) {
            return bad(format!("exponents must be finite and at least one, got {part:?}"));
        }
        grid.push(v);
    }
    if grid.is_empty() {
        return bad("empty exponent list".into());
    }
    Ok(grid)
}

/// Fixed-point with twelve digits for moderate magnitudes, scientific
/// otherwise, so "2" prints as 2.000000000000.
fn print_value(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 1e-4 && v.abs() < 1e6) {
        format!("{v:.12}")
    } else {
        fmt_num(v)
    }
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Failure::usage(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_norm(args: NormArgs) -> Result<u8, Failure> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let input = cfg.resolve_path("input", args.input)?;
    let space = cfg.resolve_string("space", args.space)?;
    let p = cfg.resolve_f64("p", args.p)?;
    let r = cfg.resolve_string("r", args.r)?;
    let kappa = cfg.resolve_f64("kappa", args.kappa)?;
    cfg.finish()?;

    let input = input.ok_or_else(|| Failure::usage("norm needs --input"))?;
    let space = space.ok_or_else(|| Failure::usage("norm needs --space"))?;
    let space = SpaceId::parse(&space)?;
    let r = r.map(|s| parse_exponent(&s)).transpose()?;

    let function = load_input(&input)?;
    let value = exports::norm_of(&function, space, p, r, kappa)?;
    println!("{}", print_value(value));
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let suite = cfg.resolve_string("suite", args.suite)?;
    let seed = cfg.resolve_u64("seed", args.seed)?;
    let p = cfg.resolve_f64("p", args.p)?;
    let r = cfg.resolve_string("r", args.r)?;
    let kappa = cfg.resolve_f64("kappa", args.kappa)?;
    let q = cfg.resolve_string("q", args.q)?;
    let out = cfg.resolve_path("out", args.out)?;
    cfg.finish()?;

    let suite_name = suite.ok_or_else(|| Failure::usage("verify needs --suite"))?;
    let suite = Suite::parse(&suite_name).ok_or_else(|| {
        Failure::usage(format!(
            "unknown suite {suite_name:?}; expected identities, keys, lorentz-interp, morrey-interp, embeddings, bilinear, jn, special or all"
        ))
    })?;
    let opts = SuiteOptions {
        seed: seed.unwrap_or(42),
        p,
        r: r.map(|s| parse_exponent(&s)).transpose()?,
        kappa,
        qs: q.map(|s| parse_q_grid(&s)).transpose()?,
    };

    let reports = run_suite(suite, &opts)?;
    let rendered = render_suite_json(
        suite.name(),
        opts.seed,
        env!("CARGO_PKG_VERSION"),
        &reports,
    );
    print!("{rendered}");
    if let Some(path) = out {
        std::fs::write(&path, &rendered)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(u8::from(!suite_passes(&reports)))
}

fn cmd_search(args: SearchArgs) -> Result<u8, Failure> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let objective = cfg.resolve_string("objective", args.objective)?;
    let p = cfg.resolve_f64("p", args.p)?;
    let r = cfg.resolve_string("r", args.r)?;
    let q = cfg.resolve_string("q", args.q)?;
    let kappa = cfg.resolve_f64("kappa", args.kappa)?;
    let seed = cfg.resolve_u64("seed", args.seed)?;
    let iters = cfg.resolve_usize("iters", args.iters)?;
    let out = cfg.resolve_path("out", args.out)?;
    cfg.finish()?;

    let objective = objective.ok_or_else(|| Failure::usage("search needs --objective"))?;
    let r = r.map(|s| parse_exponent(&s)).transpose()?;
    let q = q
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("search takes one exponent for --q, got {s:?}")))
        })
        .transpose()?;
    let finite_r = |default: f64| -> Result<f64, Failure> {
        match r {
            None => Ok(default),
            Some(Exponent::Finite(v)) => Ok(v),
            Some(Exponent::Infinite) => Err(Failure::usage(
                "this objective needs a finite secondary exponent",
            )),
        }
    };

    let objective = match objective.to_ascii_lowercase().replace('_', "-").as_str() {
        "thm31" | "thm31-ratio" | "profile-sup-ratio" => SearchObjective::ProfileSupRatio {
            p: p.unwrap_or(2.0),
            r: finite_r(3.0)?,
            q: q.unwrap_or(4.0),
        },
        "thm41" | "thm41-ratio" | "family-sup-ratio" => SearchObjective::FamilySupRatio {
            p: p.unwrap_or(2.0),
            r: finite_r(3.0)?,
            kappa: kappa.unwrap_or(0.5),
            q: q.unwrap_or(4.0),
        },
        "appendix" | "appendix-ratio" | "embedding-ratio" => SearchObjective::EmbeddingRatio {
            p: p.unwrap_or(4.0),
            q: q.unwrap_or(2.0),
            r: finite_r(1.0)?,
            kappa_star: kappa.unwrap_or(0.5),
        },
        "bmo-growth" | "oscillation-growth" => SearchObjective::OscillationGrowth {
            p: p.unwrap_or(2.0),
            q: q.unwrap_or(8.0),
        },
        other => {
            return Err(Failure::usage(format!(
                "unknown objective {other:?}; expected thm31, thm41, appendix or bmo-growth"
            )))
        }
    };

    let config = SearchConfig::new(objective, seed.unwrap_or(42), iters.unwrap_or(200));
    let outcome = extremal_search(&config)?;

    println!("{}", outcome.report.to_json());
    println!("{}", outcome.best_descriptor);
    if let Some(path) = out {
        std::fs::write(&path, format!("{}\n", outcome.best_descriptor))
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        let mut csv = String::from("iter,ratio\n");
        for (iter, ratio) in &outcome.trajectory {
            csv.push_str(&format!("{iter},{}\n", fmt_num(*ratio)));
        }
        let mut traj = path.as_os_str().to_owned();
        traj.push(".trajectory.csv");
        let traj = PathBuf::from(traj);
        std::fs::write(&traj, csv)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", traj.display())))?;
    }
    Ok(0)
}

fn cmd_growth(args: GrowthArgs) -> Result<u8, Failure> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let family = cfg.resolve_string("family", args.family)?;
    let p = cfg.resolve_f64("p", args.p)?;
    let q = cfg.resolve_string("q", args.q)?;
    let out = cfg.resolve_path("out", args.out)?;
    let format = cfg.resolve_string("format", args.format)?;
    cfg.finish()?;

    let family_name = family.ok_or_else(|| Failure::usage("growth needs --family"))?;
    let family = match family_name.to_ascii_lowercase().replace('_', "-").as_str() {
        "trunc-log" => GrowthFamily::TruncLog { cap: 12.0, n: 8192 },
        "indicator" => GrowthFamily::Indicator { n: 16 },
        other => {
            return Err(Failure::usage(format!(
                "unknown family {other:?}; expected trunc-log or indicator"
            )))
        }
    };
    let qs = match q {
        Some(s) => parse_q_grid(&s)?,
        None => harness::tol::DEFAULT_Q_GRID.to_vec(),
    };
    let format = format.unwrap_or_else(|| "csv".into());

    let (report, curve) = growth_fit(&family, p.unwrap_or(2.0), &qs)?;
    let text = match format.to_ascii_lowercase().as_str() {
        "csv" => {
            let mut csv = String::from("q,ratio\n");
            for (q, ratio) in &curve {
                csv.push_str(&format!("{q},{}\n", fmt_num(*ratio)));
            }
            csv
        }
        "json" => format!("{}\n", report.to_json()),
        other => {
            return Err(Failure::usage(format!(
                "unknown format {other:?}; expected csv or json"
            )))
        }
    };
    write_or_print(out.as_ref(), &text)?;
    Ok(u8::from(!report.passes()))
}

fn cmd_export(args: ExportArgs) -> Result<u8, Failure> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let input = cfg.resolve_path("input", args.input)?;
    let space = cfg.resolve_string("space", args.space)?;
    let p = cfg.resolve_f64("p", args.p)?;
    let r = cfg.resolve_string("r", args.r)?;
    let kappa = cfg.resolve_f64("kappa", args.kappa)?;
    let out = cfg.resolve_path("out", args.out)?;
    cfg.finish()?;

    let input = input.ok_or_else(|| Failure::usage("export needs --input"))?;
    let space = space.ok_or_else(|| Failure::usage("export needs --space"))?;
    let space = SpaceId::parse(&space)?;
    let r = r.map(|s| parse_exponent(&s)).transpose()?;

    let function = load_input(&input)?;
    let grid = match function {
        InputFunction::Grid(g) => g,
        InputFunction::Step(_) => {
            return Err(Failure::usage(
                "per-cube export needs a grid input; step profiles carry no cube family",
            ))
        }
    };
    let csv = exports::per_cube_csv(&grid, space, p, r, kappa)?;
    write_or_print(out.as_ref(), &csv)?;
    Ok(0)
}
