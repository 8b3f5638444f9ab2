//! The `kmp` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cartan::{classify, parse, CartanMatrix, Input};
use crate::error::{Error, Result};
use crate::invariants::{chains, clr_check, homotopy_indices, k_invariants, kac_check, kn_survey};
use crate::poincare::{load_cache, save_cache, PoincareEngine, CACHE_ENV};
use crate::report;
use crate::weyl::{coset_counts, weyl_counts, DEFAULT_CAP};

const CACHE_FILE: &str = "poincare.cache";

#[derive(Parser, Debug)]
#[command(name = "kmp", version, about = "Poincaré series of Kac-Moody Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation order for series expansions.
    #[arg(long, global = true, default_value_t = 40)]
    order: usize,

    /// Length bound for the brute-force enumeration.
    #[arg(long, global = true, default_value_t = 10)]
    depth: usize,

    /// Element cap for the brute-force enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Parabolic subset as 1-based comma-separated indices, e.g. "1,3,4".
    #[arg(long, global = true)]
    subset: Option<String>,

    /// Evaluation point, an integer or a fraction such as 3/2.
    #[arg(long, global = true)]
    q: Option<String>,

    /// Human-readable output instead of compact JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Type of every indecomposable component.
    Classify { input: PathBuf },
    /// Poincaré series as a reduced rational function.
    Poincare { input: PathBuf },
    /// Taylor coefficients of the Poincaré series.
    Series { input: PathBuf },
    /// Series of minimal coset representatives for --subset.
    Quotient { input: PathBuf },
    /// Compare the series with brute-force length counts.
    OracleCheck { input: PathBuf },
    /// Coefficients of B(t) = 1 - 1/C(t).
    KacCheck { input: PathBuf },
    /// Degree of P(A) with the chain invariants K0 and K1.
    ClrCheck { input: PathBuf },
    /// Infinite and quasi-infinite chains.
    Chains { input: PathBuf },
    /// Nonzero homotopy indices up to --order.
    Indices { input: PathBuf },
    /// Poincaré series of a Coxeter multigraph.
    Graph { input: PathBuf },
    /// Count distinct series over bond-class multisets of rank --n.
    KnSurvey {
        #[arg(long)]
        n: usize,
    },
    /// Value of P(A) at --q.
    Eval { input: PathBuf },
}

impl Command {
    fn input(&self) -> Option<&Path> {
        match self {
            Command::KnSurvey { .. } => None,
            Command::Classify { input }
            | Command::Poincare { input }
            | Command::Series { input }
            | Command::Quotient { input }
            | Command::OracleCheck { input }
            | Command::KacCheck { input }
            | Command::ClrCheck { input }
            | Command::Chains { input }
            | Command::Indices { input }
            | Command::Graph { input }
            | Command::Eval { input } => Some(input),
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn parse_subset(s: &str, rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| Error::Parse(format!("subset entry {part:?} is not a positive integer")))?;
        if i == 0 || i > rank {
            return Err(Error::Parse(format!("subset index {i} out of range 1..={rank}")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_q(s: &str) -> Result<BigRational> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("--q {s:?} is not an integer or fraction")))
}

fn read_input(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

fn execute(cli: &Cli, engine: &PoincareEngine, input: Option<Input>) -> Result<Output> {
    let a: Option<CartanMatrix> = input.map(Input::into_cartan);
    let need = || a.clone().ok_or_else(|| Error::Parse("missing input".into()));
    let value = match &cli.command {
        Command::Classify { .. } => {
            let a = need()?;
            report::classify_report(&a, &classify(&a)?)
        }
        Command::Poincare { .. } => {
            let a = need()?;
            let r = engine.poincare(&a)?;
            if cli.pretty {
                return Ok(Output::Text(format!(
                    "P(t) = {}\ntype: {}\n",
                    report::pretty_ratfunc(&r.series),
                    r.type_class.labels().join(" + ")
                )));
            }
            report::poincare_report(&a, &r)
        }
        Command::Series { .. } => report::series_report(&engine.series(&need()?)?, cli.order)?,
        Command::Quotient { .. } => {
            let a = need()?;
            let raw = cli
                .subset
                .as_deref()
                .ok_or_else(|| Error::Parse("quotient needs --subset".into()))?;
            let subset = parse_subset(raw, a.rank())?;
            let q = engine.quotient_series(&a, &subset)?;
            if cli.pretty {
                return Ok(Output::Text(format!("P/P_I = {}\n", report::pretty_ratfunc(&q))));
            }
            report::quotient_report(&subset, &q, cli.order)?
        }
        Command::OracleCheck { .. } => {
            let a = need()?;
            match cli.subset.as_deref() {
                Some(raw) => {
                    let subset = parse_subset(raw, a.rank())?;
                    let counts = coset_counts(&a, &subset, cli.depth, cli.cap)?;
                    report::oracle_report(&engine.quotient_series(&a, &subset)?, &counts, cli.depth)?
                }
                None => {
                    let counts = weyl_counts(&a, cli.depth, cli.cap);
                    report::oracle_report(&engine.series(&a)?, &counts, cli.depth)?
                }
            }
        }
        Command::KacCheck { .. } => report::kac_report(&kac_check(engine, &need()?, cli.order)?),
        Command::ClrCheck { .. } => report::clr_report(&clr_check(engine, &need()?)?),
        Command::Chains { .. } => {
            let a = need()?;
            report::chains_report(&chains(engine, &a)?, &k_invariants(engine, &a)?)
        }
        Command::Indices { .. } => {
            let g = need()?.coxeter_graph();
            report::indices_report(&homotopy_indices(engine, &g, cli.order)?)
        }
        Command::Graph { .. } => {
            let a = need()?;
            if cli.pretty {
                return Ok(Output::Text(format!(
                    "P(t) = {}\n",
                    report::pretty_ratfunc(&engine.series(&a)?)
                )));
            }
            report::graph_report(engine, &a)?
        }
        Command::KnSurvey { n } => report::survey_report(&kn_survey(engine, *n)?),
        Command::Eval { .. } => {
            let raw = cli.q.as_deref().ok_or_else(|| Error::Parse("eval needs --q".into()))?;
            let q = parse_q(raw)?;
            let v = engine.series(&need()?)?.eval(&q)?;
            if cli.pretty {
                return Ok(Output::Text(format!(
                    "{}\n",
                    report::eval_report(&q, &v)["value"].as_str().unwrap()
                )));
            }
            report::eval_report(&q, &v)
        }
    };
    Ok(Output::Json(value))
}

fn render(out: &Output, pretty: bool) -> String {
    match out {
        Output::Text(s) => s.clone(),
        Output::Json(v) if pretty => format!("{}\n", serde_json::to_string_pretty(v).unwrap()),
        Output::Json(v) => format!("{v}\n"),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremViolation(_) => 2,
        _ => 1,
    }
}

fn batch(cli: &Cli, engine: &PoincareEngine, dir: &Path, out: &mut dyn Write) -> Result<i32> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let results: Vec<(String, Result<Output>)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, read_input(p).and_then(|i| execute(cli, engine, Some(i))))
        })
        .collect();
    let mut code = 0;
    let mut ok = 0;
    let mut reports = Vec::new();
    for (name, r) in results {
        match r {
            Ok(Output::Json(v)) => {
                ok += 1;
                reports.push(json!({"file": name, "report": v}));
            }
            Ok(Output::Text(s)) => {
                ok += 1;
                reports.push(json!({"file": name, "report": s}));
            }
            Err(e) => {
                code = code.max(exit_code(&e));
                reports.push(json!({"file": name, "error": e.to_string()}));
            }
        }
    }
    let total = reports.len();
    let doc = json!({
        "reports": reports,
        "summary": {"files": total, "ok": ok, "failed": total - ok},
    });
    write!(out, "{}", render(&Output::Json(doc), cli.pretty))?;
    Ok(code)
}

fn cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(|d| PathBuf::from(d).join(CACHE_FILE))
}

fn run_parsed(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let engine = PoincareEngine::new();
    let cache = cache_path();
    if let Some(p) = &cache {
        load_cache(&engine, p)?;
    }
    let code = match cli.command.input() {
        Some(path) if path.is_dir() => batch(cli, &engine, path, out)?,
        Some(path) => {
            let input = read_input(path)?;
            write!(out, "{}", render(&execute(cli, &engine, Some(input))?, cli.pretty))?;
            0
        }
        None => {
            write!(out, "{}", render(&execute(cli, &engine, None)?, cli.pretty))?;
            0
        }
    };
    if let Some(p) = &cache {
        save_cache(&engine, p)?;
    }
    Ok(code)
}

/// Runs the tool on `args` (including the program name) and returns the
/// process exit status: 0 on success, 1 on bad input, 2 when an internal
/// identity fails.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match cli.jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build() {
            Ok(pool) => {
                let mut buf = Vec::new();
                pool.install(|| run_parsed(&cli, &mut buf))
                    .and_then(|code| out.write_all(&buf).map(|_| code).map_err(Error::from))
            }
            Err(e) => Err(Error::Precondition(format!("cannot start {k} workers: {e}"))),
        },
        None => run_parsed(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
