//! `qsum`: evaluate q-series objects and verify identities among them.

mod eval;
mod output;
mod parse;
mod settings;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qsum::identities::{self, registry, sweep, SweepOptions, VerificationReport, TREND_FAMILIES};
use qsum::parallel::with_workers;
use serde::Serialize;

use settings::{FileConfig, OutputMode, Overrides, RunConfig, Snapshot};

#[derive(Parser)]
#[command(name = "qsum", version, about = "Evaluate q-series and verify identities among them")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Comparison tolerance (default: each identity's own)
    #[arg(long, global = true, env = "QSUM_TOL")]
    tol: Option<f64>,
    #[arg(long, global = true, env = "QSUM_SEED")]
    seed: Option<u64>,
    /// Points per sweep
    #[arg(long, global = true, env = "QSUM_COUNT")]
    count: Option<usize>,
    #[arg(long, global = true, env = "QSUM_MAX_TERMS")]
    max_terms: Option<usize>,
    /// Initial quadrature nodes (power of two, at least 32)
    #[arg(long, global = true, env = "QSUM_QUAD_NODES")]
    quad_nodes: Option<usize>,
    /// Also write the structured output to this file
    #[arg(long, global = true, env = "QSUM_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, env = "QSUM_FORMAT")]
    format: Option<OutputMode>,
    /// Worker threads for sweeps; results do not depend on it
    #[arg(long, global = true, env = "QSUM_WORKERS")]
    workers: Option<usize>,
    /// TOML file with the same keys (lowest precedence)
    #[arg(long, global = true, env = "QSUM_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Show the identity catalog
    List {
        /// Only this identity (id or tag)
        #[arg(long)]
        id: Option<String>,
    },
    /// Evaluate one function, e.g. `eval gamma z=0.5`
    Eval {
        function: String,
        /// name=value, value as re, imi, re+imi or re-imi
        params: Vec<String>,
    },
    /// Check one identity at one point
    Verify { id: String, params: Vec<String> },
    /// Check an identity (or `all`) at sampled points
    Sweep {
        id: String,
        /// Parameters pinned on every sampled point
        params: Vec<String>,
        /// Print every point, not just failures
        #[arg(long)]
        verbose: bool,
    },
    /// Follow a family of identities toward its limit
    Trend {
        family: String,
        /// Comma-separated schedule of N (or p) values
        #[arg(long, value_delimiter = ',')]
        path: Option<Vec<f64>>,
    },
}

#[derive(Serialize)]
struct SweepOutput<'a> {
    run: Snapshot,
    reports: &'a [VerificationReport],
}

/// Outcome of a command, mapped onto the exit status.
enum Verdict {
    Pass,
    Fail,
    Error,
}

fn emit(run: &RunConfig, table: String, structured: &impl Serialize) -> Result<()> {
    let json = serde_json::to_string_pretty(structured)?;
    let mut stdout = std::io::stdout().lock();
    let shown = match run.output {
        OutputMode::Table => write!(stdout, "{table}"),
        OutputMode::Structured => writeln!(stdout, "{json}"),
    };
    // A reader that stops early (`| head`) is not a failure of the run.
    match shown {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(path) = &run.out_path {
        std::fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Verdict> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let overrides = Overrides {
        tol: cli.tol,
        seed: cli.seed,
        count: cli.count,
        max_terms: cli.max_terms,
        quad_nodes: cli.quad_nodes,
        format: cli.format,
        out: cli.out.clone(),
        workers: cli.workers,
    };
    let rc = RunConfig::resolve(file, overrides)?;
    match cli.command {
        Command::List { id } => {
            let rows: Vec<_> = match id {
                Some(id) => vec![identities::find(&id)?],
                None => registry().iter().collect(),
            };
            let table: String = rows.iter().map(|d| output::listing(d)).collect();
            let schema: Vec<_> = rows
                .iter()
                .map(|d| {
                    serde_json::json!({
                        "tag": d.tag,
                        "id": d.id,
                        "title": d.title,
                        "params": d.params,
                        "constraints": d.constraint_text(),
                        "family": d.family,
                        "default_tol": d.default_tol(),
                        "notes": d.notes,
                    })
                })
                .collect();
            emit(&rc, table, &schema)?;
            Ok(Verdict::Pass)
        }
        Command::Eval { function, params } => {
            let p = parse::parse_assignments(&params)?;
            let out = eval::evaluate(&function, &p, &rc.engine)?;
            emit(&rc, output::eval(&out), &out)?;
            Ok(if out.converged { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Verify { id, params } => {
            let p = parse::parse_assignments(&params)?;
            let r = identities::evaluate_identity(&id, &p, rc.tol, &rc.engine)?;
            emit(&rc, output::check(&r), &r)?;
            Ok(match (r.pass, r.error.is_some()) {
                (true, _) => Verdict::Pass,
                (false, false) => Verdict::Fail,
                (false, true) => Verdict::Error,
            })
        }
        Command::Sweep { id, params, verbose } => {
            let overrides = parse::parse_assignments(&params)?;
            let ids: Vec<&str> = if id == "all" {
                registry().iter().map(|d| d.id).collect()
            } else {
                vec![identities::find(&id)?.id]
            };
            let opts = SweepOptions { count: rc.count, seed: rc.seed, tol: rc.tol, overrides };
            let reports = with_workers(rc.workers, || ids.iter().map(|id| sweep(id, &opts, &rc.engine)).collect::<qsum::Result<Vec<_>>>())?;
            let table: String = reports.iter().map(|r| output::report(r, verbose)).collect();
            emit(&rc, table, &SweepOutput { run: rc.snapshot(), reports: &reports })?;
            let errors = reports.iter().any(|r| r.summary.error > 0);
            let fails = reports.iter().any(|r| r.summary.fail > 0);
            Ok(if errors {
                Verdict::Error
            } else if fails {
                Verdict::Fail
            } else {
                Verdict::Pass
            })
        }
        Command::Trend { family, path } => {
            let families: Vec<&str> = if family == "all" { TREND_FAMILIES.to_vec() } else { vec![family.as_str()] };
            let mut reports = Vec::new();
            for f in families {
                reports.push(with_workers(rc.workers, || identities::limit_trend(f, path.as_deref(), &rc.engine))?);
            }
            let table: String = reports.iter().map(output::trend).collect();
            emit(&rc, table, &reports)?;
            Ok(if reports.iter().all(|t| t.pass) { Verdict::Pass } else { Verdict::Fail })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Ok(Verdict::Error) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
