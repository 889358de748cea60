//! Run configuration: config file, then `QSUM_*` environment variables,
//! then flags. Flags and environment are merged by clap; the file only
//! fills what both leave unset.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use qsum::EvalConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Table,
    Structured,
}

/// Keys accepted in the TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub max_terms: Option<usize>,
    pub quad_nodes: Option<usize>,
    pub max_quad_nodes: Option<usize>,
    pub rel_tol: Option<f64>,
    pub ill_cond_guard: Option<f64>,
    pub format: Option<OutputMode>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Values from flags or environment.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub max_terms: Option<usize>,
    pub quad_nodes: Option<usize>,
    pub format: Option<OutputMode>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// `None` means each identity's own default.
    pub tol: Option<f64>,
    pub seed: u64,
    pub count: usize,
    pub engine: EvalConfig,
    pub output: OutputMode,
    pub out_path: Option<PathBuf>,
    pub workers: usize,
}

/// The part of the configuration that determines results; embedded in reports.
#[derive(Debug, Clone, Serialize)]
pub struct Snapshot {
    pub tol: Option<f64>,
    pub seed: u64,
    pub count: usize,
    pub engine: EvalConfig,
}

impl RunConfig {
    pub fn resolve(file: FileConfig, o: Overrides) -> Result<Self> {
        let base = EvalConfig::default();
        let engine = EvalConfig {
            rel_tol: file.rel_tol.unwrap_or(base.rel_tol),
            max_terms: o.max_terms.or(file.max_terms).unwrap_or(base.max_terms),
            quad_nodes: o.quad_nodes.or(file.quad_nodes).unwrap_or(base.quad_nodes),
            max_quad_nodes: file.max_quad_nodes.unwrap_or(base.max_quad_nodes),
            ill_cond_guard: file.ill_cond_guard.unwrap_or(base.ill_cond_guard),
        };
        let engine = EvalConfig { max_quad_nodes: engine.max_quad_nodes.max(engine.quad_nodes), ..engine };
        engine.validate()?;
        let tol = o.tol.or(file.tol);
        if let Some(t) = tol {
            if t.is_nan() || t <= 0.0 {
                bail!("tol must be positive, got {t}");
            }
        }
        Ok(RunConfig {
            tol,
            seed: o.seed.or(file.seed).unwrap_or(1),
            count: o.count.or(file.count).unwrap_or(25),
            engine,
            output: o.format.or(file.format).unwrap_or(OutputMode::Table),
            out_path: o.out.or(file.out),
            workers: o.workers.or(file.workers).unwrap_or(1).max(1),
        })
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot { tol: self.tol, seed: self.seed, count: self.count, engine: self.engine }
    }
}
