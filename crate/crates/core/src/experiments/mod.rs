//! Monte Carlo recipes over the rigidity and evolution engines, with
//! seed-derived determinism and Wilson intervals.
//!
//! Every trial draws its randomness from one ChaCha8 stream seeded by
//! [`trial_seed`], so a report depends only on its config: trials may run in
//! any order or thread and the CSV comes out byte-identical.

mod config;
mod recipes;
mod stats;

pub use config::{ExperimentConfig, Recipe};
pub use recipes::{run_closure_density, run_conjecture_scan, run_corollary12, run_expansion, run_theorem1};
pub use stats::{chi_square_p, wilson_ci, Interval};

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::{invalid, Result};

/// Seed of trial `trial` of the grid point `tag`: the first eight bytes
/// (little-endian) of `SHA-256(base || trial || tag)`.
pub fn trial_seed(base: u64, trial: u64, tag: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(base.to_le_bytes());
    h.update(trial.to_le_bytes());
    h.update(tag.as_bytes());
    let out = h.finalize();
    u64::from_le_bytes(out[..8].try_into().expect("digest is 32 bytes"))
}

/// Success count of one channel at one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub group: String,
    pub channel: String,
    pub successes: u64,
    pub trials: u64,
    /// `None` when no trial was eligible for the channel.
    pub estimate: Option<f64>,
    pub interval: Option<Interval>,
    /// Predicted limit, where one exists.
    pub target: Option<f64>,
}

impl Summary {
    pub(crate) fn new(group: &str, channel: &str, successes: u64, trials: u64, level: f64, target: Option<f64>) -> Result<Self> {
        let (estimate, interval) = if trials == 0 {
            (None, None)
        } else {
            (Some(successes as f64 / trials as f64), Some(wilson_ci(successes, trials, level)?))
        };
        Ok(Self {
            group: group.to_string(),
            channel: channel.to_string(),
            successes,
            trials,
            estimate,
            interval,
            target,
        })
    }
}

/// Output of one recipe run: raw per-trial rows plus per-channel summaries.
#[derive(Clone, Debug)]
pub struct Report {
    pub config: ExperimentConfig,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summaries: Vec<Summary>,
    pub notes: Vec<String>,
    pub wall_clock_seconds: f64,
}

impl Report {
    pub(crate) fn new(config: &ExperimentConfig, header: &[&str]) -> Self {
        Self {
            config: config.clone(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            summaries: Vec::new(),
            notes: Vec::new(),
            wall_clock_seconds: 0.0,
        }
    }

    pub fn summary(&self, group: &str, channel: &str) -> Option<&Summary> {
        self.summaries.iter().find(|s| s.group == group && s.channel == channel)
    }

    /// Column `name` of every row.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| invalid(e.to_string()))
    }

    pub fn manifest(&self) -> serde_json::Value {
        json!({
            "recipe": self.config.recipe,
            "config": self.config,
            "version": env!("CARGO_PKG_VERSION"),
            "rows": self.rows.len(),
            "summaries": self.summaries,
            "notes": self.notes,
            "wall_clock_seconds": self.wall_clock_seconds,
        })
    }

    /// Writes the CSV to `csv_path` and the manifest next to it as
    /// `<csv_path>.manifest.json`, returning the manifest path.
    pub fn write(&self, csv_path: &Path) -> Result<PathBuf> {
        std::fs::write(csv_path, self.to_csv()?)?;
        let mut name = csv_path.as_os_str().to_owned();
        name.push(".manifest.json");
        let manifest = PathBuf::from(name);
        std::fs::write(&manifest, serde_json::to_string_pretty(&self.manifest())? + "\n")?;
        Ok(manifest)
    }
}

/// Runs the recipe named in `cfg`, on a pool of `jobs` threads if given.
pub fn run(cfg: &ExperimentConfig, jobs: Option<usize>) -> Result<Report> {
    cfg.validate()?;
    let go = || match cfg.recipe {
        Recipe::Theorem1 => run_theorem1(cfg),
        Recipe::Cor12 => run_corollary12(cfg),
        Recipe::Closure => run_closure_density(cfg),
        Recipe::Expansion => run_expansion(cfg),
        Recipe::Conjecture => run_conjecture_scan(cfg),
    };
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| invalid(e.to_string()))?
            .install(go),
        None => go(),
    }
}

/// Runs `trial(index, seed)` for every trial of one grid point in parallel,
/// keeping results in trial order.
pub(crate) fn run_trials<T, F>(cfg: &ExperimentConfig, tag: &str, trial: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync,
{
    let base = cfg.seed.ok_or_else(|| invalid("no base seed set"))?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| trial(i, trial_seed(base, i as u64, tag)))
        .collect()
}

pub(crate) fn timed(f: impl FnOnce() -> Result<Report>) -> Result<Report> {
    let start = Instant::now();
    let mut report = f()?;
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
