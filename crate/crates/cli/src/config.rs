//! Run configuration: JSON file defaults overlaid by flags and environment.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use foecm::exec::Execution;
use foecm::gl_model::{DEFAULT_HORIZON, MIN_HORIZON};
use foecm::identifiability::{AnalysisConfig, DEFAULT_VERIFICATION_TOL};
use foecm::numerics::{PrecisionContext, DEFAULT_DIGITS, DEFAULT_MAX_ITERATIONS};
use foecm::sweep::{ParamRanges, SweepSettings, DEFAULT_TS};
use serde::{Deserialize, Serialize};

/// Contents of a `--config` file. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub digits: Option<usize>,
    pub root_tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
    pub verification_tolerance: Option<f64>,
    #[serde(rename = "T")]
    pub horizon: Option<usize>,
    pub ts: Option<f64>,
    pub ranges: Option<ParamRanges>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: RunConfig) -> RunConfig {
        RunConfig {
            digits: over.digits.or(self.digits),
            root_tolerance: over.root_tolerance.or(self.root_tolerance),
            max_iterations: over.max_iterations.or(self.max_iterations),
            verification_tolerance: over.verification_tolerance.or(self.verification_tolerance),
            horizon: over.horizon.or(self.horizon),
            ts: over.ts.or(self.ts),
            ranges: over.ranges.or(self.ranges),
            samples: over.samples.or(self.samples),
            seed: over.seed.or(self.seed),
            workers: over.workers.or(self.workers),
            out: over.out.or(self.out),
        }
    }

    pub fn precision(&self) -> anyhow::Result<PrecisionContext> {
        let digits = self.digits.unwrap_or(DEFAULT_DIGITS);
        let base = PrecisionContext::new(digits)?;
        let max_iter = self.max_iterations.unwrap_or(DEFAULT_MAX_ITERATIONS);
        let tol = match self.root_tolerance {
            Some(t) => base.from_f64(t)?,
            None => base.root_tolerance().clone(),
        };
        Ok(PrecisionContext::with_settings(digits, tol, max_iter)?)
    }

    pub fn execution(&self) -> Execution {
        match self.workers {
            Some(1) => Execution::Sequential,
            _ => Execution::Parallel,
        }
    }

    pub fn analysis(&self) -> anyhow::Result<AnalysisConfig> {
        Ok(AnalysisConfig::new(self.precision()?)
            .with_verification_tolerance(
                self.verification_tolerance
                    .unwrap_or(DEFAULT_VERIFICATION_TOL),
            )?
            .with_execution(self.execution()))
    }

    /// `T` after checking it against the minimum horizon, if set.
    pub fn horizon(&self) -> anyhow::Result<Option<usize>> {
        match self.horizon {
            Some(t) if t < MIN_HORIZON => bail!("T must be at least {MIN_HORIZON}, got {t}"),
            t => Ok(t),
        }
    }

    pub fn sweep(&self) -> anyhow::Result<SweepSettings> {
        let ranges = self.ranges.unwrap_or_default();
        ranges.validate()?;
        Ok(SweepSettings {
            ranges,
            samples: self.samples.unwrap_or(100),
            seed: self.seed.unwrap_or(0),
            ts: self.ts.unwrap_or(DEFAULT_TS),
            horizon: self.horizon()?.unwrap_or(DEFAULT_HORIZON),
            execution: self.execution(),
            workers: self.workers,
        })
    }
}
