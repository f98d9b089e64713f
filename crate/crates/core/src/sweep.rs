//! Round-trip analysis of single parameter sets and seeded sweeps over
//! parameter ranges.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, with_workers, Execution};
use crate::gl_model::{build_gl_series, expand_monic_tf, ModelParams, DEFAULT_HORIZON};
use crate::identifiability::{analyze, AnalysisConfig, IdentifiabilityReport, Verdict};

/// Sampling period used when none is given.
pub const DEFAULT_TS: f64 = 5e-4;

/// Closed `[lo, hi]` range; `lo == hi` pins the parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    fn sample(&self, rng: &mut impl Rng) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            rng.gen_range(self.lo..self.hi)
        }
    }
}

/// Sampling ranges for the six circuit parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRanges {
    pub r_inf: Range,
    pub r1: Range,
    pub c1: Range,
    pub alpha1: Range,
    pub c2: Range,
    pub alpha2: Range,
}

impl Default for ParamRanges {
    /// Ranges typical of battery cells.
    fn default() -> Self {
        Self {
            r_inf: Range::new(0.01, 0.2),
            r1: Range::new(0.05, 5.0),
            c1: Range::new(1.0, 20.0),
            alpha1: Range::new(0.1, 0.9),
            c2: Range::new(100.0, 500.0),
            alpha2: Range::new(0.1, 0.9),
        }
    }
}

impl ParamRanges {
    fn named(&self) -> [(&'static str, Range); 6] {
        [
            ("r_inf", self.r_inf),
            ("r1", self.r1),
            ("c1", self.c1),
            ("alpha1", self.alpha1),
            ("c2", self.c2),
            ("alpha2", self.alpha2),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r) in self.named() {
            if !(r.lo.is_finite() && r.hi.is_finite() && r.lo <= r.hi) {
                return Err(Error::Config(format!(
                    "range for {name} must satisfy lo <= hi, got ({}, {})",
                    r.lo, r.hi
                )));
            }
            if r.lo <= 0.0 {
                return Err(Error::Config(format!("range for {name} must be positive")));
            }
        }
        for (name, r) in [("alpha1", self.alpha1), ("alpha2", self.alpha2)] {
            if r.hi >= 1.0 {
                return Err(Error::Config(format!(
                    "range for {name} must lie inside (0, 1)"
                )));
            }
        }
        Ok(())
    }
}

/// `samples` independent uniform draws; the same seed gives the same draws.
pub fn draw_params(
    ranges: &ParamRanges,
    samples: usize,
    seed: u64,
    ts: f64,
    horizon: usize,
) -> Result<Vec<ModelParams>> {
    ranges.validate()?;
    if samples == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let p = ModelParams {
                r_inf: ranges.r_inf.sample(&mut rng),
                r1: ranges.r1.sample(&mut rng),
                c1: ranges.c1.sample(&mut rng),
                alpha1: ranges.alpha1.sample(&mut rng),
                c2: ranges.c2.sample(&mut rng),
                alpha2: ranges.alpha2.sample(&mut rng),
                ts,
                horizon,
            };
            p.validate().map(|_| p)
        })
        .collect()
}

/// Analysis of the transfer function generated by known parameters.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub truth: ModelParams,
    pub report: IdentifiabilityReport,
    /// Per-parameter `|recovered - truth| / |truth|` in circuit order, for
    /// the accepted candidate closest to the truth.
    pub relative_errors: Option<[f64; 6]>,
}

impl RoundTrip {
    pub fn max_relative_error(&self) -> Option<f64> {
        self.relative_errors
            .map(|e| e.iter().cloned().fold(0.0, f64::max))
    }
}

pub fn relative_errors(truth: &ModelParams, recovered: &ModelParams) -> [f64; 6] {
    let t = truth.circuit_values();
    let r = recovered.circuit_values();
    std::array::from_fn(|k| (r[k] - t[k]).abs() / t[k].abs())
}

pub fn roundtrip(params: &ModelParams, config: &AnalysisConfig) -> Result<RoundTrip> {
    let ctx = &config.precision;
    let tf = expand_monic_tf(&build_gl_series(params, ctx)?, ctx)?;
    let report = analyze(&tf, params.ts, config)?;
    let relative_errors = report
        .accepted()
        .filter_map(|c| c.recovered.as_ref())
        .map(|rec| relative_errors(params, rec))
        .min_by(|a, b| {
            let ma = a.iter().cloned().fold(0.0, f64::max);
            let mb = b.iter().cloned().fold(0.0, f64::max);
            ma.total_cmp(&mb)
        });
    Ok(RoundTrip {
        truth: *params,
        report,
        relative_errors,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub params: ModelParams,
    /// `None` when the analysis itself failed; see `error`.
    pub verdict: Option<Verdict>,
    pub accepted: usize,
    pub max_relative_error: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepSettings {
    pub ranges: ParamRanges,
    pub samples: usize,
    pub seed: u64,
    pub ts: f64,
    pub horizon: usize,
    pub execution: Execution,
    pub workers: Option<usize>,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            ranges: ParamRanges::default(),
            samples: 100,
            seed: 0,
            ts: DEFAULT_TS,
            horizon: DEFAULT_HORIZON,
            execution: Execution::default(),
            workers: None,
        }
    }
}

/// Rows come back in draw order whatever the execution mode.
pub fn run_sweep(settings: &SweepSettings, config: &AnalysisConfig) -> Result<Vec<SweepRow>> {
    let draws = draw_params(
        &settings.ranges,
        settings.samples,
        settings.seed,
        settings.ts,
        settings.horizon,
    )?;
    // Rows already fan out; candidates within a row stay sequential.
    let row_config = config.clone().with_execution(Execution::Sequential);
    let rows = with_workers(settings.execution, settings.workers, || {
        map_ordered(
            &draws,
            settings.execution,
            |index, params| match roundtrip(params, &row_config) {
                Ok(rt) => SweepRow {
                    index,
                    params: *params,
                    verdict: Some(rt.report.verdict),
                    accepted: rt.report.accepted().count(),
                    max_relative_error: rt.max_relative_error(),
                    error: None,
                },
                Err(e) => SweepRow {
                    index,
                    params: *params,
                    verdict: None,
                    accepted: 0,
                    max_relative_error: None,
                    error: Some(e.to_string()),
                },
            },
        )
    });
    Ok(rows)
}

/// Row counts per verdict class, in a fixed order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub globally_identifiable: usize,
    pub identifiable: usize,
    pub unidentifiable: usize,
    pub no_valid_solution: usize,
    pub failed: usize,
}

pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let mut s = SweepSummary::default();
    for row in rows {
        match row.verdict {
            Some(Verdict::GloballyIdentifiable) => s.globally_identifiable += 1,
            Some(Verdict::Identifiable(_)) => s.identifiable += 1,
            Some(Verdict::Unidentifiable) => s.unidentifiable += 1,
            Some(Verdict::NoValidSolution) => s.no_valid_solution += 1,
            None => s.failed += 1,
        }
    }
    s
}
