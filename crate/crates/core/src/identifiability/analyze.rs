use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::candidates::{
    exclusion_interval, recover_alpha1, recover_parameters, screen_candidate, verify_candidate,
    CandidateStatus,
};
use super::polys::{
    alpha1_as_rational, build_alpha_polys, build_octic, Alpha1Relation, RationalAlpha1,
};
use super::IdentCoeffs;
use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::gl_model::{head_coeffs, ModelParams, MonicTF};
use crate::numerics::{abs, find_roots, PrecisionContext, Real, RealPoly};

pub const DEFAULT_VERIFICATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub precision: PrecisionContext,
    /// Accept a candidate when its max normalized coefficient error is below this.
    pub verification_tolerance: Real,
    /// Roots with `|im|` below this count as real.
    pub im_threshold: Real,
    /// Denominators of `alpha1` and `b1` below this reject the candidate.
    pub degeneracy_threshold: Real,
    pub execution: Execution,
}

impl AnalysisConfig {
    pub fn new(precision: PrecisionContext) -> Self {
        let half = precision.half_precision_threshold();
        let tol = precision
            .from_f64(DEFAULT_VERIFICATION_TOL)
            .expect("finite default");
        Self {
            verification_tolerance: tol,
            im_threshold: half.clone(),
            degeneracy_threshold: half,
            precision,
            execution: Execution::default(),
        }
    }

    pub fn with_verification_tolerance(mut self, tol: f64) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::Config(format!(
                "verification tolerance must be positive, got {tol}"
            )));
        }
        self.verification_tolerance = self.precision.from_f64(tol)?;
        Ok(self)
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self::new(PrecisionContext::default())
    }
}

/// One root of the octic and everything derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSolution {
    /// Real part of the root.
    pub alpha2: Real,
    /// Imaginary part of the root (zero-ish for real roots).
    pub alpha2_im: Real,
    pub alpha1: Option<Real>,
    pub a10: Option<Real>,
    pub b1: Option<Real>,
    pub b2: Option<Real>,
    pub recovered: Option<ModelParams>,
    pub max_norm_error: Option<Real>,
    pub coefficient_errors: Vec<Real>,
    pub status: CandidateStatus,
}

impl CandidateSolution {
    fn rejected(alpha2: Real, alpha2_im: Real, status: CandidateStatus) -> Self {
        Self {
            alpha2,
            alpha2_im,
            alpha1: None,
            a10: None,
            b1: None,
            b2: None,
            recovered: None,
            max_norm_error: None,
            coefficient_errors: Vec::new(),
            status,
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.status == CandidateStatus::Accepted
    }
}

/// Verdict from the number of coefficient-consistent parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Exactly one parameter set reproduces the coefficients.
    GloballyIdentifiable,
    /// Finitely many (at least two) parameter sets.
    Identifiable(usize),
    /// Every `alpha2` satisfies the reduced equations.
    Unidentifiable,
    NoValidSolution,
}

impl Verdict {
    pub fn from_accepted(count: usize) -> Self {
        match count {
            0 => Verdict::NoValidSolution,
            1 => Verdict::GloballyIdentifiable,
            n => Verdict::Identifiable(n),
        }
    }

    pub fn from_candidates(candidates: &[CandidateSolution]) -> Self {
        Self::from_accepted(candidates.iter().filter(|c| c.is_accepted()).count())
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::GloballyIdentifiable => "GloballyIdentifiable",
            Verdict::Identifiable(_) => "Identifiable",
            Verdict::Unidentifiable => "Unidentifiable",
            Verdict::NoValidSolution => "NoValidSolution",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StageTimings {
    pub reduction: Duration,
    pub roots: Duration,
    pub candidates: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentifiabilityReport {
    pub heads: IdentCoeffs,
    pub candidates: Vec<CandidateSolution>,
    pub verdict: Verdict,
    /// Monic octic in `alpha2`; `None` when it vanishes identically.
    pub octic: Option<RealPoly>,
    pub exclusion_interval: (Real, Real),
    pub horizon: usize,
    pub timings: StageTimings,
}

impl IdentifiabilityReport {
    pub fn accepted(&self) -> impl Iterator<Item = &CandidateSolution> {
        self.candidates.iter().filter(|c| c.is_accepted())
    }
}

/// Runs the whole identifiability pipeline on a monic transfer function.
///
/// `ts` is the known sampling period, needed only to turn the recovered gains
/// back into CPE coefficients.
pub fn analyze(tf: &MonicTF, ts: f64, config: &AnalysisConfig) -> Result<IdentifiabilityReport> {
    if !(ts > 0.0 && ts.is_finite()) {
        return Err(Error::Domain(format!("ts must be positive, got {ts}")));
    }
    let ctx = &config.precision;
    let start = Instant::now();
    let heads = head_coeffs(tf)?;
    let interval = exclusion_interval(&heads)?;
    let polys = build_alpha_polys(&heads, ctx)?;
    let quartic = alpha1_as_rational(&heads, &polys, Alpha1Relation::Quartic, ctx)?;
    let quintic = alpha1_as_rational(&heads, &polys, Alpha1Relation::Quintic, ctx)?;
    let mut timings = StageTimings::default();

    let octic = match build_octic(&quartic, &quintic) {
        Ok(p) => p,
        Err(Error::Degenerate(_)) => {
            timings.reduction = start.elapsed();
            timings.total = timings.reduction;
            return Ok(IdentifiabilityReport {
                heads,
                candidates: Vec::new(),
                verdict: Verdict::Unidentifiable,
                octic: None,
                exclusion_interval: interval,
                horizon: tf.horizon(),
                timings,
            });
        }
        Err(e) => return Err(e),
    };
    timings.reduction = start.elapsed();

    let t = Instant::now();
    let roots = if octic.degree().unwrap_or(0) >= 1 {
        find_roots(&octic, ctx)?
    } else {
        Vec::new()
    };
    timings.roots = t.elapsed();

    let t = Instant::now();
    let candidates = map_ordered(&roots, config.execution, |_, root| {
        if abs(&root.im) >= config.im_threshold {
            return Ok(CandidateSolution::rejected(
                root.re.clone(),
                root.im.clone(),
                CandidateStatus::RejectedComplex,
            ));
        }
        evaluate_real_root(
            &root.re, &root.im, &heads, &quartic, &interval, tf, ts, config,
        )
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    timings.candidates = t.elapsed();
    timings.total = start.elapsed();

    Ok(IdentifiabilityReport {
        heads,
        verdict: Verdict::from_candidates(&candidates),
        candidates,
        octic: Some(octic),
        exclusion_interval: interval,
        horizon: tf.horizon(),
        timings,
    })
}

#[allow(clippy::too_many_arguments)]
fn evaluate_real_root(
    alpha2: &Real,
    im: &Real,
    heads: &IdentCoeffs,
    quartic: &RationalAlpha1,
    interval: &(Real, Real),
    tf: &MonicTF,
    ts: f64,
    config: &AnalysisConfig,
) -> Result<CandidateSolution> {
    let ctx = &config.precision;
    let mut cand = CandidateSolution::rejected(
        alpha2.clone(),
        im.clone(),
        CandidateStatus::RejectedDegenerate,
    );

    let alpha1 = match recover_alpha1(alpha2, quartic, &config.degeneracy_threshold) {
        Ok(a) => a,
        Err(Error::Degenerate(_)) => return Ok(cand),
        Err(e) => return Err(e),
    };
    cand.alpha1 = Some(alpha1.clone());
    if let Some(status) = screen_candidate(alpha2, &alpha1, interval) {
        cand.status = status;
        return Ok(cand);
    }

    let recovery = match recover_parameters(
        &alpha1,
        alpha2,
        heads,
        ts,
        tf.horizon(),
        &config.degeneracy_threshold,
        ctx,
    ) {
        Ok(r) => r,
        Err(Error::Degenerate(_)) => return Ok(cand),
        Err(e) => return Err(e),
    };
    cand.a10 = Some(recovery.a10.clone());
    cand.b1 = Some(recovery.b1.clone());
    cand.b2 = Some(recovery.b2.clone());
    cand.recovered = recovery.params;
    if let Some(status) = recovery.rejection {
        cand.status = status;
        return Ok(cand);
    }

    let v = verify_candidate(
        &alpha1,
        alpha2,
        &recovery,
        &heads.d,
        tf,
        &config.verification_tolerance,
        ctx,
    )?;
    cand.max_norm_error = Some(v.max_norm_error);
    cand.coefficient_errors = v.errors;
    cand.status = if v.accepted {
        CandidateStatus::Accepted
    } else {
        CandidateStatus::RejectedVerification
    };
    Ok(cand)
}
