//! Identifiability analysis from the highest-index transfer-function
//! coefficients.

mod analyze;
mod candidates;
mod legacy;
mod polys;

pub use analyze::{
    analyze, AnalysisConfig, CandidateSolution, IdentifiabilityReport, StageTimings, Verdict,
    DEFAULT_VERIFICATION_TOL,
};
pub use candidates::{
    exclusion_interval, filter_candidates, recover_alpha1, recover_parameters, screen_candidate,
    verify_candidate, CandidateStatus, Recovery, Verification, ERROR_FLOOR_EXP, VERIFIED_COEFFS,
};
pub use legacy::{legacy_residuals, LegacyResiduals};
pub use polys::{
    alpha1_as_rational, build_alpha_polys, build_octic, Alpha1Relation, AlphaPolys, RationalAlpha1,
};

use crate::numerics::Real;

/// Feedthrough and head coefficients of a monic transfer function.
///
/// `f[k]` is `f_{2T+1-k}` for `k = 0..4`; `g[k]` is `g_{2T+1-k}` for `k = 0..6`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentCoeffs {
    pub d: Real,
    pub f: [Real; 4],
    pub g: [Real; 6],
}

impl IdentCoeffs {
    /// Numerator residual `f_{2T+1-k} - d g_{2T+1-k}`, which isolates the
    /// CPE branches from the feedthrough.
    pub fn residual(&self, k: usize) -> Real {
        &self.f[k] - &self.d * &self.g[k]
    }
}
