use serde::{Deserialize, Serialize};

use super::polys::RationalAlpha1;
use super::IdentCoeffs;
use crate::error::{Error, Result};
use crate::gl_model::{expand_monic_tf, GLSeries, ModelParams, MonicTF};
use crate::numerics::{abs, to_f64, PrecisionContext, Real};

/// Number of highest-index denominator coefficients compared during
/// verification: `g_{2T} ..= g_{2T-14}`.
pub const VERIFIED_COEFFS: usize = 15;

/// Denominator floor of the normalized coefficient error.
pub const ERROR_FLOOR_EXP: isize = -30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CandidateStatus {
    RejectedComplex,
    RejectedRange,
    RejectedInterval,
    RejectedDegenerate,
    RejectedNegativeGain,
    RejectedNegativeResistance,
    RejectedVerification,
    Accepted,
}

/// Interval of `alpha2` values for which `b1` or `b2` is non-positive.
///
/// With `p = (f_{2T} - d g_{2T}) / (f_{2T+1} - d g_{2T+1})` the endpoints are
/// `p - g_{2T+1}` and `-p`, returned in ascending order.
pub fn exclusion_interval(h: &IdentCoeffs) -> Result<(Real, Real)> {
    let s = h.residual(0);
    if s == Real::ZERO {
        return Err(Error::Degenerate(
            "f_{2T+1} - d g_{2T+1} vanishes, so b1 + b2 = 0".into(),
        ));
    }
    let p = h.residual(1) / &s;
    let lo = &p - &h.g[0];
    let hi = -p;
    Ok(if lo <= hi { (lo, hi) } else { (hi, lo) })
}

/// First screening of an `(alpha2, alpha1)` pair: both exponents in the open
/// unit interval and `alpha2` outside the closed exclusion interval. `None`
/// means the pair goes on to parameter recovery.
pub fn screen_candidate(
    alpha2: &Real,
    alpha1: &Real,
    interval: &(Real, Real),
) -> Option<CandidateStatus> {
    let in_unit = |x: &Real| *x > Real::ZERO && *x < Real::ONE;
    if !in_unit(alpha2) || !in_unit(alpha1) {
        return Some(CandidateStatus::RejectedRange);
    }
    if *alpha2 >= interval.0 && *alpha2 <= interval.1 {
        return Some(CandidateStatus::RejectedInterval);
    }
    None
}

/// [`screen_candidate`] over a list of `(alpha2, alpha1)` pairs.
pub fn filter_candidates(
    pairs: &[(Real, Real)],
    interval: &(Real, Real),
) -> Vec<Option<CandidateStatus>> {
    pairs
        .iter()
        .map(|(a2, a1)| screen_candidate(a2, a1, interval))
        .collect()
}

/// `alpha1 = K1(alpha2) / K2(alpha2)`; errors when `|K2(alpha2)|` is below
/// `threshold`.
pub fn recover_alpha1(alpha2: &Real, relation: &RationalAlpha1, threshold: &Real) -> Result<Real> {
    let (num, den) = relation.eval(alpha2);
    if abs(&den) < *threshold {
        return Err(Error::Degenerate(format!(
            "alpha1 denominator vanishes at alpha2 = {}",
            to_f64(alpha2)
        )));
    }
    Ok(num / den)
}

/// Head values and circuit parameters implied by one exponent pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Recovery {
    pub a10: Real,
    pub b1: Real,
    pub b2: Real,
    /// Absent when a gain or `R1` comes out non-positive.
    pub params: Option<ModelParams>,
    pub rejection: Option<CandidateStatus>,
}

/// Recovers `a_{1,0}`, `b1`, `b2` and the six circuit parameters.
///
/// `R_inf = d`, `C_i = Ts^alpha_i / b_i` and `R1 = b1 / (alpha1 - a_{1,0})`,
/// which is `Ts^alpha1 / (C1 (alpha1 - a_{1,0}))` written without `Ts`.
pub fn recover_parameters(
    alpha1: &Real,
    alpha2: &Real,
    h: &IdentCoeffs,
    ts: f64,
    horizon: usize,
    threshold: &Real,
    ctx: &PrecisionContext,
) -> Result<Recovery> {
    let g1 = &h.g[0];
    let s = h.residual(0);
    let e = g1 + ctx.int(2) * alpha2;
    if abs(&e) < *threshold {
        return Err(Error::Degenerate(format!(
            "E(alpha2) vanishes at alpha2 = {}",
            to_f64(alpha2)
        )));
    }
    let a10 = -(g1 + alpha2);
    let dd = &s * (g1 + alpha2) - h.residual(1);
    let b1 = dd / e;
    let b2 = s - &b1;

    let mut out = Recovery {
        a10: a10.clone(),
        b1: b1.clone(),
        b2: b2.clone(),
        params: None,
        rejection: None,
    };
    if b1 <= Real::ZERO || b2 <= Real::ZERO {
        out.rejection = Some(CandidateStatus::RejectedNegativeGain);
        return Ok(out);
    }
    let gap = alpha1 - &a10;
    if gap <= Real::ZERO {
        out.rejection = Some(CandidateStatus::RejectedNegativeResistance);
        return Ok(out);
    }
    let ts_real = ctx.from_f64(ts)?;
    let c1 = ctx.powf(&ts_real, alpha1)? / &b1;
    let c2 = ctx.powf(&ts_real, alpha2)? / &b2;
    let r1 = &b1 / gap;
    out.params = Some(ModelParams {
        r_inf: to_f64(&h.d),
        r1: to_f64(&r1),
        c1: to_f64(&c1),
        alpha1: to_f64(alpha1),
        c2: to_f64(&c2),
        alpha2: to_f64(alpha2),
        ts,
        horizon,
    });
    Ok(out)
}

/// Outcome of comparing a rebuilt transfer function against the original.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    /// `|g_hat - g| / max(|g|, 1e-30)` for `g_{2T}, g_{2T-1}, ..., g_{2T-14}`.
    pub errors: Vec<Real>,
    pub max_norm_error: Real,
    pub accepted: bool,
}

/// Rebuilds the transfer function from recovered head values and compares
/// the fifteen denominator coefficients below the leading one.
pub fn verify_candidate(
    alpha1: &Real,
    alpha2: &Real,
    recovery: &Recovery,
    d: &Real,
    tf: &MonicTF,
    tolerance: &Real,
    ctx: &PrecisionContext,
) -> Result<Verification> {
    let horizon = tf.horizon();
    let series = GLSeries::from_heads(
        d.clone(),
        recovery.b1.clone(),
        recovery.b2.clone(),
        recovery.a10.clone(),
        alpha1,
        alpha2,
        horizon,
        ctx,
    )?;
    let rebuilt = expand_monic_tf(&series, ctx)?;
    let floor = ctx.pow10(ERROR_FLOOR_EXP);
    let top = 2 * horizon;
    let errors: Vec<Real> = (0..VERIFIED_COEFFS)
        .map(|k| {
            let g = &tf.g[top - k];
            let scale = abs(g).max(floor.clone());
            abs(&(&rebuilt.g[top - k] - g)) / scale
        })
        .collect();
    let max_norm_error = errors.iter().cloned().max().unwrap_or(Real::ZERO);
    let accepted = max_norm_error < *tolerance;
    Ok(Verification {
        errors,
        max_norm_error,
        accepted,
    })
}
