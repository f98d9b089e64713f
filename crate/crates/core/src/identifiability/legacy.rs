//! Lowest-order coefficient equations, kept as a diagnostic.
//!
//! The three lowest denominator coefficients obey
//!
//! ```text
//! g1 + g0 (T+1) (1/(alpha1 - T) + 1/(alpha2 - T)) = 0
//! g2 - g0 (T+1) (a + b + c) = 0
//! a = T / ((alpha2 - T)(alpha2 - T + 1))
//! b = (T+1) / ((alpha1 - T)(alpha2 - T))
//! c = T / ((alpha1 - T)(alpha1 - T + 1))
//! ```
//!
//! but `g0`, `g1`, `g2` are products of the smallest GL coefficients and
//! shrink like a power of `T`, so solving these for the exponents is badly
//! conditioned.

use crate::error::{Error, Result};
use crate::gl_model::MonicTF;
use crate::numerics::{abs, PrecisionContext, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct LegacyResiduals {
    pub g0: Real,
    pub g1: Real,
    pub g2: Real,
    pub residual1: Real,
    pub residual2: Real,
    /// `max(|g0|, |g1|, |g2|)`, the natural size of both residuals.
    pub scale: Real,
    pub horizon: usize,
}

pub fn legacy_residuals(
    tf: &MonicTF,
    alpha1: &Real,
    alpha2: &Real,
    ctx: &PrecisionContext,
) -> Result<LegacyResiduals> {
    if tf.g.len() < 3 {
        return Err(Error::Domain("need g0, g1 and g2".into()));
    }
    let horizon = tf.horizon();
    let t = ctx.int(horizon as i64);
    let t1 = ctx.int(horizon as i64 + 1);
    let one = ctx.one();
    let (g0, g1, g2) = (tf.g[0].clone(), tf.g[1].clone(), tf.g[2].clone());

    let d1 = alpha1 - &t;
    let d2 = alpha2 - &t;
    let residual1 = &g1 + &g0 * &t1 * (&one / &d1 + &one / &d2);

    let a_hat = &t / (&d2 * (&d2 + &one));
    let b_hat = &t1 / (&d1 * &d2);
    let c_hat = &t / (&d1 * (&d1 + &one));
    let residual2 = &g2 - &g0 * &t1 * (a_hat + b_hat + c_hat);

    let scale = [abs(&g0), abs(&g1), abs(&g2)]
        .into_iter()
        .max()
        .expect("three values");
    Ok(LegacyResiduals {
        g0,
        g1,
        g2,
        residual1,
        residual2,
        scale,
        horizon,
    })
}
