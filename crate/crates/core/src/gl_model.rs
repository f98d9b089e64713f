//! Grünwald-Letnikov discretization of the two-CPE circuit and expansion of
//! its monic discrete-time transfer function.
//!
//! Each CPE branch contributes `b_i z^T / D_i(z)` with
//! `D_i(z) = z^(T+1) - sum_{j=0..T} a_{i,j} z^(T-j)`, and the feedthrough is
//! `d = R_inf`. Clearing denominators gives
//! `H = (d D1 D2 + b1 z^T D2 + b2 z^T D1) / (D1 D2)`, monic by construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identifiability::IdentCoeffs;
use crate::numerics::{PrecisionContext, Real, RealPoly};

/// Smallest horizon for which all fifteen verified head coefficients exist.
pub const MIN_HORIZON: usize = 7;
pub const DEFAULT_HORIZON: usize = 100;

/// Circuit parameters plus the sampling setup.
///
/// `r_inf` in series with (`r1` parallel to CPE 1) and CPE 2, where CPE i has
/// impedance `1 / (c_i s^alpha_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub r_inf: f64,
    pub r1: f64,
    pub c1: f64,
    pub alpha1: f64,
    pub c2: f64,
    pub alpha2: f64,
    /// Sampling period in seconds.
    pub ts: f64,
    /// Number of past samples kept by the discretization.
    #[serde(rename = "T")]
    pub horizon: usize,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        for (name, a) in [("alpha1", self.alpha1), ("alpha2", self.alpha2)] {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::Domain(format!("{name} must lie in (0, 1), got {a}")));
            }
        }
        for (name, v) in [
            ("r_inf", self.r_inf),
            ("r1", self.r1),
            ("c1", self.c1),
            ("c2", self.c2),
            ("ts", self.ts),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if self.horizon < MIN_HORIZON {
            return Err(Error::Domain(format!(
                "horizon T must be at least {MIN_HORIZON}, got {}",
                self.horizon
            )));
        }
        Ok(())
    }

    /// Parameter values in the fixed order
    /// `(r_inf, r1, c1, alpha1, c2, alpha2)`.
    pub fn circuit_values(&self) -> [f64; 6] {
        [
            self.r_inf,
            self.r1,
            self.c1,
            self.alpha1,
            self.c2,
            self.alpha2,
        ]
    }
}

pub const CIRCUIT_NAMES: [&str; 6] = ["r_inf", "r1", "c1", "alpha1", "c2", "alpha2"];

/// GL coefficient arrays for both branches.
#[derive(Debug, Clone, PartialEq)]
pub struct GLSeries {
    pub d: Real,
    pub b1: Real,
    pub b2: Real,
    /// `a_{1,0} ..= a_{1,T}`.
    pub a1: Vec<Real>,
    /// `a_{2,0} ..= a_{2,T}`.
    pub a2: Vec<Real>,
}

impl GLSeries {
    /// Assembles a series from its head values; the tails follow from the
    /// exponents alone.
    #[allow(clippy::too_many_arguments)]
    pub fn from_heads(
        d: Real,
        b1: Real,
        b2: Real,
        a10: Real,
        alpha1: &Real,
        alpha2: &Real,
        horizon: usize,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        let mut a1 = Vec::with_capacity(horizon + 1);
        a1.push(ctx.lift(a10));
        a1.extend(gl_binomial_series(alpha1, horizon, ctx)?);
        let mut a2 = Vec::with_capacity(horizon + 1);
        a2.push(ctx.lift(alpha2.clone()));
        a2.extend(gl_binomial_series(alpha2, horizon, ctx)?);
        Ok(Self {
            d: ctx.lift(d),
            b1: ctx.lift(b1),
            b2: ctx.lift(b2),
            a1,
            a2,
        })
    }

    pub fn horizon(&self) -> usize {
        self.a1.len() - 1
    }
}

/// Pure GL tail `a_1 ..= a_T` for exponent `alpha`, where
/// `a_j = -(-1)^(j+1) binom(alpha, j+1)`.
///
/// Starts from `a_1 = alpha (1 - alpha) / 2` and applies
/// `a_{j+1} = (j + 1 - alpha) / (j + 2) * a_j`. All entries are positive for
/// `alpha` in (0, 1).
pub fn gl_binomial_series(
    alpha: &Real,
    horizon: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<Real>> {
    if !(*alpha > Real::ZERO && *alpha < Real::ONE) {
        return Err(Error::Domain(format!(
            "GL exponent must lie in (0, 1), got {alpha}"
        )));
    }
    if horizon == 0 {
        return Err(Error::Domain("horizon T must be at least 1".into()));
    }
    let alpha = ctx.lift(alpha.clone());
    let mut out = Vec::with_capacity(horizon);
    let mut a = &alpha * (ctx.one() - &alpha) / ctx.int(2);
    out.push(a.clone());
    for j in 1..horizon {
        let j = j as i64;
        a = a * (ctx.int(j + 1) - &alpha) / ctx.int(j + 2);
        out.push(a.clone());
    }
    Ok(out)
}

/// GL series of a validated parameter set:
/// `d = R_inf`, `b_i = Ts^alpha_i / C_i`, `a_{1,0} = alpha1 - Ts^alpha1 / (R1 C1)`,
/// `a_{2,0} = alpha2`.
pub fn build_gl_series(params: &ModelParams, ctx: &PrecisionContext) -> Result<GLSeries> {
    params.validate()?;
    let ts = ctx.from_f64(params.ts)?;
    let alpha1 = ctx.from_f64(params.alpha1)?;
    let alpha2 = ctx.from_f64(params.alpha2)?;
    let r1 = ctx.from_f64(params.r1)?;
    let c1 = ctx.from_f64(params.c1)?;
    let c2 = ctx.from_f64(params.c2)?;
    let ts_a1 = ctx.powf(&ts, &alpha1)?;
    let ts_a2 = ctx.powf(&ts, &alpha2)?;
    let b1 = &ts_a1 / &c1;
    let b2 = ts_a2 / &c2;
    let a10 = &alpha1 - ts_a1 / (r1 * c1);
    GLSeries::from_heads(
        ctx.from_f64(params.r_inf)?,
        b1,
        b2,
        a10,
        &alpha1,
        &alpha2,
        params.horizon,
        ctx,
    )
}

/// Coefficients of the monic transfer function, ascending in powers of `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicTF {
    /// Numerator `f_0 ..= f_{2T+2}`.
    pub f: Vec<Real>,
    /// Denominator `g_0 ..= g_{2T+1}`; the leading `z^(2T+2)` coefficient is
    /// an implicit 1.
    pub g: Vec<Real>,
}

impl MonicTF {
    pub fn new(f: Vec<Real>, g: Vec<Real>) -> Result<Self> {
        if g.len() < 2 || f.len() != g.len() + 1 || !g.len().is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "expected numerator of length 2T+3 and denominator of length 2T+2, got {} and {}",
                f.len(),
                g.len()
            )));
        }
        Ok(Self { f, g })
    }

    pub fn horizon(&self) -> usize {
        self.g.len() / 2 - 1
    }

    /// Denominator including the implicit leading 1.
    pub fn full_denominator(&self, ctx: &PrecisionContext) -> Vec<Real> {
        let mut g = self.g.clone();
        g.push(ctx.one());
        g
    }
}

fn branch_denominator(a: &[Real], ctx: &PrecisionContext) -> RealPoly {
    let horizon = a.len() - 1;
    let mut coeffs = vec![ctx.zero(); horizon + 2];
    coeffs[horizon + 1] = ctx.one();
    for (j, aj) in a.iter().enumerate() {
        coeffs[horizon - j] = -aj.clone();
    }
    RealPoly::new(coeffs, ctx)
}

fn padded(p: &RealPoly, len: usize, ctx: &PrecisionContext) -> Vec<Real> {
    let mut v = p.coeffs().to_vec();
    v.resize(len, ctx.zero());
    v
}

fn shifted(p: &RealPoly, by: usize, ctx: &PrecisionContext) -> RealPoly {
    let mut coeffs = vec![ctx.zero(); by];
    coeffs.extend_from_slice(p.coeffs());
    RealPoly::new(coeffs, ctx)
}

/// Expands `H(z)` into monic rational form.
pub fn expand_monic_tf(series: &GLSeries, ctx: &PrecisionContext) -> Result<MonicTF> {
    let horizon = series.horizon();
    if series.a2.len() != horizon + 1 {
        return Err(Error::Domain("branch series lengths differ".into()));
    }
    let d1 = branch_denominator(&series.a1, ctx);
    let d2 = branch_denominator(&series.a2, ctx);
    let den = d1.mul(&d2)?;
    let num = den
        .scale(&series.d)
        .add(&shifted(&d2, horizon, ctx).scale(&series.b1))?
        .add(&shifted(&d1, horizon, ctx).scale(&series.b2))?;

    let mut g = padded(&den, 2 * horizon + 3, ctx);
    g.pop();
    let f = padded(&num, 2 * horizon + 3, ctx);
    MonicTF::new(f, g)
}

/// Feedthrough and highest-index coefficients used by the identifiability
/// analysis.
pub fn head_coeffs(tf: &MonicTF) -> Result<IdentCoeffs> {
    let horizon = tf.horizon();
    if horizon < MIN_HORIZON {
        return Err(Error::Domain(format!(
            "transfer function horizon {horizon} is below the minimum {MIN_HORIZON}"
        )));
    }
    let top = 2 * horizon + 1;
    Ok(IdentCoeffs {
        d: tf.f[top + 1].clone(),
        f: std::array::from_fn(|k| tf.f[top - k].clone()),
        g: std::array::from_fn(|k| tf.g[top - k].clone()),
    })
}

/// Sampling period that places the leading denominator coefficient at
/// `g_lead`, i.e. solves `-(alpha1 - Ts^alpha1/(R1 C1) + alpha2) = g_lead`.
pub fn ts_from_leading_denominator(
    alpha1: f64,
    alpha2: f64,
    r1: f64,
    c1: f64,
    g_lead: f64,
) -> Result<f64> {
    let ts_pow = (alpha1 + alpha2 + g_lead) * r1 * c1;
    if ts_pow <= 0.0 {
        return Err(Error::Domain(format!(
            "no positive sampling period gives leading coefficient {g_lead}"
        )));
    }
    Ok(ts_pow.powf(1.0 / alpha1))
}
