#![allow(dead_code)]

use foecm::gl_model::{ts_from_leading_denominator, ModelParams};
use foecm::numerics::{abs, PrecisionContext, Real, RealPoly};

/// Battery-cell example: R_inf = 0.01, R1 = 0.2, C1 = 3, alpha1 = 0.8,
/// C2 = 400, alpha2 = 0.5.
pub fn battery(ts: f64, horizon: usize) -> ModelParams {
    ModelParams {
        r_inf: 0.01,
        r1: 0.2,
        c1: 3.0,
        alpha1: 0.8,
        c2: 400.0,
        alpha2: 0.5,
        ts,
        horizon,
    }
}

/// Reference leading denominator coefficient `g_{2T+1}` (4 decimals).
pub const REFERENCE_G_LEAD: f64 = -1.2962;

/// Sampling period that reproduces the reference leading coefficient.
pub fn fitted_ts() -> f64 {
    ts_from_leading_denominator(0.8, 0.5, 0.2, 3.0, REFERENCE_G_LEAD).unwrap()
}

/// Reference head coefficients `f_{2T+1} .. f_{2T-3}`.
pub const REFERENCE_F: [f64; 5] = [-0.0121, 0.0015, 3.505e-4, 1.416e-4, 7.218e-5];
/// Reference head coefficients `g_{2T+1} .. g_{2T-4}`.
pub const REFERENCE_G: [f64; 6] = [-1.2962, 0.1931, 0.0450, 0.0191, 0.0103, 0.0063];

/// Reference monic octic, descending powers 8..0.
pub const REFERENCE_OCTIC_DESC: [&str; 9] = [
    "1",
    "-5.395708923047713",
    "12.451808248913298",
    "-16.088049799882121",
    "12.743527275051907",
    "-6.338984994985100",
    "1.932660443044634",
    "-0.329710967652997",
    "0.024032821066090",
];

/// Reference real roots: (alpha2, alpha1) for pairs 1..6.
pub const REFERENCE_PAIRS: [(&str, &str); 6] = [
    ("0.298245954619025", "2.397337600606689"),
    ("0.500000000000000", "0.800000000000000"),
    ("0.625975537273579", "0.677356198694181"),
    ("0.646678864697306", "0.655173050215288"),
    ("0.797894050107465", "0.499243173767398"),
    ("1.295547992101849", "-2.589172586806396"),
];

pub const REFERENCE_INTERVAL: (f64, f64) = (0.52024, 0.77595);
pub const REFERENCE_PAIR5_MAX_ERROR: f64 = 0.03169;

pub fn reference_octic(ctx: &PrecisionContext) -> RealPoly {
    let asc: Vec<Real> = REFERENCE_OCTIC_DESC
        .iter()
        .rev()
        .map(|s| ctx.parse(s).unwrap())
        .collect();
    RealPoly::new(asc, ctx)
}

pub fn rel_diff(a: &Real, b: &Real) -> Real {
    let scale = abs(b);
    if scale == Real::ZERO {
        abs(a)
    } else {
        abs(&(a - b)) / scale
    }
}

// ---------------------------------------------------------------------------
// High-precision gamma function (Spouge) used as an independent oracle for the
// GL binomial coefficients.
// ---------------------------------------------------------------------------

fn pi(ctx: &PrecisionContext) -> Real {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    let atan_inv = |n: i64| {
        let x = ctx.ratio(1, n);
        let x2 = &x * &x;
        let mut term = x.clone();
        let mut sum = ctx.zero();
        let eps = ctx.pow10(-(ctx.decimal_digits() as isize) - 5);
        let mut k = 0i64;
        while abs(&term) > eps {
            let t = &term / ctx.int(2 * k + 1);
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term *= &x2;
            k += 1;
        }
        sum
    };
    ctx.int(16) * atan_inv(5) - ctx.int(4) * atan_inv(239)
}

fn sin(x: &Real, ctx: &PrecisionContext) -> Real {
    let x2 = x * x;
    let mut term = x.clone();
    let mut sum = ctx.zero();
    let eps = ctx.pow10(-(ctx.decimal_digits() as isize) - 5);
    let mut k = 1i64;
    while abs(&term) > eps {
        sum += &term;
        term = -(term * &x2) / ctx.int((2 * k) * (2 * k + 1));
        k += 1;
    }
    sum
}

/// Spouge approximation `Gamma(w + 1) ~ (w+a)^(w+1/2) e^-(w+a) (c_0 + sum c_k/(w+k))`
/// with relative error below `(2 pi)^-(a+1/2)`.
pub struct Gamma {
    ctx: PrecisionContext,
    a: i64,
    coeffs: Vec<Real>,
    pi: Real,
}

impl Gamma {
    pub fn new(ctx: &PrecisionContext) -> Self {
        let a = (ctx.decimal_digits() as i64) / 2;
        let ar = ctx.int(a);
        let half = ctx.ratio(1, 2);
        let pi = pi(ctx);
        let mut coeffs = vec![ctx.powf(&(ctx.int(2) * &pi), &half).unwrap()];
        let mut fact = ctx.one(); // (k-1)!
        for k in 1..a {
            if k > 1 {
                fact *= ctx.int(k - 1);
            }
            let base = &ar - ctx.int(k);
            let ck = ctx.powf(&base, &(ctx.int(k) - &half)).unwrap() * base.clone().exp() / &fact;
            coeffs.push(if k % 2 == 1 { ck } else { -ck });
        }
        Self {
            ctx: ctx.clone(),
            a,
            coeffs,
            pi,
        }
    }

    fn positive(&self, z: &Real) -> Real {
        let ctx = &self.ctx;
        let w = z - ctx.one();
        let mut series = self.coeffs[0].clone();
        for k in 1..self.a {
            series += &self.coeffs[k as usize] / (&w + ctx.int(k));
        }
        let wa = &w + ctx.int(self.a);
        ctx.powf(&wa, &(&w + ctx.ratio(1, 2))).unwrap() * (-wa).exp() * series
    }

    /// Gamma(x) for any non-integer x, by reflection below 1/2.
    pub fn eval(&self, x: &Real) -> Real {
        let ctx = &self.ctx;
        if *x >= ctx.ratio(1, 2) {
            self.positive(x)
        } else {
            let s = sin(&(&self.pi * x), ctx);
            &self.pi / (s * self.positive(&(ctx.one() - x)))
        }
    }

    /// `-(-1)^(j+1) Gamma(alpha+1) / (Gamma(j+2) Gamma(alpha-j))`, i.e.
    /// `-(-1)^(j+1) binom(alpha, j+1)`.
    pub fn gl_coefficient(&self, alpha: &Real, j: i64) -> Real {
        let ctx = &self.ctx;
        let mut fact = ctx.one();
        for k in 2..=(j + 1) {
            fact *= ctx.int(k);
        }
        let binom = self.eval(&(alpha + ctx.one())) / (fact * self.eval(&(alpha - ctx.int(j))));
        if (j + 1) % 2 == 0 {
            -binom
        } else {
            binom
        }
    }
}

pub fn transfer_function(params: &ModelParams, ctx: &PrecisionContext) -> foecm::gl_model::MonicTF {
    let series = foecm::gl_model::build_gl_series(params, ctx).unwrap();
    foecm::gl_model::expand_monic_tf(&series, ctx).unwrap()
}

/// Coefficients of `sum_k x_k z^k * sum_l y_l z^l` by explicit double loop
/// over sparse term lists.
pub fn naive_product(
    x: &[(usize, Real)],
    y: &[(usize, Real)],
    len: usize,
    ctx: &PrecisionContext,
) -> Vec<Real> {
    let mut out = vec![ctx.zero(); len];
    for (i, a) in x {
        for (j, b) in y {
            out[i + j] = &out[i + j] + a * b;
        }
    }
    out
}

fn branch_terms(a: &[Real], horizon: usize, ctx: &PrecisionContext) -> Vec<(usize, Real)> {
    let mut terms = vec![(horizon + 1, ctx.one())];
    for (j, aj) in a.iter().enumerate().take(horizon + 1) {
        terms.push((horizon - j, -aj.clone()));
    }
    terms
}

/// Numerator and denominator of `d + b1 z^T / D1 + b2 z^T / D2` over the
/// common denominator `D1 D2`, ascending powers, built term by term.
pub fn naive_transfer_function(
    s: &foecm::gl_model::GLSeries,
    horizon: usize,
    ctx: &PrecisionContext,
) -> (Vec<Real>, Vec<Real>) {
    let d1 = branch_terms(&s.a1, horizon, ctx);
    let d2 = branch_terms(&s.a2, horizon, ctx);
    let len = 2 * horizon + 3;
    let den = naive_product(&d1, &d2, len, ctx);
    let n1 = naive_product(&[(horizon, s.b1.clone())], &d2, len, ctx);
    let n2 = naive_product(&[(horizon, s.b2.clone())], &d1, len, ctx);
    let num = (0..len).map(|k| &s.d * &den[k] + &n1[k] + &n2[k]).collect();
    (num, den)
}
