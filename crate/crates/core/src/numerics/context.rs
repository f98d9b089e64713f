use std::str::FromStr;

use dashu_float::DBig;

use crate::error::{Error, Result};

/// Arbitrary-precision decimal real used throughout the pipeline.
pub type Real = DBig;

/// Smallest working precision accepted. Below this the accept/reject margin
/// between a true candidate and a spurious one disappears.
pub const MIN_DIGITS: usize = 30;

pub const DEFAULT_DIGITS: usize = 60;
pub const DEFAULT_MAX_ITERATIONS: usize = 500;

/// Working precision shared read-only by every arithmetic routine.
///
/// Every [`Real`] produced through a context carries `decimal_digits` digits
/// of precision, so arithmetic between two context values never rounds to a
/// shorter mantissa.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    decimal_digits: usize,
    root_tolerance: Real,
    max_iterations: usize,
}

impl PrecisionContext {
    /// Context with `decimal_digits` digits, root tolerance `10^(-0.8 d)` and
    /// the default iteration cap.
    pub fn new(decimal_digits: usize) -> Result<Self> {
        let tol_exp = -((decimal_digits as f64) * 0.8).floor() as isize;
        Self::with_settings(
            decimal_digits,
            pow10(tol_exp, decimal_digits),
            DEFAULT_MAX_ITERATIONS,
        )
    }

    pub fn with_settings(
        decimal_digits: usize,
        root_tolerance: Real,
        max_iterations: usize,
    ) -> Result<Self> {
        if decimal_digits < MIN_DIGITS {
            return Err(Error::Config(format!(
                "decimal_digits must be at least {MIN_DIGITS}, got {decimal_digits}"
            )));
        }
        if max_iterations == 0 {
            return Err(Error::Config("max_iterations must be positive".into()));
        }
        let floor = pow10(-(decimal_digits as isize), decimal_digits);
        if root_tolerance <= Real::ZERO || root_tolerance < floor {
            return Err(Error::Config(format!(
                "root_tolerance must lie in [1e-{decimal_digits}, inf), got {root_tolerance}"
            )));
        }
        Ok(Self {
            decimal_digits,
            root_tolerance: root_tolerance.with_precision(decimal_digits).value(),
            max_iterations,
        })
    }

    pub fn decimal_digits(&self) -> usize {
        self.decimal_digits
    }

    pub fn root_tolerance(&self) -> &Real {
        &self.root_tolerance
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    /// Lifts `x` to the working precision.
    pub fn lift(&self, x: Real) -> Real {
        x.with_precision(self.decimal_digits).value()
    }

    pub fn zero(&self) -> Real {
        self.lift(Real::ZERO)
    }

    pub fn one(&self) -> Real {
        self.lift(Real::ONE)
    }

    pub fn int(&self, n: i64) -> Real {
        self.lift(Real::from(n))
    }

    /// `num / den` at working precision.
    pub fn ratio(&self, num: i64, den: i64) -> Real {
        self.int(num) / self.int(den)
    }

    /// Shortest decimal representation of `x`, so `0.2_f64` becomes exactly 0.2.
    pub fn from_f64(&self, x: f64) -> Result<Real> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite value {x}")));
        }
        self.parse(&format!("{x:e}"))
    }

    pub fn parse(&self, s: &str) -> Result<Real> {
        let t = s.trim();
        Real::from_str(t)
            .map(|v| self.lift(v))
            .map_err(|_| Error::Parse {
                input: t.to_string(),
            })
    }

    /// `10^exp` at working precision.
    pub fn pow10(&self, exp: isize) -> Real {
        pow10(exp, self.decimal_digits)
    }

    /// `10^(-d/2)`, the default realness and degeneracy threshold.
    pub fn half_precision_threshold(&self) -> Real {
        self.pow10(-(self.decimal_digits as isize) / 2)
    }

    /// `base^exponent` for `base > 0`.
    pub fn powf(&self, base: &Real, exponent: &Real) -> Result<Real> {
        if *base <= Real::ZERO {
            return Err(Error::Domain(format!("power of non-positive base {base}")));
        }
        let base = self.lift(base.clone());
        Ok((base.ln() * exponent).exp())
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS).expect("default precision is valid")
    }
}

fn pow10(exp: isize, digits: usize) -> Real {
    let s = format!("1e{exp}");
    Real::from_str(&s)
        .expect("power of ten literal")
        .with_precision(digits)
        .value()
}

/// Nearest `f64` to `x`.
pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn abs(x: &Real) -> Real {
    if *x < Real::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}
