use std::fmt;

use super::complex::ComplexVal;
use super::context::{abs, PrecisionContext, Real};
use crate::error::{Error, Result};

/// Dense univariate polynomial with ascending coefficients: `coeffs[k]`
/// multiplies `x^k`. Trailing zeros are trimmed, so the zero polynomial has
/// no coefficients.
#[derive(Clone, PartialEq)]
pub struct RealPoly {
    coeffs: Vec<Real>,
    digits: usize,
}

impl RealPoly {
    pub fn new(coeffs: Vec<Real>, ctx: &PrecisionContext) -> Self {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(|c| ctx.lift(c)).collect(),
            digits: ctx.decimal_digits(),
        };
        p.trim();
        p
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self::new(Vec::new(), ctx)
    }

    pub fn constant(c: Real, ctx: &PrecisionContext) -> Self {
        Self::new(vec![c], ctx)
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Real, c1: Real, ctx: &PrecisionContext) -> Self {
        Self::new(vec![c0, c1], ctx)
    }

    /// `prod (x - r)` over `roots`.
    pub fn from_roots(roots: &[Real], ctx: &PrecisionContext) -> Self {
        roots.iter().fold(Self::constant(ctx.one(), ctx), |acc, r| {
            let factor = Self::linear(-r.clone(), ctx.one(), ctx);
            acc.mul(&factor).expect("shared context")
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| *c == Real::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn decimal_digits(&self) -> usize {
        self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Real> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Real {
        self.coeffs.get(k).cloned().unwrap_or(Real::ZERO)
    }

    pub fn max_abs_coeff(&self) -> Real {
        self.coeffs
            .iter()
            .map(abs)
            .fold(Real::ZERO, |m, c| if c > m { c } else { m })
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.digits != other.digits {
            return Err(Error::Config(format!(
                "polynomials carry different precisions ({} vs {} digits)",
                self.digits, other.digits
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut p = Self {
            coeffs,
            digits: self.digits,
        };
        p.trim();
        Ok(p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            digits: self.digits,
        }
    }

    /// Full convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self {
                coeffs: Vec::new(),
                digits: self.digits,
            });
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Real::ZERO.with_precision(self.digits).value(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == Real::ZERO {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = Self {
            coeffs,
            digits: self.digits,
        };
        p.trim();
        Ok(p)
    }

    pub fn scale(&self, c: &Real) -> Self {
        let mut p = Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            digits: self.digits,
        };
        p.trim();
        p
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::Domain("zero polynomial has no monic form".into()))?
            .clone();
        let mut p = Self {
            coeffs: self.coeffs.iter().map(|a| a / &lead).collect(),
            digits: self.digits,
        };
        if let Some(last) = p.coeffs.last_mut() {
            *last = Real::ONE.with_precision(self.digits).value();
        }
        Ok(p)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Real::from(k as u64))
            .collect();
        let mut p = Self {
            coeffs,
            digits: self.digits,
        };
        p.trim();
        p
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Real) -> Real {
        let mut acc = Real::ZERO.with_precision(self.digits).value();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexVal) -> ComplexVal {
        let zero = Real::ZERO.with_precision(self.digits).value();
        let mut acc = ComplexVal::new(zero.clone(), zero);
        for c in self.coeffs.iter().rev() {
            acc = &acc * z;
            acc.re += c;
        }
        acc
    }
}

impl fmt::Debug for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.coeffs.iter().map(|c| c.to_f64().value()))
            .finish()
    }
}
