use std::ops::{Add, Div, Mul, Neg, Sub};

use super::context::{to_f64, Real};

/// Complex number over arbitrary-precision reals.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVal {
    pub re: Real,
    pub im: Real,
}

impl ComplexVal {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    /// `|z|` rounded to `f64`; only for diagnostics and bounds.
    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_f64_pair();
        re.hypot(im)
    }
}

impl Add for &ComplexVal {
    type Output = ComplexVal;
    fn add(self, rhs: &ComplexVal) -> ComplexVal {
        ComplexVal::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexVal {
    type Output = ComplexVal;
    fn sub(self, rhs: &ComplexVal) -> ComplexVal {
        ComplexVal::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexVal {
    type Output = ComplexVal;
    fn mul(self, rhs: &ComplexVal) -> ComplexVal {
        ComplexVal::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul<&Real> for &ComplexVal {
    type Output = ComplexVal;
    fn mul(self, rhs: &Real) -> ComplexVal {
        ComplexVal::new(&self.re * rhs, &self.im * rhs)
    }
}

impl Div for &ComplexVal {
    type Output = ComplexVal;
    /// Panics on division by an exact zero, like the underlying reals.
    fn div(self, rhs: &ComplexVal) -> ComplexVal {
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        ComplexVal::new(num.re / &den, num.im / &den)
    }
}

impl Neg for ComplexVal {
    type Output = ComplexVal;
    fn neg(self) -> ComplexVal {
        ComplexVal::new(-self.re, -self.im)
    }
}

impl Add for ComplexVal {
    type Output = ComplexVal;
    fn add(self, rhs: ComplexVal) -> ComplexVal {
        &self + &rhs
    }
}

impl Sub for ComplexVal {
    type Output = ComplexVal;
    fn sub(self, rhs: ComplexVal) -> ComplexVal {
        &self - &rhs
    }
}
