//! Arbitrary-precision arithmetic, dense polynomials and root finding.

mod complex;
mod context;
mod poly;
mod roots;

pub use complex::ComplexVal;
pub use context::{
    abs, to_f64, PrecisionContext, Real, DEFAULT_DIGITS, DEFAULT_MAX_ITERATIONS, MIN_DIGITS,
};
pub use poly::RealPoly;
pub use roots::{classify_real_roots, find_roots};
