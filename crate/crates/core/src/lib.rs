//! Structural identifiability of the two-CPE fractional-order equivalent
//! circuit model under the Grünwald-Letnikov discretization.
//!
//! The pipeline maps circuit parameters to the coefficients of a monic
//! discrete-time transfer function ([`gl_model`]), then works backwards from
//! the highest-index coefficients to every parameter set consistent with them
//! ([`identifiability`]). All coefficient arithmetic runs at a configurable
//! decimal precision ([`numerics`]).

pub mod error;
pub mod exec;
pub mod formats;
pub mod gl_model;
pub mod identifiability;
pub mod numerics;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
