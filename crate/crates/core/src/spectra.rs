//! Continuous-frequency impedance of the circuit, for Nyquist-plot export.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl_model::ModelParams;

pub const DEFAULT_GRID_POINTS: usize = 200;
pub const DEFAULT_OMEGA_MIN: f64 = 1e-3;
pub const DEFAULT_OMEGA_MAX: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImpedancePoint {
    pub omega: f64,
    pub z_re: f64,
    pub z_im: f64,
}

/// `(j omega)^alpha` on the principal branch.
pub fn j_omega_pow(omega: f64, alpha: f64) -> Complex64 {
    Complex64::from_polar(omega.powf(alpha), alpha * FRAC_PI_2)
}

/// Impedance `1 / (c (j omega)^alpha)` of a single CPE.
pub fn cpe_impedance(c: f64, alpha: f64, omega: f64) -> Complex64 {
    (c * j_omega_pow(omega, alpha)).inv()
}

/// `Z = R_inf + R1 / (1 + R1 C1 (j omega)^alpha1) + 1 / (C2 (j omega)^alpha2)`.
pub fn impedance_at(params: &ModelParams, omega: f64) -> Result<ImpedancePoint> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!(
            "omega must be positive, got {omega}"
        )));
    }
    let arc = params.r1 / (1.0 + params.r1 * params.c1 * j_omega_pow(omega, params.alpha1));
    let z = params.r_inf + arc + cpe_impedance(params.c2, params.alpha2, omega);
    Ok(ImpedancePoint {
        omega,
        z_re: z.re,
        z_im: z.im,
    })
}

pub fn sweep_spectrum(params: &ModelParams, omega_grid: &[f64]) -> Result<Vec<ImpedancePoint>> {
    validate_grid(omega_grid)?;
    omega_grid
        .iter()
        .map(|&w| impedance_at(params, w))
        .collect()
}

/// Strictly positive and strictly ascending.
pub fn validate_grid(omega_grid: &[f64]) -> Result<()> {
    for (i, &w) in omega_grid.iter().enumerate() {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::Domain(format!(
                "grid point {i} is not positive: {w}"
            )));
        }
        if i > 0 && w <= omega_grid[i - 1] {
            return Err(Error::Domain(format!("grid is not ascending at point {i}")));
        }
    }
    Ok(())
}

/// `points` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) || points == 0 {
        return Err(Error::Domain(format!(
            "log grid needs 0 < lo < hi and at least one point, got ({lo}, {hi}, {points})"
        )));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.log10(), hi.log10());
    let step = (b - a) / (points - 1) as f64;
    Ok((0..points)
        .map(|k| {
            if k == points - 1 {
                hi
            } else {
                10f64.powf(a + step * k as f64)
            }
        })
        .collect())
}

pub fn default_grid() -> Vec<f64> {
    log_grid(DEFAULT_OMEGA_MIN, DEFAULT_OMEGA_MAX, DEFAULT_GRID_POINTS).expect("valid defaults")
}
