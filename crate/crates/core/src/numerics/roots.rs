//! Simultaneous polynomial root finding (Aberth–Ehrlich) at working precision.

use std::f64::consts::TAU;

use super::complex::ComplexVal;
use super::context::{abs, to_f64, PrecisionContext, Real};
use super::poly::RealPoly;
use crate::error::{Error, Result};

/// Angular offset of the starting circle; keeps guesses off the real axis so
/// that conjugate-symmetric iterates cannot lock onto each other.
const START_ANGLE: f64 = 0.4;

/// All `degree(p)` complex roots of `p`, with multiplicity, sorted by real
/// part then imaginary part.
///
/// An iterate stops moving once its update is below
/// `root_tolerance * max(1, |z|)` or `|p(z)|` is within a small multiple of
/// the rounding error of evaluating `p` there; near-multiple roots only ever
/// meet the second test. Fails with [`Error::NoConvergence`] carrying
/// `|p(z_k)|` for each final iterate.
pub fn find_roots(p: &RealPoly, ctx: &PrecisionContext) -> Result<Vec<ComplexVal>> {
    if p.is_zero() {
        return Err(Error::Domain(
            "zero polynomial has no finite root set".into(),
        ));
    }
    if p.decimal_digits() != ctx.decimal_digits() {
        return Err(Error::Config(
            "polynomial and context precisions differ".into(),
        ));
    }
    let p = p.monic()?;
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::Domain("constant polynomial has no roots".into()));
    }
    if n == 1 {
        return Ok(vec![ComplexVal::new(-p.coeff(0), ctx.zero())]);
    }

    let dp = p.derivative();
    let mut z = initial_guesses(&p, ctx);
    let tol_sq = ctx.root_tolerance() * ctx.root_tolerance();
    let one = ctx.one();
    let abs_coeffs: Vec<f64> = p.coeffs().iter().map(|c| to_f64(&abs(c))).collect();
    let unit_roundoff = 10f64.powi(2 - ctx.decimal_digits() as i32);
    let mut settled = vec![false; n];

    for _ in 0..ctx.max_iterations() {
        for k in 0..n {
            if settled[k] {
                continue;
            }
            let pz = p.eval_complex(&z[k]);
            if pz.abs_f64() <= unit_roundoff * horner_bound(&abs_coeffs, z[k].abs_f64()) {
                settled[k] = true;
                continue;
            }
            let offset = aberth_offset(&pz, &dp, &z, k, ctx);
            let scale = z[k].norm_sqr().max(one.clone());
            if offset.norm_sqr() <= &tol_sq * &scale {
                settled[k] = true;
            }
            z[k] = &z[k] - &offset;
        }
        if settled.iter().all(|&s| s) {
            sort_roots(&mut z);
            return Ok(z);
        }
    }

    let residuals: Vec<f64> = z.iter().map(|zk| p.eval_complex(zk).abs_f64()).collect();
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    Err(Error::NoConvergence {
        iterations: ctx.max_iterations(),
        max_residual,
        residuals,
    })
}

/// `sum_k |c_k| r^k`, which scales the rounding error of Horner's rule at
/// `|z| = r`.
fn horner_bound(abs_coeffs: &[f64], r: f64) -> f64 {
    abs_coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c)
}

/// Newton correction `w = p/p'` deflated by the other iterates:
/// `w / (1 - w * sum_j 1/(z_k - z_j))`.
fn aberth_offset(
    pz: &ComplexVal,
    dp: &RealPoly,
    z: &[ComplexVal],
    k: usize,
    ctx: &PrecisionContext,
) -> ComplexVal {
    let dpz = dp.eval_complex(&z[k]);
    if dpz.norm_sqr() == Real::ZERO {
        // Stationary point: push the iterate off it.
        let nudge = ctx.pow10(-(ctx.decimal_digits() as isize) / 4);
        return ComplexVal::new(nudge.clone(), nudge);
    }
    let w = pz / &dpz;
    let unit = ComplexVal::new(ctx.one(), ctx.zero());
    let mut sum = ComplexVal::new(ctx.zero(), ctx.zero());
    for (j, zj) in z.iter().enumerate() {
        if j == k {
            continue;
        }
        let diff = &z[k] - zj;
        if diff.norm_sqr() == Real::ZERO {
            continue;
        }
        sum = &sum + &(&unit / &diff);
    }
    let den = unit - &w * &sum;
    if den.norm_sqr() == Real::ZERO {
        return w;
    }
    &w / &den
}

/// Points on a circle of radius `1 + max|c_i|` (Cauchy bound of the monic
/// polynomial), rotated off the real axis.
fn initial_guesses(monic: &RealPoly, ctx: &PrecisionContext) -> Vec<ComplexVal> {
    let n = monic.degree().unwrap_or(0);
    let bound = monic.coeffs()[..n]
        .iter()
        .map(|c| to_f64(&abs(c)))
        .fold(0.0, f64::max);
    let radius = 1.0 + bound;
    (0..n)
        .map(|k| {
            let theta = TAU * k as f64 / n as f64 + START_ANGLE;
            let re = ctx.from_f64(radius * theta.cos()).expect("finite");
            let im = ctx.from_f64(radius * theta.sin()).expect("finite");
            ComplexVal::new(re, im)
        })
        .collect()
}

fn sort_roots(z: &mut [ComplexVal]) {
    z.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
}

/// Real parts of the roots whose imaginary part is below `im_threshold` in
/// magnitude, ascending.
pub fn classify_real_roots(roots: &[ComplexVal], im_threshold: &Real) -> Vec<Real> {
    let mut reals: Vec<Real> = roots
        .iter()
        .filter(|r| abs(&r.im) < *im_threshold)
        .map(|r| r.re.clone())
        .collect();
    reals.sort();
    reals
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn close(a: &Real, b: &Real, tol: &Real) -> bool {
        abs(&(a - b)) < *tol
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx();
        let p = RealPoly::new(vec![c.int(-1), c.zero(), c.one()], &c);
        let roots = find_roots(&p, &c).unwrap();
        let reals = classify_real_roots(&roots, &c.half_precision_threshold());
        let tol = c.pow10(-40);
        assert_eq!(reals.len(), 2);
        assert!(close(&reals[0], &c.int(-1), &tol));
        assert!(close(&reals[1], &c.one(), &tol));
    }

    #[test]
    fn recovers_constructed_roots() {
        let c = ctx();
        let p = RealPoly::from_roots(&[c.ratio(1, 4), c.ratio(3, 4)], &c);
        let reals =
            classify_real_roots(&find_roots(&p, &c).unwrap(), &c.half_precision_threshold());
        let tol = c.pow10(-40);
        assert!(close(&reals[0], &c.ratio(1, 4), &tol));
        assert!(close(&reals[1], &c.ratio(3, 4), &tol));
    }

    #[test]
    fn classify_drops_complex_pair() {
        let c = ctx();
        // (x^2 + 1)(x - 0.5)
        let p = RealPoly::new(vec![c.ratio(-1, 2), c.one(), c.ratio(-1, 2), c.one()], &c);
        let roots = find_roots(&p, &c).unwrap();
        assert_eq!(roots.len(), 3);
        let reals = classify_real_roots(&roots, &c.half_precision_threshold());
        assert_eq!(reals.len(), 1);
        assert!(close(&reals[0], &c.ratio(1, 2), &c.pow10(-40)));
    }

    #[test]
    fn classify_threshold_example() {
        let c = ctx();
        let roots = vec![
            ComplexVal::new(c.one(), c.zero()),
            ComplexVal::new(c.zero(), c.one()),
        ];
        assert_eq!(classify_real_roots(&roots, &c.pow10(-20)), vec![c.one()]);
    }

    #[test]
    fn zero_and_constant_polynomials_are_domain_errors() {
        let c = ctx();
        assert!(matches!(
            find_roots(&RealPoly::zero(&c), &c),
            Err(Error::Domain(_))
        ));
        let k = RealPoly::constant(c.int(3), &c);
        assert!(matches!(find_roots(&k, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn linear_is_closed_form() {
        let c = ctx();
        let p = RealPoly::linear(c.int(3), c.int(2), &c);
        let r = find_roots(&p, &c).unwrap();
        assert_eq!(r[0].re, c.ratio(-3, 2));
    }

    #[test]
    fn iteration_cap_reports_residuals() {
        let c =
            PrecisionContext::with_settings(60, PrecisionContext::default().pow10(-48), 1).unwrap();
        let p = RealPoly::from_roots(&[c.ratio(1, 3), c.ratio(2, 3), c.int(5)], &c);
        match find_roots(&p, &c) {
            Err(Error::NoConvergence {
                residuals,
                iterations,
                ..
            }) => {
                assert_eq!(iterations, 1);
                assert_eq!(residuals.len(), 3);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn scaling_does_not_move_roots() {
        let c = ctx();
        let p = RealPoly::from_roots(&[c.ratio(1, 7), c.ratio(-2, 3), c.int(4)], &c);
        let a = find_roots(&p, &c).unwrap();
        let b = find_roots(&p.scale(&c.ratio(-37, 5)), &c).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm_sqr() < c.pow10(-80));
        }
    }

    #[test]
    fn double_root_settles() {
        let c = ctx();
        let r = c.ratio(7, 10);
        let p = RealPoly::from_roots(&[r.clone(), r.clone(), c.ratio(1, 5)], &c);
        let roots = find_roots(&p, &c).unwrap();
        // A double root is only determined to about half the working digits.
        for z in &roots[1..] {
            assert!(to_f64(&abs(&(&z.re - &r))) < 1e-25);
        }
    }
}
