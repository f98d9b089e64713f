mod common;

use common::*;
use foecm::identifiability::legacy_residuals;
use foecm::numerics::{abs, to_f64, PrecisionContext};
use foecm::sweep::DEFAULT_TS;

const HORIZONS: [usize; 4] = [10, 20, 50, 100];

#[test]
fn residuals_vanish_at_true_exponents() {
    let c = PrecisionContext::default();
    for t in HORIZONS {
        let tf = transfer_function(&battery(DEFAULT_TS, t), &c);
        let r = legacy_residuals(&tf, &c.ratio(4, 5), &c.ratio(1, 2), &c).unwrap();
        let bound = &r.scale * c.pow10(-30);
        assert!(abs(&r.residual1) < bound, "T = {t}");
        assert!(abs(&r.residual2) < bound, "T = {t}");
    }
}

#[test]
fn lowest_coefficient_shrinks_with_horizon() {
    let c = PrecisionContext::default();
    let g0: Vec<f64> = HORIZONS
        .iter()
        .map(|&t| {
            let tf = transfer_function(&battery(DEFAULT_TS, t), &c);
            to_f64(&abs(&legacy_residuals(
                &tf,
                &c.ratio(4, 5),
                &c.ratio(1, 2),
                &c,
            )
            .unwrap()
            .g0))
        })
        .collect();
    assert!(g0.windows(2).all(|w| w[1] < w[0]), "{g0:?}");
    assert!(g0[3] > 0.0);
}

#[test]
fn perturbed_exponent_residual_is_nonzero_and_fades() {
    let c = PrecisionContext::default();
    let wrong = c.parse("0.51").unwrap();
    let res: Vec<f64> = HORIZONS
        .iter()
        .map(|&t| {
            let tf = transfer_function(&battery(DEFAULT_TS, t), &c);
            let r = legacy_residuals(&tf, &c.ratio(4, 5), &wrong, &c).unwrap();
            to_f64(&abs(&r.residual1))
        })
        .collect();
    assert!(res.iter().all(|&r| r > 0.0), "{res:?}");
    assert!(res.windows(2).all(|w| w[1] < w[0]), "{res:?}");
}
