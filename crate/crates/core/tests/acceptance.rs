//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use foecm::gl_model::{build_gl_series, expand_monic_tf, gl_binomial_series, head_coeffs};
use foecm::identifiability::{
    alpha1_as_rational, analyze, build_alpha_polys, build_octic, exclusion_interval,
    filter_candidates, legacy_residuals, Alpha1Relation, AnalysisConfig, CandidateStatus, Verdict,
};
use foecm::numerics::{
    abs, classify_real_roots, find_roots, to_f64, PrecisionContext, Real, RealPoly,
};
use foecm::spectra::cpe_impedance;
use foecm::sweep::{run_sweep, SweepSettings, DEFAULT_TS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sci(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.2e}")).collect();
    parts.join(", ")
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(
        elapsed < limit,
        format!("took {elapsed:.2?}, limit {limit:?}"),
    )
}

fn fitted_report(ctx: &PrecisionContext) -> foecm::identifiability::IdentifiabilityReport {
    let ts = fitted_ts();
    let tf = transfer_function(&battery(ts, 100), ctx);
    analyze(&tf, ts, &AnalysisConfig::new(ctx.clone())).expect("analysis runs")
}

fn octic_reproduction() -> Outcome {
    let start = Instant::now();
    let ctx = PrecisionContext::default();
    let octic = fitted_report(&ctx).octic.ok_or("octic vanished")?;
    let elapsed = start.elapsed();
    let reference = reference_octic(&ctx);
    let worst = (0..8)
        .map(|k| to_f64(&rel_diff(&octic.coeff(k), &reference.coeff(k))))
        .fold(0.0, f64::max);
    check(octic.degree() == Some(8), "octic degree is not 8")?;
    check(
        worst < 1e-3,
        format!("max relative coefficient error {worst:.3e}"),
    )?;
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "max relative coefficient error {worst:.2e} in {elapsed:.2?}"
    ))
}

fn root_reproduction() -> Outcome {
    let ctx = PrecisionContext::default();
    let start = Instant::now();
    let roots = find_roots(&reference_octic(&ctx), &ctx).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let reals = classify_real_roots(&roots, &ctx.half_precision_threshold());
    let complex = roots.len() - reals.len();
    check(
        reals.len() == 6 && complex == 2,
        format!("{} real, {complex} complex roots", reals.len()),
    )?;
    let errors: Vec<f64> = reals
        .iter()
        .zip(REFERENCE_PAIRS)
        .map(|(r, (want, _))| to_f64(&abs(&(r - ctx.parse(want).unwrap()))))
        .collect();
    let worst = errors.iter().cloned().fold(0.0, f64::max);
    check(
        worst < 1e-10,
        format!(
            "root errors [{}]; max {worst:.2e} exceeds 1e-10",
            sci(&errors)
        ),
    )?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("max root error {worst:.2e} in {elapsed:.2?}"))
}

fn filtering_reproduction() -> Outcome {
    let ctx = PrecisionContext::default();
    let ts = fitted_ts();
    let heads =
        head_coeffs(&transfer_function(&battery(ts, 100), &ctx)).map_err(|e| e.to_string())?;
    let interval = exclusion_interval(&heads).map_err(|e| e.to_string())?;
    let (lo, hi) = (to_f64(&interval.0), to_f64(&interval.1));
    let dev = (lo - REFERENCE_INTERVAL.0)
        .abs()
        .max((hi - REFERENCE_INTERVAL.1).abs());
    check(
        dev < 1e-4,
        format!("interval ({lo:.6}, {hi:.6}) off by {dev:.2e}"),
    )?;
    let pairs: Vec<(Real, Real)> = REFERENCE_PAIRS
        .iter()
        .map(|(a2, a1)| (ctx.parse(a2).unwrap(), ctx.parse(a1).unwrap()))
        .collect();
    let survivors: Vec<usize> = filter_candidates(&pairs, &interval)
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(i, _)| i + 1)
        .collect();
    check(
        survivors == [2, 5],
        format!("surviving pairs {survivors:?}"),
    )?;
    Ok(format!(
        "interval ({lo:.5}, {hi:.5}); pairs 2 and 5 survive"
    ))
}

fn verification_reproduction() -> Outcome {
    let ctx = PrecisionContext::new(60).map_err(|e| e.to_string())?;
    let report = fitted_report(&ctx);
    let error_near = |target: f64| {
        report
            .candidates
            .iter()
            .filter(|c| c.status != CandidateStatus::RejectedComplex)
            .min_by(|a, b| {
                let da = (to_f64(&a.alpha2) - target).abs();
                let db = (to_f64(&b.alpha2) - target).abs();
                da.total_cmp(&db)
            })
            .and_then(|c| c.max_norm_error.as_ref().map(to_f64))
    };
    let e2 = error_near(0.5).ok_or("pair 2 was not verified")?;
    let e5 = error_near(0.7979).ok_or("pair 5 was not verified")?;
    check(e2 < 1e-30, format!("pair 2 error {e2:.2e}"))?;
    let rel5 = (e5 - REFERENCE_PAIR5_MAX_ERROR).abs() / REFERENCE_PAIR5_MAX_ERROR;
    check(
        rel5 < 0.1,
        format!("pair 5 error {e5:.5} off by {:.1}%", 100.0 * rel5),
    )?;
    check(
        report.verdict == Verdict::GloballyIdentifiable,
        format!("verdict {:?}", report.verdict),
    )?;
    Ok(format!(
        "pair 2 error {e2:.2e}, pair 5 error {e5:.5}, GloballyIdentifiable"
    ))
}

fn sweep_reproduction() -> Outcome {
    let start = Instant::now();
    let settings = SweepSettings {
        samples: 100,
        seed: 2024,
        ..SweepSettings::default()
    };
    let rows = run_sweep(&settings, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let bad: Vec<usize> = rows
        .iter()
        .filter(|r| r.verdict != Some(Verdict::GloballyIdentifiable))
        .map(|r| r.index)
        .collect();
    check(
        bad.is_empty(),
        format!("draws {bad:?} not GloballyIdentifiable"),
    )?;
    let worst = rows
        .iter()
        .map(|r| r.max_relative_error.unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    check(
        worst < 1e-8,
        format!("max relative parameter error {worst:.2e}"),
    )?;
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "{} draws, max relative error {worst:.2e} in {elapsed:.2?}",
        rows.len()
    ))
}

fn property_suite() -> Outcome {
    let ctx = PrecisionContext::default();
    let tol = ctx.half_precision_threshold();

    let hi = PrecisionContext::new(120).unwrap();
    let gamma = Gamma::new(&hi);
    for tenths in [1, 3, 5, 7, 9] {
        let series =
            gl_binomial_series(&ctx.ratio(tenths, 10), 20, &ctx).map_err(|e| e.to_string())?;
        for j in 1..=20i64 {
            let oracle = gamma.gl_coefficient(&hi.ratio(tenths, 10), j);
            let rel = rel_diff(&hi.lift(series[(j - 1) as usize].clone()), &oracle);
            check(
                rel < tol,
                format!("GL coefficient alpha=0.{tenths} j={j} off by {rel:e}"),
            )?;
        }
    }

    for horizon in [7usize, 13, 20] {
        let series =
            build_gl_series(&battery(DEFAULT_TS, horizon), &ctx).map_err(|e| e.to_string())?;
        let tf = expand_monic_tf(&series, &ctx).map_err(|e| e.to_string())?;
        let (num, den) = naive_transfer_function(&series, horizon, &ctx);
        let ok =
            tf.g.iter()
                .zip(&den)
                .chain(tf.f.iter().zip(&num))
                .all(|(a, b)| abs(&(a - b)) < tol);
        check(
            ok,
            format!("expansion differs from convolution at T={horizon}"),
        )?;
    }

    let octic = |t| {
        let h = head_coeffs(&transfer_function(&battery(DEFAULT_TS, t), &ctx)).unwrap();
        let polys = build_alpha_polys(&h, &ctx).unwrap();
        let q4 = alpha1_as_rational(&h, &polys, Alpha1Relation::Quartic, &ctx).unwrap();
        let q5 = alpha1_as_rational(&h, &polys, Alpha1Relation::Quintic, &ctx).unwrap();
        build_octic(&q4, &q5).unwrap()
    };
    let (a, b) = (octic(7), octic(100));
    check(
        (0..=8).all(|k| abs(&(a.coeff(k) - b.coeff(k))) < tol),
        "octic changes between T=7 and T=100",
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let c: f64 = rng.gen_range(1e-2..1e3);
        let alpha: f64 = rng.gen_range(0.05..0.95);
        let phases =
            (0..=8).map(|k| cpe_impedance(c, alpha, 10f64.powf(-2.0 + 0.5 * k as f64)).arg());
        let want = -alpha * std::f64::consts::FRAC_PI_2;
        check(
            phases.into_iter().all(|p| (p - want).abs() < 1e-12),
            "CPE phase varies",
        )?;
    }

    for degree in 2..=10usize {
        let mut ks: Vec<i64> = Vec::new();
        while ks.len() < degree {
            let k = rng.gen_range(-2000..=2000);
            if !ks.contains(&k) {
                ks.push(k);
            }
        }
        ks.sort();
        let roots: Vec<Real> = ks.iter().map(|&k| ctx.ratio(k, 1000)).collect();
        let found =
            find_roots(&RealPoly::from_roots(&roots, &ctx), &ctx).map_err(|e| e.to_string())?;
        let reals = classify_real_roots(&found, &tol);
        check(
            reals.len() == degree && reals.iter().zip(&roots).all(|(g, w)| abs(&(g - w)) < tol),
            format!("degree {degree} roots not recovered"),
        )?;
    }
    Ok("GL oracle, convolution, octic invariance, CPE phase, known roots".into())
}

fn ill_conditioning() -> Outcome {
    let ctx = PrecisionContext::default();
    let tol = ctx.half_precision_threshold();
    let mut g0 = Vec::new();
    for t in [10usize, 20, 50, 100] {
        let tf = transfer_function(&battery(DEFAULT_TS, t), &ctx);
        let r = legacy_residuals(&tf, &ctx.ratio(4, 5), &ctx.ratio(1, 2), &ctx)
            .map_err(|e| e.to_string())?;
        let bound = &tol * &r.scale;
        check(
            abs(&r.residual1) < bound && abs(&r.residual2) < bound,
            format!("residual at truth too large for T={t}"),
        )?;
        g0.push(to_f64(&abs(&r.g0)));
    }
    check(
        g0.windows(2).all(|w| w[1] < w[0]),
        format!("|g0| not decreasing: [{}]", sci(&g0)),
    )?;
    Ok(format!("|g0| over T=10,20,50,100: [{}]", sci(&g0)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("octic reproduction", octic_reproduction),
        ("root reproduction", root_reproduction),
        ("filtering reproduction", filtering_reproduction),
        ("verification reproduction", verification_reproduction),
        ("parameter sweep", sweep_reproduction),
        ("property suite", property_suite),
        ("ill-conditioning demonstration", ill_conditioning),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
