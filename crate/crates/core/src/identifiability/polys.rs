//! Reduction of the head-coefficient equations to polynomials in `alpha2`.
//!
//! With `a_{2,0} = alpha2` and `a_{1,0} = -(g_{2T+1} + alpha2)`, the second
//! and third denominator coefficients fix `a_{1,1} = B/C`, `a_{2,1} = A - B/C`,
//! and the first two numerator residuals fix `b1 = D/E`, `b2 = S - b1`. Here
//! `S = f_{2T+1} - d g_{2T+1}` and
//!
//! ```text
//! A = -(alpha2 (g_{2T+1} + alpha2) + g_{2T})
//! B = g_{2T-1} - (alpha2 (g_{2T+1} + alpha2) + g_{2T}) (g_{2T+1} + (2 alpha2 + 2)/3)
//! C = g_{2T+1} + (alpha1 + 5 alpha2)/3
//! D = S (g_{2T+1} + alpha2) - (f_{2T} - d g_{2T})
//! E = g_{2T+1} + 2 alpha2
//! ```
//!
//! Everything except `C` depends on `alpha2` only, and `C` is affine in
//! `alpha1`. The next two numerator residuals then give two relations that
//! are each affine in `alpha1`, so each yields `alpha1` as a ratio of
//! polynomials in `alpha2`. Equating the two ratios gives the octic.

use super::IdentCoeffs;
use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Real, RealPoly};

/// The `A..E` terms as polynomials in `alpha2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaPolys {
    pub a: RealPoly,
    pub b: RealPoly,
    /// `alpha1`-free part of `C`.
    pub c0: RealPoly,
    /// Coefficient of `alpha1` in `C` (always 1/3).
    pub c_alpha1: Real,
    pub d: RealPoly,
    pub e: RealPoly,
}

/// Which numerator coefficient supplies the `alpha1` relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha1Relation {
    /// From `f_{2T-1}`: `alpha1` as a quartic over a cubic.
    Quartic,
    /// From `f_{2T-2}`: `alpha1` as a quintic over a quartic.
    Quintic,
}

/// `alpha1 = num(alpha2) / den(alpha2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalAlpha1 {
    pub num: RealPoly,
    pub den: RealPoly,
}

impl RationalAlpha1 {
    pub fn eval(&self, alpha2: &Real) -> (Real, Real) {
        (self.num.eval(alpha2), self.den.eval(alpha2))
    }
}

pub fn build_alpha_polys(h: &IdentCoeffs, ctx: &PrecisionContext) -> Result<AlphaPolys> {
    let g1 = &h.g[0];
    let s = h.residual(0);
    let f0 = h.residual(1);

    // alpha2 (g_{2T+1} + alpha2) + g_{2T}
    let q = RealPoly::new(vec![h.g[1].clone(), g1.clone(), ctx.one()], ctx);
    let a = q.neg();
    let lin = RealPoly::linear(g1 + ctx.ratio(2, 3), ctx.ratio(2, 3), ctx);
    let b = RealPoly::constant(h.g[2].clone(), ctx).sub(&q.mul(&lin)?)?;
    let c0 = RealPoly::linear(g1.clone(), ctx.ratio(5, 3), ctx);
    let d = RealPoly::linear(&s * g1 - &f0, s, ctx);
    let e = RealPoly::linear(g1.clone(), ctx.int(2), ctx);
    Ok(AlphaPolys {
        a,
        b,
        c0,
        c_alpha1: ctx.ratio(1, 3),
        d,
        e,
    })
}

/// Solves one of the two tail relations for `alpha1`.
///
/// Quartic relation (from `f_{2T-1}`):
/// `S B E + F1 C E + A C D - 2 B D = 0`.
///
/// Quintic relation (from `f_{2T-2}`):
/// `S (alpha1 - 2) B E + (alpha2 - 2) A D C - (alpha1 + alpha2 - 4) B D - 3 F2 C E = 0`,
///
/// where `F1`, `F2` are the numerator residuals at `2T-1`, `2T-2`.
pub fn alpha1_as_rational(
    h: &IdentCoeffs,
    polys: &AlphaPolys,
    which: Alpha1Relation,
    ctx: &PrecisionContext,
) -> Result<RationalAlpha1> {
    let AlphaPolys {
        a,
        b,
        c0,
        c_alpha1,
        d,
        e,
    } = polys;
    let s = h.residual(0);
    let (free, slope) = match which {
        Alpha1Relation::Quartic => {
            let f1 = h.residual(2);
            let be = b.mul(e)?;
            let ad = a.mul(d)?;
            let bd = b.mul(d)?;
            let f1e = e.scale(&f1);
            // alpha1-free part with C -> C0, and the coefficient of alpha1.
            let free = be
                .scale(&s)
                .add(&f1e.mul(c0)?)?
                .add(&ad.mul(c0)?)?
                .sub(&bd.scale(&ctx.int(2)))?;
            let slope = f1e.add(&ad)?.scale(c_alpha1);
            (free, slope)
        }
        Alpha1Relation::Quintic => {
            let f2 = h.residual(3);
            let be = b.mul(e)?;
            let bd = b.mul(d)?;
            let alpha2_minus_2 = RealPoly::linear(ctx.int(-2), ctx.one(), ctx);
            let alpha2_minus_4 = RealPoly::linear(ctx.int(-4), ctx.one(), ctx);
            let ad2 = alpha2_minus_2.mul(a)?.mul(d)?;
            let f2e3 = e.scale(&(ctx.int(3) * &f2));
            let free = be
                .scale(&(ctx.int(-2) * &s))
                .add(&ad2.mul(c0)?)?
                .sub(&alpha2_minus_4.mul(&bd)?)?
                .sub(&f2e3.mul(c0)?)?;
            let slope = be
                .scale(&s)
                .add(&ad2.scale(c_alpha1))?
                .sub(&bd)?
                .sub(&f2e3.scale(c_alpha1))?;
            (free, slope)
        }
    };
    if slope.is_zero() {
        return Err(Error::Degenerate(format!(
            "{which:?} relation does not involve alpha1"
        )));
    }
    Ok(RationalAlpha1 {
        num: free.neg(),
        den: slope,
    })
}

/// `num_q den_p - num_p den_q` from the two relations, scaled to monic.
pub fn build_octic(quartic: &RationalAlpha1, quintic: &RationalAlpha1) -> Result<RealPoly> {
    let p = quartic
        .num
        .mul(&quintic.den)?
        .sub(&quintic.num.mul(&quartic.den)?)?;
    if p.is_zero() {
        return Err(Error::Degenerate(
            "both alpha1 relations coincide for every alpha2".into(),
        ));
    }
    p.monic()
}
