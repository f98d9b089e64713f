//! JSON documents exchanged with the command line: parameter sets, raw
//! transfer-function coefficients, and identifiability reports.
//!
//! Real numbers are written as decimal strings in scientific notation at the
//! full working precision. On input, plain JSON numbers are accepted too.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl_model::{ModelParams, MonicTF, DEFAULT_HORIZON};
use crate::identifiability::{CandidateSolution, CandidateStatus, IdentifiabilityReport, Verdict};
use crate::numerics::{PrecisionContext, Real};

pub fn real_to_string(x: &Real) -> String {
    format!("{x:e}")
}

/// A JSON number or a decimal string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Decimal {
    Text(String),
    Number(f64),
}

impl Decimal {
    pub fn from_real(x: &Real) -> Self {
        Decimal::Text(real_to_string(x))
    }

    pub fn to_real(&self, ctx: &PrecisionContext) -> Result<Real> {
        match self {
            Decimal::Text(s) => ctx.parse(s),
            Decimal::Number(x) => ctx.from_f64(*x),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            Decimal::Number(x) => Ok(*x),
            Decimal::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse { input: s.clone() }),
        }
    }
}

fn f64_from_decimal<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Decimal::deserialize(d)?.to_f64().map_err(de::Error::custom)
}

fn opt_f64_from_decimal<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Option<f64>, D::Error> {
    Option::<Decimal>::deserialize(d)?
        .map(|v| v.to_f64().map_err(de::Error::custom))
        .transpose()
}

/// Parameter file. `ts` and `T` may be omitted and supplied by flags instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDocument {
    #[serde(deserialize_with = "f64_from_decimal")]
    pub r_inf: f64,
    #[serde(deserialize_with = "f64_from_decimal")]
    pub r1: f64,
    #[serde(deserialize_with = "f64_from_decimal")]
    pub c1: f64,
    #[serde(deserialize_with = "f64_from_decimal")]
    pub alpha1: f64,
    #[serde(deserialize_with = "f64_from_decimal")]
    pub c2: f64,
    #[serde(deserialize_with = "f64_from_decimal")]
    pub alpha2: f64,
    #[serde(
        default,
        deserialize_with = "opt_f64_from_decimal",
        skip_serializing_if = "Option::is_none"
    )]
    pub ts: Option<f64>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
}

impl ParamsDocument {
    /// Resolves `ts` and `T`, preferring the overrides, then the file, then
    /// the defaults, and validates the result.
    pub fn resolve(
        &self,
        ts_override: Option<f64>,
        horizon_override: Option<usize>,
        default_ts: f64,
    ) -> Result<ModelParams> {
        let p = ModelParams {
            r_inf: self.r_inf,
            r1: self.r1,
            c1: self.c1,
            alpha1: self.alpha1,
            c2: self.c2,
            alpha2: self.alpha2,
            ts: ts_override.or(self.ts).unwrap_or(default_ts),
            horizon: horizon_override.or(self.horizon).unwrap_or(DEFAULT_HORIZON),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_params(p: &ModelParams) -> Self {
        Self {
            r_inf: p.r_inf,
            r1: p.r1,
            c1: p.c1,
            alpha1: p.alpha1,
            c2: p.c2,
            alpha2: p.alpha2,
            ts: Some(p.ts),
            horizon: Some(p.horizon),
        }
    }
}

/// Raw transfer-function coefficients, ascending powers of `z`.
///
/// `f` has `2T+3` entries. `g` has either `2T+2` entries (monic, leading 1
/// implied) or `2T+3` entries, in which case both arrays are divided by the
/// last `g` entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsDocument {
    pub f: Vec<Decimal>,
    pub g: Vec<Decimal>,
    #[serde(
        default,
        deserialize_with = "opt_f64_from_decimal",
        skip_serializing_if = "Option::is_none"
    )]
    pub ts: Option<f64>,
}

impl CoefficientsDocument {
    pub fn from_tf(tf: &MonicTF, ts: Option<f64>) -> Self {
        Self {
            f: tf.f.iter().map(Decimal::from_real).collect(),
            g: tf.g.iter().map(Decimal::from_real).collect(),
            ts,
        }
    }

    pub fn to_tf(&self, ctx: &PrecisionContext) -> Result<MonicTF> {
        let parse_all = |name: &str, v: &[Decimal]| -> Result<Vec<Real>> {
            v.iter()
                .enumerate()
                .map(|(i, d)| {
                    d.to_real(ctx).map_err(|_| Error::Parse {
                        input: format!("{name}[{i}] = {d:?}"),
                    })
                })
                .collect()
        };
        let mut f = parse_all("f", &self.f)?;
        let mut g = parse_all("g", &self.g)?;
        if g.len() == f.len() {
            let lead = g.pop().expect("non-empty");
            if lead == Real::ZERO {
                return Err(Error::Domain(
                    "leading denominator coefficient is zero".into(),
                ));
            }
            f.iter_mut().for_each(|c| *c = &*c / &lead);
            g.iter_mut().for_each(|c| *c = &*c / &lead);
        }
        MonicTF::new(f, g)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateDocument {
    pub alpha2: String,
    pub alpha2_im: String,
    pub status: CandidateStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a10: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovered: Option<ParamsDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_norm_error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub coefficient_errors: Vec<String>,
}

impl From<&CandidateSolution> for CandidateDocument {
    fn from(c: &CandidateSolution) -> Self {
        let s = |x: &Option<Real>| x.as_ref().map(real_to_string);
        Self {
            alpha2: real_to_string(&c.alpha2),
            alpha2_im: real_to_string(&c.alpha2_im),
            status: c.status,
            alpha1: s(&c.alpha1),
            a10: s(&c.a10),
            b1: s(&c.b1),
            b2: s(&c.b2),
            recovered: c.recovered.as_ref().map(ParamsDocument::from_params),
            max_norm_error: s(&c.max_norm_error),
            coefficient_errors: c.coefficient_errors.iter().map(real_to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingsDocument {
    pub reduction_us: u128,
    pub roots_us: u128,
    pub candidates_us: u128,
    pub total_us: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub verdict: String,
    /// Number of accepted candidates.
    pub accepted: usize,
    #[serde(rename = "T")]
    pub horizon: usize,
    pub decimal_digits: usize,
    pub d: String,
    /// `f_{2T+1}, f_{2T}, f_{2T-1}, f_{2T-2}`.
    pub f_heads: Vec<String>,
    /// `g_{2T+1} ..= g_{2T-4}`.
    pub g_heads: Vec<String>,
    /// Monic octic in `alpha2`, ascending; empty when it vanishes identically.
    pub octic_ascending: Vec<String>,
    pub exclusion_interval: [String; 2],
    pub candidates: Vec<CandidateDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_errors: Option<[f64; 6]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingsDocument>,
}

impl ReportDocument {
    pub fn from_report(
        report: &IdentifiabilityReport,
        ctx: &PrecisionContext,
        with_timings: bool,
    ) -> Self {
        let t = &report.timings;
        Self {
            verdict: report.verdict.label().to_string(),
            accepted: match report.verdict {
                Verdict::GloballyIdentifiable => 1,
                Verdict::Identifiable(n) => n,
                _ => 0,
            },
            horizon: report.horizon,
            decimal_digits: ctx.decimal_digits(),
            d: real_to_string(&report.heads.d),
            f_heads: report.heads.f.iter().map(real_to_string).collect(),
            g_heads: report.heads.g.iter().map(real_to_string).collect(),
            octic_ascending: report
                .octic
                .as_ref()
                .map(|p| p.coeffs().iter().map(real_to_string).collect())
                .unwrap_or_default(),
            exclusion_interval: [
                real_to_string(&report.exclusion_interval.0),
                real_to_string(&report.exclusion_interval.1),
            ],
            candidates: report
                .candidates
                .iter()
                .map(CandidateDocument::from)
                .collect(),
            relative_errors: None,
            timings: with_timings.then_some(TimingsDocument {
                reduction_us: t.reduction.as_micros(),
                roots_us: t.roots.as_micros(),
                candidates_us: t.candidates.as_micros(),
                total_us: t.total.as_micros(),
            }),
        }
    }
}
