use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use foecm::formats::real_to_string;
use foecm::formats::{CoefficientsDocument, ParamsDocument, ReportDocument};
use foecm::gl_model::{build_gl_series, expand_monic_tf, ModelParams, MIN_HORIZON};
use foecm::identifiability::{analyze, legacy_residuals, IdentifiabilityReport, Verdict};
use foecm::spectra::{default_grid, sweep_spectrum};
use foecm::sweep::{roundtrip, run_sweep, summarize, DEFAULT_TS};
use serde::Serialize;

use crate::config::RunConfig;

/// Exit codes beyond 0 (success or a globally identifiable verdict).
pub mod exit {
    pub const IDENTIFIABLE: u8 = 10;
    pub const UNIDENTIFIABLE: u8 = 11;
    pub const NO_VALID_SOLUTION: u8 = 12;
    pub const SWEEP_NOT_GLOBAL: u8 = 13;
    pub const USAGE: u8 = 2;
    pub const INPUT: u8 = 3;
    pub const COMPUTE: u8 = 4;
}

pub fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::GloballyIdentifiable => 0,
        Verdict::Identifiable(_) => exit::IDENTIFIABLE,
        Verdict::Unidentifiable => exit::UNIDENTIFIABLE,
        Verdict::NoValidSolution => exit::NO_VALID_SOLUTION,
    }
}

/// An error together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub type CmdResult = Result<u8, Failure>;

pub trait Classify<T> {
    fn input(self) -> Result<T, Failure>;
    fn compute(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn input(self) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code: exit::INPUT,
            error: e.into(),
        })
    }

    fn compute(self) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code: exit::COMPUTE,
            error: e.into(),
        })
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {what} file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("invalid {what} file {}", path.display()))
}

pub fn load_params(path: &Path, cfg: &RunConfig) -> anyhow::Result<ModelParams> {
    let doc: ParamsDocument = read_json(path, "params")?;
    let p = doc
        .resolve(cfg.ts, cfg.horizon()?, DEFAULT_TS)
        .with_context(|| format!("invalid params file {}", path.display()))?;
    Ok(p)
}

fn write_bytes(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_bytes(out, text.as_bytes())
}

fn write_csv<R: Serialize>(out: Option<&Path>, rows: &[R]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| anyhow!("{e}"))?;
    write_bytes(out, &bytes)
}

fn emit_report(
    report: &IdentifiabilityReport,
    cfg: &RunConfig,
    relative_errors: Option<[f64; 6]>,
    timings: bool,
) -> CmdResult {
    let ctx = cfg.precision().input()?;
    let mut doc = ReportDocument::from_report(report, &ctx, timings);
    doc.relative_errors = relative_errors;
    write_json(cfg.out.as_deref(), &doc).input()?;
    Ok(verdict_code(report.verdict))
}

pub enum AnalyzeInput {
    Params(PathBuf),
    Coefficients(PathBuf),
}

pub fn analyze_cmd(cfg: &RunConfig, input: &AnalyzeInput, timings: bool) -> CmdResult {
    let ctx = cfg.precision().input()?;
    let analysis = cfg.analysis().input()?;
    let (tf, ts) = match input {
        AnalyzeInput::Params(path) => {
            let p = load_params(path, cfg).input()?;
            let tf = build_gl_series(&p, &ctx)
                .and_then(|s| expand_monic_tf(&s, &ctx))
                .compute()?;
            (tf, p.ts)
        }
        AnalyzeInput::Coefficients(path) => {
            let doc: CoefficientsDocument = read_json(path, "coefficients").input()?;
            let tf = doc
                .to_tf(&ctx)
                .with_context(|| format!("invalid coefficients file {}", path.display()))
                .input()?;
            (tf, cfg.ts.or(doc.ts).unwrap_or(DEFAULT_TS))
        }
    };
    let report = analyze(&tf, ts, &analysis).compute()?;
    emit_report(&report, cfg, None, timings)
}

pub fn roundtrip_cmd(cfg: &RunConfig, params: &Path, timings: bool) -> CmdResult {
    let p = load_params(params, cfg).input()?;
    let analysis = cfg.analysis().input()?;
    let rt = roundtrip(&p, &analysis).compute()?;
    emit_report(&rt.report, cfg, rt.relative_errors, timings)
}

#[derive(Serialize)]
struct SweepCsvRow {
    index: usize,
    r_inf: f64,
    r1: f64,
    c1: f64,
    alpha1: f64,
    c2: f64,
    alpha2: f64,
    verdict: String,
    accepted: usize,
    max_relative_error: Option<f64>,
    error: Option<String>,
}

pub fn sweep_cmd(cfg: &RunConfig) -> CmdResult {
    let settings = cfg.sweep().input()?;
    if settings.samples == 0 {
        return Err(anyhow!("sample count must be at least 1")).input();
    }
    let analysis = cfg.analysis().input()?;
    let rows = run_sweep(&settings, &analysis).input()?;
    let table: Vec<SweepCsvRow> = rows
        .iter()
        .map(|r| SweepCsvRow {
            index: r.index,
            r_inf: r.params.r_inf,
            r1: r.params.r1,
            c1: r.params.c1,
            alpha1: r.params.alpha1,
            c2: r.params.c2,
            alpha2: r.params.alpha2,
            verdict: r
                .verdict
                .map(|v| v.label().to_string())
                .unwrap_or_else(|| "Failed".into()),
            accepted: r.accepted,
            max_relative_error: r.max_relative_error,
            error: r.error.clone(),
        })
        .collect();
    write_csv(cfg.out.as_deref(), &table).input()?;
    let summary = summarize(&rows);
    eprintln!("{}", serde_json::to_string(&summary).expect("plain struct"));
    Ok(if summary.globally_identifiable == rows.len() {
        0
    } else {
        exit::SWEEP_NOT_GLOBAL
    })
}

/// Angular frequencies from the first column of a CSV file; a non-numeric
/// first row is taken as a header.
fn read_grid(path: &Path) -> anyhow::Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read grid file {}", path.display()))?;
    let mut grid = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.with_context(|| format!("grid file {}", path.display()))?;
        let field = rec.get(0).unwrap_or("");
        match field.parse::<f64>() {
            Ok(w) => grid.push(w),
            Err(_) if i == 0 => continue,
            Err(_) => anyhow::bail!(
                "grid file {} line {}: `{field}` is not a number",
                path.display(),
                i + 1
            ),
        }
    }
    Ok(grid)
}

pub fn spectra_cmd(cfg: &RunConfig, params: &Path, grid: Option<&Path>) -> CmdResult {
    let p = load_params(params, cfg).input()?;
    let grid = match grid {
        Some(path) => read_grid(path).input()?,
        None => default_grid(),
    };
    let points = sweep_spectrum(&p, &grid).input()?;
    write_csv(cfg.out.as_deref(), &points).input()?;
    Ok(0)
}

#[derive(Serialize)]
struct LegacyRow {
    #[serde(rename = "T")]
    horizon: usize,
    g0: String,
    g1: String,
    g2: String,
    residual1: String,
    residual2: String,
    scale: String,
}

pub fn legacy_cmd(cfg: &RunConfig, params: &Path, horizons: &[usize]) -> CmdResult {
    let p = load_params(params, cfg).input()?;
    if let Some(&t) = horizons.iter().find(|&&t| t < MIN_HORIZON) {
        return Err(anyhow!("T must be at least {MIN_HORIZON}, got {t}")).input();
    }
    let ctx = cfg.precision().input()?;
    let (a1, a2) = (
        ctx.from_f64(p.alpha1).input()?,
        ctx.from_f64(p.alpha2).input()?,
    );
    let mut rows = Vec::new();
    for &t in horizons {
        let params = ModelParams { horizon: t, ..p };
        let tf = build_gl_series(&params, &ctx)
            .and_then(|s| expand_monic_tf(&s, &ctx))
            .compute()?;
        let r = legacy_residuals(&tf, &a1, &a2, &ctx).compute()?;
        rows.push(LegacyRow {
            horizon: t,
            g0: real_to_string(&r.g0),
            g1: real_to_string(&r.g1),
            g2: real_to_string(&r.g2),
            residual1: real_to_string(&r.residual1),
            residual2: real_to_string(&r.residual2),
            scale: real_to_string(&r.scale),
        });
    }
    write_csv(cfg.out.as_deref(), &rows).input()?;
    Ok(0)
}
