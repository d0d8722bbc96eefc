//! Report structures and artifact writers (JSON, CSV, markdown).
//!
//! Serialization must be byte-stable for a fixed config and seed: all
//! containers are ordered, nothing carries timestamps, and floats go through
//! serde_json's shortest-roundtrip formatting.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use specdim_core::matrix::CMatrix;
use specdim_core::spectral::{method_name, DimensionEstimate};

use crate::runner::RunError;

#[derive(Debug, Clone, Serialize)]
pub struct EstimateJson {
    pub value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub method: String,
    pub levels_used: usize,
    pub residual: f64,
}

impl From<&DimensionEstimate> for EstimateJson {
    fn from(est: &DimensionEstimate) -> Self {
        Self {
            value: est.value,
            bracket_lo: est.bracket.0,
            bracket_hi: est.bracket.1,
            method: method_name(est.method).to_string(),
            levels_used: est.levels_used,
            residual: est.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BergmanRow {
    pub n: usize,
    pub weight: f64,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HardyRow {
    pub word: Vec<usize>,
    pub a: u32,
    pub b: u32,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FractalDimRun {
    pub ell: f64,
    pub target: f64,
    pub abscissa: EstimateJson,
    pub counting: EstimateJson,
    pub abscissa_ok: bool,
    pub counting_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormTable {
    pub name: String,
    pub levels: Vec<u32>,
    pub norms: Vec<f64>,
    pub sup: f64,
    /// Contractivity cap when one applies (sampled sup of the symbol).
    pub cap: Option<f64>,
    pub increasing_trend: bool,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolventTable {
    pub family: String,
    pub values: Vec<f64>,
    pub strictly_decreasing: bool,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ReportBody {
    VerifyBergman {
        tolerance: f64,
        max_residual: f64,
        cases: Vec<BergmanRow>,
    },
    VerifyHardy {
        tolerance: f64,
        margin: usize,
        cutoff: usize,
        max_residual: f64,
        cases: Vec<HardyRow>,
    },
    DimensionFractal {
        hausdorff_target: f64,
        runs: Vec<FractalDimRun>,
    },
    DimensionBergman {
        counting: EstimateJson,
        counting_target: f64,
        counting_tol: f64,
        zeta_s: f64,
        zeta_value: f64,
        zeta_target: Option<f64>,
        zeta_tol: f64,
        zeta_tail_bracket: (f64, f64),
    },
    Zeta {
        family: String,
        rows: usize,
        csv: String,
    },
    Attractor {
        polygons: usize,
        points: usize,
        svg: String,
        circles_svg: String,
        osc_overlap: Option<bool>,
        osc_containment_violations: Option<usize>,
    },
    Conditions {
        resolvent: Vec<ResolventTable>,
        norm_tables: Vec<NormTable>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub experiment: String,
    pub seed: u64,
    pub pass: bool,
    pub body: ReportBody,
}

pub fn write_report(dir: &Path, report: &Report) -> Result<(), RunError> {
    let path = dir.join("report.json");
    let mut buf = serde_json::to_vec_pretty(report)
        .map_err(|e| RunError::Io(format!("serializing report: {e}")))?;
    buf.push(b'\n');
    fs::write(&path, buf).map_err(|e| RunError::Io(format!("writing {}: {e}", path.display())))
}

pub fn write_csv(
    dir: &Path,
    name: &str,
    header: &str,
    rows: impl IntoIterator<Item = String>,
) -> Result<(), RunError> {
    let path = dir.join(name);
    let file =
        fs::File::create(&path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    let mut out = std::io::BufWriter::new(file);
    let write = |out: &mut std::io::BufWriter<fs::File>, line: &str| {
        out.write_all(line.as_bytes())
            .and_then(|_| out.write_all(b"\n"))
            .map_err(|e| RunError::Io(format!("{}: {e}", path.display())))
    };
    write(&mut out, header)?;
    for row in rows {
        write(&mut out, &row)?;
    }
    Ok(())
}

/// Dump a complex matrix as (row, col, re, im) CSV.
pub fn write_matrix_csv(dir: &Path, name: &str, matrix: &CMatrix) -> Result<(), RunError> {
    let mut rows = Vec::with_capacity(matrix.rows() * matrix.cols());
    for i in 0..matrix.rows() {
        for j in 0..matrix.cols() {
            let v = matrix.get(i, j);
            rows.push(format!("{i},{j},{},{}", v.re, v.im));
        }
    }
    write_csv(dir, name, "row,col,re,im", rows)
}

/// Human-oriented summary table next to the machine-readable report.
pub fn write_summary(dir: &Path, report: &Report) -> Result<(), RunError> {
    let mut md = String::new();
    md.push_str(&format!(
        "# {} — {}\n\n",
        report.experiment,
        if report.pass { "PASS" } else { "FAIL" }
    ));
    match &report.body {
        ReportBody::VerifyBergman {
            tolerance,
            max_residual,
            cases,
        } => {
            md.push_str(&format!(
                "{} cases, max residual {max_residual:.3e} (tolerance {tolerance:.1e})\n\n",
                cases.len()
            ));
            md.push_str("| n | weight | alpha | beta | residual | pass |\n");
            md.push_str("|---|--------|-------|------|----------|------|\n");
            for row in cases {
                md.push_str(&format!(
                    "| {} | {} | {:?} | {:?} | {:.3e} | {} |\n",
                    row.n, row.weight, row.alpha, row.beta, row.residual, row.pass
                ));
            }
        }
        ReportBody::VerifyHardy {
            tolerance,
            margin,
            cutoff,
            max_residual,
            cases,
        } => {
            md.push_str(&format!(
                "{} cases at cutoff {cutoff}, margin {margin}; max residual {max_residual:.3e} (tolerance {tolerance:.1e})\n\n",
                cases.len()
            ));
            md.push_str("| word | a | b | residual | pass |\n");
            md.push_str("|------|---|---|----------|------|\n");
            for row in cases {
                md.push_str(&format!(
                    "| {:?} | {} | {} | {:.3e} | {} |\n",
                    row.word, row.a, row.b, row.residual, row.pass
                ));
            }
        }
        ReportBody::DimensionFractal {
            hausdorff_target,
            runs,
        } => {
            md.push_str(&format!("Hausdorff target {hausdorff_target:.6}\n\n"));
            md.push_str("| ell | abscissa | counting | abscissa ok | counting ok |\n");
            md.push_str("|-----|----------|----------|-------------|-------------|\n");
            for run in runs {
                md.push_str(&format!(
                    "| {} | {:.6} | {:.4} | {} | {} |\n",
                    run.ell, run.abscissa.value, run.counting.value, run.abscissa_ok,
                    run.counting_ok
                ));
            }
        }
        ReportBody::DimensionBergman {
            counting,
            counting_target,
            zeta_s,
            zeta_value,
            zeta_target,
            ..
        } => {
            md.push_str(&format!(
                "counting slope {:.4} (target {counting_target}), zeta(s={zeta_s}) = {zeta_value:.10}",
                counting.value
            ));
            if let Some(t) = zeta_target {
                md.push_str(&format!(" (target {t:.10})"));
            }
            md.push('\n');
        }
        ReportBody::Zeta { family, rows, csv } => {
            md.push_str(&format!("{family}: {rows} rows written to {csv}\n"));
        }
        ReportBody::Attractor {
            polygons,
            points,
            svg,
            circles_svg,
            ..
        } => {
            md.push_str(&format!(
                "{polygons} polygon images, {points} sampled points; figures: {svg}, {circles_svg}\n"
            ));
        }
        ReportBody::Conditions {
            resolvent,
            norm_tables,
        } => {
            md.push_str("| check | verdict |\n|-------|---------|\n");
            for table in resolvent {
                md.push_str(&format!(
                    "| resolvent decay ({}) | {} |\n",
                    table.family, table.verdict
                ));
            }
            for table in norm_tables {
                md.push_str(&format!("| bounded norms ({}) | {} |\n", table.name, table.verdict));
            }
        }
    }
    let path = dir.join("summary.md");
    fs::write(&path, md).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))
}
