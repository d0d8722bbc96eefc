//! Experiment orchestration: dispatch a validated config, collect results,
//! and emit artifacts.
//!
//! Runs are deterministic for a fixed config and seed regardless of the
//! thread count: parallel sections only map independent cases and collect
//! them back in input order.

use std::fmt;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use specdim_core::bergman::{
    assemble_polynomial, ball_basis, disk_fractal_weights, inverse_toeplitz_r, BallPolynomial,
};
use specdim_core::charts::MobiusChart;
use specdim_core::error::Error as CoreError;
use specdim_core::ifs::{
    check_open_set_condition, enumerate_words, hausdorff_dimension, sample_attractor, Word,
    DEFAULT_WORD_BUDGET,
};
use specdim_core::spectral::{
    uniform_bound_check_with_cap,
    bergman_family_spectra_n1, bergman_zeta_partial, counting_function_dimension,
    disk_fractal_family_spectra, estimate_abscissa, fractal_family_spectra, resolvent_decay_check,
    uniform_bound_check, FitWindow, ZetaFamily, ZetaSeries,
};
use specdim_core::sum::KahanSum;
use specdim_core::toeplitz::{
    commutator, commutator_bound_table, commutator_symbol, fourier_coefficients, fractal_weights,
    operator_norm, toeplitz_matrix, verify_hardy_commutator, HardyTruncation, SymbolPolynomial,
};

use crate::config::{ExperimentKind, RunConfig};
use crate::report::{
    write_csv, write_matrix_csv, write_report, write_summary, BergmanRow, EstimateJson,
    FractalDimRun, HardyRow, NormTable, Report, ReportBody, ResolventTable,
};
use crate::svg::{emit_attractor_svg, emit_circles_svg};

/// Failure classes mapped onto process exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    /// Invalid or inconsistent configuration (exit 3).
    Config(String),
    /// A resource budget was exceeded (exit 4).
    Budget(String),
    /// The computation could not complete or meet its contract (exit 2).
    Internal(String),
    /// Filesystem trouble (exit 1).
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 3,
            RunError::Budget(_) => 4,
            RunError::Internal(_) => 2,
            RunError::Io(_) => 1,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(msg) => write!(f, "configuration error: {msg}"),
            RunError::Budget(msg) => write!(f, "budget exceeded: {msg}"),
            RunError::Internal(msg) => write!(f, "run failed: {msg}"),
            RunError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<CoreError> for RunError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Resource(_) => RunError::Budget(e.to_string()),
            CoreError::Domain(_) | CoreError::Config(_) | CoreError::Geometry(_) => {
                RunError::Config(e.to_string())
            }
            _ => RunError::Internal(e.to_string()),
        }
    }
}

/// Exit code for a finished run: 0 when all contracts held, 2 otherwise.
pub fn outcome_exit_code(report: &Report) -> i32 {
    if report.pass {
        0
    } else {
        2
    }
}

/// Run an experiment with the given thread budget, writing `report.json`,
/// `summary.md`, and experiment-specific artifacts into `out_dir`.
pub fn run(config: &RunConfig, out_dir: &Path, threads: usize) -> Result<Report, RunError> {
    if threads == 0 {
        return Err(RunError::Config("threads must be >= 1".into()));
    }
    fs::create_dir_all(out_dir)
        .map_err(|e| RunError::Io(format!("{}: {e}", out_dir.display())))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| RunError::Internal(format!("thread pool: {e}")))?;
    let (body, pass) = pool.install(|| dispatch(config, out_dir))?;
    let report = Report {
        experiment: config.experiment.name().to_string(),
        seed: config.seed,
        pass,
        body,
    };
    write_report(out_dir, &report)?;
    write_summary(out_dir, &report)?;
    Ok(report)
}

fn dispatch(config: &RunConfig, out_dir: &Path) -> Result<(ReportBody, bool), RunError> {
    match config.experiment {
        ExperimentKind::VerifyBergman => verify_bergman(config, out_dir),
        ExperimentKind::VerifyHardy => verify_hardy(config, out_dir),
        ExperimentKind::DimensionFractal => dimension_fractal(config, out_dir),
        ExperimentKind::DimensionBergman => dimension_bergman(config, out_dir),
        ExperimentKind::Zeta => zeta(config, out_dir),
        ExperimentKind::Attractor => attractor(config, out_dir),
        ExperimentKind::Conditions => conditions(config, out_dir),
    }
}

fn multi_indices(n: usize, degree: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for head in (0..=degree).rev() {
        for tail in multi_indices(n - 1, degree - head) {
            let mut idx = vec![head];
            idx.extend(tail);
            out.push(idx);
        }
    }
    out
}

fn verify_bergman(config: &RunConfig, out_dir: &Path) -> Result<(ReportBody, bool), RunError> {
    let p = &config.params;
    let dims = p.dimensions.clone().unwrap_or_else(|| {
        vec![
            crate::config::DimSpec { n: 1, cutoff: 40 },
            crate::config::DimSpec { n: 2, cutoff: 16 },
        ]
    });
    let weights = p.weights.clone().unwrap_or_else(|| vec![0.0, 1.0, 5.0]);
    let max_degree = p.max_degree.unwrap_or(4);
    let margin = p.margin.unwrap_or(max_degree as usize) as u32;
    let tolerance = p.tolerance.unwrap_or(1e-12);

    let mut cases = Vec::new();
    for dim in &dims {
        for &weight in &weights {
            let basis = ball_basis(dim.n, weight, dim.cutoff)?;
            for total in 1..=max_degree {
                for da in 0..=total {
                    for alpha in multi_indices(dim.n, da) {
                        for beta in multi_indices(dim.n, total - da) {
                            let poly = BallPolynomial::monomial(alpha.clone(), beta.clone());
                            let residual = verify_bergman_residual(&basis, &poly, margin)?;
                            cases.push(BergmanRow {
                                n: dim.n,
                                weight,
                                alpha: alpha.clone(),
                                beta,
                                residual,
                                pass: residual <= tolerance,
                            });
                        }
                    }
                }
            }
        }
    }
    let max_residual = cases.iter().map(|c| c.residual).fold(0.0f64, f64::max);
    let pass = cases.iter().all(|c| c.pass);
    write_csv(
        out_dir,
        "residuals.csv",
        "n,weight,alpha,beta,residual,pass",
        cases.iter().map(|c| {
            format!(
                "{},{},{:?},{:?},{},{}",
                c.n,
                c.weight,
                c.alpha,
                c.beta,
                c.residual,
                c.pass
            )
        }),
    )?;
    Ok((
        ReportBody::VerifyBergman {
            tolerance,
            max_residual,
            cases,
        },
        pass,
    ))
}

fn verify_bergman_residual(
    basis: &specdim_core::bergman::BallBasis,
    poly: &BallPolynomial,
    margin: u32,
) -> Result<f64, RunError> {
    specdim_core::bergman::verify_bergman_commutator(basis, poly, margin).map_err(RunError::from)
}

fn verify_hardy(config: &RunConfig, out_dir: &Path) -> Result<(ReportBody, bool), RunError> {
    let p = &config.params;
    let ifs = config.build_ifs()?;
    let poly = config.build_polygon()?;
    let cutoff = p.cutoff.unwrap_or(64);
    let margin = p.margin.unwrap_or(8);
    let max_word_len = p.max_word_len.unwrap_or(2);
    let max_degree = p.max_degree.unwrap_or(3);
    let tolerance = p.tolerance.unwrap_or(1e-8);
    let word_budget = p.word_budget.unwrap_or(DEFAULT_WORD_BUDGET);

    let mut grid = Vec::new();
    for m in 0..=max_word_len {
        for word in enumerate_words(ifs.len(), m, word_budget)? {
            for total in 1..=max_degree {
                for a in (0..=total).rev() {
                    grid.push((word.clone(), a, total - a));
                }
            }
        }
    }
    let cases: Vec<HardyRow> = grid
        .par_iter()
        .map(|(word, a, b)| -> Result<HardyRow, RunError> {
            let chart = MobiusChart::new(&poly, &ifs, word)?;
            let trunc = HardyTruncation::new(word.len() as u32, ifs.ratio(), cutoff)?;
            let residual = verify_hardy_commutator(&chart, *a, *b, &trunc, margin)?;
            Ok(HardyRow {
                word: word.letters().to_vec(),
                a: *a,
                b: *b,
                residual,
                pass: residual <= tolerance,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    if p.dump_charts.unwrap_or(false) {
        dump_charts(&poly, &ifs, max_word_len, word_budget, out_dir)?;
    }
    if p.dump_matrices.unwrap_or(false) {
        let chart = MobiusChart::new(&poly, &ifs, &Word::empty())?;
        let trunc = HardyTruncation::new(0, ifs.ratio(), cutoff)?;
        let h = cutoff + 1;
        let coeffs =
            fourier_coefficients(&chart, &SymbolPolynomial::monomial(1, 0), h, 32)?;
        write_matrix_csv(out_dir, "matrix_tu.csv", &toeplitz_matrix(&coeffs, &trunc)?.matrix)?;
        let pi = commutator_symbol(&chart, 1, 0, h, 32)?;
        write_matrix_csv(out_dir, "matrix_tpi.csv", &toeplitz_matrix(&pi, &trunc)?.matrix)?;
    }

    let max_residual = cases.iter().map(|c| c.residual).fold(0.0f64, f64::max);
    let pass = cases.iter().all(|c| c.pass);
    write_csv(
        out_dir,
        "residuals.csv",
        "word,a,b,residual,pass",
        cases.iter().map(|c| {
            format!(
                "\"{:?}\",{},{},{},{}",
                c.word, c.a, c.b, c.residual, c.pass
            )
        }),
    )?;
    Ok((
        ReportBody::VerifyHardy {
            tolerance,
            margin,
            cutoff,
            max_residual,
            cases,
        },
        pass,
    ))
}

fn dump_charts(
    poly: &specdim_core::charts::Polygon,
    ifs: &specdim_core::ifs::IfsSystem,
    max_word_len: u32,
    word_budget: usize,
    out_dir: &Path,
) -> Result<(), RunError> {
    use serde_json::json;
    let mut entries = Vec::new();
    for m in 0..=max_word_len {
        for word in enumerate_words(ifs.len(), m, word_budget)? {
            let chart = MobiusChart::new(poly, ifs, &word)?;
            entries.push(json!({
                "word": word.letters(),
                "radius": chart.radius(),
                "vertices": chart
                    .vertex_images()
                    .iter()
                    .map(|v| [v.re, v.im])
                    .collect::<Vec<_>>(),
                "deltas": chart
                    .deltas()
                    .iter()
                    .map(|d| [d.re, d.im])
                    .collect::<Vec<_>>(),
                "taus": chart.taus(),
            }));
        }
    }
    let path = out_dir.join("charts.json");
    let mut buf = serde_json::to_vec_pretty(&entries)
        .map_err(|e| RunError::Io(format!("serializing charts: {e}")))?;
    buf.push(b'\n');
    fs::write(&path, buf).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))
}

fn dimension_fractal(config: &RunConfig, out_dir: &Path) -> Result<(ReportBody, bool), RunError> {
    let p = &config.params;
    let ifs = config.build_ifs()?;
    let c = ifs.ratio();
    let n_maps = ifs.len();
    let target = config
        .targets
        .dimension
        .unwrap_or_else(|| hausdorff_dimension(&ifs));
    let levels = p.levels.unwrap_or(14);
    let inner_cut = p.inner_cut.unwrap_or(32);
    let bisect_tol = p.bisect_tol.unwrap_or(1e-5);
    let bins = p.bins.unwrap_or(32);
    let bracket = p
        .s_bracket
        .map(|b| (b[0], b[1]))
        .unwrap_or((1.05, target + 1.5));
    let disk = p.family.as_deref() == Some("disk-fractal");

    // (label ℓ, zeta family, spectra, default λ_max).
    let mut setups = Vec::new();
    if disk {
        if !specdim_core::bergman::disk_fractal_condition(c, n_maps) {
            eprintln!(
                "warning: c^2 N = {} <= 1; the disk-family dimension claim needs 1 < c^2 N",
                c * c * n_maps as f64
            );
        }
        let spectra = disk_fractal_family_spectra(c, n_maps, levels);
        let lambda = disk_fractal_weights(c, n_maps, levels.saturating_sub(2)).1;
        setups.push((2.0, ZetaFamily::DiskFractal { c, n_maps }, spectra, lambda));
    } else {
        for &ell in p.ell.as_ref().expect("validated") {
            let spectra = fractal_family_spectra(c, n_maps, ell, levels)?;
            let lambda = fractal_weights(c, n_maps, ell, levels.saturating_sub(2)).1;
            setups.push((ell, ZetaFamily::Fractal { c, n_maps, ell }, spectra, lambda));
        }
    }

    let mut runs = Vec::new();
    let mut csv_rows = Vec::new();
    for (ell, family, spectra, default_lambda) in setups {
        let series = ZetaSeries::new(family, levels, inner_cut)?;
        let abscissa = estimate_abscissa(&series, bracket, bisect_tol)?;
        let lambda_max = p.lambda_max.unwrap_or(default_lambda);
        let counting = counting_function_dimension(
            &spectra,
            lambda_max,
            FitWindow {
                lo_fraction: 0.01,
                bins,
            },
        )?;
        let abscissa_ok = (abscissa.value - target).abs() <= config.targets.dimension_tol;
        let counting_ok =
            (counting.value - abscissa.value).abs() <= config.targets.counting_agreement;
        csv_rows.push(format!(
            "{ell},{},{},{},{},{abscissa_ok},{counting_ok}",
            abscissa.value, abscissa.bracket.0, abscissa.bracket.1, counting.value
        ));
        runs.push(FractalDimRun {
            ell,
            target,
            abscissa: EstimateJson::from(&abscissa),
            counting: EstimateJson::from(&counting),
            abscissa_ok,
            counting_ok,
        });
    }
    let pass = runs.iter().all(|r| r.abscissa_ok && r.counting_ok);
    write_csv(
        out_dir,
        "dimension.csv",
        "ell,abscissa,bracket_lo,bracket_hi,counting,abscissa_ok,counting_ok",
        csv_rows,
    )?;
    Ok((
        ReportBody::DimensionFractal {
            hausdorff_target: target,
            runs,
        },
        pass,
    ))
}

fn dimension_bergman(config: &RunConfig, out_dir: &Path) -> Result<(ReportBody, bool), RunError> {
    let p = &config.params;
    let n = p.n.unwrap_or(1);
    if n != 1 {
        return Err(RunError::Config(
            "the counting estimator is wired for n = 1".into(),
        ));
    }
    let levels = p.levels.unwrap_or(20_000);
    let lambda_max = p.lambda_max.unwrap_or(1e4);
    let bins = p.bins.unwrap_or(32);
    let spectra = bergman_family_spectra_n1(levels);
    let counting = counting_function_dimension(
        &spectra,
        lambda_max,
        FitWindow {
            lo_fraction: 0.01,
            bins,
        },
    )?;
    let counting_target = config.targets.dimension.unwrap_or(n as f64 + 1.0);

    let s = p
        .s_values
        .as_ref()
        .and_then(|v| v.first().copied())
        .unwrap_or(3.0);
    let zp = bergman_zeta_partial(n, s, p.m_levels.unwrap_or(200), p.k_grades.unwrap_or(200));
    let zeta_value = zp.completed();

    let counting_ok = (counting.value - counting_target).abs() <= config.targets.dimension_tol;
    let zeta_ok = match config.targets.zeta_value {
        Some(t) => (zeta_value - t).abs() <= config.targets.zeta_tol,
        None => true,
    };
    let pass = counting_ok && zeta_ok;
    write_csv(
        out_dir,
        "counting.csv",
        "lambda,count",
        (0..=40u32).map(|i| {
            let lambda = lambda_max * 0.01f64.powf(1.0 - i as f64 / 40.0);
            format!(
                "{lambda},{}",
                specdim_core::spectral::count_eigenvalues(&spectra, lambda)
            )
        }),
    )?;
    Ok((
        ReportBody::DimensionBergman {
            counting: EstimateJson::from(&counting),
            counting_target,
            counting_tol: config.targets.dimension_tol,
            zeta_s: s,
            zeta_value,
            zeta_target: config.targets.zeta_value,
            zeta_tol: config.targets.zeta_tol,
            zeta_tail_bracket: (zp.partial + zp.tail_lower, zp.partial + zp.tail_upper),
        },
        pass,
    ))
}

fn zeta(config: &RunConfig, out_dir: &Path) -> Result<(ReportBody, bool), RunError> {
    let p = &config.params;
    let family_name = p.family.clone().expect("validated");
    let levels = p.levels.unwrap_or(12);
    let inner_cut = p.inner_cut.unwrap_or(32);
    let family = match family_name.as_str() {
        "fractal" => {
            let ifs = config.build_ifs()?;
            let ell = p
                .ell
                .as_ref()
                .and_then(|e| e.first().copied())
                .ok_or_else(|| RunError::Config("fractal zeta needs `ell`".into()))?;
            ZetaFamily::Fractal {
                c: ifs.ratio(),
                n_maps: ifs.len(),
                ell,
            }
        }
        "disk-fractal" => {
            let ifs = config.build_ifs()?;
            ZetaFamily::DiskFractal {
                c: ifs.ratio(),
                n_maps: ifs.len(),
            }
        }
        "bergman" => ZetaFamily::Bergman {
            n: p.n.unwrap_or(1),
        },
        other => {
            return Err(RunError::Config(format!(
                "unknown zeta family `{other}` (expected fractal, disk-fractal, or bergman)"
            )))
        }
    };
    let series = ZetaSeries::new(family, levels, inner_cut)?;
    let s_values = p.s_values.clone().expect("validated");
    let mut rows = Vec::new();
    for &s in &s_values {
        let mut cumulative = KahanSum::new();
        for m in 0..=levels {
            let term = series.level_term(m, s);
            cumulative.add(term);
            rows.push(format!("{s},{m},{term},{}", cumulative.value()));
        }
    }
    let count = rows.len();
    write_csv(out_dir, "terms.csv", "s,level,term,cumulative", rows)?;
    Ok((
        ReportBody::Zeta {
            family: family_name,
            rows: count,
            csv: "terms.csv".into(),
        },
        true,
    ))
}

fn attractor(config: &RunConfig, out_dir: &Path) -> Result<(ReportBody, bool), RunError> {
    let p = &config.params;
    let ifs = config.build_ifs()?;
    let poly = config.build_polygon()?;
    let depth = p.depth.unwrap_or(2);
    let budget = p.point_budget.unwrap_or(DEFAULT_WORD_BUDGET);

    let polygons = emit_attractor_svg(&out_dir.join("attractor.svg"), &poly, &ifs, depth, budget)?;
    emit_circles_svg(&out_dir.join("circles.svg"), &poly, &ifs, depth)?;

    let samples = sample_attractor(&ifs, poly.vertices(), depth, budget)?;
    write_csv(
        out_dir,
        "attractor.csv",
        "x,y,level,word_index",
        samples
            .iter()
            .map(|t| format!("{},{},{},{}", t.point.re, t.point.im, t.level, t.word_index)),
    )?;

    let (osc_overlap, osc_violations) = if ifs.osc_candidate.is_some() {
        let report = check_open_set_condition(&ifs, 4096)?;
        (
            Some(report.overlap_detected()),
            Some(report.containment_violations),
        )
    } else {
        (None, None)
    };
    let pass = osc_overlap != Some(true) && osc_violations.unwrap_or(0) == 0;
    Ok((
        ReportBody::Attractor {
            polygons,
            points: samples.len(),
            svg: "attractor.svg".into(),
            circles_svg: "circles.svg".into(),
            osc_overlap,
            osc_containment_violations: osc_violations,
        },
        pass,
    ))
}

fn conditions(config: &RunConfig, out_dir: &Path) -> Result<(ReportBody, bool), RunError> {
    let p = &config.params;
    let ifs = config.build_ifs()?;
    let poly = config.build_polygon()?;
    let ell = p.ell.as_ref().expect("validated")[0];
    let n = p.n.unwrap_or(1);
    let cutoff = p.cutoff.unwrap_or(32);
    let levels = p.levels.unwrap_or(12);
    let symbol = config.build_symbol();

    // Resolvent decay of the two weighted families.
    let ball_family: Vec<(f64, f64)> = (0..=levels)
        .map(|m| {
            let mf = m as f64;
            (mf + 1.0, (mf + n as f64 + 1.0) / (mf + 1.0))
        })
        .collect();
    let fractal_levels = levels.min(8);
    let fractal_family: Vec<(f64, f64)> = (0..=fractal_levels)
        .map(|m| (1.0, fractal_weights(ifs.ratio(), ifs.len(), ell, m).1))
        .collect();
    let resolvent_tables = vec![
        ("ball", resolvent_decay_check(&ball_family)),
        ("self-similar", resolvent_decay_check(&fractal_family)),
    ];

    // Hardy-side norm tables over levels 0..=3.
    let hardy_levels: Vec<u32> = (0..=3).collect();
    let bound_rows = commutator_bound_table(
        &poly,
        &ifs,
        &symbol,
        ell,
        &hardy_levels,
        cutoff,
        p.word_budget.unwrap_or(DEFAULT_WORD_BUDGET),
        config.seed,
    )?;
    let hardy_commutator_norms: Vec<f64> = bound_rows.iter().map(|r| r.max_norm).collect();

    let degree = symbol.max_degree() as usize;
    let mut hardy_rep_norms = Vec::new();
    let mut hardy_symbol_sup = 0.0f64;
    for &m in &hardy_levels {
        let trunc = HardyTruncation::new(m, ifs.ratio(), cutoff)?;
        let mut level_max = 0.0f64;
        for word in enumerate_words(ifs.len(), m, DEFAULT_WORD_BUDGET)? {
            let chart = MobiusChart::new(&poly, &ifs, &word)?;
            let coeffs = fourier_coefficients(&chart, &symbol, cutoff + degree, 32)?;
            let t = toeplitz_matrix(&coeffs, &trunc)?;
            level_max = level_max.max(operator_norm(&t.matrix, 1e-10, config.seed)?);
            for arc in 0..chart.arc_count() {
                for i in 0..=200 {
                    let v = symbol.eval(chart.eval(arc, i as f64 / 200.0).map_err(RunError::from)?);
                    hardy_symbol_sup = hardy_symbol_sup.max(v.norm());
                }
            }
        }
        hardy_rep_norms.push(level_max);
    }

    // Ball-side tables over the weight exponents: commutator with the scaled
    // Dirac diagonal, and the plain representation norms.
    let weights = p
        .weights
        .clone()
        .unwrap_or_else(|| (0..=8).map(f64::from).collect());
    let ball_poly = BallPolynomial::new(
        symbol
            .terms()
            .iter()
            .map(|&(a, b, coeff)| (vec![a], vec![b], coeff))
            .collect(),
    );
    let ball_cutoff = 24u32;
    let mut ball_comm_norms = Vec::new();
    let mut ball_rep_norms = Vec::new();
    for &weight in &weights {
        let basis = ball_basis(1, weight, ball_cutoff)?;
        let t_p = assemble_polynomial(&basis, &ball_poly)?;
        let d = inverse_toeplitz_r(&basis)
            .matrix
            .scale(Complex64::new(weight + 1.0, 0.0));
        let comm = commutator(&d, &t_p.matrix)?;
        ball_comm_norms.push(operator_norm(&comm, 1e-10, config.seed)?);
        ball_rep_norms.push(operator_norm(&t_p.matrix, 1e-10, config.seed)?);
    }

    // Sup of |p| over the closed unit ball, the contractivity cap for the
    // ball-side representation norms.
    let mut ball_symbol_sup = 0.0f64;
    for ir in 0..=50 {
        let r = ir as f64 / 50.0;
        for it in 0..128 {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * it as f64 / 128.0);
            ball_symbol_sup = ball_symbol_sup.max(symbol.eval(z).norm());
        }
    }

    let weight_levels: Vec<u32> = (0..weights.len() as u32).collect();
    // Commutator tables are judged by trend; representation tables by their
    // contractivity cap (finite sections creep up toward the cap).
    let norm_tables = vec![
        (
            "hardy-commutator",
            hardy_levels.clone(),
            hardy_commutator_norms,
            None,
        ),
        (
            "hardy-representation",
            hardy_levels.clone(),
            hardy_rep_norms,
            Some(hardy_symbol_sup),
        ),
        (
            "ball-commutator",
            weight_levels.clone(),
            ball_comm_norms,
            None,
        ),
        (
            "ball-representation",
            weight_levels,
            ball_rep_norms,
            Some(ball_symbol_sup),
        ),
    ];

    let resolvent: Vec<ResolventTable> = resolvent_tables
        .into_iter()
        .map(|(family, decay)| ResolventTable {
            family: family.to_string(),
            values: decay.values.clone(),
            strictly_decreasing: decay.strictly_decreasing,
            verdict: decay.verdict,
        })
        .collect();
    let tables: Vec<NormTable> = norm_tables
        .into_iter()
        .map(|(name, levels, norms, cap)| {
            let check = match cap {
                Some(cap) => uniform_bound_check_with_cap(&norms, cap),
                None => uniform_bound_check(&norms),
            };
            NormTable {
                name: name.to_string(),
                levels,
                norms,
                sup: check.sup,
                cap,
                increasing_trend: check.increasing_trend,
                verdict: check.verdict,
            }
        })
        .collect();

    write_csv(
        out_dir,
        "resolvent.csv",
        "family,level,value",
        resolvent.iter().flat_map(|t| {
            t.values
                .iter()
                .enumerate()
                .map(|(m, v)| format!("{},{m},{v}", t.family))
                .collect::<Vec<_>>()
        }),
    )?;
    write_csv(
        out_dir,
        "norms.csv",
        "table,level,norm",
        tables.iter().flat_map(|t| {
            t.levels
                .iter()
                .zip(&t.norms)
                .map(|(m, v)| format!("{},{m},{v}", t.name))
                .collect::<Vec<_>>()
        }),
    )?;

    let pass = resolvent.iter().all(|t| t.verdict) && tables.iter().all(|t| t.verdict);
    Ok((
        ReportBody::Conditions {
            resolvent,
            norm_tables: tables,
        },
        pass,
    ))
}
