//! Spectral-dimension estimation, cross-checked between the ratio-root and
//! counting estimators and against a brute-force eigenvalue enumeration.

use specdim_core::spectral::{
    bergman_family_spectra_n1, count_eigenvalues, counting_function_dimension, disk_fractal_family_spectra,
    ell_lower_bound, estimate_abscissa, fractal_family_spectra, resolvent_decay_check,
    uniform_bound_check, FitWindow, ZetaFamily, ZetaSeries,
};
use specdim_core::toeplitz::fractal_weights;

const LOG3_LOG2: f64 = 1.584_962_500_721_156;

#[test]
fn abscissa_matches_hausdorff_dimension_across_the_parameter_grid() {
    // The testable heart of the construction: the abscissa equals
    // log N / log(1/c) for every admissible ℓ.
    let grid = [(0.5f64, 3usize), (1.0 / 3.0, 4), (0.6, 2)];
    for &(c, n_maps) in &grid {
        let target = (n_maps as f64).ln() / (1.0 / c).ln();
        let bound = ell_lower_bound(c, n_maps).unwrap();
        for ell in [bound + 0.5, bound + 2.0] {
            let series = ZetaSeries::new(
                ZetaFamily::Fractal { c, n_maps, ell },
                14,
                32,
            )
            .unwrap();
            let est = estimate_abscissa(&series, (1.02, target + 1.5), 1e-5).unwrap();
            assert!(
                (est.value - target).abs() <= 1e-3,
                "c={c} N={n_maps} ell={ell}: {} vs {target}",
                est.value
            );
        }
    }
}

#[test]
fn ratio_and_counting_estimators_agree_on_the_sierpinski_family() {
    let series = ZetaSeries::new(
        ZetaFamily::Fractal {
            c: 0.5,
            n_maps: 3,
            ell: 3.0,
        },
        14,
        32,
    )
    .unwrap();
    let ratio_est = estimate_abscissa(&series, (1.05, 2.5), 1e-5).unwrap();

    let spectra = fractal_family_spectra(0.5, 3, 3.0, 14).unwrap();
    let lambda_max = 8.0f64.powi(11);
    let counting_est =
        counting_function_dimension(&spectra, lambda_max, FitWindow::default()).unwrap();

    assert!((ratio_est.value - LOG3_LOG2).abs() < 1e-3);
    assert!(
        (counting_est.value - ratio_est.value).abs() <= 0.1,
        "counting {} vs ratio {}",
        counting_est.value,
        ratio_est.value
    );
}

#[test]
fn closed_form_counting_matches_brute_force_enumeration() {
    // Enumerate every eigenvalue α_m j + β_m <= λ over all N^m words for
    // m <= 8 and compare with the closed-form counting function.
    // Generic λ values, off the eigenvalue lattice where f64 rounding makes
    // "equal" ambiguous between the two counting routes.
    let (c, n_maps, ell) = (0.5, 3usize, 3.0);
    let max_level = 8u32;
    let spectra = fractal_family_spectra(c, n_maps, ell, max_level).unwrap();
    for lambda in [101.37, 4444.4, 29999.9] {
        let mut brute = 0u64;
        for m in 0..=max_level {
            let (alpha, beta) = fractal_weights(c, n_maps, ell, m);
            let words = (n_maps as u64).pow(m);
            let mut j = 0f64;
            loop {
                if alpha * j + beta > lambda {
                    break;
                }
                brute += words;
                j += 1.0;
            }
        }
        let closed = count_eigenvalues(&spectra, lambda);
        assert_eq!(closed, brute as f64, "lambda = {lambda}");
    }
}

#[test]
fn sierpinski_counting_slope_against_enumerated_window() {
    // Slope fit on the enumerated range only (levels <= 8, λ <= 8^4) still
    // recovers the Hausdorff dimension within the coarse tolerance.
    let spectra = fractal_family_spectra(0.5, 3, 3.0, 8).unwrap();
    let est = counting_function_dimension(&spectra, 4096.0, FitWindow::default()).unwrap();
    assert!(
        (est.value - LOG3_LOG2).abs() <= 0.05,
        "slope {}",
        est.value
    );
    assert!(est.bracket.0 <= est.value && est.value <= est.bracket.1);
}

#[test]
fn disk_family_abscissa_matches_its_hausdorff_target() {
    // (c, N) = (0.7, 3) satisfies 1 < c²N; the abscissa is log 3 / log(1/0.7).
    let target = 3.0f64.ln() / (1.0 / 0.7f64).ln();
    let series = ZetaSeries::new(
        ZetaFamily::DiskFractal { c: 0.7, n_maps: 3 },
        16,
        32,
    )
    .unwrap();
    let est = estimate_abscissa(&series, (1.5, 4.5), 1e-5).unwrap();
    assert!(
        (est.value - target).abs() <= 0.05,
        "estimate {} vs {target}",
        est.value
    );

    let spectra = disk_fractal_family_spectra(0.7, 3, 16);
    let lambda_max = (1.0f64 / 0.7).powi(2 * 14);
    let counting = counting_function_dimension(&spectra, lambda_max, FitWindow::default()).unwrap();
    assert!(
        (counting.value - target).abs() <= 0.15,
        "counting {} vs {target}",
        counting.value
    );
}

#[test]
fn resolvent_decay_three_families() {
    // Ball family: α_m = m+1, λ_min = (m+n+1)/(m+1) with n = 1.
    let ball: Vec<(f64, f64)> = (0..=12u32)
        .map(|m| {
            let mf = m as f64;
            (mf + 1.0, (mf + 2.0) / (mf + 1.0))
        })
        .collect();
    let d = resolvent_decay_check(&ball);
    assert!(d.verdict);
    assert!((d.values[0] - 1.0 / 5.0f64.sqrt()).abs() < 1e-15);

    // Self-similar family: weight 1, λ_min = β_m = c^{-ℓm}.
    let fractal: Vec<(f64, f64)> = (0..=6u32)
        .map(|m| (1.0, fractal_weights(0.5, 3, 3.0, m).1))
        .collect();
    let d = resolvent_decay_check(&fractal);
    assert!(d.verdict);
    // The values are dominated by 1/β_m = c^{ℓm}.
    for (m, v) in d.values.iter().enumerate() {
        assert!(*v <= 0.5f64.powi(3 * m as i32) + 1e-12);
    }

    // Disk family.
    let disk: Vec<(f64, f64)> = (0..=8u32)
        .map(|m| {
            (1.0, specdim_core::bergman::disk_fractal_weights(0.7, 3, m).1)
        })
        .collect();
    assert!(resolvent_decay_check(&disk).verdict);
}

#[test]
fn bergman_counting_window_is_insensitive_to_binning() {
    let spectra = bergman_family_spectra_n1(20_000);
    for bins in [16usize, 32, 64] {
        let est = counting_function_dimension(
            &spectra,
            1e4,
            FitWindow {
                lo_fraction: 0.01,
                bins,
            },
        )
        .unwrap();
        assert!((est.value - 2.0).abs() < 0.05, "bins {bins}: {}", est.value);
    }
}

#[test]
fn uniform_bound_report_flags_growth_only() {
    let decaying: Vec<f64> = (0..10).map(|m| 2.0 * 0.8f64.powi(m)).collect();
    assert!(uniform_bound_check(&decaying).verdict);
    let growing: Vec<f64> = (0..10).map(|m| 1.1f64.powi(m)).collect();
    let report = uniform_bound_check(&growing);
    assert!(report.increasing_trend && !report.verdict);
}
