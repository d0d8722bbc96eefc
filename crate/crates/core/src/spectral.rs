//! Spectral zeta series of direct-sum Dirac operators and dimension
//! estimators.
//!
//! Three integrated families are covered, all with per-level spectra of the
//! arithmetic-progression form α_m j + β_m (j >= 0) and level multiplicities:
//!
//! * the weighted-ball family: eigenvalues k + m + n + 1 with binomial
//!   multiplicities, abscissa n + 1;
//! * the self-similar Hardy family with weights α_m = c^{-ℓm} N^{-m(ℓ-1)},
//!   β_m = c^{-ℓm} over N^m words per level, abscissa log N / log(1/c)
//!   independently of the admissible ℓ;
//! * the shrinking-disk family with the level weights of the disk Dirac
//!   diagonals, matching the ℓ = 2 asymptotics.
//!
//! Inner series are never truncated: explicit leading terms are completed by
//! Euler–Maclaurin tails of the Hurwitz zeta, and the abscissa is located as
//! the root of the late-level term ratio = 1, the geometric-series criterion.
//! A Weyl-style eigenvalue-counting slope fit provides a second, independent
//! estimator.

use alloc::format;
use alloc::vec::Vec;

use crate::bergman::disk_fractal_weights;
use crate::error::{Error, Result};
use crate::sum::KahanSum;
use crate::toeplitz::fractal_weights;

/// Smallest admissible ℓ for the self-similar weights: log N / log(cN).
/// Requires cN > 1.
pub fn ell_lower_bound(c: f64, n_maps: usize) -> Result<f64> {
    if n_maps == 0 {
        return Err(Error::Domain("need at least one map".into()));
    }
    let cn = c * n_maps as f64;
    if cn <= 1.0 {
        return Err(Error::Domain(format!(
            "hypothesis cN > 1 violated: c = {c}, N = {n_maps} gives cN = {cn}"
        )));
    }
    Ok(libm::log(n_maps as f64) / libm::log(cn))
}

/// Hurwitz zeta ζ(s, a) = Σ_{j>=0} (a+j)^{-s} for s > 1, a > 0, by explicit
/// terms plus an Euler–Maclaurin tail. Accurate to ~1e-13 in the ranges used
/// here (1 < s <= 8).
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    let explicit = if a >= 48.0 {
        0
    } else {
        libm::ceil(48.0 - a) as usize
    };
    let mut acc = KahanSum::new();
    for j in 0..explicit {
        acc.add(libm::pow(a + j as f64, -s));
    }
    let x = a + explicit as f64;
    acc.add(em_tail(s, x));
    acc.value()
}

/// Euler–Maclaurin tail Σ_{j>=0} (x+j)^{-s} expanded at x.
fn em_tail(s: f64, x: f64) -> f64 {
    let int_term = libm::pow(x, 1.0 - s) / (s - 1.0);
    let half = 0.5 * libm::pow(x, -s);
    let b2 = s * libm::pow(x, -s - 1.0) / 12.0;
    let b4 = -s * (s + 1.0) * (s + 2.0) * libm::pow(x, -s - 3.0) / 720.0;
    let b6 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * libm::pow(x, -s - 5.0) / 30240.0;
    int_term + half + b2 + b4 + b6
}

/// Integral-comparison bracket for ζ(s, a): the integral alone from below,
/// plus the first term from above.
fn hurwitz_bounds(s: f64, a: f64) -> (f64, f64) {
    let integral = libm::pow(a, 1.0 - s) / (s - 1.0);
    (integral, integral + libm::pow(a, -s))
}

/// Σ_{k >= k_start} C(k+w-1, w-1) (k + offset)^{-s} with estimate and
/// integral-comparison bracket.
///
/// The binomial weight is expanded as a polynomial in x = k + offset, which
/// turns the sum into a finite combination of Hurwitz zetas ζ(s - d, ·).
/// Convergence requires s > w; otherwise all three values are infinite.
fn weighted_hurwitz_sum(w: usize, s: f64, offset: f64, k_start: usize) -> (f64, f64, f64) {
    if s <= w as f64 {
        return (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    }
    // Π_{i=1}^{w-1} (x - (offset - i)) / (w-1)!  as coefficients of x^d.
    let mut poly = alloc::vec![1.0f64];
    for i in 1..w {
        let root = offset - i as f64;
        let mut next = alloc::vec![0.0f64; poly.len() + 1];
        for (d, &coef) in poly.iter().enumerate() {
            next[d + 1] += coef;
            next[d] -= coef * root;
        }
        poly = next;
    }
    let mut factorial = 1.0f64;
    for i in 1..w {
        factorial *= i as f64;
    }
    let a = k_start as f64 + offset;
    let mut est = 0.0;
    let mut lo = 0.0;
    let mut hi = 0.0;
    for (d, &coef) in poly.iter().enumerate() {
        let c = coef / factorial;
        let sd = s - d as f64;
        let value = hurwitz_zeta(sd, a);
        let (vlo, vhi) = hurwitz_bounds(sd, a);
        est += c * value;
        if c >= 0.0 {
            lo += c * vlo;
            hi += c * vhi;
        } else {
            lo += c * vhi;
            hi += c * vlo;
        }
    }
    (est, lo, hi)
}

/// Which direct-sum family a zeta series describes.
#[derive(Debug, Clone, PartialEq)]
pub enum ZetaFamily {
    /// Weighted-ball family in complex dimension n: eigenvalues k+m+n+1 with
    /// multiplicity C(k+n-1, n-1) at level m.
    Bergman { n: usize },
    /// Self-similar Hardy family with weights from `fractal_weights`.
    Fractal { c: f64, n_maps: usize, ell: f64 },
    /// Shrinking-disk family with weights from `disk_fractal_weights`.
    DiskFractal { c: f64, n_maps: usize },
}

/// Lazily evaluated per-level terms of Tr |D|^{-s}.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaSeries {
    pub family: ZetaFamily,
    /// Largest level whose term is generated.
    pub max_level: u32,
    /// Minimum number of explicit inner terms before tail completion.
    pub inner_cut: u32,
}

impl ZetaSeries {
    pub fn new(family: ZetaFamily, max_level: u32, inner_cut: u32) -> Result<Self> {
        if max_level < 2 {
            return Err(Error::Domain(
                "need at least levels 0..=2 for ratio estimates".into(),
            ));
        }
        if let ZetaFamily::Fractal { c, n_maps, ell } = &family {
            let bound = ell_lower_bound(*c, *n_maps)?;
            if *ell <= bound {
                return Err(Error::Domain(format!(
                    "ell = {ell} is not admissible; it must exceed log N / log(cN) = {bound}"
                )));
            }
        }
        Ok(Self {
            family,
            max_level,
            inner_cut,
        })
    }

    /// Level contribution a_m(s), inner sum completed analytically.
    pub fn level_term(&self, level: u32, s: f64) -> f64 {
        match &self.family {
            ZetaFamily::Bergman { n } => {
                let (est, _, _) =
                    weighted_hurwitz_sum(*n, s, (level as f64) + *n as f64 + 1.0, 0);
                est
            }
            ZetaFamily::Fractal { c, n_maps, ell } => {
                let (alpha, beta) = fractal_weights(*c, *n_maps, *ell, level);
                self.progression_term(*n_maps, alpha, beta, level, s)
            }
            ZetaFamily::DiskFractal { c, n_maps } => {
                let (alpha, beta) = disk_fractal_weights(*c, *n_maps, level);
                self.progression_term(*n_maps, alpha, beta, level, s)
            }
        }
    }

    /// N^m α^{-s} Σ_j (j + β/α)^{-s} with the j-sum completed: explicit terms
    /// up to the inner cut, Euler–Maclaurin beyond.
    fn progression_term(&self, n_maps: usize, alpha: f64, beta: f64, level: u32, s: f64) -> f64 {
        if s <= 1.0 {
            return f64::INFINITY;
        }
        let q = beta / alpha;
        let multiplicity = libm::pow(n_maps as f64, level as f64);
        let mut acc = KahanSum::new();
        for j in 0..=self.inner_cut {
            acc.add(libm::pow(j as f64 + q, -s));
        }
        acc.add(hurwitz_zeta(s, q + self.inner_cut as f64 + 1.0));
        multiplicity * libm::pow(alpha, -s) * acc.value()
    }

    /// All level terms 0..=max_level.
    pub fn terms(&self, s: f64) -> Vec<f64> {
        (0..=self.max_level).map(|m| self.level_term(m, s)).collect()
    }

    /// Late-level term ratio a_{M}(s) / a_{M-1}(s), the geometric-growth
    /// measurement driving the abscissa root find.
    pub fn measured_ratio(&self, s: f64) -> f64 {
        self.level_term(self.max_level, s) / self.level_term(self.max_level - 1, s)
    }
}

/// Per-level terms N^m α_m^{-s} Σ_j (j + β_m/α_m)^{-s} of the self-similar
/// family, for levels 0..=levels.
pub fn fractal_zeta_terms(
    c: f64,
    n_maps: usize,
    ell: f64,
    s: f64,
    levels: u32,
    inner_cut: u32,
) -> Result<Vec<f64>> {
    let series = ZetaSeries::new(ZetaFamily::Fractal { c, n_maps, ell }, levels.max(2), inner_cut)?;
    Ok((0..=levels).map(|m| series.level_term(m, s)).collect())
}

/// Box partial sum of the weighted-ball zeta with tail completion.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaPartial {
    /// Exact Σ_{m<=M, k<=K} C(k+n-1,n-1) (k+m+n+1)^{-s}.
    pub partial: f64,
    /// Analytic completion of everything outside the box.
    pub tail_estimate: f64,
    /// Integral-comparison bracket for the tail; infinite when s <= n+1.
    pub tail_lower: f64,
    pub tail_upper: f64,
}

impl ZetaPartial {
    /// Best estimate of the full series.
    pub fn completed(&self) -> f64 {
        self.partial + self.tail_estimate
    }

    pub fn is_convergent(&self) -> bool {
        self.tail_upper.is_finite()
    }
}

/// Σ_{m<=M} Σ_{k<=K} C(k+n-1,n-1) (k+m+n+1)^{-s}, plus the analytically
/// completed tail. The box sum alone is monotone in both cutoffs; the series
/// converges exactly when s > n + 1, and for smaller s the tail fields are
/// infinite while the partial stays finite.
pub fn bergman_zeta_partial(n: usize, s: f64, m_levels: u32, k_grades: u32) -> ZetaPartial {
    let nf = n as f64;
    let mut box_sum = KahanSum::new();
    for m in 0..=m_levels {
        let mut binom = 1.0f64; // C(k+n-1, n-1) at k = 0
        for k in 0..=k_grades {
            if k > 0 {
                // C(k+n-1, n-1) / C(k+n-2, n-1) = (k+n-1) / k
                binom *= (k as f64 + nf - 1.0) / k as f64;
            }
            box_sum.add(binom * libm::pow((k + m) as f64 + nf + 1.0, -s));
        }
    }
    let partial = box_sum.value();

    if s <= nf + 1.0 {
        return ZetaPartial {
            partial,
            tail_estimate: f64::INFINITY,
            tail_lower: f64::INFINITY,
            tail_upper: f64::INFINITY,
        };
    }

    // Rows m <= M beyond the k cutoff.
    let mut est = KahanSum::new();
    let mut lo = KahanSum::new();
    let mut hi = KahanSum::new();
    for m in 0..=m_levels {
        let (e, l, h) =
            weighted_hurwitz_sum(n, s, m as f64 + nf + 1.0, k_grades as usize + 1);
        est.add(e);
        lo.add(l);
        hi.add(h);
    }
    // All levels m > M at once: summing the binomial columns diagonally gives
    // Σ_{t>=0} C(t+n, n) (t + M + n + 2)^{-s}.
    let (e, l, h) = weighted_hurwitz_sum(n + 1, s, m_levels as f64 + nf + 2.0, 0);
    est.add(e);
    lo.add(l);
    hi.add(h);

    ZetaPartial {
        partial,
        tail_estimate: est.value(),
        tail_lower: lo.value(),
        tail_upper: hi.value(),
    }
}

/// How a dimension estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    RatioRoot,
    CountingFit,
}

/// A dimension estimate with its uncertainty bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionEstimate {
    pub value: f64,
    pub bracket: (f64, f64),
    pub method: EstimateMethod,
    pub levels_used: usize,
    /// Method-specific diagnostic: |ratio - 1| at the root, or the largest
    /// log-log fit residual.
    pub residual: f64,
}

impl DimensionEstimate {
    fn new(
        value: f64,
        bracket: (f64, f64),
        method: EstimateMethod,
        levels_used: usize,
        residual: f64,
    ) -> Result<Self> {
        if !(bracket.0 <= value && value <= bracket.1) {
            return Err(Error::Domain(format!(
                "estimate {value} outside its bracket [{}, {}]",
                bracket.0, bracket.1
            )));
        }
        Ok(Self {
            value,
            bracket,
            method,
            levels_used,
            residual,
        })
    }
}

/// Locate the abscissa of convergence as the root of
/// (late-level term ratio)(s) = 1 by bisection.
///
/// The bracket must straddle: ratio(s_lo) > 1 > ratio(s_hi). Families whose
/// term ratio does not cross 1 (subgeometric level decay, like the
/// weighted-ball family) are rejected with the measured ratios; use the
/// counting estimator for those.
pub fn estimate_abscissa(
    series: &ZetaSeries,
    bracket: (f64, f64),
    tol: f64,
) -> Result<DimensionEstimate> {
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "invalid bracket [{lo}, {hi}] or tolerance {tol}"
        )));
    }
    let ratio_lo = series.measured_ratio(lo);
    let ratio_hi = series.measured_ratio(hi);
    if !(ratio_lo > 1.0 && ratio_hi < 1.0) {
        return Err(Error::Bracket { ratio_lo, ratio_hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if series.measured_ratio(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    let residual = (series.measured_ratio(value) - 1.0).abs();
    DimensionEstimate::new(
        value,
        (lo, hi),
        EstimateMethod::RatioRoot,
        series.max_level as usize + 1,
        residual,
    )
}

/// One arithmetic-progression block of a direct-sum spectrum: eigenvalues
/// α j + β (j >= 0), each occurring `multiplicity` times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSpectrum {
    pub alpha: f64,
    pub beta: f64,
    pub multiplicity: f64,
}

/// Counting function N(λ): eigenvalues <= λ across all blocks, counted with
/// multiplicity (closed form, no enumeration).
pub fn count_eigenvalues(spectra: &[WeightedSpectrum], lambda: f64) -> f64 {
    let mut acc = KahanSum::new();
    for block in spectra {
        if lambda >= block.beta {
            // Nudge absorbs division rounding when λ sits exactly on an
            // eigenvalue, so boundary eigenvalues are always counted.
            let x = (lambda - block.beta) / block.alpha;
            acc.add(block.multiplicity * (libm::floor(x + 1e-12 * x + 1e-12) + 1.0));
        }
    }
    acc.value()
}

/// Spectra of the self-similar Hardy family: level m carries N^m identical
/// diagonals α_m j + β_m.
pub fn fractal_family_spectra(
    c: f64,
    n_maps: usize,
    ell: f64,
    max_level: u32,
) -> Result<Vec<WeightedSpectrum>> {
    let bound = ell_lower_bound(c, n_maps)?;
    if ell <= bound {
        return Err(Error::Domain(format!(
            "ell = {ell} is not admissible; it must exceed log N / log(cN) = {bound}"
        )));
    }
    Ok((0..=max_level)
        .map(|m| {
            let (alpha, beta) = fractal_weights(c, n_maps, ell, m);
            WeightedSpectrum {
                alpha,
                beta,
                multiplicity: libm::pow(n_maps as f64, m as f64),
            }
        })
        .collect())
}

/// Spectra of the shrinking-disk family: N^m copies of the disk Dirac
/// diagonal at each level.
pub fn disk_fractal_family_spectra(c: f64, n_maps: usize, max_level: u32) -> Vec<WeightedSpectrum> {
    (0..=max_level)
        .map(|m| {
            let (alpha, beta) = disk_fractal_weights(c, n_maps, m);
            WeightedSpectrum {
                alpha,
                beta,
                multiplicity: libm::pow(n_maps as f64, m as f64),
            }
        })
        .collect()
}

/// Spectra of the weighted-ball family on the disk (complex dimension 1):
/// level m contributes the simple eigenvalues k + m + 2.
pub fn bergman_family_spectra_n1(max_level: u32) -> Vec<WeightedSpectrum> {
    (0..=max_level)
        .map(|m| WeightedSpectrum {
            alpha: 1.0,
            beta: m as f64 + 2.0,
            multiplicity: 1.0,
        })
        .collect()
}

/// Window for the counting-function slope fit: log-spaced bins over
/// [lo_fraction · λ_max, λ_max].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindow {
    pub lo_fraction: f64,
    pub bins: usize,
}

impl Default for FitWindow {
    fn default() -> Self {
        Self {
            lo_fraction: 0.01,
            bins: 32,
        }
    }
}

/// Weyl-style dimension estimate: ordinary least-squares slope of
/// log N(λ) against log λ over the fit window.
///
/// Requires at least 10³ eigenvalues below λ_max; the bracket is the slope
/// ± two standard errors.
pub fn counting_function_dimension(
    spectra: &[WeightedSpectrum],
    lambda_max: f64,
    window: FitWindow,
) -> Result<DimensionEstimate> {
    if window.bins < 4 || !(window.lo_fraction > 0.0 && window.lo_fraction < 1.0) {
        return Err(Error::Domain("invalid fit window".into()));
    }
    let total = count_eigenvalues(spectra, lambda_max);
    if total < 1e3 {
        return Err(Error::Resource(format!(
            "only {total} eigenvalues below lambda_max = {lambda_max}; need >= 1000"
        )));
    }
    let lo = lambda_max * window.lo_fraction;
    let log_lo = libm::log(lo);
    let log_hi = libm::log(lambda_max);
    let mut xs = Vec::with_capacity(window.bins);
    let mut ys = Vec::with_capacity(window.bins);
    for b in 0..window.bins {
        let x = log_lo + (log_hi - log_lo) * b as f64 / (window.bins - 1) as f64;
        let count = count_eigenvalues(spectra, libm::exp(x));
        if count > 0.0 {
            xs.push(x);
            ys.push(libm::log(count));
        }
    }
    if xs.len() < 4 {
        return Err(Error::Resource(
            "fewer than 4 nonempty bins in the fit window".into(),
        ));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ss_res = 0.0;
    let mut max_res = 0.0f64;
    for (x, y) in xs.iter().zip(&ys) {
        let r = y - (slope * x + intercept);
        ss_res += r * r;
        max_res = max_res.max(r.abs());
    }
    let stderr = libm::sqrt(ss_res / (n - 2.0) / sxx);
    DimensionEstimate::new(
        slope,
        (slope - 2.0 * stderr, slope + 2.0 * stderr),
        EstimateMethod::CountingFit,
        spectra.len(),
        max_res,
    )
}

/// Result of the resolvent-decay condition check.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventDecay {
    /// (1 + α_m² λ_min,m²)^{-1/2} per level, the exact norm of the scaled
    /// resolvent factor (the map is decreasing in the eigenvalue).
    pub values: Vec<f64>,
    pub strictly_decreasing: bool,
    /// True when the sequence decreases and ends below 0.1.
    pub verdict: bool,
}

/// Evaluate ‖(1 + α_m² D_m²)^{-1/2}‖ = (1 + α_m² λ_min,m²)^{-1/2} per level
/// from (α_m, λ_min,m) pairs.
pub fn resolvent_decay_check(family: &[(f64, f64)]) -> ResolventDecay {
    let values: Vec<f64> = family
        .iter()
        .map(|&(alpha, lambda_min)| {
            1.0 / libm::sqrt(1.0 + alpha * alpha * lambda_min * lambda_min)
        })
        .collect();
    let strictly_decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let verdict =
        strictly_decreasing && values.last().map(|&v| v < 0.1).unwrap_or(false);
    ResolventDecay {
        values,
        strictly_decreasing,
        verdict,
    }
}

/// Result of the uniform-boundedness check on a per-level norm table.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformBoundReport {
    pub sup: f64,
    /// Strict increase across every consecutive level: the failure signature
    /// of an unbounded family.
    pub increasing_trend: bool,
    pub last_over_first: f64,
    pub verdict: bool,
}

/// Check a table of per-level norms for a finite sup with no growth trend.
pub fn uniform_bound_check(norms: &[f64]) -> UniformBoundReport {
    let report = table_stats(norms);
    let verdict =
        report.sup.is_finite() && !report.increasing_trend && report.last_over_first <= 1.5;
    UniformBoundReport { verdict, ..report }
}

/// Check a norm table against an explicit uniform cap (e.g. the sup of the
/// symbol, which bounds every representation norm by contractivity).
///
/// Finite sections may creep upward *toward* the cap as the symbol flattens,
/// so the trend is reported as a diagnostic but the verdict is the bound.
pub fn uniform_bound_check_with_cap(norms: &[f64], cap: f64) -> UniformBoundReport {
    let report = table_stats(norms);
    let verdict = report.sup.is_finite() && report.sup <= cap * (1.0 + 1e-9) + 1e-12;
    UniformBoundReport { verdict, ..report }
}

fn table_stats(norms: &[f64]) -> UniformBoundReport {
    let sup = norms.iter().copied().fold(0.0f64, f64::max);
    let increasing_trend = norms.len() >= 2 && norms.windows(2).all(|w| w[1] > w[0]);
    let last_over_first = match (norms.first(), norms.last()) {
        (Some(&f), Some(&l)) if f > 0.0 => l / f,
        _ => 0.0,
    };
    UniformBoundReport {
        sup,
        increasing_trend,
        last_over_first,
        verdict: false,
    }
}

/// Diagnostic label for the estimators.
pub fn method_name(method: EstimateMethod) -> &'static str {
    match method {
        EstimateMethod::RatioRoot => "ratio-root",
        EstimateMethod::CountingFit => "counting-fit",
    }
}
