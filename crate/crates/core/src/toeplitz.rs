//! Finite truncations of Hardy-space Toeplitz operators.
//!
//! On the circle of radius c^m the monomials e_j(z) = c^{-mj} z^j are an
//! orthonormal basis of the Hardy space, and a bounded symbol u acts through
//! the matrix M_{kj} = û(k-j), where û(n) = ∫ u(c^m e^{it}) e^{-int} dt/2π.
//! Symbols pulled back through the polygon charts are only piecewise smooth,
//! so the Fourier integrals are computed by composite Gauss–Legendre panels
//! split at the corner angles.
//!
//! The Dirac side is the diagonal d_j = α j + β. Its commutator with a
//! Toeplitz matrix is entrywise (d_k - d_j) M_{kj} = α (k-j) û(k-j), which
//! must match the Toeplitz matrix of the piecewise radial-derivative symbol
//! a (Rκ) κ^{a-1} κ̄^b - b κ^a (Rκ)* κ̄^{b-1}; [`verify_hardy_commutator`]
//! measures that residual with the two sides assembled by independent
//! quadratures.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::charts::{MobiusChart, Polygon};
use crate::error::{Error, Result};
use crate::ifs::{enumerate_words, IfsSystem, Word};
use crate::matrix::{vec_norm, CMatrix};
use crate::quadrature::GaussLegendre;

/// Quadrature nodes per panel used by the higher-level verifiers.
pub const DEFAULT_QUADRATURE_ORDER: usize = 32;

/// Cap on the harmonic range of a single coefficient computation.
pub const MAX_HARMONICS: usize = 4096;

/// Finite slice of the Hardy-space monomial basis on the circle of radius c^m.
///
/// Basis vectors are e_j(z) = c^{-mj} z^j for j = 0..=cutoff; restricted to
/// the circle they reduce to e^{ijt}, so Toeplitz matrix entries depend on
/// the level only through the symbol values.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyTruncation {
    pub level: u32,
    pub radius: f64,
    pub cutoff: usize,
}

impl HardyTruncation {
    /// Truncation at level m for ratio c (radius c^m), keeping degrees 0..=cutoff.
    pub fn new(level: u32, ratio: f64, cutoff: usize) -> Result<Self> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(Error::Domain(format!(
                "ratio must lie in (0, 1], got {ratio}"
            )));
        }
        if cutoff < 1 {
            return Err(Error::Domain("cutoff must be >= 1".into()));
        }
        Ok(Self {
            level,
            radius: libm::pow(ratio, level as f64),
            cutoff,
        })
    }

    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }

    /// Basis vector e_j(z) = radius^{-j} z^j.
    pub fn basis_value(&self, j: usize, z: Complex64) -> Complex64 {
        z.powu(j as u32) * libm::pow(self.radius, -(j as f64))
    }
}

/// How a coefficient set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffSource {
    Quadrature,
    ClosedForm,
}

/// Fourier coefficients û(n) of a circle symbol, n = -h..=h.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolCoefficients {
    h: usize,
    coeffs: Vec<Complex64>,
    pub source: CoeffSource,
    pub label: String,
}

impl SymbolCoefficients {
    pub fn from_coeffs(
        h: usize,
        coeffs: Vec<Complex64>,
        source: CoeffSource,
        label: String,
    ) -> Result<Self> {
        if coeffs.len() != 2 * h + 1 {
            return Err(Error::Domain(format!(
                "expected {} coefficients for h = {h}, got {}",
                2 * h + 1,
                coeffs.len()
            )));
        }
        Ok(Self {
            h,
            coeffs,
            source,
            label,
        })
    }

    pub fn zero(h: usize, label: String) -> Self {
        Self {
            h,
            coeffs: alloc::vec![Complex64::ZERO; 2 * h + 1],
            source: CoeffSource::ClosedForm,
            label,
        }
    }

    pub fn harmonics(&self) -> usize {
        self.h
    }

    /// û(n); zero outside the computed range.
    #[inline]
    pub fn hat(&self, n: i64) -> Complex64 {
        let idx = n + self.h as i64;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Complex64::ZERO
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// Largest deviation from conjugate symmetry û(-n) = conj û(n); zero for
    /// real-valued symbols.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        (0..=self.h as i64)
            .map(|n| (self.hat(-n) - self.hat(n).conj()).norm())
            .fold(0.0, f64::max)
    }
}

/// Polynomial symbol Σ coeff · z^a · z̄^b evaluated pointwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolPolynomial {
    terms: Vec<(u32, u32, Complex64)>,
}

impl SymbolPolynomial {
    pub fn new(terms: Vec<(u32, u32, Complex64)>) -> Self {
        Self { terms }
    }

    pub fn monomial(a: u32, b: u32) -> Self {
        Self {
            terms: alloc::vec![(a, b, Complex64::ONE)],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self {
            terms: alloc::vec![(0, 0, c)],
        }
    }

    pub fn terms(&self) -> &[(u32, u32, Complex64)] {
        &self.terms
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms
            .iter()
            .map(|&(a, b, c)| c * z.powu(a) * zb.powu(b))
            .sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|&(a, b, c)| (a, b, c * s)).collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|&(a, b, _)| a + b).max().unwrap_or(0)
    }

    pub fn label(&self) -> String {
        let mut s = String::new();
        for (i, (a, b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            s.push_str(&format!("({:.3}{:+.3}i)k^{a}kb^{b}", c.re, c.im));
        }
        s
    }
}

/// Fourier coefficients of a piecewise-defined circle function.
///
/// `f(arc, t)` is the value on arc `arc` at local parameter t in [0,1]; the
/// quadrature never evaluates at t = 0 or 1, so `f` may be discontinuous at
/// the corners. Each arc is split into enough Gauss–Legendre panels that the
/// highest harmonic oscillates a bounded number of radians per panel.
pub fn fourier_on_arcs(
    angles: &[f64],
    lengths: &[f64],
    f: impl Fn(usize, f64) -> Complex64,
    h: usize,
    q: usize,
    source: CoeffSource,
    label: String,
) -> Result<SymbolCoefficients> {
    if h > MAX_HARMONICS {
        return Err(Error::Resource(format!(
            "harmonic range {h} exceeds cap {MAX_HARMONICS}"
        )));
    }
    if q < 4 {
        return Err(Error::Domain(format!(
            "quadrature order must be >= 4, got {q}"
        )));
    }
    let rule = GaussLegendre::new(q)?;
    // (angle, weighted value) pairs shared by every harmonic.
    let mut nodes: Vec<(f64, Complex64)> = Vec::new();
    for (arc, (&lo, &len)) in angles.iter().zip(lengths).enumerate() {
        let panels = libm::ceil(len * (h as f64 + 1.0) / 6.0).max(1.0) as usize;
        for p in 0..panels {
            let a = lo + len * p as f64 / panels as f64;
            let b = lo + len * (p as f64 + 1.0) / panels as f64;
            for (theta, w) in rule.mapped(a, b) {
                let t = (theta - lo) / len;
                nodes.push((theta, f(arc, t) * w));
            }
        }
    }
    let two_pi = 2.0 * core::f64::consts::PI;
    let mut coeffs = Vec::with_capacity(2 * h + 1);
    for n in -(h as i64)..=(h as i64) {
        let mut acc = Complex64::ZERO;
        for &(theta, wv) in &nodes {
            acc += wv * Complex64::from_polar(1.0, -(n as f64) * theta);
        }
        coeffs.push(acc / two_pi);
    }
    SymbolCoefficients::from_coeffs(h, coeffs, source, label)
}

/// Fourier coefficients of p(κ, κ̄) on the chart's circle.
pub fn fourier_coefficients(
    chart: &MobiusChart,
    symbol: &SymbolPolynomial,
    h: usize,
    q: usize,
) -> Result<SymbolCoefficients> {
    fourier_on_arcs(
        chart.angles(),
        chart.lengths(),
        |arc, t| symbol.eval(chart.eval_unchecked(arc, t)),
        h,
        q,
        CoeffSource::Quadrature,
        symbol.label(),
    )
}

/// Fourier coefficients of the piecewise radial-derivative symbol
/// a (Rκ) κ^{a-1} κ̄^b - b κ^a (Rκ)* κ̄^{b-1} attached to the monomial
/// κ^a κ̄^b. For a = b = 0 the symbol vanishes identically.
pub fn commutator_symbol(
    chart: &MobiusChart,
    a: u32,
    b: u32,
    h: usize,
    q: usize,
) -> Result<SymbolCoefficients> {
    let label = format!("pi({a},{b})");
    if a == 0 && b == 0 {
        return Ok(SymbolCoefficients::zero(h, label));
    }
    fourier_on_arcs(
        chart.angles(),
        chart.lengths(),
        |arc, t| {
            let kappa = chart.eval_unchecked(arc, t);
            let rk = chart.radial_derivative_unchecked(arc, t);
            let kb = kappa.conj();
            let mut value = Complex64::ZERO;
            if a > 0 {
                value += rk * kappa.powu(a - 1) * kb.powu(b) * a as f64;
            }
            if b > 0 {
                value -= rk.conj() * kappa.powu(a) * kb.powu(b - 1) * b as f64;
            }
            value
        },
        h,
        q,
        CoeffSource::Quadrature,
        label,
    )
}

/// Finite Toeplitz matrix with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzTruncation {
    pub matrix: CMatrix,
    pub symbol: String,
    pub level: u32,
    pub cutoff: usize,
}

/// Assemble M_{kj} = û(k-j) on the truncation. Every entry of the
/// (K+1)x(K+1) matrix needs |n| <= K, so the coefficients must carry at
/// least that many harmonics.
pub fn toeplitz_matrix(
    coeffs: &SymbolCoefficients,
    trunc: &HardyTruncation,
) -> Result<ToeplitzTruncation> {
    if coeffs.harmonics() < trunc.cutoff {
        return Err(Error::InsufficientHarmonics {
            have: coeffs.harmonics(),
            need: trunc.cutoff,
        });
    }
    let dim = trunc.dim();
    let matrix = CMatrix::from_fn(dim, dim, |k, j| coeffs.hat(k as i64 - j as i64));
    Ok(ToeplitzTruncation {
        matrix,
        symbol: coeffs.label.clone(),
        level: trunc.level,
        cutoff: trunc.cutoff,
    })
}

/// Positive increasing diagonal d_j = α j + β, j = 0..=cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracDiagonal {
    pub alpha: f64,
    pub beta: f64,
    pub cutoff: usize,
}

impl DiracDiagonal {
    pub fn entry(&self, j: usize) -> f64 {
        self.alpha * j as f64 + self.beta
    }

    pub fn entries(&self) -> Vec<f64> {
        (0..=self.cutoff).map(|j| self.entry(j)).collect()
    }

    pub fn min_entry(&self) -> f64 {
        self.beta
    }

    /// Norm of the inverse operator, attained at the smallest entry.
    pub fn inverse_norm(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn as_matrix(&self) -> CMatrix {
        CMatrix::from_real_diag(&self.entries())
    }
}

/// Construct d_j = α j + β, rejecting nonpositive α or β.
pub fn dirac_diagonal(alpha: f64, beta: f64, cutoff: usize) -> Result<DiracDiagonal> {
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(Error::Domain(format!(
            "Dirac diagonal needs alpha, beta > 0; got {alpha}, {beta}"
        )));
    }
    Ok(DiracDiagonal {
        alpha,
        beta,
        cutoff,
    })
}

/// Weights α_m = c^{-ℓm} N^{-m(ℓ-1)}, β_m = c^{-ℓm} of the level-m Dirac
/// diagonals in the self-similar direct sum.
pub fn fractal_weights(c: f64, n_maps: usize, ell: f64, level: u32) -> (f64, f64) {
    let m = level as f64;
    let beta = libm::pow(c, -ell * m);
    let alpha = beta * libm::pow(n_maps as f64, -m * (ell - 1.0));
    (alpha, beta)
}

/// Degree truncation of the number operator (eigenvalue j on e_j).
pub fn number_operator(cutoff: usize) -> CMatrix {
    CMatrix::from_real_diag(&(0..=cutoff).map(|j| j as f64).collect::<Vec<_>>())
}

/// AB - BA.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Residual of the commutator identity [R, T_{κ^a κ̄^b}] = T_π on the central
/// block of a truncation.
///
/// Both sides are assembled from independent quadratures: the left from the
/// Fourier coefficients of κ^a κ̄^b, the right from the coefficients of the
/// radial-derivative symbol. Returns the largest entry modulus of the
/// difference over rows and columns margin..=cutoff-margin.
pub fn verify_hardy_commutator(
    chart: &MobiusChart,
    a: u32,
    b: u32,
    trunc: &HardyTruncation,
    margin: usize,
) -> Result<f64> {
    if 2 * margin >= trunc.cutoff {
        return Err(Error::Domain(format!(
            "margin {margin} leaves no central block at cutoff {}",
            trunc.cutoff
        )));
    }
    let h = trunc.cutoff + (a + b) as usize;
    let u_coeffs = fourier_coefficients(
        chart,
        &SymbolPolynomial::monomial(a, b),
        h,
        DEFAULT_QUADRATURE_ORDER,
    )?;
    let t_u = toeplitz_matrix(&u_coeffs, trunc)?;
    let lhs = commutator(&number_operator(trunc.cutoff), &t_u.matrix)?;
    let pi_coeffs = commutator_symbol(chart, a, b, h, DEFAULT_QUADRATURE_ORDER)?;
    let t_pi = toeplitz_matrix(&pi_coeffs, trunc)?;
    let diff = lhs.sub(&t_pi.matrix)?;
    let block = margin..(trunc.cutoff + 1 - margin);
    Ok(diff.block_max_abs(block.clone(), block))
}

/// Largest singular value by power iteration on the Hermitian square.
///
/// Runs from the normalized all-ones vector and from one seeded random
/// restart, keeping the larger estimate. Convergence means three consecutive
/// relative changes below `tol`; a run that exhausts the iteration cap
/// reports the best estimate inside the error.
pub fn operator_norm(m: &CMatrix, tol: f64, seed: u64) -> Result<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0.0);
    }
    let adj = m.adjoint();
    let n = m.cols();
    let ones: Vec<Complex64> = alloc::vec![Complex64::new(1.0, 0.0); n];
    let mut rng = seed ^ 0x5_DEEC_E66D;
    let random: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(uniform(&mut rng) - 0.5, uniform(&mut rng) - 0.5))
        .collect();
    let (s1, ok1) = power_run(m, &adj, ones, tol);
    let (s2, ok2) = power_run(m, &adj, random, tol);
    let best = s1.max(s2);
    let converged = if s1 >= s2 { ok1 } else { ok2 };
    if converged {
        Ok(best)
    } else {
        Err(Error::Numeric {
            message: "power iteration did not converge".into(),
            best,
        })
    }
}

fn power_run(m: &CMatrix, adj: &CMatrix, start: Vec<Complex64>, tol: f64) -> (f64, bool) {
    const MAX_ITERS: usize = 10_000;
    let mut v = start;
    let norm = vec_norm(&v);
    if norm == 0.0 {
        return (0.0, true);
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    let mut sigma = 0.0f64;
    let mut stable = 0;
    for _ in 0..MAX_ITERS {
        let u = m.matvec(&v);
        let new_sigma = vec_norm(&u);
        if new_sigma == 0.0 {
            return (0.0, true);
        }
        let w = adj.matvec(&u);
        let wn = vec_norm(&w);
        if wn == 0.0 {
            return (new_sigma, true);
        }
        v = w.into_iter().map(|x| x / wn).collect();
        if (new_sigma - sigma).abs() <= tol * new_sigma {
            stable += 1;
            if stable >= 3 {
                return (new_sigma, true);
            }
        } else {
            stable = 0;
        }
        sigma = new_sigma;
    }
    (sigma, false)
}

fn uniform(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

/// One level of the commutator-norm table.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTableRow {
    pub level: u32,
    pub alpha: f64,
    pub beta: f64,
    /// max over sampled words of ‖[α_m R + β_m, T_{p∘κ_w}]‖.
    pub max_norm: f64,
    pub words_used: usize,
    /// True when the level's words were randomly subsampled to fit the budget.
    pub subsampled: bool,
}

/// Per-level maxima of ‖[D_w, T_{p∘κ_w}]‖ over words, with the self-similar
/// weights for the given ℓ. Levels whose word count exceeds `word_budget`
/// fall back to a seeded random sample and are flagged.
#[allow(clippy::too_many_arguments)]
pub fn commutator_bound_table(
    poly: &Polygon,
    ifs: &IfsSystem,
    symbol: &SymbolPolynomial,
    ell: f64,
    levels: &[u32],
    cutoff: usize,
    word_budget: usize,
    seed: u64,
) -> Result<Vec<BoundTableRow>> {
    let bound = crate::spectral::ell_lower_bound(ifs.ratio(), ifs.len())?;
    if ell <= bound {
        return Err(Error::Domain(format!(
            "ell = {ell} is not admissible; it must exceed log N / log(cN) = {bound}"
        )));
    }
    let degree = symbol.max_degree() as usize;
    let h = cutoff + degree;
    let mut rows = Vec::with_capacity(levels.len());
    for &m in levels {
        let (alpha, beta) = fractal_weights(ifs.ratio(), ifs.len(), ell, m);
        let dirac = dirac_diagonal(alpha, beta, cutoff)?.as_matrix();
        let trunc = HardyTruncation::new(m, ifs.ratio(), cutoff)?;
        let (words, subsampled) = match enumerate_words(ifs.len(), m, word_budget) {
            Ok(words) => (words, false),
            Err(Error::Resource(_)) => {
                let mut rng = seed ^ (m as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                let words = (0..word_budget)
                    .map(|_| {
                        Word(
                            (0..m)
                                .map(|_| 1 + (uniform(&mut rng) * ifs.len() as f64) as usize)
                                .map(|l| l.min(ifs.len()))
                                .collect(),
                        )
                    })
                    .collect();
                (words, true)
            }
            Err(e) => return Err(e),
        };
        let words_used = words.len();
        let mut max_norm = 0.0f64;
        for word in &words {
            let chart = MobiusChart::new(poly, ifs, word)?;
            let coeffs = fourier_coefficients(&chart, symbol, h, DEFAULT_QUADRATURE_ORDER)?;
            let t = toeplitz_matrix(&coeffs, &trunc)?;
            let comm = commutator(&dirac, &t.matrix)?;
            let norm = operator_norm(&comm, 1e-10, seed)?;
            max_norm = max_norm.max(norm);
        }
        rows.push(BoundTableRow {
            level: m,
            alpha,
            beta,
            max_norm,
            words_used,
            subsampled,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::equilateral_triangle;
    use crate::ifs::sierpinski_ifs;

    fn triangle_chart(word: Word) -> MobiusChart {
        MobiusChart::new(&equilateral_triangle(), &sierpinski_ifs(), &word).unwrap()
    }

    fn circle_symbol(
        radius: f64,
        h: usize,
        q: usize,
        f: impl Fn(Complex64) -> Complex64,
    ) -> SymbolCoefficients {
        let (angles, lengths) = whole_circle_arcs();
        fourier_on_arcs(
            &angles.clone(),
            &lengths.clone(),
            move |arc, t| {
                let theta = angles[arc] + t * lengths[arc];
                f(Complex64::from_polar(radius, theta))
            },
            h,
            q,
            CoeffSource::Quadrature,
            "fixture".into(),
        )
        .unwrap()
    }

    fn whole_circle_arcs() -> (Vec<f64>, Vec<f64>) {
        let third = 2.0 * core::f64::consts::PI / 3.0;
        (vec![0.0, third, 2.0 * third], vec![third, third, third])
    }

    #[test]
    fn constant_symbol_has_delta_coefficients() {
        let coeffs = circle_symbol(1.0, 8, 16, |_| Complex64::ONE);
        assert!((coeffs.hat(0) - Complex64::ONE).norm() < 1e-14);
        for n in 1..=8i64 {
            assert!(coeffs.hat(n).norm() < 1e-14);
            assert!(coeffs.hat(-n).norm() < 1e-14);
        }
    }

    #[test]
    fn identity_symbol_on_small_circle_has_single_harmonic() {
        // u(z) = z on the circle of radius c^m: û(1) = c^m, all else 0.
        let radius = 0.25;
        let coeffs = circle_symbol(radius, 8, 16, |z| z);
        assert!((coeffs.hat(1) - Complex64::new(radius, 0.0)).norm() < 1e-14);
        for n in -8i64..=8 {
            if n != 1 {
                assert!(coeffs.hat(n).norm() < 1e-13, "n = {n}");
            }
        }
    }

    #[test]
    fn chart_symbol_quadrature_self_converges() {
        // Quadrupling the per-panel order changes nothing at 1e-12 scale.
        let chart = triangle_chart(Word::empty());
        let sym = SymbolPolynomial::monomial(1, 0);
        let lo = fourier_coefficients(&chart, &sym, 48, 32).unwrap();
        let hi = fourier_coefficients(&chart, &sym, 48, 128).unwrap();
        let defect = (-48i64..=48)
            .map(|n| (lo.hat(n) - hi.hat(n)).norm())
            .fold(0.0, f64::max);
        assert!(defect <= 1e-12, "defect {defect}");
    }

    #[test]
    fn real_symbol_has_conjugate_symmetric_coefficients() {
        // |κ|² is real, so û(-n) = conj û(n).
        let chart = triangle_chart(Word::empty());
        let coeffs =
            fourier_coefficients(&chart, &SymbolPolynomial::monomial(1, 1), 32, 32).unwrap();
        assert!(coeffs.conjugate_symmetry_defect() < 1e-13);
    }

    #[test]
    fn toeplitz_matrix_of_constant_is_identity() {
        let coeffs = circle_symbol(1.0, 16, 16, |_| Complex64::ONE);
        let trunc = HardyTruncation::new(0, 0.5, 12).unwrap();
        let t = toeplitz_matrix(&coeffs, &trunc).unwrap();
        let defect = t.matrix.sub(&CMatrix::identity(13)).unwrap().max_abs();
        assert!(defect < 1e-13);
    }

    #[test]
    fn toeplitz_entries_constant_along_diagonals() {
        let chart = triangle_chart(Word(vec![2]));
        let trunc = HardyTruncation::new(1, 0.5, 16).unwrap();
        let coeffs =
            fourier_coefficients(&chart, &SymbolPolynomial::monomial(2, 1), 20, 32).unwrap();
        let t = toeplitz_matrix(&coeffs, &trunc).unwrap();
        for k in 0..=16usize {
            for j in 0..=16usize {
                let expected = coeffs.hat(k as i64 - j as i64);
                assert!((t.matrix.get(k, j) - expected).norm() <= 1e-13);
            }
        }
    }

    #[test]
    fn adjoint_rule_via_independent_quadratures() {
        // The matrix of conj(u) equals the conjugate transpose of the matrix of u.
        let chart = triangle_chart(Word::empty());
        let trunc = HardyTruncation::new(0, 0.5, 20).unwrap();
        let sym = SymbolPolynomial::monomial(2, 0);
        let conj_sym = SymbolPolynomial::monomial(0, 2);
        let t = toeplitz_matrix(&fourier_coefficients(&chart, &sym, 24, 32).unwrap(), &trunc)
            .unwrap();
        let t_conj = toeplitz_matrix(
            &fourier_coefficients(&chart, &conj_sym, 24, 32).unwrap(),
            &trunc,
        )
        .unwrap();
        let defect = t_conj.matrix.sub(&t.matrix.adjoint()).unwrap().max_abs();
        assert!(defect < 1e-12);
    }

    #[test]
    fn contractivity_against_sampled_sup() {
        let chart = triangle_chart(Word::empty());
        let trunc = HardyTruncation::new(0, 0.5, 24).unwrap();
        let sym = SymbolPolynomial::monomial(1, 0);
        let coeffs = fourier_coefficients(&chart, &sym, 28, 32).unwrap();
        let t = toeplitz_matrix(&coeffs, &trunc).unwrap();
        let norm = operator_norm(&t.matrix, 1e-10, 7).unwrap();
        let mut sup = 0.0f64;
        for arc in 0..3 {
            for i in 0..=400 {
                let t_par = i as f64 / 400.0;
                sup = sup.max(chart.eval(arc, t_par).unwrap().norm());
            }
        }
        assert!(norm <= sup + 1e-10, "norm {norm} sup {sup}");
    }

    #[test]
    fn insufficient_harmonics_is_reported() {
        let coeffs = circle_symbol(1.0, 4, 16, |_| Complex64::ONE);
        let trunc = HardyTruncation::new(0, 0.5, 12).unwrap();
        assert!(matches!(
            toeplitz_matrix(&coeffs, &trunc),
            Err(Error::InsufficientHarmonics { have: 4, need: 12 })
        ));
    }

    #[test]
    fn harmonic_budget_is_enforced() {
        let (angles, lengths) = whole_circle_arcs();
        assert!(matches!(
            fourier_on_arcs(
                &angles,
                &lengths,
                |_, _| Complex64::ONE,
                MAX_HARMONICS + 1,
                16,
                CoeffSource::Quadrature,
                "over budget".into(),
            ),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn dirac_diagonal_entries_and_guards() {
        let d = dirac_diagonal(1.0, 1.0, 3).unwrap();
        assert_eq!(d.entries(), vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d.min_entry(), 1.0);
        assert!(dirac_diagonal(0.0, 1.0, 3).is_err());
        assert!(dirac_diagonal(1.0, -2.0, 3).is_err());
    }

    #[test]
    fn dirac_inverse_norm_is_reciprocal_beta() {
        // With the self-similar weights, 1/β_m = c^{ℓm}.
        let (alpha, beta) = fractal_weights(0.5, 3, 3.0, 2);
        assert!((alpha - 64.0 / 81.0).abs() < 1e-13);
        assert!((beta - 64.0).abs() < 1e-12);
        let d = dirac_diagonal(alpha, beta, 10).unwrap();
        assert!((d.inverse_norm() - libm::pow(0.5, 3.0 * 2.0)).abs() < 1e-15);
    }

    #[test]
    fn commutator_basic_identities() {
        let a = CMatrix::from_fn(4, 4, |i, j| Complex64::new((i + 2 * j) as f64, j as f64));
        assert_eq!(commutator(&a, &a).unwrap().max_abs(), 0.0);

        // Diagonal conjugation acts entrywise as (d_k - d_j) T_{kj}.
        let d = dirac_diagonal(0.7, 3.0, 3).unwrap().as_matrix();
        let c = commutator(&d, &a).unwrap();
        for k in 0..4 {
            for j in 0..4 {
                let expected = a.get(k, j) * (0.7 * (k as f64 - j as f64));
                assert!((c.get(k, j) - expected).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn number_commutator_scales_by_harmonic_index() {
        // [R, T_u]_{kj} = (k-j) û(k-j).
        let chart = triangle_chart(Word::empty());
        let trunc = HardyTruncation::new(0, 0.5, 12).unwrap();
        let coeffs =
            fourier_coefficients(&chart, &SymbolPolynomial::monomial(1, 1), 16, 32).unwrap();
        let t = toeplitz_matrix(&coeffs, &trunc).unwrap();
        let c = commutator(&number_operator(12), &t.matrix).unwrap();
        for k in 0..=12usize {
            for j in 0..=12usize {
                let n = k as i64 - j as i64;
                let expected = coeffs.hat(n) * n as f64;
                assert!((c.get(k, j) - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_commutator_identity_for_pure_harmonic() {
        // u(z) = z on the circle: û(1) = c^m and [R, T_z] = T_z entrywise, so
        // the subdiagonal matrix reproduces itself under the number commutator.
        let radius = 0.5;
        let coeffs = circle_symbol(radius, 14, 32, |z| z);
        let trunc = HardyTruncation::new(1, 0.5, 12).unwrap();
        let t = toeplitz_matrix(&coeffs, &trunc).unwrap();
        let lhs = commutator(&number_operator(12), &t.matrix).unwrap();
        let defect = lhs.sub(&t.matrix).unwrap().max_abs();
        assert!(defect <= 1e-13, "defect {defect}");
    }

    #[test]
    fn hardy_identity_triangle_first_order() {
        let chart = triangle_chart(Word::empty());
        let trunc = HardyTruncation::new(0, 0.5, 64).unwrap();
        let residual = verify_hardy_commutator(&chart, 1, 0, &trunc, 4).unwrap();
        assert!(residual <= 1e-8, "residual {residual}");
    }

    #[test]
    fn hardy_identity_deeper_word_and_mixed_powers() {
        let chart = triangle_chart(Word(vec![1]));
        let trunc = HardyTruncation::new(1, 0.5, 64).unwrap();
        let residual = verify_hardy_commutator(&chart, 2, 1, &trunc, 8).unwrap();
        assert!(residual <= 1e-8, "residual {residual}");
    }

    #[test]
    fn margin_guard_rejects_empty_block() {
        let chart = triangle_chart(Word::empty());
        let trunc = HardyTruncation::new(0, 0.5, 16).unwrap();
        assert!(matches!(
            verify_hardy_commutator(&chart, 1, 0, &trunc, 8),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn commutator_symbol_conjugation_mirror() {
        // The (0,1) symbol is -conj(Rκ), so its coefficients are the negated
        // conjugate mirror of the (1,0) symbol's.
        let chart = triangle_chart(Word::empty());
        let ab10 = commutator_symbol(&chart, 1, 0, 24, 32).unwrap();
        let ab01 = commutator_symbol(&chart, 0, 1, 24, 32).unwrap();
        for n in -24i64..=24 {
            let mirrored = -ab10.hat(-n).conj();
            assert!((ab01.hat(n) - mirrored).norm() < 1e-13);
        }
    }

    #[test]
    fn commutator_symbol_of_modulus_squared_is_imaginary_valued() {
        // (R - R̄)|κ|² = 2i Im(Rκ · κ̄) takes purely imaginary values, so the
        // coefficients obey û(-n) = -conj û(n).
        let chart = triangle_chart(Word::empty());
        let coeffs = commutator_symbol(&chart, 1, 1, 24, 32).unwrap();
        for n in 0..=24i64 {
            let defect = (coeffs.hat(-n) + coeffs.hat(n).conj()).norm();
            assert!(defect < 1e-13, "n = {n}: {defect}");
        }
    }

    #[test]
    fn zero_commutator_symbol_for_constants() {
        let chart = triangle_chart(Word::empty());
        let coeffs = commutator_symbol(&chart, 0, 0, 16, 32).unwrap();
        for n in -16i64..=16 {
            assert_eq!(coeffs.hat(n), Complex64::ZERO);
        }
    }

    #[test]
    fn operator_norm_of_diagonal_and_rank_one() {
        let d = CMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
        assert!((operator_norm(&d, 1e-12, 1).unwrap() - 3.0).abs() < 1e-10);

        // uv*: norm is |u| |v|.
        let u = [
            Complex64::new(1.0, 2.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.5),
        ];
        let v = [Complex64::new(3.0, -1.0), Complex64::new(0.5, 0.25)];
        let m = CMatrix::from_fn(3, 2, |i, j| u[i] * v[j].conj());
        let expected = vec_norm(&u) * vec_norm(&v);
        assert!((operator_norm(&m, 1e-12, 1).unwrap() - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn operator_norm_of_zero_matrix() {
        let z = CMatrix::zeros(5, 5);
        assert_eq!(operator_norm(&z, 1e-10, 1).unwrap(), 0.0);
    }

    #[test]
    fn bound_table_is_flat_for_constant_symbol() {
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        let rows = commutator_bound_table(
            &poly,
            &ifs,
            &SymbolPolynomial::constant(Complex64::ONE),
            3.0,
            &[0, 1, 2],
            16,
            10_000,
            42,
        )
        .unwrap();
        for row in rows {
            assert!(row.max_norm < 1e-10, "level {}: {}", row.level, row.max_norm);
        }
    }

    #[test]
    fn bound_table_scales_linearly_with_the_symbol() {
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        let sym = SymbolPolynomial::monomial(1, 0);
        let rows1 = commutator_bound_table(&poly, &ifs, &sym, 3.0, &[0, 1], 16, 1000, 42).unwrap();
        let rows2 = commutator_bound_table(
            &poly,
            &ifs,
            &sym.scale(Complex64::new(2.0, 0.0)),
            3.0,
            &[0, 1],
            16,
            1000,
            42,
        )
        .unwrap();
        for (r1, r2) in rows1.iter().zip(&rows2) {
            assert!((r2.max_norm - 2.0 * r1.max_norm).abs() < 1e-8 * r1.max_norm.max(1.0));
        }
    }

    #[test]
    fn bound_table_rejects_inadmissible_ell() {
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        let sym = SymbolPolynomial::monomial(1, 0);
        assert!(matches!(
            commutator_bound_table(&poly, &ifs, &sym, 2.0, &[0], 16, 1000, 42),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn truncation_basis_is_unit_norm_under_quadrature() {
        let trunc = HardyTruncation::new(2, 0.5, 6).unwrap();
        let rule = GaussLegendre::new(64).unwrap();
        for j in 0..=6usize {
            let norm_sq = rule.integrate(0.0, 2.0 * core::f64::consts::PI, |t| {
                let z = Complex64::from_polar(trunc.radius, t);
                trunc.basis_value(j, z).norm_sqr()
            }) / (2.0 * core::f64::consts::PI);
            assert!((norm_sq - 1.0).abs() <= 1e-12, "j = {j}: {norm_sq}");
        }
    }
}
