//! Weighted Bergman spaces on the unit ball and on shrinking disks.
//!
//! The monomial basis of the weight-(m) space on the ball in C^n is indexed
//! by multi-indices α with normalization ((|α|+m+n)! / ((m+n)! α!))^{1/2}.
//! In that basis the coordinate Toeplitz operators factor through shifts,
//!
//!   T_{z_j} = S_j ((R_j + 1) / (R + m + n + 1))^{1/2},
//!
//! and the inverse of T_{-r} (r = |z|² - 1) is the diagonal
//! (R + m + n + 1)/(m + 1). Monomial symbols assemble as
//! T_{z^α z̄^β} = (Π_j T*_{z_j}^{β_j})(Π_j T_{z_j}^{α_j}), and the commutator
//! with the diagonal acts by the degree difference:
//! [T_{-r}^{-1}, T_p] = (1/(m+1)) T_{(R-R̄)p}.
//!
//! The disk variant replaces the ball by the radius-c^m disk with weight
//! exponent N^m; its Dirac diagonal is c^{-2m}(R + N^m + 2)/(N^m + 1).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::toeplitz::{commutator, dirac_diagonal, DiracDiagonal};

/// Cap on the number of basis multi-indices.
pub const DEFAULT_BASIS_BUDGET: usize = 1 << 20;

/// Multi-index over n complex coordinates.
pub type MultiIndex = Vec<u32>;

/// Graded monomial basis slice of the weighted Bergman space.
#[derive(Debug, Clone, PartialEq)]
pub struct BallBasis {
    /// Complex dimension n >= 1.
    pub n: usize,
    /// Weight exponent, real > -1.
    pub weight: f64,
    /// Total-degree cutoff.
    pub cutoff: u32,
    indices: Vec<MultiIndex>,
    grades: Vec<u32>,
    log_norms: Vec<f64>,
    positions: BTreeMap<MultiIndex, usize>,
}

/// Multi-indices of total degree `grade`, first coordinate descending.
fn indices_of_grade(n: usize, grade: u32) -> Vec<MultiIndex> {
    if n == 1 {
        return alloc::vec![alloc::vec![grade]];
    }
    let mut out = Vec::new();
    for head in (0..=grade).rev() {
        for tail in indices_of_grade(n - 1, grade - head) {
            let mut idx = Vec::with_capacity(n);
            idx.push(head);
            idx.extend(tail);
            out.push(idx);
        }
    }
    out
}

fn binomial(top: usize, bottom: usize) -> usize {
    let mut acc = 1usize;
    for i in 1..=bottom {
        acc = acc * (top - bottom + i) / i;
    }
    acc
}

impl BallBasis {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    /// Total degree |α| of the basis element at `pos`.
    pub fn grade(&self, pos: usize) -> u32 {
        self.grades[pos]
    }

    pub fn position(&self, index: &[u32]) -> Option<usize> {
        self.positions.get(index).copied()
    }

    /// Log of the orthonormalization constant
    /// ((|α|+m+n)! / ((m+n)! α!))^{1/2} for the element at `pos`.
    pub fn log_norm_constant(&self, pos: usize) -> f64 {
        self.log_norms[pos]
    }

    pub fn norm_constant(&self, pos: usize) -> f64 {
        libm::exp(self.log_norms[pos])
    }
}

/// Build the graded basis for dimension n, weight exponent m > -1, and
/// total-degree cutoff K.
pub fn ball_basis(n: usize, weight: f64, cutoff: u32) -> Result<BallBasis> {
    if n < 1 {
        return Err(Error::Domain("complex dimension must be >= 1".into()));
    }
    if !(weight > -1.0) {
        return Err(Error::Domain(format!(
            "weight exponent must exceed -1, got {weight}"
        )));
    }
    if cutoff < 1 {
        return Err(Error::Domain("cutoff must be >= 1".into()));
    }
    let count = binomial(cutoff as usize + n, n);
    if count > DEFAULT_BASIS_BUDGET {
        return Err(Error::Resource(format!(
            "basis of {count} indices exceeds budget {DEFAULT_BASIS_BUDGET}"
        )));
    }
    let mut indices = Vec::with_capacity(count);
    let mut grades = Vec::with_capacity(count);
    for g in 0..=cutoff {
        for idx in indices_of_grade(n, g) {
            indices.push(idx);
            grades.push(g);
        }
    }
    let nf = n as f64;
    let log_norms: Vec<f64> = indices
        .iter()
        .zip(&grades)
        .map(|(idx, &g)| {
            let mut v = libm::lgamma(g as f64 + weight + nf + 1.0)
                - libm::lgamma(weight + nf + 1.0);
            for &a in idx {
                v -= libm::lgamma(a as f64 + 1.0);
            }
            0.5 * v
        })
        .collect();
    let positions = indices
        .iter()
        .enumerate()
        .map(|(i, idx)| (idx.clone(), i))
        .collect();
    Ok(BallBasis {
        n,
        weight,
        cutoff,
        indices,
        grades,
        log_norms,
        positions,
    })
}

/// Operator matrix in a [`BallBasis`] ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct BallOperator {
    pub matrix: CMatrix,
    pub label: String,
    /// True when the operator maps part of the top grade outside the
    /// truncation (those rows are dropped).
    pub truncated: bool,
}

fn real_entry(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Coordinate Toeplitz operator T_{z_coord}: entry
/// ((α_coord + 1)/(|α| + m + n + 1))^{1/2} from α to α + 1_coord.
pub fn toeplitz_zj(basis: &BallBasis, coord: usize) -> Result<BallOperator> {
    check_coord(basis, coord)?;
    let dim = basis.len();
    let mut matrix = CMatrix::zeros(dim, dim);
    let denom_base = basis.weight + basis.n as f64 + 1.0;
    for (col, idx) in basis.indices().iter().enumerate() {
        if basis.grade(col) == basis.cutoff {
            continue; // image leaves the truncation
        }
        let mut raised = idx.clone();
        raised[coord] += 1;
        let row = basis
            .position(&raised)
            .expect("raised index below cutoff is present");
        let value = libm::sqrt(
            (idx[coord] as f64 + 1.0) / (basis.grade(col) as f64 + denom_base),
        );
        matrix.set(row, col, real_entry(value));
    }
    Ok(BallOperator {
        matrix,
        label: format!("T_z{}", coord + 1),
        truncated: true,
    })
}

/// Pure shift S_coord: α -> α + 1_coord with unit coefficient.
pub fn shift_matrix(basis: &BallBasis, coord: usize) -> Result<BallOperator> {
    check_coord(basis, coord)?;
    let dim = basis.len();
    let mut matrix = CMatrix::zeros(dim, dim);
    for (col, idx) in basis.indices().iter().enumerate() {
        if basis.grade(col) == basis.cutoff {
            continue;
        }
        let mut raised = idx.clone();
        raised[coord] += 1;
        let row = basis.position(&raised).expect("raised index is present");
        matrix.set(row, col, Complex64::ONE);
    }
    Ok(BallOperator {
        matrix,
        label: format!("S{}", coord + 1),
        truncated: true,
    })
}

/// Coordinate number operator R_coord: diagonal α_coord.
pub fn number_matrix(basis: &BallBasis, coord: usize) -> Result<BallOperator> {
    check_coord(basis, coord)?;
    let diag: Vec<f64> = basis.indices().iter().map(|idx| idx[coord] as f64).collect();
    Ok(BallOperator {
        matrix: CMatrix::from_real_diag(&diag),
        label: format!("R{}", coord + 1),
        truncated: false,
    })
}

/// Total number operator R: diagonal |α|.
pub fn grade_matrix(basis: &BallBasis) -> BallOperator {
    let diag: Vec<f64> = (0..basis.len()).map(|p| basis.grade(p) as f64).collect();
    BallOperator {
        matrix: CMatrix::from_real_diag(&diag),
        label: "R".into(),
        truncated: false,
    }
}

/// The diagonal inverse (T_{-r})^{-1} = (R + m + n + 1)/(m + 1).
pub fn inverse_toeplitz_r(basis: &BallBasis) -> BallOperator {
    let base = basis.weight + basis.n as f64 + 1.0;
    let diag: Vec<f64> = (0..basis.len())
        .map(|p| (basis.grade(p) as f64 + base) / (basis.weight + 1.0))
        .collect();
    BallOperator {
        matrix: CMatrix::from_real_diag(&diag),
        label: "inv(T_{-r})".into(),
        truncated: false,
    }
}

fn check_coord(basis: &BallBasis, coord: usize) -> Result<()> {
    if coord >= basis.n {
        return Err(Error::Domain(format!(
            "coordinate {coord} outside 0..{}",
            basis.n
        )));
    }
    Ok(())
}

fn total_degree(index: &[u32]) -> u32 {
    index.iter().sum()
}

/// T_{z^α z̄^β} = (Π_j T*_{z_j}^{β_j}) (Π_j T_{z_j}^{α_j}) on the truncation.
///
/// The total degree is capped at half the cutoff so that the interior block
/// of the product is the exact section of the infinite operator.
pub fn toeplitz_monomial(basis: &BallBasis, alpha: &[u32], beta: &[u32]) -> Result<BallOperator> {
    if alpha.len() != basis.n || beta.len() != basis.n {
        return Err(Error::Domain(format!(
            "multi-index lengths {} / {} do not match dimension {}",
            alpha.len(),
            beta.len(),
            basis.n
        )));
    }
    let degree = total_degree(alpha) + total_degree(beta);
    if 2 * degree > basis.cutoff {
        return Err(Error::Domain(format!(
            "monomial degree {degree} exceeds the edge-effect guard cutoff/2 = {}",
            basis.cutoff / 2
        )));
    }
    let dim = basis.len();
    let mut raise = CMatrix::identity(dim);
    for (coord, &power) in alpha.iter().enumerate() {
        let t = toeplitz_zj(basis, coord)?.matrix;
        for _ in 0..power {
            raise = t.mul(&raise)?;
        }
    }
    let mut lower = CMatrix::identity(dim);
    for (coord, &power) in beta.iter().enumerate() {
        let t = toeplitz_zj(basis, coord)?.matrix;
        for _ in 0..power {
            lower = t.mul(&lower)?;
        }
    }
    let matrix = lower.adjoint().mul(&raise)?;
    Ok(BallOperator {
        matrix,
        label: format!("T_z^{alpha:?}zb^{beta:?}"),
        truncated: degree > 0,
    })
}

/// Polynomial symbol Σ p_{αβ} z^α z̄^β on the ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPolynomial {
    terms: Vec<(MultiIndex, MultiIndex, Complex64)>,
}

impl BallPolynomial {
    pub fn new(terms: Vec<(MultiIndex, MultiIndex, Complex64)>) -> Self {
        Self { terms }
    }

    pub fn monomial(alpha: MultiIndex, beta: MultiIndex) -> Self {
        Self {
            terms: alloc::vec![(alpha, beta, Complex64::ONE)],
        }
    }

    pub fn terms(&self) -> &[(MultiIndex, MultiIndex, Complex64)] {
        &self.terms
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(a, b, _)| total_degree(a) + total_degree(b))
            .max()
            .unwrap_or(0)
    }
}

/// Coefficientwise action of the degree difference: p_{αβ} ↦ (|α|-|β|) p_{αβ}.
pub fn radial_difference(p: &BallPolynomial) -> BallPolynomial {
    BallPolynomial {
        terms: p
            .terms
            .iter()
            .map(|(a, b, c)| {
                let factor = total_degree(a) as f64 - total_degree(b) as f64;
                (a.clone(), b.clone(), c * factor)
            })
            .collect(),
    }
}

/// Σ p_{αβ} T_{z^α z̄^β} assembled term by term.
pub fn assemble_polynomial(basis: &BallBasis, p: &BallPolynomial) -> Result<BallOperator> {
    let dim = basis.len();
    let mut matrix = CMatrix::zeros(dim, dim);
    let mut truncated = false;
    for (alpha, beta, coeff) in p.terms() {
        let mono = toeplitz_monomial(basis, alpha, beta)?;
        truncated |= mono.truncated;
        matrix = matrix.add(&mono.matrix.scale(*coeff))?;
    }
    Ok(BallOperator {
        matrix,
        label: "T_p".into(),
        truncated,
    })
}

/// Residual of [T_{-r}^{-1}, T_p] = (1/(m+1)) T_{(R-R̄)p} over the interior
/// grades margin..=cutoff-margin.
pub fn verify_bergman_commutator(
    basis: &BallBasis,
    p: &BallPolynomial,
    margin: u32,
) -> Result<f64> {
    if margin < p.max_degree() {
        return Err(Error::Domain(format!(
            "margin {margin} below the symbol degree {}",
            p.max_degree()
        )));
    }
    if 2 * margin >= basis.cutoff {
        return Err(Error::Domain(format!(
            "margin {margin} leaves no interior grades at cutoff {}",
            basis.cutoff
        )));
    }
    let t_p = assemble_polynomial(basis, p)?;
    let d = inverse_toeplitz_r(basis);
    let lhs = commutator(&d.matrix, &t_p.matrix)?;
    let rhs = assemble_polynomial(basis, &radial_difference(p))?
        .matrix
        .scale(real_entry(1.0 / (basis.weight + 1.0)));
    let diff = lhs.sub(&rhs)?;
    let lo = margin;
    let hi = basis.cutoff - margin;
    let mut residual = 0.0f64;
    for row in 0..basis.len() {
        let rg = basis.grade(row);
        if rg < lo || rg > hi {
            continue;
        }
        for col in 0..basis.len() {
            let cg = basis.grade(col);
            if cg < lo || cg > hi {
                continue;
            }
            residual = residual.max(diff.get(row, col).norm());
        }
    }
    Ok(residual)
}

/// Dirac diagonal α_w · (T_{-r})^{-1} by grade: entries
/// α_w (k + m + n + 1)/(m + 1) for grade k.
pub fn ball_dirac(basis: &BallBasis, alpha_weight: f64) -> Result<DiracDiagonal> {
    if !(alpha_weight > 0.0) {
        return Err(Error::Domain(format!(
            "weight must be positive, got {alpha_weight}"
        )));
    }
    let denom = basis.weight + 1.0;
    dirac_diagonal(
        alpha_weight / denom,
        alpha_weight * (basis.weight + basis.n as f64 + 1.0) / denom,
        basis.cutoff as usize,
    )
}

/// Weights (α'_m, β'_m) of the disk Dirac diagonal
/// c^{-2m} (R + N^m + 2)/(N^m + 1) = α'_m R + β'_m.
pub fn disk_fractal_weights(c: f64, n_maps: usize, level: u32) -> (f64, f64) {
    let nm = libm::pow(n_maps as f64, level as f64);
    let scale = libm::pow(c, -2.0 * level as f64);
    (scale / (nm + 1.0), scale * (nm + 2.0) / (nm + 1.0))
}

/// Whether the disk family satisfies the dimension hypothesis 1 < c²N.
pub fn disk_fractal_condition(c: f64, n_maps: usize) -> bool {
    c * c * (n_maps as f64) > 1.0
}

/// Dirac diagonal of the level-m disk triple. Callers should check
/// [`disk_fractal_condition`] before drawing dimension conclusions; the
/// diagonal itself is valid either way.
pub fn disk_fractal_dirac(
    c: f64,
    n_maps: usize,
    level: u32,
    cutoff: usize,
) -> Result<DiracDiagonal> {
    if !(c > 0.0 && c < 1.0) || n_maps == 0 {
        return Err(Error::Domain(format!(
            "need 0 < c < 1 and N >= 1, got c = {c}, N = {n_maps}"
        )));
    }
    let (alpha, beta) = disk_fractal_weights(c, n_maps, level);
    dirac_diagonal(alpha, beta, cutoff)
}

/// Log-space orthonormalization constants of the disk basis,
/// ln of c^{-m(N^m+j+1)} ((N^m+j+1)! / (N^m! j! π))^{1/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct LogConstants {
    pub log_values: Vec<f64>,
}

impl LogConstants {
    pub fn len(&self) -> usize {
        self.log_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_values.is_empty()
    }

    /// Exponentiated constant, None when it overflows f64 comfortably.
    pub fn value(&self, j: usize) -> Option<f64> {
        let lv = self.log_values[j];
        if lv < 690.0 {
            Some(libm::exp(lv))
        } else {
            None
        }
    }
}

/// Basis normalization constants of the level-m disk space, j = 0..=cutoff,
/// computed entirely in log space (the weight exponent N^m makes the
/// factorials astronomically large).
pub fn disk_fractal_basis_constants(
    c: f64,
    n_maps: usize,
    level: u32,
    cutoff: usize,
) -> Result<LogConstants> {
    if !(c > 0.0 && c < 1.0) || n_maps == 0 {
        return Err(Error::Domain(format!(
            "need 0 < c < 1 and N >= 1, got c = {c}, N = {n_maps}"
        )));
    }
    let nm = libm::pow(n_maps as f64, level as f64);
    let ln_c = libm::log(c);
    let ln_pi = libm::log(core::f64::consts::PI);
    let log_values = (0..=cutoff)
        .map(|j| {
            let jf = j as f64;
            -(level as f64) * (nm + jf + 1.0) * ln_c
                + 0.5
                    * (libm::lgamma(nm + jf + 2.0)
                        - libm::lgamma(nm + 1.0)
                        - libm::lgamma(jf + 1.0)
                        - ln_pi)
        })
        .collect();
    Ok(LogConstants { log_values })
}
