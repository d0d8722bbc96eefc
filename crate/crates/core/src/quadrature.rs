//! Gauss–Legendre quadrature nodes and weights.
//!
//! Nodes are the roots of the Legendre polynomial P_q, found by Newton
//! iteration from the Chebyshev-like initial guess; weights are
//! 2 / ((1 - x^2) P_q'(x)^2). A rule of degree q integrates polynomials of
//! degree 2q - 1 exactly.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A Gauss–Legendre rule on the reference interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Build a rule with `q >= 2` nodes.
    pub fn new(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(alloc::format!(
                "Gauss-Legendre order must be >= 2, got {q}"
            )));
        }
        let mut nodes = Vec::with_capacity(q);
        let mut weights = Vec::with_capacity(q);
        let n = q as f64;
        // Roots come in +/- pairs; solve for the first half and mirror.
        for i in 0..q.div_ceil(2) {
            let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(q, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if libm::fabs(dx) < 1e-15 {
                    let (p2, d2) = legendre_with_derivative(q, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes.push(-x);
            weights.push(w);
        }
        // Mirror to the positive half (skip the middle node for odd q).
        for i in (0..q / 2).rev() {
            nodes.push(-nodes[i]);
            weights.push(weights[i]);
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// Integrate a real function over [a, b].
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// Value and derivative of the Legendre polynomial P_q at x.
fn legendre_with_derivative(q: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=q {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = q as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
