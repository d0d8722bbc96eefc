//! Static SVG figures: attractor approximations and the circle/arc diagrams
//! behind the charts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use specdim_core::charts::Polygon;
use specdim_core::ifs::{compose_word, enumerate_words, IfsSystem};

use crate::runner::RunError;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

struct Canvas {
    body: String,
    min: (f64, f64),
    max: (f64, f64),
}

impl Canvas {
    fn new() -> Self {
        Self {
            body: String::new(),
            min: (f64::INFINITY, f64::INFINITY),
            max: (f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn cover(&mut self, p: Complex64) {
        self.min.0 = self.min.0.min(p.re);
        self.min.1 = self.min.1.min(p.im);
        self.max.0 = self.max.0.max(p.re);
        self.max.1 = self.max.1.max(p.im);
    }

    /// Closed polygon outline. The y axis is flipped at render time.
    fn polygon(&mut self, points: &[Complex64], color: &str, width: f64) {
        let mut attr = String::new();
        for (i, p) in points.iter().enumerate() {
            self.cover(*p);
            let _ = write!(
                attr,
                "{}{:.6},{:.6}",
                if i == 0 { "" } else { " " },
                p.re,
                -p.im
            );
        }
        let _ = writeln!(
            self.body,
            r#"  <polygon points="{attr}" fill="none" stroke="{color}" stroke-width="{width:.4}"/>"#
        );
    }

    fn circle(&mut self, center: Complex64, radius: f64, color: &str, width: f64) {
        self.cover(center + Complex64::new(radius, radius));
        self.cover(center - Complex64::new(radius, radius));
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{:.6}" cy="{:.6}" r="{radius:.6}" fill="none" stroke="{color}" stroke-width="{width:.4}"/>"#,
            center.re, -center.im
        );
    }

    fn dot(&mut self, p: Complex64, r: f64, color: &str) {
        self.cover(p);
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{:.6}" cy="{:.6}" r="{r:.4}" fill="{color}"/>"#,
            p.re, -p.im
        );
    }

    fn write(self, path: &Path) -> Result<(), RunError> {
        let pad = 0.05 * (self.max.0 - self.min.0).max(self.max.1 - self.min.1).max(1.0);
        let x = self.min.0 - pad;
        let y = -(self.max.1 + pad);
        let w = self.max.0 - self.min.0 + 2.0 * pad;
        let h = self.max.1 - self.min.1 + 2.0 * pad;
        let svg = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x:.6} {y:.6} {w:.6} {h:.6}\" width=\"640\" height=\"640\">\n{}</svg>\n",
            self.body
        );
        fs::write(path, svg).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))
    }
}

/// Draw every word image F_w(E_0) for |w| <= depth. Returns the number of
/// polygons drawn.
pub fn emit_attractor_svg(
    path: &Path,
    poly: &Polygon,
    ifs: &IfsSystem,
    depth: u32,
    word_budget: usize,
) -> Result<usize, RunError> {
    let mut canvas = Canvas::new();
    let mut drawn = 0usize;
    for m in 0..=depth {
        let color = PALETTE[m as usize % PALETTE.len()];
        let width = 0.012 * 0.7f64.powi(m as i32);
        for word in enumerate_words(ifs.len(), m, word_budget).map_err(RunError::from)? {
            let map = compose_word(ifs, &word).map_err(RunError::from)?;
            let image: Vec<Complex64> =
                poly.vertices().iter().map(|&v| map.apply(v)).collect();
            canvas.polygon(&image, color, width);
            drawn += 1;
        }
    }
    canvas.write(path)?;
    Ok(drawn)
}

/// Concentric circles C_m with the arc endpoints c^m e^{iθ_j}: the domain
/// diagram of the charts.
pub fn emit_circles_svg(
    path: &Path,
    poly: &Polygon,
    ifs: &IfsSystem,
    depth: u32,
) -> Result<(), RunError> {
    let mut canvas = Canvas::new();
    for m in 0..=depth {
        let radius = ifs.ratio().powi(m as i32);
        let color = PALETTE[m as usize % PALETTE.len()];
        canvas.circle(Complex64::new(0.0, 0.0), radius, color, 0.008);
        for &theta in poly.angles() {
            canvas.dot(Complex64::from_polar(radius, theta), 0.02 * radius.max(0.2), color);
        }
    }
    canvas.write(path)
}
