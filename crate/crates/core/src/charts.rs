//! Polygonal generators and piecewise-Möbius circle-to-polygon charts.
//!
//! A generator is a simple polygon rescaled to perimeter 2π. Its edge lengths
//! cut the circle of radius c^m into arcs A_j, and each arc is mapped onto the
//! corresponding (word-transformed) edge by a Möbius transform. On arc j with
//! local parameter t in [0,1] the chart takes the closed form
//!
//!   κ(t) = p_j + (p_{j+1} - p_j) · tan(t·|L_j|/2) / tan(|L_j|/2),
//!
//! with radial derivative (z ∂_z κ)(t) = (-2i/(δ_j τ_j)) · e^{it|L_j|} / (1 + e^{it|L_j|})²,
//! where δ_j = (p_{j+1} - p_j)^{-1} and τ_j = tan(|L_j|/2).

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ifs::{compose_word, IfsSystem, Word};

const TAU: f64 = 2.0 * core::f64::consts::PI;

/// Simple polygon normalized to perimeter 2π, counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Complex64>,
    lengths: Vec<f64>,
    /// Cumulative angles θ_j with θ_1 = 0; the arc for edge j is [θ_j, θ_j + |L_j|].
    angles: Vec<f64>,
}

impl Polygon {
    /// Normalize raw vertices to perimeter 2π by uniform scaling about the
    /// origin. Rejects polygons with fewer than 3 vertices, repeated
    /// vertices, clockwise orientation, or a normalized edge of length >= π.
    pub fn build(raw: &[Complex64]) -> Result<Self> {
        let m = raw.len();
        if m <= 2 {
            return Err(Error::Domain(format!(
                "polygon needs more than 2 vertices, got {m}"
            )));
        }
        let mut perimeter = 0.0;
        for i in 0..m {
            let d = (raw[(i + 1) % m] - raw[i]).norm();
            if d == 0.0 {
                return Err(Error::Geometry(format!("repeated vertex at index {i}")));
            }
            perimeter += d;
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if (raw[i] - raw[j]).norm() < 1e-12 * perimeter {
                    return Err(Error::Geometry(format!("vertices {i} and {j} coincide")));
                }
            }
        }
        let signed_area: f64 = (0..m)
            .map(|i| {
                let a = raw[i];
                let b = raw[(i + 1) % m];
                a.re * b.im - b.re * a.im
            })
            .sum();
        if signed_area <= 0.0 {
            return Err(Error::Geometry(
                "vertices must be in counterclockwise order".into(),
            ));
        }
        let scale = TAU / perimeter;
        let vertices: Vec<Complex64> = raw.iter().map(|&v| v * scale).collect();
        let mut lengths = Vec::with_capacity(m);
        let mut angles = Vec::with_capacity(m);
        let mut acc = 0.0;
        for i in 0..m {
            let len = (vertices[(i + 1) % m] - vertices[i]).norm();
            if len >= core::f64::consts::PI {
                return Err(Error::Geometry(format!(
                    "normalized edge {i} has length {len} >= pi"
                )));
            }
            angles.push(acc);
            lengths.push(len);
            acc += len;
        }
        debug_assert!((acc - TAU).abs() < 1e-12);
        Ok(Self {
            vertices,
            lengths,
            angles,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn perimeter(&self) -> f64 {
        self.lengths.iter().sum()
    }
}

/// Canonical equilateral triangle generator (perimeter 2π).
pub fn equilateral_triangle() -> Polygon {
    Polygon::build(&crate::ifs::sierpinski_vertices()).expect("canonical triangle is valid")
}

/// Canonical square generator (perimeter 2π).
pub fn square() -> Polygon {
    Polygon::build(&crate::ifs::square_vertices()).expect("canonical square is valid")
}

/// Canonical regular pentagon generator (perimeter 2π).
pub fn pentagon() -> Polygon {
    let side = TAU / 5.0;
    let r = side / (2.0 * libm::sin(core::f64::consts::PI / 5.0));
    let verts: Vec<Complex64> = (0..5)
        .map(|k| Complex64::from_polar(r, TAU * k as f64 / 5.0))
        .collect();
    Polygon::build(&verts).expect("canonical pentagon is valid")
}

/// Piecewise-Möbius homeomorphism from the circle of radius c^m onto the
/// word-transformed polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusChart {
    word: Word,
    radius: f64,
    /// Images p_{w,j} = F_w(p_j) of the polygon vertices.
    vertex_images: Vec<Complex64>,
    /// Inverse chords δ_j = (p_{w,j+1} - p_{w,j})^{-1}, index M wraps to 1.
    deltas: Vec<Complex64>,
    /// Arc half-angle tangents τ_j = tan(|L_j|/2), all positive.
    taus: Vec<f64>,
    lengths: Vec<f64>,
    angles: Vec<f64>,
}

impl MobiusChart {
    /// Chart of the word-transformed generator F_w(E_0) on the circle of
    /// radius c^|w|.
    pub fn new(poly: &Polygon, ifs: &IfsSystem, word: &Word) -> Result<Self> {
        let map = compose_word(ifs, word)?;
        let images: Vec<Complex64> = poly.vertices().iter().map(|&p| map.apply(p)).collect();
        let radius = libm::pow(ifs.ratio(), word.len() as f64);
        Self::from_vertex_images_word(poly, radius, &images, word.clone())
    }

    /// Chart with explicitly given vertex images (fixtures, perturbation
    /// studies). The images must be pairwise distinct.
    pub fn from_vertex_images(poly: &Polygon, radius: f64, images: &[Complex64]) -> Result<Self> {
        Self::from_vertex_images_word(poly, radius, images, Word::empty())
    }

    fn from_vertex_images_word(
        poly: &Polygon,
        radius: f64,
        images: &[Complex64],
        word: Word,
    ) -> Result<Self> {
        let m = poly.vertex_count();
        if images.len() != m {
            return Err(Error::Domain(format!(
                "expected {m} vertex images, got {}",
                images.len()
            )));
        }
        if !(radius > 0.0) {
            return Err(Error::Domain(format!(
                "radius must be positive, got {radius}"
            )));
        }
        let mut deltas = Vec::with_capacity(m);
        let mut taus = Vec::with_capacity(m);
        for j in 0..m {
            let chord = images[(j + 1) % m] - images[j];
            if chord.norm() == 0.0 {
                return Err(Error::Geometry(format!("zero chord on edge {j}")));
            }
            deltas.push(chord.inv());
            taus.push(libm::tan(0.5 * poly.lengths()[j]));
        }
        Ok(Self {
            word,
            radius,
            vertex_images: images.to_vec(),
            deltas,
            taus,
            lengths: poly.lengths().to_vec(),
            angles: poly.angles().to_vec(),
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn level(&self) -> u32 {
        self.word.len() as u32
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn arc_count(&self) -> usize {
        self.vertex_images.len()
    }

    pub fn vertex_images(&self) -> &[Complex64] {
        &self.vertex_images
    }

    pub fn deltas(&self) -> &[Complex64] {
        &self.deltas
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Bounds (θ_j, θ_j + |L_j|) of arc `arc` (0-based).
    pub fn arc_bounds(&self, arc: usize) -> (f64, f64) {
        let lo = self.angles[arc];
        (lo, lo + self.lengths[arc])
    }

    fn check_arc(&self, arc: usize) -> Result<()> {
        if arc >= self.arc_count() {
            return Err(Error::Domain(format!(
                "arc index {arc} outside 0..{}",
                self.arc_count()
            )));
        }
        Ok(())
    }

    /// Chart value on arc `arc` at local parameter t in [0, 1].
    pub fn eval(&self, arc: usize, t: f64) -> Result<Complex64> {
        self.check_arc(arc)?;
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("t = {t} outside [0, 1]")));
        }
        Ok(self.eval_unchecked(arc, t))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, arc: usize, t: f64) -> Complex64 {
        let p = self.vertex_images[arc];
        let q = self.vertex_images[(arc + 1) % self.arc_count()];
        let ratio = libm::tan(t * self.lengths[arc] * 0.5) / self.taus[arc];
        p + (q - p) * ratio
    }

    /// Chart value at the circle point of argument `theta` (any real angle).
    pub fn eval_at_angle(&self, theta: f64) -> Complex64 {
        let phi = wrap_angle(theta);
        let arc = match self
            .angles
            .binary_search_by(|a| a.partial_cmp(&phi).expect("angles are finite"))
        {
            Ok(j) => j,
            Err(0) => 0,
            Err(j) => j - 1,
        };
        let t = ((phi - self.angles[arc]) / self.lengths[arc]).clamp(0.0, 1.0);
        self.eval_unchecked(arc, t)
    }

    /// Chart value at a point z of the circle C_m (|z| must match the radius).
    pub fn eval_at_point(&self, z: Complex64) -> Result<Complex64> {
        if (z.norm() - self.radius).abs() > 1e-9 * self.radius {
            return Err(Error::Geometry(format!(
                "|z| = {} is not on the circle of radius {}",
                z.norm(),
                self.radius
            )));
        }
        Ok(self.eval_at_angle(libm::atan2(z.im, z.re)))
    }

    /// The defining Möbius quotient of arc `arc`, evaluated at an arbitrary
    /// point z (not restricted to the circle). Agrees with [`Self::eval`]
    /// when z = c^m e^{i(θ_j + t|L_j|)}.
    pub fn eval_mobius(&self, arc: usize, z: Complex64) -> Result<Complex64> {
        self.check_arc(arc)?;
        let p = self.vertex_images[arc];
        let corner = Complex64::from_polar(self.radius, self.angles[arc]);
        let shift = Complex64::I / (self.deltas[arc] * self.taus[arc]);
        Ok(((p - shift) * z + corner * (p + shift)) / (z + corner))
    }

    /// Maximum junction mismatch |κ(j, 1) - κ(j+1, 0)| over all arcs.
    pub fn continuity_defect(&self) -> f64 {
        let m = self.arc_count();
        (0..m)
            .map(|j| (self.eval_unchecked(j, 1.0) - self.eval_unchecked((j + 1) % m, 0.0)).norm())
            .fold(0.0, f64::max)
    }

    /// Radial derivative (z ∂_z κ) on arc `arc` at interior parameter
    /// t in (0, 1), in closed form. The endpoints are excluded: the chart is
    /// only piecewise smooth and has one-sided limits there.
    pub fn radial_derivative(&self, arc: usize, t: f64) -> Result<Complex64> {
        self.check_arc(arc)?;
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Domain(format!("t = {t} not interior to (0, 1)")));
        }
        Ok(self.radial_derivative_unchecked(arc, t))
    }

    #[inline]
    pub(crate) fn radial_derivative_unchecked(&self, arc: usize, t: f64) -> Complex64 {
        let phase = Complex64::from_polar(1.0, t * self.lengths[arc]);
        let denom = Complex64::ONE + phase;
        Complex64::new(0.0, -2.0) / (self.deltas[arc] * self.taus[arc]) * phase / (denom * denom)
    }
}

fn wrap_angle(theta: f64) -> f64 {
    let mut phi = theta % TAU;
    if phi < 0.0 {
        phi += TAU;
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::{sierpinski_ifs, sierpinski_vertices};

    const PI: f64 = core::f64::consts::PI;

    #[test]
    fn triangle_normalizes_to_three_equal_arcs() {
        let poly = equilateral_triangle();
        for &l in poly.lengths() {
            assert!((l - TAU / 3.0).abs() < 1e-12);
        }
        let expected = [0.0, TAU / 3.0, 2.0 * TAU / 3.0];
        for (a, e) in poly.angles().iter().zip(expected) {
            assert!((a - e).abs() < 1e-12);
        }
        assert!((poly.perimeter() - TAU).abs() < 1e-12);
    }

    #[test]
    fn square_normalizes_to_quarter_arcs() {
        let poly = square();
        for &l in poly.lengths() {
            assert!((l - PI / 2.0).abs() < 1e-12);
        }
        let expected = [0.0, PI / 2.0, PI, 1.5 * PI];
        for (a, e) in poly.angles().iter().zip(expected) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_polygons_are_rejected() {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        assert!(matches!(Polygon::build(&[z, one]), Err(Error::Domain(_))));
        assert!(matches!(
            Polygon::build(&[z, one, one]),
            Err(Error::Geometry(_))
        ));
        // Collinear (flat) polygon has no orientation.
        let flat = [z, one, Complex64::new(0.5, 0.0)];
        assert!(matches!(Polygon::build(&flat), Err(Error::Geometry(_))));
        // Clockwise square.
        let cw = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(1.0, 0.0),
        ];
        assert!(matches!(Polygon::build(&cw), Err(Error::Geometry(_))));
    }

    #[test]
    fn scaling_is_uniform() {
        // An already 2π-perimeter polygon is returned unchanged.
        let poly = equilateral_triangle();
        let again = Polygon::build(poly.vertices()).unwrap();
        for (a, b) in again.vertices().iter().zip(poly.vertices()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn triangle_chart_has_sqrt3_tangents() {
        let poly = equilateral_triangle();
        let chart = MobiusChart::new(&poly, &sierpinski_ifs(), &Word::empty()).unwrap();
        for &tau in chart.taus() {
            assert!((tau - libm::sqrt(3.0)).abs() < 1e-12);
        }
        assert_eq!(chart.radius(), 1.0);
    }

    #[test]
    fn empty_word_chart_keeps_vertices() {
        let poly = equilateral_triangle();
        let chart = MobiusChart::new(&poly, &sierpinski_ifs(), &Word::empty()).unwrap();
        for (img, p) in chart.vertex_images().iter().zip(poly.vertices()) {
            assert_eq!(img, p);
        }
    }

    #[test]
    fn word_chart_applies_the_similarity_to_vertices() {
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        let chart = MobiusChart::new(&poly, &ifs, &Word(alloc::vec![1])).unwrap();
        let p1 = sierpinski_vertices()[0];
        for (img, p) in chart.vertex_images().iter().zip(poly.vertices()) {
            assert!((img - (p + p1) * 0.5).norm() < 1e-14);
        }
        assert_eq!(chart.radius(), 0.5);
    }

    #[test]
    fn eval_hits_endpoints_and_triangle_third_point() {
        let poly = equilateral_triangle();
        let chart = MobiusChart::new(&poly, &sierpinski_ifs(), &Word::empty()).unwrap();
        let m = chart.arc_count();
        for j in 0..m {
            let p = chart.vertex_images()[j];
            let q = chart.vertex_images()[(j + 1) % m];
            assert_eq!(chart.eval(j, 0.0).unwrap(), p);
            assert!((chart.eval(j, 1.0).unwrap() - q).norm() < 1e-14);
            // tan(π/6)/tan(π/3) = 1/3 puts the arc midpoint a third of the way.
            let mid = chart.eval(j, 0.5).unwrap();
            assert!((mid - (p + (q - p) / 3.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn eval_square_midpoint_is_sqrt2_minus_1_of_the_way() {
        let poly = square();
        let ifs = crate::ifs::quadrant_square_ifs();
        let chart = MobiusChart::new(&poly, &ifs, &Word::empty()).unwrap();
        let p = chart.vertex_images()[0];
        let q = chart.vertex_images()[1];
        let mid = chart.eval(0, 0.5).unwrap();
        let frac = libm::sqrt(2.0) - 1.0; // tan(π/8)/tan(π/4)
        assert!((mid - (p + (q - p) * frac)).norm() < 1e-14);
    }

    #[test]
    fn eval_rejects_out_of_range_parameters() {
        let poly = equilateral_triangle();
        let chart = MobiusChart::new(&poly, &sierpinski_ifs(), &Word::empty()).unwrap();
        assert!(matches!(chart.eval(0, -0.1), Err(Error::Domain(_))));
        assert!(matches!(chart.eval(0, 1.1), Err(Error::Domain(_))));
        assert!(matches!(chart.eval(3, 0.5), Err(Error::Domain(_))));
        assert!(matches!(
            chart.radial_derivative(0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            chart.radial_derivative(0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn parametric_and_mobius_forms_agree_on_the_circle() {
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        for word in [Word::empty(), Word(alloc::vec![2]), Word(alloc::vec![3, 1])] {
            let chart = MobiusChart::new(&poly, &ifs, &word).unwrap();
            for arc in 0..chart.arc_count() {
                let (lo, _) = chart.arc_bounds(arc);
                for i in 0..=20 {
                    let t = i as f64 / 20.0;
                    let theta = lo + t * chart.lengths()[arc];
                    let z = Complex64::from_polar(chart.radius(), theta);
                    let via_mobius = chart.eval_mobius(arc, z).unwrap();
                    let via_param = chart.eval(arc, t).unwrap();
                    assert!(
                        (via_mobius - via_param).norm() < 1e-12,
                        "word {:?} arc {arc} t {t}",
                        word
                    );
                }
            }
        }
    }

    #[test]
    fn eval_at_angle_and_point_match_arc_form() {
        let poly = equilateral_triangle();
        let chart = MobiusChart::new(&poly, &sierpinski_ifs(), &Word(alloc::vec![1])).unwrap();
        for i in 0..60 {
            let theta = TAU * i as f64 / 60.0 + 1e-3;
            let via_angle = chart.eval_at_angle(theta);
            let z = Complex64::from_polar(chart.radius(), theta);
            let via_point = chart.eval_at_point(z).unwrap();
            assert!((via_angle - via_point).norm() < 1e-12);
        }
        let off_circle = Complex64::new(2.0, 0.0);
        assert!(matches!(
            chart.eval_at_point(off_circle),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn continuity_defect_vanishes_for_valid_charts() {
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        for word in [
            Word::empty(),
            Word(alloc::vec![2, 1]),
            Word(alloc::vec![1, 2, 3]),
        ] {
            let chart = MobiusChart::new(&poly, &ifs, &word).unwrap();
            assert!(chart.continuity_defect() <= 1e-12);
        }
    }

    #[test]
    fn perturbed_vertex_image_shows_up_as_defect() {
        let poly = equilateral_triangle();
        let mut images = poly.vertices().to_vec();
        let eps = 1e-6;
        images[1] += Complex64::new(eps, 0.0);
        let chart = MobiusChart::from_vertex_images(&poly, 1.0, &images).unwrap();
        // Each arc interpolates its own (possibly perturbed) endpoints, so the
        // chart itself stays continuous; against the clean chart the junction
        // mismatch is exactly the perturbation.
        assert!(chart.continuity_defect() < 1e-15);
        let clean = MobiusChart::from_vertex_images(&poly, 1.0, poly.vertices()).unwrap();
        let defect = (0..3)
            .map(|j| {
                (chart.eval_unchecked(j, 1.0) - clean.eval_unchecked((j + 1) % 3, 0.0)).norm()
            })
            .fold(0.0, f64::max);
        assert!((defect - eps).abs() < 1e-9);
    }

    #[test]
    fn radial_derivative_matches_finite_differences() {
        // dκ/dt = i |L_j| (z ∂_z κ) along the arc, so the closed form is
        // checked against a central difference in t.
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        for word in [Word::empty(), Word(alloc::vec![3]), Word(alloc::vec![1, 2])] {
            let chart = MobiusChart::new(&poly, &ifs, &word).unwrap();
            let h = 1e-6;
            for arc in 0..chart.arc_count() {
                for &t in &[0.13, 0.5, 0.87] {
                    let len = chart.lengths()[arc];
                    let diff =
                        (chart.eval(arc, t + h).unwrap() - chart.eval(arc, t - h).unwrap())
                            / (2.0 * h);
                    let fd = diff / Complex64::new(0.0, len);
                    let closed = chart.radial_derivative(arc, t).unwrap();
                    assert!(
                        (fd - closed).norm() <= 1e-6 * closed.norm(),
                        "word {:?} arc {arc} t {t}: fd {fd} closed {closed}",
                        word
                    );
                }
            }
        }
    }

    #[test]
    fn radial_derivative_modulus_bound() {
        // |z∂_z κ| = 2 c^m |p_{j+1}-p_j| / (τ_j |1+e^{it|L|}|²), so the sup over
        // the open arc is bounded by 2 |chord| / (τ_j k_j) with
        // k_j = 2 + 2cos|L_j| (the chord already carries the c^m factor).
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        for word in [Word::empty(), Word(alloc::vec![2]), Word(alloc::vec![1, 3])] {
            let chart = MobiusChart::new(&poly, &ifs, &word).unwrap();
            for arc in 0..chart.arc_count() {
                let chord = (chart.vertex_images()[(arc + 1) % 3] - chart.vertex_images()[arc])
                    .norm();
                let k_j = 2.0 + 2.0 * libm::cos(chart.lengths()[arc]);
                let bound = 2.0 * chord / (chart.taus()[arc] * k_j);
                for i in 1..50 {
                    let t = i as f64 / 50.0;
                    let v = chart.radial_derivative(arc, t).unwrap().norm();
                    assert!(v <= bound * (1.0 + 1e-12), "t={t}: {v} > {bound}");
                }
            }
        }
    }

    #[test]
    fn radial_derivative_triangle_midpoint_value() {
        // At t = 1/2 on a triangle arc, |1 + e^{iπ/3}|² = 3.
        let poly = equilateral_triangle();
        let chart = MobiusChart::new(&poly, &sierpinski_ifs(), &Word::empty()).unwrap();
        let chord = (chart.vertex_images()[1] - chart.vertex_images()[0]).norm();
        let expected = 2.0 * chord / (libm::sqrt(3.0) * 3.0);
        let v = chart.radial_derivative(0, 0.5).unwrap().norm();
        assert!((v - expected).abs() < 1e-13);
    }

    #[test]
    fn chart_equivariance_under_the_word_map() {
        // κ_w = F_w ∘ κ_empty pointwise, since the chart is affine in the
        // vertex images.
        let poly = equilateral_triangle();
        let ifs = sierpinski_ifs();
        let base = MobiusChart::new(&poly, &ifs, &Word::empty()).unwrap();
        for word in [
            Word(alloc::vec![1]),
            Word(alloc::vec![2, 3]),
            Word(alloc::vec![3, 1, 2]),
        ] {
            let f = compose_word(&ifs, &word).unwrap();
            let chart = MobiusChart::new(&poly, &ifs, &word).unwrap();
            for arc in 0..3 {
                for i in 0..=10 {
                    let t = i as f64 / 10.0;
                    let lhs = chart.eval(arc, t).unwrap();
                    let rhs = f.apply(base.eval(arc, t).unwrap());
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn eval_stays_on_the_segment_and_moves_monotonically() {
        let poly = pentagon();
        let maps: Vec<_> = poly
            .vertices()
            .iter()
            .map(|&p| crate::ifs::Similarity::homothety(p, 0.4))
            .collect();
        let ifs = IfsSystem::new(maps, None).unwrap();
        let chart = MobiusChart::new(&poly, &ifs, &Word(alloc::vec![4])).unwrap();
        for arc in 0..chart.arc_count() {
            let p = chart.vertex_images()[arc];
            let q = chart.vertex_images()[(arc + 1) % chart.arc_count()];
            let dir = q - p;
            let mut prev = -1.0;
            for i in 0..=40 {
                let t = i as f64 / 40.0;
                let v = chart.eval(arc, t).unwrap();
                // Collinearity: cross product of (v - p) with the chord.
                let rel = v - p;
                let cross = rel.re * dir.im - rel.im * dir.re;
                assert!(cross.abs() <= 1e-12 * dir.norm_sqr());
                // Monotone progress along the chord.
                let s = (rel.re * dir.re + rel.im * dir.im) / dir.norm_sqr();
                assert!((-1e-15..=1.0 + 1e-15).contains(&s));
                assert!(s > prev);
                prev = s;
            }
        }
    }
}
