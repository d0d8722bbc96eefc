//! Equal-ratio contracting similarity systems on the complex plane.
//!
//! A system is a finite family F_k(z) = a_k z + b_k with a common contraction
//! ratio c = |a_k| in (0,1). Words over {1,..,N} index compositions
//! F_w = F_{w1} ∘ ... ∘ F_{wm}; the attractor is approximated by applying all
//! compositions up to a level to samples of a generator set.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the total number of enumerated words / sampled points.
pub const DEFAULT_WORD_BUDGET: usize = 1_000_000;

const RATIO_TOL: f64 = 1e-12;

/// Affine similarity z -> a z + b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub a: Complex64,
    pub b: Complex64,
}

impl Similarity {
    /// Construct, rejecting degenerate (|a| = 0) maps.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if a.norm() == 0.0 {
            return Err(Error::Domain("similarity has zero scale factor".into()));
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex64::ONE,
            b: Complex64::ZERO,
        }
    }

    /// Homothety of the given ratio about a fixed center.
    pub fn homothety(center: Complex64, ratio: f64) -> Self {
        Self {
            a: Complex64::new(ratio, 0.0),
            b: center * (1.0 - ratio),
        }
    }

    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }

    /// Functional composition `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Similarity) -> Similarity {
        Similarity {
            a: self.a * inner.a,
            b: self.a * inner.b + self.b,
        }
    }

    /// Contraction ratio |a|.
    pub fn scale(&self) -> f64 {
        self.a.norm()
    }
}

/// Candidate open set for the open set condition check.
#[derive(Debug, Clone, PartialEq)]
pub enum OscCandidate {
    Disk { center: Complex64, radius: f64 },
    Polygon { vertices: Vec<Complex64> },
}

/// Equal-ratio iterated function system.
#[derive(Debug, Clone, PartialEq)]
pub struct IfsSystem {
    maps: Vec<Similarity>,
    ratio: f64,
    pub osc_candidate: Option<OscCandidate>,
}

impl IfsSystem {
    /// Build from maps, deriving the common ratio and enforcing equality
    /// of all |a_k| within 1e-12.
    pub fn new(maps: Vec<Similarity>, osc_candidate: Option<OscCandidate>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Domain("IFS needs at least one map".into()));
        }
        let ratio = maps[0].scale();
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::Domain(format!(
                "contraction ratio must lie in (0,1), got {ratio}"
            )));
        }
        for (k, map) in maps.iter().enumerate() {
            if (map.scale() - ratio).abs() > RATIO_TOL {
                return Err(Error::Domain(format!(
                    "map {} has ratio {} != common ratio {ratio}",
                    k + 1,
                    map.scale()
                )));
            }
        }
        Ok(Self {
            maps,
            ratio,
            osc_candidate,
        })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn maps(&self) -> &[Similarity] {
        &self.maps
    }

    /// Map for the 1-based letter `k`.
    pub fn map(&self, letter: usize) -> Result<&Similarity> {
        if letter == 0 || letter > self.maps.len() {
            return Err(Error::Domain(format!(
                "letter {letter} outside 1..={}",
                self.maps.len()
            )));
        }
        Ok(&self.maps[letter - 1])
    }
}

/// Word over the alphabet {1,..,N}; the empty word is the identity level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

/// Left-to-right composition F_{w1} ∘ ... ∘ F_{wm} of the maps named by `w`.
///
/// The empty word gives the identity; the scale modulus of the result is
/// c^m by multiplicativity.
pub fn compose_word(ifs: &IfsSystem, w: &Word) -> Result<Similarity> {
    let mut acc = Similarity::identity();
    for &letter in w.letters() {
        acc = acc.compose(ifs.map(letter)?);
    }
    Ok(acc)
}

/// All words of length `m` over {1,..,n}, in lexicographic order.
pub fn enumerate_words(n: usize, m: u32, budget: usize) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::Domain("alphabet size must be >= 1".into()));
    }
    let count = checked_pow(n, m).filter(|&c| c <= budget).ok_or_else(|| {
        Error::Resource(format!("{n}^{m} words exceed the budget of {budget}"))
    })?;
    let mut words = Vec::with_capacity(count);
    let mut current = vec![1usize; m as usize];
    loop {
        words.push(Word(current.clone()));
        // Odometer increment in base n, least significant letter last.
        let mut pos = m as usize;
        loop {
            if pos == 0 {
                return Ok(words);
            }
            pos -= 1;
            if current[pos] < n {
                current[pos] += 1;
                for slot in current.iter_mut().skip(pos + 1) {
                    *slot = 1;
                }
                break;
            }
        }
        if m == 0 {
            return Ok(words);
        }
    }
}

fn checked_pow(n: usize, m: u32) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..m {
        acc = acc.checked_mul(n)?;
    }
    Some(acc)
}

/// Hausdorff dimension log N / log(1/c) of the attractor of an equal-ratio
/// system satisfying the open set condition.
pub fn hausdorff_dimension(ifs: &IfsSystem) -> f64 {
    libm::log(ifs.len() as f64) / libm::log(1.0 / ifs.ratio())
}

/// A generator sample pushed through one word of the system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaggedPoint {
    pub point: Complex64,
    pub level: u32,
    /// Index of the word inside its level's lexicographic enumeration.
    pub word_index: usize,
}

/// Push generator samples through every word of length <= `depth`.
///
/// Output size is (sum over m <= depth of N^m) * generator size, checked
/// against `budget` before any work is done.
pub fn sample_attractor(
    ifs: &IfsSystem,
    generator: &[Complex64],
    depth: u32,
    budget: usize,
) -> Result<Vec<TaggedPoint>> {
    let mut total_words = 0usize;
    for m in 0..=depth {
        total_words = checked_pow(ifs.len(), m)
            .and_then(|c| total_words.checked_add(c))
            .ok_or_else(|| Error::Resource("word count overflow".into()))?;
    }
    let total_points = total_words
        .checked_mul(generator.len())
        .filter(|&p| p <= budget)
        .ok_or_else(|| {
            Error::Resource(format!(
                "attractor sample of {total_words} words x {} points exceeds budget {budget}",
                generator.len()
            ))
        })?;
    let mut out = Vec::with_capacity(total_points);
    for m in 0..=depth {
        for (word_index, w) in enumerate_words(ifs.len(), m, budget)?.iter().enumerate() {
            let map = compose_word(ifs, w)?;
            for &g in generator {
                out.push(TaggedPoint {
                    point: map.apply(g),
                    level: m,
                    word_index,
                });
            }
        }
    }
    Ok(out)
}

/// Result of the heuristic open set condition check. Advisory only: sampled
/// tests can miss thin overlaps and never constitute a proof.
#[derive(Debug, Clone, PartialEq)]
pub struct OscReport {
    /// For each pair k < l (1-based letters): whether F_k(V) and F_l(V) overlap.
    pub pair_overlaps: Vec<((usize, usize), bool)>,
    /// Number of sampled points q of V with F_k(q) outside V, over all k.
    pub containment_violations: usize,
    /// Number of interior sample points actually used (polygon candidates).
    pub samples_used: usize,
}

impl OscReport {
    pub fn overlap_detected(&self) -> bool {
        self.pair_overlaps.iter().any(|&(_, o)| o)
    }

    pub fn passed(&self) -> bool {
        !self.overlap_detected() && self.containment_violations == 0
    }
}

/// Test disjointness of the images F_k(V) and containment F_k(V) ⊂ V.
///
/// Disk candidates are decided exactly from center distances and radii;
/// polygon candidates are sampled on an interior grid of roughly `samples`
/// points.
pub fn check_open_set_condition(ifs: &IfsSystem, samples: usize) -> Result<OscReport> {
    let candidate = ifs
        .osc_candidate
        .as_ref()
        .ok_or_else(|| Error::Config("no open set candidate configured".into()))?;
    match candidate {
        OscCandidate::Disk { center, radius } => {
            if *radius <= 0.0 {
                return Err(Error::Config("candidate disk has nonpositive radius".into()));
            }
            let c = ifs.ratio();
            let images: Vec<Complex64> = ifs.maps().iter().map(|f| f.apply(*center)).collect();
            let image_radius = c * radius;
            let mut pair_overlaps = Vec::new();
            for k in 0..ifs.len() {
                for l in (k + 1)..ifs.len() {
                    let dist = (images[k] - images[l]).norm();
                    pair_overlaps.push(((k + 1, l + 1), dist < 2.0 * image_radius - 1e-12));
                }
            }
            let mut containment_violations = 0;
            for img in &images {
                if (img - center).norm() + image_radius > radius + 1e-12 {
                    containment_violations += 1;
                }
            }
            Ok(OscReport {
                pair_overlaps,
                containment_violations,
                samples_used: 0,
            })
        }
        OscCandidate::Polygon { vertices } => {
            if vertices.len() < 3 {
                return Err(Error::Config("candidate polygon needs >= 3 vertices".into()));
            }
            let grid = interior_grid(vertices, samples);
            if grid.is_empty() {
                return Err(Error::Config(
                    "no interior samples found for candidate polygon".into(),
                ));
            }
            // F_k(q) in F_l(V) iff F_l^{-1}(F_k(q)) in V.
            let mut pair_overlaps = Vec::new();
            for k in 0..ifs.len() {
                for l in (k + 1)..ifs.len() {
                    let fk = &ifs.maps()[k];
                    let fl = &ifs.maps()[l];
                    let mut overlap = false;
                    for &q in &grid {
                        let pulled = (fk.apply(q) - fl.b) / fl.a;
                        if point_in_polygon(vertices, pulled) {
                            overlap = true;
                            break;
                        }
                        let pulled = (fl.apply(q) - fk.b) / fk.a;
                        if point_in_polygon(vertices, pulled) {
                            overlap = true;
                            break;
                        }
                    }
                    pair_overlaps.push(((k + 1, l + 1), overlap));
                }
            }
            let mut containment_violations = 0;
            for f in ifs.maps() {
                for &q in &grid {
                    if !point_in_polygon(vertices, f.apply(q)) {
                        containment_violations += 1;
                    }
                }
            }
            Ok(OscReport {
                pair_overlaps,
                containment_violations,
                samples_used: grid.len(),
            })
        }
    }
}

/// Strictly-interior grid samples of a simple polygon (about `target` points).
fn interior_grid(vertices: &[Complex64], target: usize) -> Vec<Complex64> {
    let target = target.max(16);
    let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in vertices {
        lo_x = lo_x.min(v.re);
        hi_x = hi_x.max(v.re);
        lo_y = lo_y.min(v.im);
        hi_y = hi_y.max(v.im);
    }
    let side = libm::ceil(libm::sqrt(target as f64)) as usize;
    let mut points = Vec::new();
    for i in 0..side {
        for j in 0..side {
            // Offset half-steps keep samples off the boundary lattice.
            let x = lo_x + (hi_x - lo_x) * (i as f64 + 0.5) / side as f64;
            let y = lo_y + (hi_y - lo_y) * (j as f64 + 0.5) / side as f64;
            let p = Complex64::new(x, y);
            if point_in_polygon(vertices, p) {
                points.push(p);
            }
        }
    }
    points
}

/// Crossing-number point-in-polygon test (strict interior up to ties).
pub fn point_in_polygon(vertices: &[Complex64], p: Complex64) -> bool {
    let mut inside = false;
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if (a.im > p.im) != (b.im > p.im) {
            let x_cross = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
            if p.re < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// Vertices of the canonical equilateral triangle of perimeter 2π,
/// counterclockwise, first vertex on the positive real axis.
pub fn sierpinski_vertices() -> [Complex64; 3] {
    // Side 2π/3, circumradius side/sqrt(3).
    let r = 2.0 * core::f64::consts::PI / (3.0 * libm::sqrt(3.0));
    let third = 2.0 * core::f64::consts::PI / 3.0;
    [
        Complex64::from_polar(r, 0.0),
        Complex64::from_polar(r, third),
        Complex64::from_polar(r, 2.0 * third),
    ]
}

/// The three half-ratio homotheties about the vertices of the canonical
/// equilateral triangle; attractor is the Sierpinski gasket. The candidate
/// open set is the open triangle interior.
pub fn sierpinski_ifs() -> IfsSystem {
    let vertices = sierpinski_vertices();
    let maps = vertices
        .iter()
        .map(|&p| Similarity::homothety(p, 0.5))
        .collect();
    IfsSystem::new(
        maps,
        Some(OscCandidate::Polygon {
            vertices: vertices.to_vec(),
        }),
    )
    .expect("canonical Sierpinski system is valid")
}

/// Vertices of the canonical axis-aligned square of perimeter 2π,
/// counterclockwise, starting in the lower-right quadrant.
pub fn square_vertices() -> [Complex64; 4] {
    let h = core::f64::consts::PI / 4.0;
    [
        Complex64::new(h, -h),
        Complex64::new(h, h),
        Complex64::new(-h, h),
        Complex64::new(-h, -h),
    ]
}

/// Four half-ratio homotheties about the square's vertices; the attractor is
/// the full square, split into quadrants.
pub fn quadrant_square_ifs() -> IfsSystem {
    let vertices = square_vertices();
    let maps = vertices
        .iter()
        .map(|&p| Similarity::homothety(p, 0.5))
        .collect();
    IfsSystem::new(
        maps,
        Some(OscCandidate::Polygon {
            vertices: vertices.to_vec(),
        }),
    )
    .expect("canonical quadrant-square system is valid")
}
