//! Run configuration: a single strict-schema JSON document per experiment.

use num_complex::Complex64;
use serde::Deserialize;
use specdim_core::charts::Polygon;
use specdim_core::ifs::{IfsSystem, OscCandidate, Similarity};
use specdim_core::spectral::ell_lower_bound;
use specdim_core::toeplitz::SymbolPolynomial;

use crate::runner::RunError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    VerifyBergman,
    VerifyHardy,
    DimensionFractal,
    DimensionBergman,
    Zeta,
    Attractor,
    Conditions,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::VerifyBergman => "verify-bergman",
            ExperimentKind::VerifyHardy => "verify-hardy",
            ExperimentKind::DimensionFractal => "dimension-fractal",
            ExperimentKind::DimensionBergman => "dimension-bergman",
            ExperimentKind::Zeta => "zeta",
            ExperimentKind::Attractor => "attractor",
            ExperimentKind::Conditions => "conditions",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapConfig {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum OscConfig {
    Disk { center: [f64; 2], radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IfsConfig {
    pub maps: Vec<MapConfig>,
    #[serde(default)]
    pub osc_candidate: Option<OscConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimSpec {
    pub n: usize,
    pub cutoff: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolTerm {
    pub a: u32,
    pub b: u32,
    pub coeff: [f64; 2],
}

/// Experiment parameters; which fields are required depends on the kind and
/// is validated before any work starts.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    /// Hardy-side basis cutoff K.
    pub cutoff: Option<usize>,
    /// Ball-side (n, cutoff) pairs for the commutator verification.
    pub dimensions: Option<Vec<DimSpec>>,
    /// Bergman weight exponents m.
    pub weights: Option<Vec<f64>>,
    pub max_degree: Option<u32>,
    pub margin: Option<usize>,
    pub tolerance: Option<f64>,
    pub max_word_len: Option<u32>,
    /// Dirac weight exponents ℓ for the self-similar family.
    pub ell: Option<Vec<f64>>,
    /// Maximum direct-sum level.
    pub levels: Option<u32>,
    pub inner_cut: Option<u32>,
    pub s_bracket: Option<[f64; 2]>,
    pub s_values: Option<Vec<f64>>,
    pub bisect_tol: Option<f64>,
    pub lambda_max: Option<f64>,
    pub bins: Option<usize>,
    pub depth: Option<u32>,
    pub word_budget: Option<usize>,
    pub point_budget: Option<usize>,
    pub symbol: Option<Vec<SymbolTerm>>,
    pub m_levels: Option<u32>,
    pub k_grades: Option<u32>,
    pub n: Option<usize>,
    /// Zeta family: "fractal", "disk-fractal", or "bergman".
    pub family: Option<String>,
    pub dump_charts: Option<bool>,
    pub dump_matrices: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Targets {
    pub dimension: Option<f64>,
    pub dimension_tol: f64,
    pub counting_agreement: f64,
    pub zeta_value: Option<f64>,
    pub zeta_tol: f64,
}

impl Default for Targets {
    fn default() -> Self {
        Self {
            dimension: None,
            dimension_tol: 0.01,
            counting_agreement: 0.1,
            zeta_value: None,
            zeta_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub ifs: Option<IfsConfig>,
    #[serde(default)]
    pub polygon: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub targets: Targets,
}

fn c64(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, RunError> {
        let config: RunConfig = serde_json::from_str(text)
            .map_err(|e| RunError::Config(format!("config does not match the schema: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Build the configured similarity system.
    pub fn build_ifs(&self) -> Result<IfsSystem, RunError> {
        let spec = self
            .ifs
            .as_ref()
            .ok_or_else(|| RunError::Config("experiment needs an `ifs` section".into()))?;
        let maps = spec
            .maps
            .iter()
            .map(|m| Similarity::new(c64(m.a), c64(m.b)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| RunError::Config(e.to_string()))?;
        let osc = spec.osc_candidate.as_ref().map(|o| match o {
            OscConfig::Disk { center, radius } => OscCandidate::Disk {
                center: c64(*center),
                radius: *radius,
            },
            OscConfig::Polygon { vertices } => OscCandidate::Polygon {
                vertices: vertices.iter().map(|&v| c64(v)).collect(),
            },
        });
        IfsSystem::new(maps, osc).map_err(|e| RunError::Config(e.to_string()))
    }

    /// Build the configured polygon generator.
    pub fn build_polygon(&self) -> Result<Polygon, RunError> {
        let raw = self
            .polygon
            .as_ref()
            .ok_or_else(|| RunError::Config("experiment needs a `polygon` section".into()))?;
        let vertices: Vec<Complex64> = raw.iter().map(|&v| c64(v)).collect();
        Polygon::build(&vertices).map_err(|e| RunError::Config(e.to_string()))
    }

    pub fn build_symbol(&self) -> SymbolPolynomial {
        match &self.params.symbol {
            Some(terms) => SymbolPolynomial::new(
                terms
                    .iter()
                    .map(|t| (t.a, t.b, c64(t.coeff)))
                    .collect(),
            ),
            // Default symbol: the coordinate function itself.
            None => SymbolPolynomial::monomial(1, 0),
        }
    }

    /// Cross-field validation; every violation is a configuration error
    /// (exit code 3), reported before any computation.
    fn validate(&self) -> Result<(), RunError> {
        let p = &self.params;
        if let Some(cutoff) = p.cutoff {
            if cutoff < 8 {
                return Err(RunError::Config(format!(
                    "cutoff must be >= 8, got {cutoff}"
                )));
            }
        }
        if let Some(dims) = &p.dimensions {
            for d in dims {
                if d.cutoff < 8 {
                    return Err(RunError::Config(format!(
                        "cutoff must be >= 8, got {} for n = {}",
                        d.cutoff, d.n
                    )));
                }
            }
        }
        for (name, value) in [
            ("word_budget", p.word_budget),
            ("point_budget", p.point_budget),
        ] {
            if let Some(v) = value {
                if v == 0 {
                    return Err(RunError::Config(format!("{name} must be positive")));
                }
            }
        }
        if let Some(tol) = p.tolerance {
            if !(tol > 0.0) {
                return Err(RunError::Config(format!(
                    "tolerance must be positive, got {tol}"
                )));
            }
        }
        if let Some(bracket) = p.s_bracket {
            if !(bracket[0] < bracket[1]) {
                return Err(RunError::Config(format!(
                    "s_bracket must be increasing, got [{}, {}]",
                    bracket[0], bracket[1]
                )));
            }
        }
        // The ℓ admissibility gate needs the system's (c, N).
        if let (Some(ells), Some(spec)) = (&p.ell, &self.ifs) {
            let n_maps = spec.maps.len();
            let ratio = Complex64::new(spec.maps[0].a[0], spec.maps[0].a[1]).norm();
            let bound = ell_lower_bound(ratio, n_maps)
                .map_err(|e| RunError::Config(e.to_string()))?;
            for &ell in ells {
                if ell <= bound {
                    return Err(RunError::Config(format!(
                        "ell = {ell} is below the admissible bound log N / log(cN) = {bound}"
                    )));
                }
            }
        }
        // Required sections per experiment.
        match self.experiment {
            ExperimentKind::VerifyHardy | ExperimentKind::Attractor => {
                if self.ifs.is_none() || self.polygon.is_none() {
                    return Err(RunError::Config(format!(
                        "{} needs both `ifs` and `polygon`",
                        self.experiment.name()
                    )));
                }
            }
            ExperimentKind::DimensionFractal => {
                if self.ifs.is_none() {
                    return Err(RunError::Config(
                        "dimension-fractal needs an `ifs` section".into(),
                    ));
                }
                let disk = self.params.family.as_deref() == Some("disk-fractal");
                if !disk && self.params.ell.as_ref().is_none_or(|e| e.is_empty()) {
                    return Err(RunError::Config(
                        "dimension-fractal needs a non-empty `ell` list".into(),
                    ));
                }
            }
            ExperimentKind::Conditions => {
                if self.ifs.is_none() || self.polygon.is_none() {
                    return Err(RunError::Config(
                        "conditions needs both `ifs` and `polygon`".into(),
                    ));
                }
                if self.params.ell.as_ref().is_none_or(|e| e.is_empty()) {
                    return Err(RunError::Config(
                        "conditions needs a non-empty `ell` list".into(),
                    ));
                }
            }
            ExperimentKind::Zeta => {
                if p.family.is_none() {
                    return Err(RunError::Config("zeta needs a `family`".into()));
                }
                if p.s_values.as_ref().is_none_or(|s| s.is_empty()) {
                    return Err(RunError::Config("zeta needs a non-empty `s_values`".into()));
                }
            }
            ExperimentKind::VerifyBergman | ExperimentKind::DimensionBergman => {}
        }
        Ok(())
    }
}
