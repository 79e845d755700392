//! JSON experiment configuration: schema, defaults, dotted-path overrides
//! and validation. Unknown keys are rejected by the deserializer; value
//! violations surface as [`ConfigError`] with the offending key spelled out.

use serde::Deserialize;
use thiserror::Error;

use crate::geometry::V_GROOVE_PITCH;
use crate::waveguide::WaveguideSpec;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config does not parse: {0}")]
    Parse(String),
    #[error("config key `{key}`: {message}")]
    Key { key: String, message: String },
    #[error("override `{0}` is not of the form path=value")]
    BadOverride(String),
}

impl ConfigError {
    pub fn key(key: &str, message: impl Into<String>) -> Self {
        Self::Key { key: key.to_string(), message: message.into() }
    }
}

/// Which simulation a config runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    /// Single-guide mode solve.
    Dispersion,
    /// Two-guide coupler propagation and beat length.
    Couple2,
    /// Planar array propagation.
    Planar,
    /// Tubular array propagation, recurrence and the NNNC ratio.
    Tube,
    /// Fan-in section: z-dependent coupling profile and propagation.
    Fanin,
    /// Continuous-time walk on a ring or line.
    Ctqw,
    /// Coined walk on the line.
    Coined,
    /// Scattering walk on a beamsplitter line.
    Scattering,
    /// Glued-binary-tree traversal, quantum against classical.
    Gluedtree,
    /// Two-photon correlation matrices of a device.
    Correlations,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Dispersion => "dispersion",
            Self::Couple2 => "couple2",
            Self::Planar => "planar",
            Self::Tube => "tube",
            Self::Fanin => "fanin",
            Self::Ctqw => "ctqw",
            Self::Coined => "coined",
            Self::Scattering => "scattering",
            Self::Gluedtree => "gluedtree",
            Self::Correlations => "correlations",
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveguideSection {
    pub core_radius: Option<f64>,
    pub n_core: Option<f64>,
    pub n_clad: Option<f64>,
    pub wavelength: Option<f64>,
}

impl WaveguideSection {
    /// Resolved spec, validated with key-level messages.
    pub fn resolve(&self) -> Result<WaveguideSpec, ConfigError> {
        let d = WaveguideSpec::direct_write_default();
        let spec = WaveguideSpec {
            core_radius: self.core_radius.unwrap_or(d.core_radius),
            n_core: self.n_core.unwrap_or(d.n_core),
            n_clad: self.n_clad.unwrap_or(d.n_clad),
            wavelength: self.wavelength.unwrap_or(d.wavelength),
        };
        if !(spec.core_radius > 0.0) {
            return Err(ConfigError::key(
                "waveguide.core_radius",
                format!("must be > 0 (got {})", spec.core_radius),
            ));
        }
        if !(spec.wavelength > 0.0) {
            return Err(ConfigError::key(
                "waveguide.wavelength",
                format!("must be > 0 (got {})", spec.wavelength),
            ));
        }
        if !(spec.n_core > spec.n_clad && spec.n_clad > 1.0) {
            return Err(ConfigError::key(
                "waveguide.n_core",
                format!(
                    "need n_core > n_clad > 1 (got n_core = {}, n_clad = {})",
                    spec.n_core, spec.n_clad
                ),
            ));
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub n_guides: Option<usize>,
    /// Guide separation in planar layouts, um.
    pub pitch: Option<f64>,
    pub tube_radius: Option<f64>,
    /// Propagation length, um.
    pub length: Option<f64>,
    /// How many ring-neighbour orders of coupling a tube keeps.
    pub neighbour_orders: Option<usize>,
    /// Keep next-nearest coupling in planar arrays.
    pub include_nnn: Option<bool>,
    /// Fan-in stages, 1 or 2.
    pub stages: Option<u8>,
    pub intermediate_radius: Option<f64>,
    pub stage_length: Option<f64>,
    pub start_pitch: Option<f64>,
}

impl GeometrySection {
    pub fn positive(
        value: Option<f64>,
        default: f64,
        key: &'static str,
    ) -> Result<f64, ConfigError> {
        let v = value.unwrap_or(default);
        if !(v > 0.0) {
            return Err(ConfigError::key(key, format!("must be > 0 (got {v})")));
        }
        Ok(v)
    }

    pub fn tube_radius(&self) -> Result<f64, ConfigError> {
        Self::positive(self.tube_radius, 7.0, "geometry.tube_radius")
    }

    pub fn pitch(&self) -> Result<f64, ConfigError> {
        Self::positive(self.pitch, 10.0, "geometry.pitch")
    }

    pub fn length(&self, default: f64) -> Result<f64, ConfigError> {
        Self::positive(self.length, default, "geometry.length")
    }

    pub fn stage_length(&self) -> Result<f64, ConfigError> {
        Self::positive(self.stage_length, 8000.0, "geometry.stage_length")
    }

    pub fn intermediate_radius(&self) -> Result<f64, ConfigError> {
        Self::positive(self.intermediate_radius, 14.0, "geometry.intermediate_radius")
    }

    pub fn start_pitch(&self) -> Result<f64, ConfigError> {
        Self::positive(self.start_pitch, V_GROOVE_PITCH, "geometry.start_pitch")
    }

    pub fn n_guides(&self, default: usize, minimum: usize) -> Result<usize, ConfigError> {
        let n = self.n_guides.unwrap_or(default);
        if n < minimum {
            return Err(ConfigError::key(
                "geometry.n_guides",
                format!("must be >= {minimum} (got {n})"),
            ));
        }
        Ok(n)
    }

    pub fn stages(&self) -> Result<u8, ConfigError> {
        let s = self.stages.unwrap_or(1);
        if !(s == 1 || s == 2) {
            return Err(ConfigError::key("geometry.stages", format!("must be 1 or 2 (got {s})")));
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkGraphName {
    Ring,
    Line,
    Gluedtree,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkSection {
    pub graph: Option<WalkGraphName>,
    /// Vertex count for ring and line graphs.
    pub n: Option<usize>,
    /// Glued-tree depth.
    pub depth: Option<usize>,
    /// Jump rate per unit time.
    pub gamma: Option<f64>,
    /// Evolution horizon for continuous walks.
    pub t_max: Option<f64>,
    /// Number of sampled times.
    pub samples: Option<usize>,
    /// Discrete steps for coined and scattering walks.
    pub steps: Option<usize>,
    /// Classical Monte Carlo walker count.
    pub walkers: Option<usize>,
    /// Beamsplitter reflection and transmission (real) for the scattering
    /// walk; must satisfy r^2 + t^2 = 1.
    pub reflection: Option<f64>,
    pub transmission: Option<f64>,
    /// Sites in the scattering line.
    pub n_sites: Option<usize>,
    /// Launch vertex for ctqw.
    pub start_vertex: Option<usize>,
}

impl WalkSection {
    pub fn gamma(&self) -> Result<f64, ConfigError> {
        let g = self.gamma.unwrap_or(1.0);
        if !(g > 0.0) {
            return Err(ConfigError::key("walk.gamma", format!("must be > 0 (got {g})")));
        }
        Ok(g)
    }

    pub fn t_max(&self, default: f64) -> Result<f64, ConfigError> {
        let t = self.t_max.unwrap_or(default);
        if !(t > 0.0) {
            return Err(ConfigError::key("walk.t_max", format!("must be > 0 (got {t})")));
        }
        Ok(t)
    }

    pub fn samples(&self, default: usize) -> Result<usize, ConfigError> {
        let s = self.samples.unwrap_or(default);
        if s < 2 {
            return Err(ConfigError::key("walk.samples", format!("must be >= 2 (got {s})")));
        }
        Ok(s)
    }

    pub fn splitter(&self) -> Result<(f64, f64), ConfigError> {
        let r = self.reflection.unwrap_or(std::f64::consts::FRAC_1_SQRT_2);
        let t = self.transmission.unwrap_or(std::f64::consts::FRAC_1_SQRT_2);
        let mag = r * r + t * t;
        if (mag - 1.0).abs() > 1e-12 {
            return Err(ConfigError::key(
                "walk.reflection",
                format!("reflection^2 + transmission^2 must be 1 (got {mag})"),
            ));
        }
        Ok((r, t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeviceName {
    Coupler,
    Planar,
    Tube,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKindName {
    Distinguishable,
    Indistinguishable,
    Entangled,
    Classical,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelationsSection {
    pub device: Option<DeviceName>,
    pub input_kind: Option<InputKindName>,
    /// Input guide pair.
    pub k: Option<usize>,
    pub l: Option<usize>,
    /// Relative phase of the path-entangled input, rad.
    pub phase: Option<f64>,
    /// Phase samples for the classical average; 0 selects the closed form.
    pub n_phases: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionSection {
    /// Grid intervals recorded over the propagation length.
    pub z_steps: Option<usize>,
    /// Guide the light is launched into.
    pub launch: Option<usize>,
    /// Minimum revival fraction reported as a recurrence.
    pub recurrence_threshold: Option<f64>,
}

impl EvolutionSection {
    pub fn z_steps(&self) -> Result<usize, ConfigError> {
        let s = self.z_steps.unwrap_or(400);
        if s == 0 {
            return Err(ConfigError::key("evolution.z_steps", "must be >= 1"));
        }
        Ok(s)
    }

    pub fn launch(&self, n_guides: usize) -> Result<usize, ConfigError> {
        let l = self.launch.unwrap_or(0);
        if l >= n_guides {
            return Err(ConfigError::key(
                "evolution.launch",
                format!("guide index {l} out of range for {n_guides} guides"),
            ));
        }
        Ok(l)
    }

    pub fn recurrence_threshold(&self) -> Result<f64, ConfigError> {
        let t = self.recurrence_threshold.unwrap_or(0.9);
        if !(t > 0.0) {
            return Err(ConfigError::key(
                "evolution.recurrence_threshold",
                format!("must be > 0 (got {t})"),
            ));
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeatmapName {
    Gray,
    Viridis,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    /// Output directory; the CLI --out flag overrides it.
    pub dir: Option<String>,
    pub heatmap: Option<HeatmapName>,
}

/// A parsed experiment configuration. Sections not used by the selected
/// experiment may be present; their values are ignored.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub waveguide: WaveguideSection,
    #[serde(default)]
    pub geometry: GeometrySection,
    #[serde(default)]
    pub walk: WalkSection,
    #[serde(default)]
    pub correlations: CorrelationsSection,
    #[serde(default)]
    pub evolution: EvolutionSection,
    #[serde(default)]
    pub output: OutputSection,
    /// Monte Carlo seed; recorded in outputs that depend on it.
    pub seed: Option<u32>,
}

impl ExperimentConfig {
    /// Parses a JSON document, optionally applying `path=value` overrides
    /// (dotted paths, e.g. `geometry.tube_radius=10`) before the schema
    /// check.
    pub fn from_json(json: &str, overrides: &[String]) -> Result<Self, ConfigError> {
        let mut value: serde_json::Value =
            serde_json::from_str(json).map_err(|e| ConfigError::Parse(e.to_string()))?;
        for ov in overrides {
            apply_override(&mut value, ov)?;
        }
        serde_json::from_value(value).map_err(|e| ConfigError::Parse(e.to_string()))
    }
}

/// Sets `path=value` inside a JSON tree. The value is parsed as JSON when
/// possible (numbers, booleans) and kept as a string otherwise.
fn apply_override(root: &mut serde_json::Value, assignment: &str) -> Result<(), ConfigError> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| ConfigError::BadOverride(assignment.to_string()))?;
    if path.is_empty() {
        return Err(ConfigError::BadOverride(assignment.to_string()));
    }
    let parsed: serde_json::Value = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut node = root;
    let segments: Vec<&str> = path.split('.').collect();
    for (i, seg) in segments.iter().enumerate() {
        let obj = node.as_object_mut().ok_or_else(|| {
            ConfigError::key(
                &segments[..i].join("."),
                "cannot descend into a non-object value",
            )
        })?;
        if i + 1 == segments.len() {
            obj.insert(seg.to_string(), parsed);
            return Ok(());
        }
        node = obj
            .entry(seg.to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    unreachable!("loop always returns on the last segment")
}
