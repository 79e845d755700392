//! Modal and coupling quantities of step-index waveguides: the fundamental
//! mode of a single guide from the Bessel dispersion relation, the
//! evanescent coupling coefficient between two parallel guides, the beat
//! (complete-transfer) length, and the empirical exponential fit of beat
//! length against separation.
//!
//! Everything is worked in micrometres; coupling rates and propagation
//! constants are rad/um.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bessel::{j0, j1, k0, k1};

/// V-number limit below which a step-index guide carries one mode.
pub const SINGLE_MODE_V_LIMIT: f64 = 2.405;

/// First zero of J0; the fundamental-mode transverse parameter U lies below it.
const J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;

#[derive(Debug, Error)]
pub enum OpticsError {
    #[error("invalid waveguide spec: {0}")]
    InvalidSpec(String),
    #[error("guide is multimode: V = {v:.6} >= {SINGLE_MODE_V_LIMIT}")]
    MultiMode { v: f64 },
    #[error("dispersion root bracketing failed: {0}")]
    NoSolution(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

/// Physical parameters of one step-index guide.
///
/// The defaults mirror the direct-write guides this models: 2.972 um mode
/// width (radius 1.486 um), refractive contrast 0.00455 over a fused-silica
/// background of 1.4533, written for 800 nm light.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveguideSpec {
    /// Core radius, um.
    pub core_radius: f64,
    /// Core refractive index n1.
    pub n_core: f64,
    /// Cladding refractive index n2.
    pub n_clad: f64,
    /// Free-space wavelength, um.
    pub wavelength: f64,
}

impl WaveguideSpec {
    /// Wavelength the devices are designed and written for.
    pub const FABRICATION_WAVELENGTH: f64 = 0.80;
    /// Wavelength used when characterising them with bright light.
    pub const CHARACTERIZATION_WAVELENGTH: f64 = 0.78;

    pub fn direct_write_default() -> Self {
        Self {
            core_radius: 1.486,
            n_clad: 1.4533,
            n_core: 1.4533 + 0.00455,
            wavelength: Self::FABRICATION_WAVELENGTH,
        }
    }

    pub fn validate(&self) -> Result<(), OpticsError> {
        if !(self.core_radius > 0.0) {
            return Err(OpticsError::InvalidSpec(format!(
                "core_radius must be > 0, got {}",
                self.core_radius
            )));
        }
        if !(self.wavelength > 0.0) {
            return Err(OpticsError::InvalidSpec(format!(
                "wavelength must be > 0, got {}",
                self.wavelength
            )));
        }
        if !(self.n_core > self.n_clad && self.n_clad > 1.0) {
            return Err(OpticsError::InvalidSpec(format!(
                "need n_core > n_clad > 1, got n_core = {}, n_clad = {}",
                self.n_core, self.n_clad
            )));
        }
        Ok(())
    }
}

/// Dimensionless mode parameters and the propagation constant of the
/// fundamental mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalSolution {
    /// Transverse core parameter.
    pub u: f64,
    /// Normalized frequency.
    pub v: f64,
    /// Transverse cladding parameter, W = sqrt(V^2 - U^2).
    pub w: f64,
    /// Profile parameter delta = 1 - (n2/n1)^2.
    pub delta: f64,
    /// Propagation constant, rad/um.
    pub beta: f64,
}

impl ModalSolution {
    /// Residual of the dispersion relation U J1(U)/J0(U) - W K1(W)/K0(W).
    pub fn dispersion_residual(&self) -> f64 {
        dispersion_mismatch(self.u, self.v)
    }
}

fn dispersion_mismatch(u: f64, v: f64) -> f64 {
    let w = (v * v - u * u).sqrt();
    u * j1(u) / j0(u) - w * k1(w) / k0(w)
}

/// Solves the fundamental-mode dispersion relation for a single-mode guide.
///
/// U is bracketed in (0, min(V, j0_zero)) and bisected to 1e-12; the
/// mismatch between the two sides of the relation is monotone there, rising
/// from negative at U -> 0 to positive at the right end of the bracket.
pub fn solve_dispersion(spec: &WaveguideSpec) -> Result<ModalSolution, OpticsError> {
    spec.validate()?;
    let delta = 1.0 - (spec.n_clad / spec.n_core).powi(2);
    let v = 2.0 * std::f64::consts::PI * spec.core_radius * spec.n_core * delta.sqrt()
        / spec.wavelength;
    if v >= SINGLE_MODE_V_LIMIT {
        return Err(OpticsError::MultiMode { v });
    }

    let mut lo = 1e-6;
    let mut hi = v.min(J0_FIRST_ZERO) - 1e-6;
    if hi <= lo {
        return Err(OpticsError::NoSolution(format!(
            "V = {v:.3e} leaves no bracket for U"
        )));
    }
    let f_lo = dispersion_mismatch(lo, v);
    let f_hi = dispersion_mismatch(hi, v);
    if f_lo.signum() == f_hi.signum() {
        return Err(OpticsError::NoSolution(format!(
            "no sign change over U in ({lo:.3e}, {hi:.3e}); mode too close to cutoff"
        )));
    }
    let rising = f_hi > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = dispersion_mismatch(mid, v);
        if (fm > 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    let u = 0.5 * (lo + hi);
    let w = (v * v - u * u).sqrt();
    let k_core = 2.0 * std::f64::consts::PI * spec.n_core / spec.wavelength;
    let beta = (k_core * k_core - u * u / (spec.core_radius * spec.core_radius)).sqrt();
    Ok(ModalSolution { u, v, w, delta, beta })
}

/// Evanescent coupling coefficient between two identical parallel guides
/// separated centre-to-centre by `separation` um:
///
///   C = sqrt(delta) U^2 K0(W d / r) / (r V^3 K1(W)^2)
pub fn coupling_coefficient(
    spec: &WaveguideSpec,
    modal: &ModalSolution,
    separation: f64,
) -> Result<f64, OpticsError> {
    if separation < 2.0 * spec.core_radius {
        return Err(OpticsError::Geometry(format!(
            "cores overlap: separation {} um < 2 * core_radius {} um",
            separation,
            2.0 * spec.core_radius
        )));
    }
    let r = spec.core_radius;
    let c = modal.delta.sqrt() * modal.u * modal.u * k0(modal.w * separation / r)
        / (r * modal.v.powi(3) * k1(modal.w).powi(2));
    Ok(c)
}

/// Length over which light launched in one guide of a two-guide coupler
/// transfers completely to the other: L = pi / (2 C).
pub fn coupling_length_cmt(spec: &WaveguideSpec, separation: f64) -> Result<f64, OpticsError> {
    let modal = solve_dispersion(spec)?;
    let c = coupling_coefficient(spec, &modal, separation)?;
    Ok(std::f64::consts::PI / (2.0 * c))
}

/// Exponential fit L = a e^{b d} of complete-transfer length against guide
/// separation. The defaults are the constants of the empirical scan fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingFit {
    /// Prefactor, um.
    pub a: f64,
    /// Decay rate, 1/um.
    pub b: f64,
}

impl Default for CouplingFit {
    fn default() -> Self {
        Self { a: 87.988, b: 0.4005 }
    }
}

/// Evaluates the empirical coupling-length fit at separation `d` um.
/// At d = 0 the fit reduces to the prefactor a.
pub fn coupling_length_empirical(separation: f64, fit: &CouplingFit) -> Result<f64, OpticsError> {
    if !(separation >= 0.0) {
        return Err(OpticsError::Geometry(format!(
            "separation must be >= 0, got {separation}"
        )));
    }
    Ok(fit.a * (fit.b * separation).exp())
}

/// Least-squares fit of ln L = ln a + b d over (separation, length) samples.
pub fn fit_coupling_length(samples: &[(f64, f64)]) -> Result<CouplingFit, OpticsError> {
    if samples.len() < 3 {
        return Err(OpticsError::DegenerateFit(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    for &(d, l) in samples {
        if !(l > 0.0) {
            return Err(OpticsError::DegenerateFit(format!(
                "length must be > 0, got {l} at d = {d}"
            )));
        }
    }
    let n = samples.len() as f64;
    let mean_d = samples.iter().map(|(d, _)| d).sum::<f64>() / n;
    let mean_y = samples.iter().map(|(_, l)| l.ln()).sum::<f64>() / n;
    let sxx: f64 = samples.iter().map(|(d, _)| (d - mean_d).powi(2)).sum();
    if sxx == 0.0 {
        return Err(OpticsError::DegenerateFit(
            "all separations equal".to_string(),
        ));
    }
    let sxy: f64 = samples
        .iter()
        .map(|(d, l)| (d - mean_d) * (l.ln() - mean_y))
        .sum();
    let b = sxy / sxx;
    let a = (mean_y - b * mean_d).exp();
    Ok(CouplingFit { a, b })
}
