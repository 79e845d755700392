//! Two-photon coincidence statistics at the output of a waveguide array.
//!
//! Everything is driven by the single-photon transfer matrix u, with
//! u[q][k] the amplitude from input guide k to output guide q. For a photon
//! pair injected in guides (k, l) the coincidence matrix Gamma_qr holds the
//! probability that detectors at outputs q and r fire together:
//!
//! - distinguishable pair:   Gamma_qr ~ |u_qk|^2 |u_rl|^2 + |u_ql|^2 |u_rk|^2
//! - indistinguishable pair: Gamma_qr ~ |u_qk u_rl + u_ql u_rk|^2 / (1 + d_qr)
//! - path-entangled pair (|2_k> + e^{i phi} |2_l>)/sqrt(2):
//!   Gamma_qr ~ |u_qk u_rk + e^{i phi} u_ql u_rl|^2 / (1 + d_qr)
//! - classical phase-averaged light: Gamma_qr ~ <I_q(phi) I_r(phi)>_phi with
//!   I_q(phi) = |u_qk + e^{i phi} u_ql|^2.
//!
//! Matrices are normalized to sum to one over ordered pairs (q, r); the
//! (1 + d_qr) divisor handles the double counting of the bosonic diagonal.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::evolution::{evolve_expm, AmplitudeState, EvolutionError};
use crate::geometry::CouplingModel;

#[derive(Debug, Error)]
pub enum CorrelationError {
    #[error("matrix is not unitary: max deviation {deviation:e}")]
    NonUnitary { deviation: f64 },
    #[error("input guide {0} out of range for {1} guides")]
    InputOutOfRange(usize, usize),
    #[error("path-entangled input needs two distinct guides, got k = l = {0}")]
    DegenerateInput(usize),
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
}

/// End-to-end single-photon unitary of a device.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix {
    u: DMatrix<Complex64>,
}

impl TransferMatrix {
    /// Wraps a matrix, checking column orthonormality to 1e-10.
    pub fn new(u: DMatrix<Complex64>) -> Result<Self, CorrelationError> {
        let n = u.nrows();
        let mut deviation = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let mut dot = Complex64::ZERO;
                for q in 0..n {
                    dot += u[(q, a)].conj() * u[(q, b)];
                }
                let want = if a == b { Complex64::ONE } else { Complex64::ZERO };
                deviation = deviation.max((dot - want).norm());
            }
        }
        if deviation > 1e-10 {
            return Err(CorrelationError::NonUnitary { deviation });
        }
        Ok(Self { u })
    }

    /// Transfer matrix of a static coupling model propagated to z: column k
    /// is the output state of light launched in guide k.
    pub fn from_model(model: &CouplingModel, z: f64) -> Result<Self, CorrelationError> {
        let n = model.size();
        let mut u = DMatrix::from_element(n, n, Complex64::ZERO);
        for k in 0..n {
            let out = evolve_expm(model, &AmplitudeState::single_guide(n, k), z)?;
            for q in 0..n {
                u[(q, k)] = out.amplitudes()[q];
            }
        }
        Self::new(u)
    }

    pub fn size(&self) -> usize {
        self.u.nrows()
    }

    pub fn amp(&self, output: usize, input: usize) -> Complex64 {
        self.u[(output, input)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.u
    }
}

/// Which photon-pair input produced a correlation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputKind {
    Distinguishable,
    Indistinguishable,
    PathEntangled { phase: f64 },
    ClassicalPhaseAveraged { n_phases: usize },
}

/// Coincidence probabilities over ordered output pairs, normalized to one.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    gamma: DMatrix<f64>,
    pub input_guides: (usize, usize),
    pub input_kind: InputKind,
}

impl CorrelationMatrix {
    pub fn size(&self) -> usize {
        self.gamma.nrows()
    }

    pub fn prob(&self, q: usize, r: usize) -> f64 {
        self.gamma[(q, r)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.gamma
    }

    pub fn total(&self) -> f64 {
        self.gamma.iter().sum()
    }

    fn from_unnormalized(
        mut m: DMatrix<f64>,
        input_guides: (usize, usize),
        input_kind: InputKind,
    ) -> Self {
        let total: f64 = m.iter().sum();
        m /= total;
        Self { gamma: m, input_guides, input_kind }
    }
}

fn check_inputs(u: &TransferMatrix, k: usize, l: usize) -> Result<(), CorrelationError> {
    for idx in [k, l] {
        if idx >= u.size() {
            return Err(CorrelationError::InputOutOfRange(idx, u.size()));
        }
    }
    Ok(())
}

/// Coincidences for two photons distinguishable in some degree of freedom;
/// they traverse the array as independent classical particles.
pub fn corr_distinguishable(
    u: &TransferMatrix,
    k: usize,
    l: usize,
) -> Result<CorrelationMatrix, CorrelationError> {
    check_inputs(u, k, l)?;
    let n = u.size();
    let mut m = DMatrix::zeros(n, n);
    for q in 0..n {
        for r in 0..n {
            m[(q, r)] = u.amp(q, k).norm_sqr() * u.amp(r, l).norm_sqr()
                + u.amp(q, l).norm_sqr() * u.amp(r, k).norm_sqr();
        }
    }
    Ok(CorrelationMatrix::from_unnormalized(m, (k, l), InputKind::Distinguishable))
}

/// Coincidences for two indistinguishable photons: the bosonic two-photon
/// amplitude interferes the two ways the pair can reach (q, r).
pub fn corr_indistinguishable(
    u: &TransferMatrix,
    k: usize,
    l: usize,
) -> Result<CorrelationMatrix, CorrelationError> {
    check_inputs(u, k, l)?;
    let n = u.size();
    let mut m = DMatrix::zeros(n, n);
    for q in 0..n {
        for r in 0..n {
            let amp = u.amp(q, k) * u.amp(r, l) + u.amp(q, l) * u.amp(r, k);
            let divisor = if q == r { 2.0 } else { 1.0 };
            m[(q, r)] = amp.norm_sqr() / divisor;
        }
    }
    Ok(CorrelationMatrix::from_unnormalized(m, (k, l), InputKind::Indistinguishable))
}

/// Coincidences for the path-entangled pair (|2_k> + e^{i phase} |2_l>)/sqrt(2).
pub fn corr_path_entangled(
    u: &TransferMatrix,
    k: usize,
    l: usize,
    phase: f64,
) -> Result<CorrelationMatrix, CorrelationError> {
    check_inputs(u, k, l)?;
    if k == l {
        return Err(CorrelationError::DegenerateInput(k));
    }
    let n = u.size();
    let ph = Complex64::from_polar(1.0, phase);
    let mut m = DMatrix::zeros(n, n);
    for q in 0..n {
        for r in 0..n {
            let amp = u.amp(q, k) * u.amp(r, k) + ph * u.amp(q, l) * u.amp(r, l);
            let divisor = if q == r { 2.0 } else { 1.0 };
            m[(q, r)] = amp.norm_sqr() / divisor;
        }
    }
    Ok(CorrelationMatrix::from_unnormalized(m, (k, l), InputKind::PathEntangled { phase }))
}

/// Intensity correlations of bright classical light split between guides k
/// and l with a uniformly random relative phase. With `n_phases = 0` the
/// phase average is taken in closed form: the integrand is a degree-two
/// trigonometric polynomial, so <I_q I_r> has an exact expression; with
/// `n_phases >= 1` a uniform Riemann sum over that many phases is used,
/// which is already exact from three points on.
pub fn corr_classical_phase_averaged(
    u: &TransferMatrix,
    k: usize,
    l: usize,
    n_phases: usize,
) -> Result<CorrelationMatrix, CorrelationError> {
    check_inputs(u, k, l)?;
    let n = u.size();
    let mut m = DMatrix::zeros(n, n);
    if n_phases == 0 {
        // I_q(phi) = base_q + 2 Re(c_q e^{i phi}) with c_q = conj(u_qk) u_ql,
        // so <I_q I_r> = base_q base_r + 2 Re(c_q conj(c_r)).
        let base: Vec<f64> =
            (0..n).map(|q| u.amp(q, k).norm_sqr() + u.amp(q, l).norm_sqr()).collect();
        let cross: Vec<Complex64> = (0..n).map(|q| u.amp(q, k).conj() * u.amp(q, l)).collect();
        for q in 0..n {
            for r in 0..n {
                m[(q, r)] = base[q] * base[r] + 2.0 * (cross[q] * cross[r].conj()).re;
            }
        }
    } else {
        for s in 0..n_phases {
            let phi = 2.0 * std::f64::consts::PI * s as f64 / n_phases as f64;
            let ph = Complex64::from_polar(1.0, phi);
            let intensity: Vec<f64> =
                (0..n).map(|q| (u.amp(q, k) + ph * u.amp(q, l)).norm_sqr()).collect();
            for q in 0..n {
                for r in 0..n {
                    m[(q, r)] += intensity[q] * intensity[r] / n_phases as f64;
                }
            }
        }
    }
    Ok(CorrelationMatrix::from_unnormalized(
        m,
        (k, l),
        InputKind::ClassicalPhaseAveraged { n_phases },
    ))
}
