//! Simulation of light and photon pairs in evanescently coupled waveguide
//! arrays, and of the quantum walks such arrays implement.
//!
//! The crate covers the chain from single-guide mode solving to two-photon
//! statistics:
//!
//! - [`waveguide`]: step-index mode solver, evanescent coupling coefficient,
//!   beat lengths and the empirical exponential fit of beat length vs
//!   separation.
//! - [`geometry`]: planar and tubular guide layouts, raised-sine fan-in
//!   paths, and the (possibly z-dependent) coupling matrices they induce.
//! - [`evolution`]: coupled-mode propagation by adaptive Runge-Kutta,
//!   by spectral decomposition, and by a circulant closed form; recurrence
//!   search and the non-nearest-neighbour coupling ratio.
//! - [`walks`]: continuous-time walks on rings, lines and glued binary
//!   trees; the coined walk on the line; the scattering (beamsplitter
//!   network) walk; spreading statistics.
//! - [`correlations`]: two-photon coincidence matrices for separable,
//!   indistinguishable and path-entangled inputs, plus the phase-averaged
//!   classical analogue.
//! - [`config`], [`runner`], [`report`]: the JSON experiment front end used
//!   by the `wgwalk` binary, with deterministic CSV and pixmap output.
//!
//! Lengths are micrometres, rates rad/um, and every runnable capability has
//! a matching example under `examples/`.

// `!(x > 0.0)` is the NaN-rejecting form the validators rely on
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod config;
pub mod correlations;
pub mod evolution;
pub mod geometry;
pub mod report;
pub mod runner;
pub mod walks;
pub mod waveguide;

pub use correlations::{
    corr_classical_phase_averaged, corr_distinguishable, corr_indistinguishable,
    corr_path_entangled, CorrelationMatrix, TransferMatrix,
};
pub use evolution::{
    circulant_oracle, evolve_expm, evolve_ode, find_recurrence, nnnc_ratio, AmplitudeState,
    PropagationRecord,
};
pub use geometry::{
    build_planar, build_tube, fanin_coupling_profile, raised_sine_path, CouplingModel, FanInPath,
    TubeGeometry,
};
pub use waveguide::{
    coupling_coefficient, coupling_length_cmt, coupling_length_empirical, fit_coupling_length,
    solve_dispersion, CouplingFit, ModalSolution, WaveguideSpec,
};
