//! Quantum walks in the three formalisms the waveguide devices realise:
//! continuous-time walks generated by a graph Laplacian, the coined
//! discrete-time walk on the line, and the scattering walk on a line of
//! beamsplitters. [`spreading`] fits the growth exponent of the position
//! variance, the quantity that separates ballistic quantum walks from
//! diffusive classical ones.

pub mod coined;
pub mod ctqw;
pub mod glued_tree;
pub mod scattering;
pub mod spreading;

use thiserror::Error;

pub use coined::{coined_step, CoinedState};
pub use ctqw::{build_ctqw, ctqw_evolve, CtqwHamiltonian, GraphKind, GraphSpec};
pub use glued_tree::{glued_tree_traversal, ClassicalTraversal, GluedTree, GluedTreeTraversal};
pub use scattering::{scattering_step, ScatteringState, StepParity};
pub use spreading::{classical_binomial_distribution, variance_exponent, DistributionTrace};

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("walk too large for desk scale: {0}")]
    Scale(String),
    #[error("invalid walk state: {0}")]
    InvalidState(String),
    #[error("beamsplitter coin not unitary: |r|^2 + |t|^2 = {magnitude}")]
    NonUnitaryCoin { magnitude: f64 },
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

/// Probability distribution over integer walker positions.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    pub min_position: i64,
    pub probabilities: Vec<f64>,
}

impl PositionDistribution {
    pub fn prob_at(&self, x: i64) -> f64 {
        let idx = x - self.min_position;
        if idx < 0 || idx as usize >= self.probabilities.len() {
            0.0
        } else {
            self.probabilities[idx as usize]
        }
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(i, p)| (self.min_position + i as i64) as f64 * p)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.probabilities
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let x = (self.min_position + i as i64) as f64;
                (x - mean) * (x - mean) * p
            })
            .sum()
    }

    /// Largest |P(x) - P(-x)| over the support.
    pub fn asymmetry(&self) -> f64 {
        let max_abs = self
            .min_position
            .abs()
            .max(self.min_position + self.probabilities.len() as i64 - 1);
        (0..=max_abs)
            .map(|x| (self.prob_at(x) - self.prob_at(-x)).abs())
            .fold(0.0, f64::max)
    }
}
