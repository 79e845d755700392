//! Continuous-time quantum walks. The graph is encoded as a Laplacian-form
//! Hamiltonian — diagonal entries k gamma for a vertex of degree k,
//! off-diagonal entries -gamma on edges — and the walk is the unitary
//! U(t) = exp(-i H t).

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::glued_tree::GluedTree;
use super::WalkError;

/// Graph family a continuous-time walk runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// N vertices on a circle.
    Ring { n: usize },
    /// Path graph with `n` vertices and reflecting ends.
    Line { n: usize },
    /// Two binary trees of the given depth glued leaf-to-leaf.
    GluedTree { depth: usize },
}

/// A graph plus the jump rate per unit time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub gamma: f64,
}

/// Real symmetric Laplacian-form walk generator.
#[derive(Debug, Clone, PartialEq)]
pub struct CtqwHamiltonian {
    matrix: DMatrix<f64>,
}

impl CtqwHamiltonian {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn n_vertices(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Builds the Laplacian Hamiltonian for a graph spec.
pub fn build_ctqw(spec: &GraphSpec) -> Result<CtqwHamiltonian, WalkError> {
    if !(spec.gamma > 0.0) {
        return Err(WalkError::InvalidGraph(format!(
            "gamma must be > 0, got {}",
            spec.gamma
        )));
    }
    let g = spec.gamma;
    let matrix = match spec.kind {
        GraphKind::Ring { n } => {
            if n < 3 {
                return Err(WalkError::InvalidGraph(format!("ring needs n >= 3, got {n}")));
            }
            let mut h = DMatrix::zeros(n, n);
            for i in 0..n {
                h[(i, i)] = 2.0 * g;
                h[(i, (i + 1) % n)] = -g;
                h[((i + 1) % n, i)] = -g;
            }
            h
        }
        GraphKind::Line { n } => {
            if n < 2 {
                return Err(WalkError::InvalidGraph(format!("line needs n >= 2, got {n}")));
            }
            let mut h = DMatrix::zeros(n, n);
            for i in 0..n - 1 {
                h[(i, i + 1)] = -g;
                h[(i + 1, i)] = -g;
            }
            for i in 0..n {
                let deg = if i == 0 || i == n - 1 { 1.0 } else { 2.0 };
                h[(i, i)] = deg * g;
            }
            h
        }
        GraphKind::GluedTree { depth } => GluedTree::new(depth)?.laplacian(g),
    };
    Ok(CtqwHamiltonian { matrix })
}

/// Probability of finding the walker at each vertex after time t, starting
/// localised at `initial_vertex`: p_v(t) = |<v| exp(-i H t) |v0>|^2.
pub fn ctqw_evolve(h: &CtqwHamiltonian, initial_vertex: usize, t: f64) -> Vec<f64> {
    assert!(initial_vertex < h.n_vertices(), "initial vertex out of range");
    assert!(t >= 0.0, "time must be nonnegative");
    let n = h.n_vertices();
    let eig = nalgebra::SymmetricEigen::new(h.matrix.clone());
    let q = &eig.eigenvectors;
    let mut out = vec![0.0; n];
    for (v, slot) in out.iter_mut().enumerate() {
        let mut amp = Complex64::ZERO;
        for k in 0..n {
            amp += q[(v, k)]
                * q[(initial_vertex, k)]
                * Complex64::from_polar(1.0, -eig.eigenvalues[k] * t);
        }
        *slot = amp.norm_sqr();
    }
    out
}
