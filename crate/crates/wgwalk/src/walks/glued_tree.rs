//! Glued binary trees: two depth-n binary trees joined at their leaves,
//! 2n+1 columns of vertices, 3 * 2^n - 2 vertices in all. The quantum walk
//! crosses the graph in time linear in n while a classical random walker
//! gets trapped near the wide middle.
//!
//! Starting from the left root, the walk stays inside the column-symmetric
//! subspace, so column probabilities come from an exact (2n+1)-site chain
//! with uniform hopping -sqrt(2) gamma; the full-graph Hamiltonian is kept
//! for cross-validation at small depth.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::WalkError;

/// Largest depth the traversal runs at; G_8 already has 766 vertices.
pub const MAX_DEPTH: usize = 8;

/// The graph itself, with its vertex-to-column bookkeeping.
#[derive(Debug, Clone)]
pub struct GluedTree {
    depth: usize,
    /// First vertex index of each column; one past the end as the last entry.
    offsets: Vec<usize>,
}

impl GluedTree {
    pub fn new(depth: usize) -> Result<Self, WalkError> {
        if depth == 0 {
            return Err(WalkError::InvalidGraph("glued tree needs depth >= 1".into()));
        }
        let mut offsets = vec![0];
        for j in 0..=2 * depth {
            offsets.push(offsets[j] + Self::column_size(depth, j));
        }
        Ok(Self { depth, offsets })
    }

    fn column_size(depth: usize, col: usize) -> usize {
        if col <= depth {
            1 << col
        } else {
            1 << (2 * depth - col)
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn n_columns(&self) -> usize {
        2 * self.depth + 1
    }

    pub fn n_vertices(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn column_of(&self, vertex: usize) -> usize {
        self.offsets.partition_point(|&o| o <= vertex) - 1
    }

    /// Edges as (left-column vertex, right-column vertex) pairs. Columns up
    /// to the middle fan out by two children per vertex; past the middle the
    /// pattern mirrors, with each right-side vertex owning two children in
    /// the column nearer the middle.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.depth;
        let mut edges = Vec::new();
        for j in 0..n {
            for v in 0..Self::column_size(n, j) {
                edges.push((self.offsets[j] + v, self.offsets[j + 1] + 2 * v));
                edges.push((self.offsets[j] + v, self.offsets[j + 1] + 2 * v + 1));
            }
        }
        for j in n..2 * n {
            for v in 0..Self::column_size(n, j + 1) {
                edges.push((self.offsets[j] + 2 * v, self.offsets[j + 1] + v));
                edges.push((self.offsets[j] + 2 * v + 1, self.offsets[j + 1] + v));
            }
        }
        edges
    }

    /// Full-graph Laplacian, gamma times (degree matrix minus adjacency).
    pub fn laplacian(&self, gamma: f64) -> DMatrix<f64> {
        let nv = self.n_vertices();
        let mut h = DMatrix::zeros(nv, nv);
        for (a, b) in self.edges() {
            h[(a, b)] = -gamma;
            h[(b, a)] = -gamma;
            h[(a, a)] += gamma;
            h[(b, b)] += gamma;
        }
        h
    }

    /// The walk generator restricted to column-uniform states: a chain over
    /// the 2n+1 columns with hopping -sqrt(2) gamma everywhere and diagonal
    /// degree entries (2 at the roots and the middle, 3 elsewhere).
    pub fn collapsed_chain(&self, gamma: f64) -> DMatrix<f64> {
        let m = self.n_columns();
        let mut h = DMatrix::zeros(m, m);
        let hop = -2.0f64.sqrt() * gamma;
        for j in 0..m - 1 {
            h[(j, j + 1)] = hop;
            h[(j + 1, j)] = hop;
        }
        for j in 0..m {
            let deg = if j == 0 || j == self.depth || j == 2 * self.depth { 2.0 } else { 3.0 };
            h[(j, j)] = deg * gamma;
        }
        h
    }
}

/// Classical random-walk baseline: seeded walkers taking uniformly random
/// steps to neighbouring vertices, counted as traversed once they touch the
/// right root within the step budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalTraversal {
    pub walkers: usize,
    pub steps: usize,
    pub hits: usize,
    pub frequency: f64,
    pub seed: u64,
}

/// Quantum column-probability traces over time plus the classical baseline.
#[derive(Debug, Clone)]
pub struct GluedTreeTraversal {
    pub depth: usize,
    pub gamma: f64,
    pub times: Vec<f64>,
    /// column_probabilities[sample][column]
    pub column_probabilities: Vec<Vec<f64>>,
    pub classical: ClassicalTraversal,
}

impl GluedTreeTraversal {
    /// Probability in the rightmost column at each sampled time.
    pub fn rightmost_trace(&self) -> Vec<f64> {
        self.column_probabilities.iter().map(|row| *row.last().unwrap()).collect()
    }

    /// Smallest column holding the given cumulative quantile at each time.
    pub fn frontier_columns(&self, quantile: f64) -> Vec<usize> {
        self.column_probabilities
            .iter()
            .map(|row| {
                let mut acc = 0.0;
                for (c, p) in row.iter().enumerate() {
                    acc += p;
                    if acc >= quantile {
                        return c;
                    }
                }
                row.len() - 1
            })
            .collect()
    }
}

/// Runs the quantum walk from the left root for `samples` evenly spaced
/// times in [0, t_max], with a matched classical Monte Carlo baseline of
/// `walkers` discrete random walks given a step budget of round(gamma t_max)
/// steps each.
pub fn glued_tree_traversal(
    depth: usize,
    gamma: f64,
    t_max: f64,
    samples: usize,
    walkers: usize,
    seed: u64,
) -> Result<GluedTreeTraversal, WalkError> {
    if depth > MAX_DEPTH {
        return Err(WalkError::Scale(format!(
            "depth {depth} exceeds the desk-scale limit {MAX_DEPTH}"
        )));
    }
    if !(gamma > 0.0 && t_max > 0.0) || samples < 2 || walkers == 0 {
        return Err(WalkError::InvalidGraph(
            "need gamma > 0, t_max > 0, samples >= 2, walkers >= 1".into(),
        ));
    }
    let tree = GluedTree::new(depth)?;
    let chain = tree.collapsed_chain(gamma);
    let eig = nalgebra::SymmetricEigen::new(chain);
    let q = &eig.eigenvectors;
    let m = tree.n_columns();

    let times: Vec<f64> =
        (0..samples).map(|s| t_max * s as f64 / (samples - 1) as f64).collect();
    let column_probabilities: Vec<Vec<f64>> = times
        .iter()
        .map(|&t| {
            (0..m)
                .map(|col| {
                    let mut amp = num_complex::Complex64::ZERO;
                    for k in 0..m {
                        amp += q[(col, k)]
                            * q[(0, k)]
                            * num_complex::Complex64::from_polar(1.0, -eig.eigenvalues[k] * t);
                    }
                    amp.norm_sqr()
                })
                .collect()
        })
        .collect();

    let steps = (gamma * t_max).round().max(1.0) as usize;
    let classical = classical_traversal(&tree, walkers, steps, seed);

    Ok(GluedTreeTraversal { depth, gamma, times, column_probabilities, classical })
}

fn classical_traversal(
    tree: &GluedTree,
    walkers: usize,
    steps: usize,
    seed: u64,
) -> ClassicalTraversal {
    let nv = tree.n_vertices();
    let mut neighbours = vec![Vec::new(); nv];
    for (a, b) in tree.edges() {
        neighbours[a].push(b);
        neighbours[b].push(a);
    }
    let target = nv - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..walkers {
        let mut v = 0usize;
        for _ in 0..steps {
            let nbrs = &neighbours[v];
            v = nbrs[rng.gen_range(0..nbrs.len())];
            if v == target {
                hits += 1;
                break;
            }
        }
    }
    ClassicalTraversal {
        walkers,
        steps,
        hits,
        frequency: hits as f64 / walkers as f64,
        seed,
    }
}
