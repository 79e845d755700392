//! The scattering walk: photons on the directed edges of a line of
//! beamsplitter sites. A photon on edge |j-1, j> is incident on site j; if
//! that site carries a beamsplitter this step, the pair of incoming edge
//! amplitudes is mixed by the unitary block
//!
//!   B = [ -r*  t ]   acting on (|j+1,j>, |j-1,j>) -> (|j,j+1>, |j,j-1>),
//!       [  t*  r ]
//!
//! otherwise the photon continues straight through. Beamsplitters occupy
//! alternately the odd and the even interior sites, and the two boundary
//! sites reflect incoming amplitude back along the same edge, which keeps
//! every step exactly unitary on the finite line.

use num_complex::Complex64;

use super::{PositionDistribution, WalkError};

/// Which set of interior sites carries beamsplitters this step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepParity {
    Odd,
    Even,
}

impl StepParity {
    pub fn other(self) -> Self {
        match self {
            StepParity::Odd => StepParity::Even,
            StepParity::Even => StepParity::Odd,
        }
    }

    fn fires(self, site: usize, n_sites: usize) -> bool {
        let interior = site > 0 && site < n_sites - 1;
        interior
            && match self {
                StepParity::Odd => site % 2 == 1,
                StepParity::Even => site.is_multiple_of(2),
            }
    }
}

/// Amplitudes over the directed edges |j, j+1> (rightward) and |j+1, j>
/// (leftward) between `n_sites` sites on a line.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringState {
    rightward: Vec<Complex64>,
    leftward: Vec<Complex64>,
}

impl ScatteringState {
    /// A single photon on the rightward edge |tail, tail+1>.
    pub fn single_rightward(n_sites: usize, tail: usize) -> Result<Self, WalkError> {
        if n_sites < 3 || tail + 1 >= n_sites {
            return Err(WalkError::InvalidState(format!(
                "need n_sites >= 3 and tail + 1 < n_sites, got {n_sites}, {tail}"
            )));
        }
        let mut s = Self {
            rightward: vec![Complex64::ZERO; n_sites - 1],
            leftward: vec![Complex64::ZERO; n_sites - 1],
        };
        s.rightward[tail] = Complex64::ONE;
        Ok(s)
    }

    pub fn n_sites(&self) -> usize {
        self.rightward.len() + 1
    }

    /// Amplitude of the directed edge |from, to>; zero when the pair is not
    /// a valid edge.
    pub fn edge_amp(&self, from: usize, to: usize) -> Complex64 {
        if to == from + 1 && to < self.n_sites() {
            self.rightward[from]
        } else if from == to + 1 && from < self.n_sites() {
            self.leftward[to]
        } else {
            Complex64::ZERO
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.rightward
            .iter()
            .chain(self.leftward.iter())
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// Probability per site, locating each directed edge at its head —
    /// the site the photon is arriving at.
    pub fn position_distribution(&self) -> PositionDistribution {
        let n = self.n_sites();
        let mut probs = vec![0.0; n];
        for e in 0..n - 1 {
            probs[e + 1] += self.rightward[e].norm_sqr();
            probs[e] += self.leftward[e].norm_sqr();
        }
        PositionDistribution { min_position: 0, probabilities: probs }
    }
}

/// Applies one column of beamsplitters with reflection coefficient `r` and
/// transmission `t` (|r|^2 + |t|^2 = 1) on the sites selected by `parity`.
pub fn scattering_step(
    state: &ScatteringState,
    r: Complex64,
    t: Complex64,
    parity: StepParity,
) -> Result<ScatteringState, WalkError> {
    let magnitude = r.norm_sqr() + t.norm_sqr();
    if (magnitude - 1.0).abs() > 1e-12 {
        return Err(WalkError::NonUnitaryCoin { magnitude });
    }
    let n_sites = state.n_sites();
    let n_edges = n_sites - 1;
    let mut rightward = vec![Complex64::ZERO; n_edges];
    let mut leftward = vec![Complex64::ZERO; n_edges];

    for site in 0..n_sites {
        if parity.fires(site, n_sites) {
            let in_left = state.rightward[site - 1]; // |site-1, site>
            let in_right = state.leftward[site]; // |site+1, site>
            rightward[site] += -r.conj() * in_right + t * in_left;
            leftward[site - 1] += t.conj() * in_right + r * in_left;
        } else {
            // straight through, or reflected at the two boundary sites
            if site >= 1 {
                let arriving = state.rightward[site - 1];
                if site == n_sites - 1 {
                    leftward[site - 1] += arriving;
                } else {
                    rightward[site] += arriving;
                }
            }
            if site <= n_sites - 2 {
                let arriving = state.leftward[site];
                if site == 0 {
                    rightward[site] += arriving;
                } else {
                    leftward[site - 1] += arriving;
                }
            }
        }
    }
    Ok(ScatteringState { rightward, leftward })
}

/// Runs `steps` alternating columns starting with `first` parity.
pub fn scattering_walk(
    initial: &ScatteringState,
    r: Complex64,
    t: Complex64,
    first: StepParity,
    steps: usize,
) -> Result<ScatteringState, WalkError> {
    let mut s = initial.clone();
    let mut parity = first;
    for _ in 0..steps {
        s = scattering_step(&s, r, t, parity)?;
        parity = parity.other();
    }
    Ok(s)
}
