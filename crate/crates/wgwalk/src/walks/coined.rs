//! The coined discrete-time walk on the integer line. State space is
//! positions tensor a two-level coin; one step applies the Hadamard coin
//!
//!   |up>   -> (|up> + |down>) / sqrt(2)
//!   |down> -> (|up> - |down>) / sqrt(2)
//!
//! then the conditional shift moving up-coin amplitude one site left and
//! down-coin amplitude one site right.

use num_complex::Complex64;

use super::{PositionDistribution, WalkError};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Walker state over positions and the two coin components. The support
/// grows by one site on each side per step.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinedState {
    up: Vec<Complex64>,
    down: Vec<Complex64>,
    min_position: i64,
}

impl CoinedState {
    /// Walker localised at `position` with the given coin amplitudes.
    pub fn localized(
        position: i64,
        up_amp: Complex64,
        down_amp: Complex64,
    ) -> Result<Self, WalkError> {
        let norm_sq = up_amp.norm_sqr() + down_amp.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(WalkError::InvalidState(format!(
                "coin amplitudes must be normalized, |.|^2 = {norm_sq}"
            )));
        }
        Ok(Self { up: vec![up_amp], down: vec![down_amp], min_position: position })
    }

    /// The balanced initial state (|up> + i |down>)/sqrt(2) at the origin,
    /// whose walk distribution is exactly symmetric at all times.
    pub fn symmetric_initial() -> Self {
        Self {
            up: vec![Complex64::new(FRAC_1_SQRT_2, 0.0)],
            down: vec![Complex64::new(0.0, FRAC_1_SQRT_2)],
            min_position: 0,
        }
    }

    pub fn min_position(&self) -> i64 {
        self.min_position
    }

    pub fn max_position(&self) -> i64 {
        self.min_position + self.up.len() as i64 - 1
    }

    pub fn up_at(&self, x: i64) -> Complex64 {
        self.amp(&self.up, x)
    }

    pub fn down_at(&self, x: i64) -> Complex64 {
        self.amp(&self.down, x)
    }

    fn amp(&self, arr: &[Complex64], x: i64) -> Complex64 {
        let idx = x - self.min_position;
        if idx < 0 || idx as usize >= arr.len() {
            Complex64::ZERO
        } else {
            arr[idx as usize]
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.up.iter().chain(self.down.iter()).map(|a| a.norm_sqr()).sum()
    }

    pub fn position_distribution(&self) -> PositionDistribution {
        PositionDistribution {
            min_position: self.min_position,
            probabilities: self
                .up
                .iter()
                .zip(self.down.iter())
                .map(|(u, d)| u.norm_sqr() + d.norm_sqr())
                .collect(),
        }
    }
}

/// One step of the walk: Hadamard coin, then the coin-conditioned shift.
pub fn coined_step(state: &CoinedState) -> CoinedState {
    let n = state.up.len();
    // after the shift the support widens by one site each way
    let mut up = vec![Complex64::ZERO; n + 2];
    let mut down = vec![Complex64::ZERO; n + 2];
    for i in 0..n {
        let u = state.up[i];
        let d = state.down[i];
        let coined_up = FRAC_1_SQRT_2 * (u + d);
        let coined_down = FRAC_1_SQRT_2 * (u - d);
        up[i] += coined_up; // up moves one site down the line
        down[i + 2] += coined_down; // down moves one site up the line
    }
    CoinedState { up, down, min_position: state.min_position - 1 }
}

/// Runs `steps` coined steps from the given state.
pub fn coined_walk(initial: &CoinedState, steps: usize) -> CoinedState {
    let mut s = initial.clone();
    for _ in 0..steps {
        s = coined_step(&s);
    }
    s
}
