//! Shared test oracles, independent of the library's computation paths.
//! Each integration-test binary compiles this module separately and uses
//! only part of it.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use wgwalk::TransferMatrix;

/// Two-photon Fock-space oracle: builds the full bosonic two-photon unitary
/// on the symmetric subspace (dimension n(n+1)/2), evolves the requested
/// input state, and converts the outcome probabilities to the ordered-pair
/// correlation-matrix convention. Everything here is brute force on
/// purpose; it shares no code with the correlation formulas it checks.
pub struct FockOracle {
    n: usize,
    basis: Vec<(usize, usize)>,
    u2: DMatrix<Complex64>,
}

impl FockOracle {
    pub fn new(u: &TransferMatrix) -> Self {
        let n = u.size();
        let basis: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let dim = basis.len();
        let mut u2 = DMatrix::from_element(dim, dim, Complex64::ZERO);
        for (col, &(a, b)) in basis.iter().enumerate() {
            for (row, &(q, r)) in basis.iter().enumerate() {
                let amp = u.amp(q, a) * u.amp(r, b) + u.amp(q, b) * u.amp(r, a);
                let norm = (((1 + usize::from(a == b)) * (1 + usize::from(q == r))) as f64).sqrt();
                u2[(row, col)] = amp / norm;
            }
        }
        let oracle = Self { n, basis, u2 };
        assert!(
            oracle.unitarity_deviation() < 1e-10,
            "two-photon unitary deviates by {:e}",
            oracle.unitarity_deviation()
        );
        oracle
    }

    pub fn unitarity_deviation(&self) -> f64 {
        let dim = self.basis.len();
        let mut worst = 0.0f64;
        for a in 0..dim {
            for b in 0..dim {
                let mut dot = Complex64::ZERO;
                for k in 0..dim {
                    dot += self.u2[(k, a)].conj() * self.u2[(k, b)];
                }
                let want = if a == b { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((dot - want).norm());
            }
        }
        worst
    }

    fn index_of(&self, a: usize, b: usize) -> usize {
        let (lo, hi) = (a.min(b), a.max(b));
        self.basis.iter().position(|&p| p == (lo, hi)).unwrap()
    }

    fn gamma_from_input(&self, input: &[Complex64]) -> DMatrix<f64> {
        let dim = self.basis.len();
        let mut out = vec![Complex64::ZERO; dim];
        for (row, slot) in out.iter_mut().enumerate() {
            for (col, amp) in input.iter().enumerate() {
                *slot += self.u2[(row, col)] * amp;
            }
        }
        let mut m = DMatrix::zeros(self.n, self.n);
        for (i, &(a, b)) in self.basis.iter().enumerate() {
            let p = out[i].norm_sqr();
            m[(a, b)] = p;
            m[(b, a)] = p;
        }
        let total: f64 = m.iter().sum();
        m / total
    }

    /// Ordered-pair correlation matrix for one photon in guide k and one in
    /// guide l, fully indistinguishable.
    pub fn indistinguishable(&self, k: usize, l: usize) -> DMatrix<f64> {
        let mut input = vec![Complex64::ZERO; self.basis.len()];
        input[self.index_of(k, l)] = Complex64::ONE;
        self.gamma_from_input(&input)
    }

    /// Ordered-pair correlation matrix for (|2_k> + e^{i phase} |2_l>)/sqrt(2).
    pub fn path_entangled(&self, k: usize, l: usize, phase: f64) -> DMatrix<f64> {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut input = vec![Complex64::ZERO; self.basis.len()];
        input[self.index_of(k, k)] = s;
        input[self.index_of(l, l)] = s * Complex64::from_polar(1.0, phase);
        self.gamma_from_input(&input)
    }

    /// Ordered-pair correlation matrix for two photons made distinguishable
    /// by an internal label: an incoherent average of the two product
    /// assignments, no exchange interference.
    pub fn distinguishable(&self, u: &TransferMatrix, k: usize, l: usize) -> DMatrix<f64> {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        for q in 0..n {
            for r in 0..n {
                m[(q, r)] = 0.5
                    * (u.amp(q, k).norm_sqr() * u.amp(r, l).norm_sqr()
                        + u.amp(q, l).norm_sqr() * u.amp(r, k).norm_sqr());
            }
        }
        let total: f64 = m.iter().sum();
        m / total
    }
}

pub fn max_matrix_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
