//! Spreading statistics: how fast a walk's position variance grows. A
//! log-log least-squares fit of sigma^2(t) distinguishes the ballistic
//! quantum walk (exponent 2) from the diffusive classical walk (exponent 1).

use super::{PositionDistribution, WalkError};

/// A position distribution tagged with the time it was recorded at.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTrace {
    pub time: f64,
    pub distribution: PositionDistribution,
}

/// Fits sigma^2(t) ~ t^alpha over the traces and returns alpha.
pub fn variance_exponent(traces: &[DistributionTrace]) -> Result<f64, WalkError> {
    if traces.len() < 10 {
        return Err(WalkError::DegenerateFit(format!(
            "need at least 10 time points, got {}",
            traces.len()
        )));
    }
    let mut xs = Vec::with_capacity(traces.len());
    let mut ys = Vec::with_capacity(traces.len());
    for tr in traces {
        if !(tr.time > 0.0) {
            return Err(WalkError::DegenerateFit(format!(
                "times must be positive, got {}",
                tr.time
            )));
        }
        let var = tr.distribution.variance();
        if !(var > 0.0) {
            return Err(WalkError::DegenerateFit(format!(
                "zero variance at t = {}; log-log fit undefined",
                tr.time
            )));
        }
        xs.push(tr.time.ln());
        ys.push(var.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(WalkError::DegenerateFit("all times equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

/// Exact distribution of the unbiased classical random walk after `steps`
/// steps: P(x) = C(steps, (steps+x)/2) / 2^steps on sites of matching
/// parity. Its variance is exactly `steps`.
pub fn classical_binomial_distribution(steps: usize) -> PositionDistribution {
    let t = steps;
    let mut probs = vec![0.0; 2 * t + 1];
    // walk up the binomial row from k = 0, scaling by 2^-t as we go
    let mut p = 0.5f64.powi(t as i32);
    for k in 0..=t {
        probs[2 * k] = p; // position x = 2k - t at index 2k
        if k < t {
            p *= (t - k) as f64 / (k + 1) as f64;
        }
    }
    PositionDistribution { min_position: -(t as i64), probabilities: probs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::coined::{coined_step, CoinedState};

    #[test]
    fn coined_walk_spreads_ballistically() {
        let mut state = CoinedState::symmetric_initial();
        let mut traces = Vec::new();
        for t in 1..=100usize {
            state = coined_step(&state);
            if t >= 10 {
                traces.push(DistributionTrace {
                    time: t as f64,
                    distribution: state.position_distribution(),
                });
            }
        }
        let alpha = variance_exponent(&traces).unwrap();
        assert!((1.8..=2.05).contains(&alpha), "exponent {alpha}");
    }

    #[test]
    fn classical_walk_spreads_diffusively() {
        let traces: Vec<DistributionTrace> = (10..=100)
            .map(|t| DistributionTrace {
                time: t as f64,
                distribution: classical_binomial_distribution(t),
            })
            .collect();
        let alpha = variance_exponent(&traces).unwrap();
        assert!((alpha - 1.0).abs() < 1e-9, "exponent {alpha}");
    }

    #[test]
    fn binomial_distribution_is_exact() {
        let p = classical_binomial_distribution(4);
        assert!((p.prob_at(0) - 6.0 / 16.0).abs() < 1e-15);
        assert!((p.prob_at(2) - 4.0 / 16.0).abs() < 1e-15);
        assert!((p.prob_at(4) - 1.0 / 16.0).abs() < 1e-15);
        assert_eq!(p.prob_at(1), 0.0);
        assert!((p.total() - 1.0).abs() < 1e-12);
        assert!((p.variance() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_drift_is_degenerate() {
        // a walker that always steps right has zero variance
        let traces: Vec<DistributionTrace> = (10..=60)
            .map(|t| DistributionTrace {
                time: t as f64,
                distribution: PositionDistribution {
                    min_position: t as i64,
                    probabilities: vec![1.0],
                },
            })
            .collect();
        assert!(matches!(
            variance_exponent(&traces),
            Err(WalkError::DegenerateFit(_))
        ));
    }

    #[test]
    fn too_few_points_rejected() {
        let traces: Vec<DistributionTrace> = (1..=5)
            .map(|t| DistributionTrace {
                time: t as f64,
                distribution: classical_binomial_distribution(t),
            })
            .collect();
        assert!(matches!(
            variance_exponent(&traces),
            Err(WalkError::DegenerateFit(_))
        ));
    }
}
