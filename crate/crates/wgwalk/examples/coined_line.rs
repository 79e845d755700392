//! The coined walk on the line from the balanced initial state: a symmetric
//! two-horned distribution spreading linearly in time, variance ~ t^2.
//!
//!   cargo run -p wgwalk --example coined_line

use wgwalk::walks::coined::{coined_step, CoinedState};
use wgwalk::walks::{classical_binomial_distribution, variance_exponent, DistributionTrace};

fn main() {
    let mut state = CoinedState::symmetric_initial();
    let mut traces = Vec::new();
    for t in 1..=100usize {
        state = coined_step(&state);
        if t == 32 {
            let p = state.position_distribution();
            println!("distribution after 32 steps (even sites):");
            for x in (-32..=32).step_by(4) {
                let bar = "#".repeat((p.prob_at(x) * 400.0) as usize);
                println!("  x = {x:4}  {:.5}  {bar}", p.prob_at(x));
            }
            println!("asymmetry max|P(x) - P(-x)| = {:.2e}\n", p.asymmetry());
        }
        if t >= 10 {
            traces.push(DistributionTrace {
                time: t as f64,
                distribution: state.position_distribution(),
            });
        }
    }

    let quantum = variance_exponent(&traces).unwrap();
    let classical_traces: Vec<DistributionTrace> = (10..=100)
        .map(|t| DistributionTrace {
            time: t as f64,
            distribution: classical_binomial_distribution(t),
        })
        .collect();
    let classical = variance_exponent(&classical_traces).unwrap();
    println!("variance growth exponent, quantum walk:  {quantum:.4} (ballistic ~ 2)");
    println!("variance growth exponent, classical walk: {classical:.4} (diffusive = 1)");
}
