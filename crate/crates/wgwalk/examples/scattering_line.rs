//! The scattering walk on a line of balanced beamsplitters, against the
//! coined walk it is equivalent to.
//!
//!   cargo run -p wgwalk --example scattering_line

use num_complex::Complex64;
use wgwalk::walks::coined::{coined_walk, CoinedState};
use wgwalk::walks::scattering::{scattering_walk, ScatteringState};
use wgwalk::walks::StepParity;

fn main() {
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let (r, t) = (Complex64::new(s2, 0.0), Complex64::new(s2, 0.0));
    let n_sites = 101;
    let centre = 51;
    let steps = 16;

    let init = ScatteringState::single_rightward(n_sites, centre - 1).unwrap();
    let out = scattering_walk(&init, r, t, StepParity::Odd, steps).unwrap();
    let p_scatt = out.position_distribution();

    let coined0 = CoinedState::localized(0, Complex64::ONE, Complex64::ZERO).unwrap();
    let p_coined = coined_walk(&coined0, steps).position_distribution();

    println!("after {steps} alternating beamsplitter columns (norm = {:.12}):", out.norm_sq());
    println!(" offset | scattering | coined (mirrored)");
    let mut worst = 0.0f64;
    for x in -(steps as i64)..=(steps as i64) {
        let a = p_scatt.prob_at(centre as i64 + x);
        let b = p_coined.prob_at(-x);
        worst = worst.max((a - b).abs());
        if a > 1e-12 || b > 1e-12 {
            println!("  {x:5} | {a:.8} | {b:.8}");
        }
    }
    println!("max difference = {worst:.2e}");
    println!("a photon entering rightward walks like the coined walker started in |up>, mirrored");
}
