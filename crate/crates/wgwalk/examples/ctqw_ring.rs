//! Continuous-time walk on the three-vertex ring: the return probability
//! follows the closed form (5 + 4 cos 3 gamma t) / 9.
//!
//!   cargo run -p wgwalk --example ctqw_ring

use wgwalk::walks::{build_ctqw, ctqw_evolve, GraphKind, GraphSpec};

fn main() {
    let gamma = 1.0;
    let h = build_ctqw(&GraphSpec { kind: GraphKind::Ring { n: 3 }, gamma }).unwrap();
    println!("Hamiltonian (gamma = {gamma}):");
    for i in 0..3 {
        println!(
            "  [{:5.1} {:5.1} {:5.1}]",
            h.matrix()[(i, 0)],
            h.matrix()[(i, 1)],
            h.matrix()[(i, 2)]
        );
    }
    println!("\n   t    p_return  closed form   p_1       p_2");
    let mut worst = 0.0f64;
    for step in 0..=20 {
        let t = 0.25 * step as f64;
        let p = ctqw_evolve(&h, 0, t);
        let formula = (5.0 + 4.0 * (3.0 * gamma * t).cos()) / 9.0;
        worst = worst.max((p[0] - formula).abs());
        println!("  {t:4.2}  {:.6}  {formula:.6}     {:.6}  {:.6}", p[0], p[1], p[2]);
    }
    println!("\nmax |simulated - closed form| = {worst:.3e}");
}
