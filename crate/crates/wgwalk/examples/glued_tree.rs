//! Traversal of glued binary trees: the quantum walk crosses in linear
//! time while classical random walkers get stuck before the far root.
//!
//!   cargo run -p wgwalk --example glued_tree

use wgwalk::walks::glued_tree_traversal;

fn main() {
    let depth = 4;
    let trav = glued_tree_traversal(depth, 1.0, 10.0, 401, 100_000, 12345).unwrap();

    let right = trav.rightmost_trace();
    let (jmax, pmax) = right
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    println!(
        "G_{depth}: quantum right-root probability peaks at {:.4} (t = {:.2})",
        pmax, trav.times[jmax]
    );
    println!(
        "classical: {} walkers, {} steps each, {} reached the far root -> frequency {:.5}",
        trav.classical.walkers, trav.classical.steps, trav.classical.hits, trav.classical.frequency
    );
    println!(
        "quantum / classical = {:.1}  (classical is bounded by the 2^-n bottleneck, 2^-{depth} = {:.4})",
        pmax / trav.classical.frequency,
        0.5f64.powi(depth as i32)
    );

    // frontier speed at depth 6
    let deep = glued_tree_traversal(6, 1.0, 4.0, 401, 1, 0).unwrap();
    let frontier = deep.frontier_columns(0.9);
    println!("\nG_6 wavefront (90th percentile column) against time:");
    for j in (0..deep.times.len()).step_by(40) {
        println!("  t = {:4.2}  column {:2}", deep.times[j], frontier[j]);
    }
    println!("(the front advances about 2*sqrt(2) columns per unit time before reflecting)");
}
