//! The two-guide directional coupler: coupling coefficient, complete
//! transfer length, and the sin^2 power exchange along z.
//!
//!   cargo run -p wgwalk --example two_guide_coupler

use wgwalk::evolution::evolve_ode;
use wgwalk::{
    build_planar, coupling_coefficient, coupling_length_cmt, coupling_length_empirical,
    find_recurrence, solve_dispersion, AmplitudeState, CouplingFit, WaveguideSpec,
};

fn main() {
    let spec = WaveguideSpec::direct_write_default();
    let modal = solve_dispersion(&spec).unwrap();
    let fit = CouplingFit::default();

    println!("separation d | C (rad/um)   | L = pi/2C (um) | empirical fit (um)");
    for d in [7.0, 8.0, 10.0, 12.0, 14.0] {
        let c = coupling_coefficient(&spec, &modal, d).unwrap();
        let l = coupling_length_cmt(&spec, d).unwrap();
        let le = coupling_length_empirical(d, &fit).unwrap();
        println!("{d:10.1} um | {c:.6e} | {l:14.1} | {le:14.1}");
    }

    let d = 10.0;
    let model = build_planar(2, d, &spec, false).unwrap();
    let l = coupling_length_cmt(&spec, d).unwrap();
    let record = evolve_ode(&model, &AmplitudeState::single_guide(2, 0), 2.2 * l, 400).unwrap();
    println!("\npropagation at d = {d} um (L = {l:.1} um):");
    for j in (0..record.z_grid.len()).step_by(50) {
        println!(
            "  z = {:8.1} um  |A1|^2 = {:.6}  |A2|^2 = {:.6}",
            record.z_grid[j], record.intensity[j][0], record.intensity[j][1]
        );
    }
    let r = find_recurrence(&record, 0, 0.9).expect("full beat inside the scan");
    println!("first recurrence in the launch guide: z = {:.1} um, peak = {:.9}", r.z, r.peak_fraction);
    println!("(analytic: z = pi/C = 2L = {:.1} um)", 2.0 * l);
}
