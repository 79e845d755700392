//! Solve the fundamental mode of the default direct-write guide and print
//! the modal quantities the coupling model is built from.
//!
//!   cargo run -p wgwalk --example dispersion

use wgwalk::{solve_dispersion, WaveguideSpec};

fn main() {
    let spec = WaveguideSpec::direct_write_default();
    println!(
        "guide: r = {} um, n_core = {}, n_clad = {}, lambda = {} um",
        spec.core_radius, spec.n_core, spec.n_clad, spec.wavelength
    );
    let m = solve_dispersion(&spec).expect("default guide is single mode");
    println!("U     = {:.12}", m.u);
    println!("V     = {:.12}  (single-mode below 2.405)", m.v);
    println!("W     = {:.12}", m.w);
    println!("delta = {:.12}", m.delta);
    println!("beta  = {:.12} rad/um", m.beta);
    println!("dispersion residual = {:.3e}", m.dispersion_residual());
    println!("U^2 + W^2 - V^2     = {:.3e}", m.u * m.u + m.w * m.w - m.v * m.v);

    // the characterization wavelength gives a slightly different mode
    let red = WaveguideSpec { wavelength: WaveguideSpec::CHARACTERIZATION_WAVELENGTH, ..spec };
    let m780 = solve_dispersion(&red).unwrap();
    println!("at 780 nm: V = {:.6}, beta = {:.6} rad/um", m780.v, m780.beta);
}
