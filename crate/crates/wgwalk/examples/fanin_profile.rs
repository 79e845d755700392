//! The raised-sine fan-in from the 127 um V-groove pitch onto the tube:
//! how the pairwise coupling switches on along z, and the light that leaks
//! between guides before the tube proper.
//!
//!   cargo run -p wgwalk --example fanin_profile

use wgwalk::evolution::evolve_ode;
use wgwalk::{fanin_coupling_profile, AmplitudeState, FanInPath, TubeGeometry, WaveguideSpec};

fn main() {
    let spec = WaveguideSpec::direct_write_default();
    let tube = TubeGeometry::fabricated_default();
    let fanin = FanInPath::two_stage(tube, 14.0, 8000.0);
    println!(
        "two-stage fan-in: {} um pitch -> R = {} um -> R = {} um over {} um",
        fanin.start_pitch,
        fanin.intermediate_radius,
        fanin.tube.tube_radius,
        fanin.total_length()
    );

    let model = fanin_coupling_profile(&fanin, &spec, 4001).unwrap();
    println!("\nnearest-pair coupling along z:");
    for s in 0..=8 {
        let z = fanin.total_length() * s as f64 / 8.0;
        let kappa = model.kappa_at(z);
        let strongest = (0..6)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| kappa[(i, j)])
            .fold(0.0f64, f64::max);
        println!("  z = {z:8.0} um  max kappa = {strongest:.3e} rad/um");
    }

    let record = evolve_ode(
        &model,
        &AmplitudeState::single_guide(6, 0),
        fanin.total_length(),
        400,
    )
    .unwrap();
    let final_i = record.intensity.last().unwrap();
    println!("\nintensity after the fan-in (launch in guide 0):");
    for (m, i) in final_i.iter().enumerate() {
        println!("  guide {m}: {i:.6}");
    }
    println!("the wide section is crosstalk-free; real coupling starts during the contraction");
}
