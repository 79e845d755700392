//! Light spreading ballistically through a 21-guide planar array, written
//! as a CSV for plotting.
//!
//!   cargo run -p wgwalk --example planar_array

use std::path::Path;

use wgwalk::evolution::evolve_ode;
use wgwalk::report::emit_csv;
use wgwalk::{build_planar, AmplitudeState, WaveguideSpec};

fn main() {
    let spec = WaveguideSpec::direct_write_default();
    let n = 21;
    let model = build_planar(n, 10.0, &spec, false).unwrap();
    let record =
        evolve_ode(&model, &AmplitudeState::single_guide(n, n / 2), 16_000.0, 200).unwrap();

    // a coarse text picture of |A_m(z)|^2
    println!("guide intensities (rows: z, columns: guide):");
    for j in (0..record.z_grid.len()).step_by(40) {
        let line: String = record.intensity[j]
            .iter()
            .map(|&i| {
                let level = (i * 40.0).min(9.0) as usize;
                char::from_digit(level as u32, 10).unwrap_or('9')
            })
            .collect();
        println!("  z = {:8.0} um  {line}", record.z_grid[j]);
    }

    let labels: Vec<String> =
        std::iter::once("z".to_string()).chain((0..n).map(|m| format!("i{m}"))).collect();
    let header: Vec<&str> = labels.iter().map(String::as_str).collect();
    let rows: Vec<Vec<f64>> = record
        .z_grid
        .iter()
        .zip(&record.intensity)
        .map(|(&z, row)| std::iter::once(z).chain(row.iter().copied()).collect())
        .collect();
    let out = Path::new("out-planar/intensity.csv");
    emit_csv(out, &header, &rows).unwrap();
    println!("wrote {}", out.display());
}
