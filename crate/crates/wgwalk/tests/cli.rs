//! End-to-end tests of the wgwalk binary: exit codes, output files,
//! overrides, sweeps, and structured error messages.

use std::path::Path;
use std::process::Command;

fn wgwalk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wgwalk"))
}

fn configs_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

#[test]
fn run_writes_declared_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("couple2");
    let status = wgwalk()
        .args(["run"])
        .arg(configs_dir().join("couple2.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    for name in ["intensity.csv", "coupling.csv", "recurrence.csv"] {
        assert!(out.join(name).exists(), "{name} missing");
    }
}

#[test]
fn set_overrides_reach_the_simulation() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for (dir, radius) in [(&a, "7"), (&b, "10")] {
        let status = wgwalk()
            .args(["run"])
            .arg(configs_dir().join("tube6.json"))
            .args(["--set", &format!("geometry.tube_radius={radius}")])
            .args(["--set", "evolution.z_steps=50"])
            .arg("--out")
            .arg(dir)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let read = |d: &Path| std::fs::read_to_string(d.join("nnnc.csv")).unwrap();
    assert_ne!(read(&a), read(&b), "different radii must change the NNNC report");
}

#[test]
fn invalid_value_fails_with_key_and_no_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("rejected");
    let output = wgwalk()
        .args(["run"])
        .arg(configs_dir().join("tube6.json"))
        .args(["--set", "geometry.tube_radius=-1"])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("geometry.tube_radius"), "stderr: {stderr}");
    assert!(!out.exists(), "rejected run must not leave outputs");
}

#[test]
fn unknown_key_is_named() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, r#"{"experiment": "tube", "geometry": {"tube_radiusx": 7}}"#).unwrap();
    let output = wgwalk().args(["run"]).arg(&bad).output().unwrap();
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("tube_radiusx"), "stderr: {stderr}");
}

#[test]
fn hom_heatmap_has_dark_off_diagonal_cells() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("hom");
    let status = wgwalk()
        .args(["run"])
        .arg(configs_dir().join("correlations_hom.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let data = std::fs::read(out.join("gamma.ppm")).unwrap();
    // header: P6, width height, maxval, each on its own line
    let header_end = data
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == b'\n')
        .map(|(i, _)| i)
        .nth(2)
        .unwrap()
        + 1;
    let header = std::str::from_utf8(&data[..header_end]).unwrap();
    let dims: Vec<usize> =
        header.lines().nth(1).unwrap().split(' ').map(|v| v.parse().unwrap()).collect();
    let (w, cell) = (dims[0], dims[0] / 2);
    let px = |x: usize, y: usize| -> [u8; 3] {
        let o = header_end + 3 * (y * w + x);
        [data[o], data[o + 1], data[o + 2]]
    };
    let centre = cell / 2;
    // bunching: the coincidence cells (0,1) and (1,0) sit at the bottom of
    // the colour table while the diagonal saturates it
    let off = px(cell + centre, centre);
    let diag = px(centre, centre);
    assert_eq!(off, [68, 1, 84], "off-diagonal cell maps to the lowest colour");
    assert_eq!(diag, [253, 231, 37], "diagonal cell saturates the colour table");
}

#[test]
fn missing_config_fails_cleanly() {
    let output = wgwalk().args(["run", "/nonexistent/nope.json"]).output().unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("cannot read"));
}

#[test]
fn sweep_fans_out_grid_points() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("sweep");
    let status = wgwalk()
        .args(["sweep"])
        .arg(configs_dir().join("dispersion.json"))
        .args(["--grid", "waveguide.wavelength=0.78:0.82:5"])
        .arg("--out")
        .arg(&out)
        .env("WGWALK_THREADS", "2")
        .status()
        .unwrap();
    assert!(status.success());
    let points: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(points.len(), 5);
    for p in points {
        assert!(p.join("modal.csv").exists(), "{} incomplete", p.display());
    }
}

#[test]
fn sweep_rejects_malformed_grid() {
    let output = wgwalk()
        .args(["sweep"])
        .arg(configs_dir().join("dispersion.json"))
        .args(["--grid", "waveguide.wavelength=0.78:0.82"])
        .output()
        .unwrap();
    assert!(!output.status.success());
}
