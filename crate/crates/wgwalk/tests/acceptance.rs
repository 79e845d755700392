//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figures once its assertions hold. Run with
//!
//!   cargo test -p wgwalk --test acceptance -- --nocapture

mod common;

use std::time::Instant;

use num_complex::Complex64;
use wgwalk::config::ExperimentConfig;
use wgwalk::evolution::{circulant_oracle, evolve_expm, evolve_ode, nnnc_ratio};
use wgwalk::geometry::{build_planar, build_tube, CouplingModel, TubeGeometry};
use wgwalk::report::parse_csv;
use wgwalk::runner;
use wgwalk::walks::coined::{coined_step, coined_walk, CoinedState};
use wgwalk::walks::{
    build_ctqw, classical_binomial_distribution, ctqw_evolve, glued_tree_traversal,
    variance_exponent, DistributionTrace, GraphKind, GraphSpec,
};
use wgwalk::waveguide::{
    coupling_coefficient, coupling_length_empirical, fit_coupling_length, solve_dispersion,
    CouplingFit, SINGLE_MODE_V_LIMIT,
};
use wgwalk::{
    corr_classical_phase_averaged, corr_distinguishable, corr_indistinguishable,
    corr_path_entangled, AmplitudeState, TransferMatrix, WaveguideSpec,
};

use common::{max_matrix_diff, FockOracle};

fn default_spec() -> WaveguideSpec {
    WaveguideSpec::direct_write_default()
}

/// Criterion 1: dispersion correctness and speed on the default guide.
#[test]
fn acceptance_01_dispersion() {
    let spec = default_spec();
    let start = Instant::now();
    let modal = solve_dispersion(&spec).unwrap();
    let elapsed = start.elapsed();
    let residual = modal.dispersion_residual().abs();
    let identity = (modal.u * modal.u + modal.w * modal.w - modal.v * modal.v).abs();
    assert!(residual < 1e-10, "residual {residual:e}");
    assert!(identity < 1e-12, "U^2+W^2-V^2 = {identity:e}");
    assert!(modal.v < SINGLE_MODE_V_LIMIT, "V = {}", modal.v);
    assert!(elapsed.as_secs_f64() < 1e-3, "solve took {elapsed:?}");
    println!(
        "ACCEPTANCE 01 dispersion: PASS (residual {residual:.2e}, identity {identity:.2e}, V {:.4}, {} us)",
        modal.v,
        elapsed.as_micros()
    );
}

/// Criterion 2: the empirical coupling-length law and its inverse fit.
#[test]
fn acceptance_02_empirical_fit() {
    let fit = CouplingFit::default();
    assert_eq!(fit.a, 87.988);
    assert_eq!(fit.b, 0.4005);
    for d in [0.0, 1.0, 5.5, 7.0, 10.0, 14.0] {
        let l = coupling_length_empirical(d, &fit).unwrap();
        assert_eq!(l, 87.988 * (0.4005f64 * d).exp(), "bit-exact formula at d = {d}");
    }
    let samples: Vec<(f64, f64)> = (0..13)
        .map(|i| {
            let d = 6.0 + 0.5 * i as f64;
            (d, coupling_length_empirical(d, &fit).unwrap())
        })
        .collect();
    let rec = fit_coupling_length(&samples).unwrap();
    let (ea, eb) = (((rec.a - fit.a) / fit.a).abs(), ((rec.b - fit.b) / fit.b).abs());
    assert!(ea < 1e-9, "a error {ea:e}");
    assert!(eb < 1e-9, "b error {eb:e}");
    println!("ACCEPTANCE 02 empirical fit: PASS (recovery errors a {ea:.1e}, b {eb:.1e})");
}

/// Criterion 3: the three evolution routes agree and conserve the norm out
/// to 30 mm on rings and lines.
#[test]
fn acceptance_03_evolution_oracles() {
    let spec = default_spec();
    let start = Instant::now();
    let z_end = 30_000.0;
    let mut worst_pair = 0.0f64;
    let mut worst_norm = 0.0f64;

    let mut models: Vec<(String, CouplingModel, bool)> = Vec::new();
    // rings: the two-guide coupler is the N = 2 "ring"; larger rings are tubes
    models.push(("ring2".into(), build_planar(2, 10.0, &spec, false).unwrap(), true));
    for n in [3usize, 6] {
        let geom = TubeGeometry { n_guides: n, tube_radius: 7.0, length_z: z_end };
        models.push((format!("ring{n}"), build_tube(&geom, &spec, 2).unwrap(), true));
    }
    for n in 2..=10usize {
        models.push((format!("line{n}"), build_planar(n, 10.0, &spec, false).unwrap(), false));
    }

    for (name, model, is_ring) in &models {
        let n = model.size();
        let init = AmplitudeState::single_guide(n, 0);
        let record = evolve_ode(model, &init, z_end, 50).unwrap();
        for row in &record.intensity {
            worst_norm = worst_norm.max((row.iter().sum::<f64>() - 1.0).abs());
        }
        let ode_final = record.final_state();
        let expm = evolve_expm(model, &init, z_end).unwrap();
        let diff_oe = ode_final
            .amplitudes()
            .iter()
            .zip(expm.amplitudes().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        worst_pair = worst_pair.max(diff_oe);
        assert!(diff_oe < 1e-6, "{name}: ode vs expm {diff_oe:e}");
        if *is_ring {
            let orac = circulant_oracle(model, &init, z_end).unwrap();
            let diff_eo = expm
                .amplitudes()
                .iter()
                .zip(orac.amplitudes().iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            worst_pair = worst_pair.max(diff_eo);
            assert!(diff_eo < 1e-6, "{name}: expm vs oracle {diff_eo:e}");
        }
    }
    assert!(worst_norm < 1e-9, "norm drift {worst_norm:e}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 03 evolution oracles: PASS (max pairwise {worst_pair:.2e}, max norm drift {worst_norm:.2e}, {:.2} s)",
        elapsed.as_secs_f64()
    );
}

/// Criterion 4: three-vertex circle return probability (5 + 4 cos 3 gamma t)/9.
#[test]
fn acceptance_04_three_vertex_ctqw() {
    let mut worst = 0.0f64;
    for gamma in [1.0, 0.37] {
        let h = build_ctqw(&GraphSpec { kind: GraphKind::Ring { n: 3 }, gamma }).unwrap();
        for step in 0..=500 {
            let t = 10.0 / gamma * step as f64 / 500.0;
            let p = ctqw_evolve(&h, 0, t)[0];
            let want = (5.0 + 4.0 * (3.0 * gamma * t).cos()) / 9.0;
            worst = worst.max((p - want).abs());
        }
    }
    assert!(worst < 1e-9, "max deviation {worst:e}");
    println!("ACCEPTANCE 04 three-vertex ctqw: PASS (max deviation {worst:.2e})");
}

/// Criterion 5: coined walk equals the exponential path sum for t <= 10 and
/// stays exactly symmetric with off-origin peaks at t = 32.
#[test]
fn acceptance_05_coined_brute_force() {
    // path-sum oracle: amplitude of each of the 2^t coin histories
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut worst = 0.0f64;
    for t in 1..=10usize {
        let walked = coined_walk(&CoinedState::symmetric_initial(), t);
        let mut oracle: std::collections::HashMap<(i64, u8), Complex64> = Default::default();
        for (c0, a0) in [
            (0u8, Complex64::new(s2, 0.0)),
            (1u8, Complex64::new(0.0, s2)),
        ] {
            for history in 0u32..(1 << t) {
                let mut amp = a0;
                let mut coin = c0;
                let mut x = 0i64;
                for step in 0..t {
                    let out = ((history >> step) & 1) as u8;
                    if coin & out == 1 {
                        amp = -amp;
                    }
                    amp *= s2;
                    coin = out;
                    x += if out == 0 { -1 } else { 1 };
                }
                *oracle.entry((x, coin)).or_insert(Complex64::ZERO) += amp;
            }
        }
        for x in -(t as i64)..=(t as i64) {
            let want_up = oracle.get(&(x, 0)).copied().unwrap_or(Complex64::ZERO);
            let want_down = oracle.get(&(x, 1)).copied().unwrap_or(Complex64::ZERO);
            worst = worst
                .max((walked.up_at(x) - want_up).norm())
                .max((walked.down_at(x) - want_down).norm());
        }
    }
    assert!(worst < 1e-12, "path-sum deviation {worst:e}");

    let s32 = coined_walk(&CoinedState::symmetric_initial(), 32);
    let p = s32.position_distribution();
    let asym = p.asymmetry();
    assert!(asym < 1e-12, "asymmetry {asym:e}");
    let (imax, pmax) = p
        .probabilities
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    let x_peak = p.min_position + imax as i64;
    assert!(x_peak != 0 && *pmax > p.prob_at(0), "peak at {x_peak}");
    assert!((p.prob_at(x_peak) - p.prob_at(-x_peak)).abs() < 1e-12, "twin peak missing");
    println!(
        "ACCEPTANCE 05 coined brute force: PASS (oracle deviation {worst:.2e}, asymmetry {asym:.2e}, peaks at x = +-{})",
        x_peak.abs()
    );
}

/// Criterion 6: ballistic vs diffusive spreading exponents.
#[test]
fn acceptance_06_spreading_exponents() {
    let start = Instant::now();
    let mut state = CoinedState::symmetric_initial();
    let mut quantum_traces = Vec::new();
    for t in 1..=100usize {
        state = coined_step(&state);
        if t >= 10 {
            quantum_traces.push(DistributionTrace {
                time: t as f64,
                distribution: state.position_distribution(),
            });
        }
    }
    let quantum = variance_exponent(&quantum_traces).unwrap();
    assert!((1.8..=2.05).contains(&quantum), "quantum exponent {quantum}");

    let classical_traces: Vec<DistributionTrace> = (10..=100)
        .map(|t| DistributionTrace {
            time: t as f64,
            distribution: classical_binomial_distribution(t),
        })
        .collect();
    let classical = variance_exponent(&classical_traces).unwrap();
    assert!((0.95..=1.05).contains(&classical), "classical exponent {classical}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 06 spreading exponents: PASS (quantum {quantum:.4}, classical {classical:.4}, {:.2} s)",
        elapsed.as_secs_f64()
    );
}

/// Criterion 7: glued-tree traversal separation at depth 4 and frontier
/// speed at depth 6.
#[test]
fn acceptance_07_glued_tree_separation() {
    let start = Instant::now();
    let trav = glued_tree_traversal(4, 1.0, 10.0, 401, 100_000, 12345).unwrap();
    let quantum_peak = trav
        .rightmost_trace()
        .into_iter()
        .fold(0.0f64, f64::max);
    let classical = trav.classical.frequency;
    assert!(classical > 0.0, "classical baseline saw no traversals at all");
    let factor = quantum_peak / classical;
    assert!(factor >= 5.0, "quantum {quantum_peak:.4} vs classical {classical:.5}: factor {factor:.2}");

    // frontier speed at depth 6: fit the 90th-percentile column between
    // leaving the root region and approaching the far root
    let deep = glued_tree_traversal(6, 1.0, 5.0, 501, 1, 0).unwrap();
    let frontier = deep.frontier_columns(0.9);
    let pts: Vec<(f64, f64)> = deep
        .times
        .iter()
        .zip(&frontier)
        .filter(|&(_, &c)| (1..=10).contains(&c))
        .map(|(&t, &c)| (t, c as f64))
        .collect();
    assert!(pts.len() > 20, "fit window too small: {} points", pts.len());
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    assert!((2.3..=3.4).contains(&slope), "frontier slope {slope}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 07 glued tree: PASS (quantum peak {quantum_peak:.4}, classical {classical:.5}, factor {factor:.1}, frontier slope {slope:.3}, {:.2} s)",
        elapsed.as_secs_f64()
    );
}

/// Criterion 8: the HOM dip, the classical 50% bound, and the Fock oracle.
#[test]
fn acceptance_08_hom_dip() {
    let spec = default_spec();
    let model = build_planar(2, 10.0, &spec, false).unwrap();
    let beat = wgwalk::coupling_length_cmt(&spec, 10.0).unwrap();
    let u = TransferMatrix::from_model(&model, beat / 2.0).unwrap();

    let gi = corr_indistinguishable(&u, 0, 1).unwrap();
    let gd = corr_distinguishable(&u, 0, 1).unwrap();
    let gc = corr_classical_phase_averaged(&u, 0, 1, 0).unwrap();
    assert!(gi.prob(0, 1) < 1e-10, "HOM coincidence {}", gi.prob(0, 1));
    let half_error = (gc.prob(0, 1) - 0.5 * gd.prob(0, 1)).abs();
    assert!(half_error < 1e-12, "classical bound off by {half_error:e}");

    // brute-force two-photon Fock oracle on the coupler...
    let oracle = FockOracle::new(&u);
    let d_ind = max_matrix_diff(gi.matrix(), &oracle.indistinguishable(0, 1));
    let d_dis = max_matrix_diff(gd.matrix(), &oracle.distinguishable(&u, 0, 1));
    assert!(d_ind < 1e-10, "indistinguishable vs oracle {d_ind:e}");
    assert!(d_dis < 1e-10, "distinguishable vs oracle {d_dis:e}");

    // ...and on a four-guide array for all three quantum input kinds
    let model4 = build_planar(4, 9.0, &spec, false).unwrap();
    let u4 = TransferMatrix::from_model(&model4, 2_345.0).unwrap();
    let oracle4 = FockOracle::new(&u4);
    let mut worst4 = 0.0f64;
    for k in 0..4 {
        for l in 0..4 {
            let gi4 = corr_indistinguishable(&u4, k, l).unwrap();
            worst4 = worst4.max(max_matrix_diff(gi4.matrix(), &oracle4.indistinguishable(k, l)));
            let gd4 = corr_distinguishable(&u4, k, l).unwrap();
            worst4 = worst4.max(max_matrix_diff(gd4.matrix(), &oracle4.distinguishable(&u4, k, l)));
            if k != l {
                let ge4 = corr_path_entangled(&u4, k, l, 0.9).unwrap();
                worst4 =
                    worst4.max(max_matrix_diff(ge4.matrix(), &oracle4.path_entangled(k, l, 0.9)));
            }
        }
    }
    assert!(worst4 < 1e-10, "four-guide oracle deviation {worst4:e}");
    println!(
        "ACCEPTANCE 08 HOM dip: PASS (dip {:.1e}, classical half-bound error {half_error:.1e}, oracle deviations {:.1e} / {worst4:.1e})",
        gi.prob(0, 1),
        d_ind.max(d_dis)
    );
}

/// Criterion 9: phase-averaged classical correlations of a 21-guide array
/// show the four-lobe structure for adjacent and next-to-adjacent inputs.
#[test]
fn acceptance_09_bromberg_structure() {
    let start = Instant::now();
    let spec = default_spec();
    let n = 21;
    let pitch = 10.0;
    let model = build_planar(n, pitch, &spec, false).unwrap();
    let modal = solve_dispersion(&spec).unwrap();
    let c = coupling_coefficient(&spec, &modal, pitch).unwrap();
    // propagate to C z = 4: the pair correlations have fully developed but
    // no light has reflected off the array boundary yet
    let z = 4.0 / c;
    let u = TransferMatrix::from_model(&model, z).unwrap();
    let centre = n / 2;

    for (k, l, label) in [(10usize, 11usize, "adjacent"), (9, 11, "next-to-adjacent")] {
        let g = corr_classical_phase_averaged(&u, k, l, 0).unwrap();
        let m = g.matrix();
        // symmetry and normalization
        let mut asym = 0.0f64;
        for q in 0..n {
            for r in 0..n {
                asym = asym.max((m[(q, r)] - m[(r, q)]).abs());
            }
        }
        assert!(asym < 1e-12, "{label}: asymmetry {asym:e}");
        assert!((g.total() - 1.0).abs() < 1e-9);
        // corner-lobe dominance: the maximum of each outer quadrant beats
        // the central cell
        let quad_max = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> f64 {
            let mut best = 0.0f64;
            for q in rows {
                for r in cols.clone() {
                    best = best.max(m[(q, r)]);
                }
            }
            best
        };
        let quads = [
            quad_max(0..centre, 0..centre),
            quad_max(0..centre, centre + 1..n),
            quad_max(centre + 1..n, 0..centre),
            quad_max(centre + 1..n, centre + 1..n),
        ];
        let centre_cell = m[(centre, centre)];
        for (i, q) in quads.iter().enumerate() {
            assert!(
                *q > centre_cell,
                "{label}: quadrant {i} max {q:.3e} does not exceed centre {centre_cell:.3e}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 09 bromberg structure: PASS (21 guides, C z = 4, both injections four-lobed, {:.2} s)",
        elapsed.as_secs_f64()
    );
}

/// Criterion 10: mirror symmetry of the six-guide tube at 20 mm.
#[test]
fn acceptance_10_tube_mirror_symmetry() {
    let spec = default_spec();
    let geom = TubeGeometry::fabricated_default();
    let model = build_tube(&geom, &spec, 2).unwrap();
    let mirror = |i: usize| 5 - i; // pairs (0,5), (1,4), (2,3)
    let mut worst = 0.0f64;
    for k in 0..6 {
        let direct = evolve_expm(&model, &AmplitudeState::single_guide(6, k), 20_000.0)
            .unwrap()
            .intensities();
        let mirrored = evolve_expm(&model, &AmplitudeState::single_guide(6, mirror(k)), 20_000.0)
            .unwrap()
            .intensities();
        for m in 0..6 {
            worst = worst.max((direct[m] - mirrored[mirror(m)]).abs());
        }
    }
    assert!(worst < 1e-9, "mirror deviation {worst:e}");
    println!("ACCEPTANCE 10 tube mirror symmetry: PASS (max deviation {worst:.2e})");
}

/// Criterion 11: the NNNC ratio falls monotonically as the tube widens.
#[test]
fn acceptance_11_nnnc_tradeoff() {
    let spec = default_spec();
    let mut last = f64::INFINITY;
    let mut first = 0.0;
    let mut final_ratio = 0.0;
    for i in 0..13 {
        let radius = 5.0 + 7.0 * i as f64 / 12.0;
        let geom = TubeGeometry { n_guides: 6, tube_radius: radius, length_z: 20_000.0 };
        let ratio = nnnc_ratio(&spec, &geom).unwrap().ratio;
        assert!(ratio > 0.0 && ratio < 1.0);
        assert!(ratio < last, "ratio not strictly decreasing at R = {radius}");
        if i == 0 {
            first = ratio;
        }
        final_ratio = ratio;
        last = ratio;
    }
    println!(
        "ACCEPTANCE 11 nnnc tradeoff: PASS (ratio {first:.3e} at R = 5 um down to {final_ratio:.3e} at R = 12 um)"
    );
}

/// Criterion 12: every example config reruns byte-identically, and schema
/// violations name the offending key.
#[test]
fn acceptance_12_cli_determinism() {
    let configs_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut names: Vec<_> = std::fs::read_dir(&configs_dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    assert!(names.len() >= 10, "expected the full config set, found {}", names.len());

    let tmp = tempfile::tempdir().unwrap();
    for config_path in &names {
        let json = std::fs::read_to_string(config_path).unwrap();
        let stem = config_path.file_stem().unwrap().to_string_lossy().to_string();
        let mut written = Vec::new();
        for run_idx in 0..2 {
            let cfg = ExperimentConfig::from_json(&json, &[]).unwrap();
            let dir = tmp.path().join(format!("{stem}-{run_idx}"));
            let files = runner::run(&cfg, Some(&dir))
                .unwrap_or_else(|e| panic!("{stem}: {e}"));
            written.push(files);
        }
        assert_eq!(written[0].len(), written[1].len());
        for (a, b) in written[0].iter().zip(&written[1]) {
            let (ba, bb) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
            assert_eq!(ba, bb, "{stem}: {} differs between reruns", a.display());
        }
        // emitted CSVs parse back to finite values
        for path in &written[0] {
            if path.extension().is_some_and(|x| x == "csv") {
                let content = std::fs::read_to_string(path).unwrap();
                let (_, rows) = parse_csv(&content).unwrap();
                assert!(rows.iter().flatten().all(|v| v.is_finite()));
            }
        }
    }

    // schema violations carry the offending key, leaving no output behind
    let bad_value = ExperimentConfig::from_json(
        r#"{"experiment": "tube", "geometry": {"tube_radius": -1}}"#,
        &[],
    )
    .unwrap();
    let out = tmp.path().join("rejected");
    let err = runner::run(&bad_value, Some(&out)).unwrap_err();
    assert!(err.to_string().contains("geometry.tube_radius"), "{err}");
    assert!(!out.exists());
    let parse_err =
        ExperimentConfig::from_json(r#"{"experiment": "tube", "geometry": {"radius": 7}}"#, &[])
            .unwrap_err();
    assert!(parse_err.to_string().contains("radius"), "{parse_err}");

    println!(
        "ACCEPTANCE 12 cli determinism: PASS ({} configs byte-identical across reruns)",
        names.len()
    );
}
