//! Experiment dispatch: resolves a parsed config, runs the simulation
//! modules, and writes the declared CSV and pixmap outputs. All validation
//! happens before anything touches the filesystem, so a rejected config
//! leaves no partial output behind. Identical configs (including the seed)
//! always produce byte-identical files.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_complex::Complex64;
use thiserror::Error;

use crate::config::{
    ConfigError, DeviceName, ExperimentConfig, ExperimentKind, HeatmapName, InputKindName,
    WalkGraphName,
};
use crate::correlations::{
    corr_classical_phase_averaged, corr_distinguishable, corr_indistinguishable,
    corr_path_entangled, CorrelationError, CorrelationMatrix, TransferMatrix,
};
use crate::evolution::{
    evolve_ode, find_recurrence, nnnc_ratio, AmplitudeState, EvolutionError, PropagationRecord,
};
use crate::geometry::{build_planar, build_tube, fanin_coupling_profile, FanInPath, TubeGeometry};
use crate::report::{emit_csv, emit_heatmap, Colormap, ReportError};
use crate::walks::{
    build_ctqw, ctqw_evolve, glued_tree_traversal,
    scattering::scattering_walk, CoinedState, GraphKind, GraphSpec, ScatteringState, StepParity,
    WalkError,
};
use crate::waveguide::{
    coupling_coefficient, coupling_length_cmt, coupling_length_empirical, solve_dispersion,
    CouplingFit, OpticsError,
};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Correlation(#[from] CorrelationError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("grid `{0}` is not of the form key=start:stop:n with n >= 2")]
    BadGrid(String),
}

/// Runs one experiment, writing its outputs under `out_dir` (which falls
/// back to the config's `output.dir`, then to `out`). Returns the files
/// written.
pub fn run(config: &ExperimentConfig, out_dir: Option<&Path>) -> Result<Vec<PathBuf>, RunError> {
    let dir: PathBuf = match out_dir {
        Some(d) => d.to_path_buf(),
        None => PathBuf::from(config.output.dir.clone().unwrap_or_else(|| "out".to_string())),
    };
    let colormap = match config.output.heatmap.unwrap_or(HeatmapName::Viridis) {
        HeatmapName::Gray => Colormap::Gray,
        HeatmapName::Viridis => Colormap::Viridis,
    };

    match config.experiment {
        ExperimentKind::Dispersion => run_dispersion(config, &dir),
        ExperimentKind::Couple2 => run_couple2(config, &dir),
        ExperimentKind::Planar => run_planar(config, &dir),
        ExperimentKind::Tube => run_tube(config, &dir),
        ExperimentKind::Fanin => run_fanin(config, &dir),
        ExperimentKind::Ctqw => run_ctqw(config, &dir),
        ExperimentKind::Coined => run_coined(config, &dir),
        ExperimentKind::Scattering => run_scattering(config, &dir),
        ExperimentKind::Gluedtree => run_gluedtree(config, &dir),
        ExperimentKind::Correlations => run_correlations(config, &dir, colormap),
    }
}

fn intensity_csv(
    dir: &Path,
    record: &PropagationRecord,
) -> Result<(PathBuf, Vec<Vec<f64>>), RunError> {
    let n = record.intensity[0].len();
    let labels: Vec<String> = std::iter::once("z".to_string())
        .chain((0..n).map(|m| format!("i{m}")))
        .collect();
    let header: Vec<&str> = labels.iter().map(String::as_str).collect();
    let rows: Vec<Vec<f64>> = record
        .z_grid
        .iter()
        .zip(&record.intensity)
        .map(|(&z, row)| std::iter::once(z).chain(row.iter().copied()).collect())
        .collect();
    let path = dir.join("intensity.csv");
    emit_csv(&path, &header, &rows)?;
    Ok((path, rows))
}

fn recurrence_csv(
    dir: &Path,
    record: &PropagationRecord,
    launch: usize,
    threshold: f64,
) -> Result<PathBuf, RunError> {
    let rows = match find_recurrence(record, launch, threshold) {
        Some(r) => vec![vec![r.z, r.peak_fraction]],
        None => Vec::new(),
    };
    let path = dir.join("recurrence.csv");
    emit_csv(&path, &["z", "peak_fraction"], &rows)?;
    Ok(path)
}

fn run_dispersion(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let spec = config.waveguide.resolve()?;
    let modal = solve_dispersion(&spec)?;
    let path = dir.join("modal.csv");
    emit_csv(
        &path,
        &["u", "v", "w", "delta", "beta", "residual"],
        &[vec![
            modal.u,
            modal.v,
            modal.w,
            modal.delta,
            modal.beta,
            modal.dispersion_residual(),
        ]],
    )?;
    Ok(vec![path])
}

fn run_couple2(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let spec = config.waveguide.resolve()?;
    let separation = config.geometry.pitch()?;
    let modal = solve_dispersion(&spec)?;
    let c = coupling_coefficient(&spec, &modal, separation)?;
    let l_cmt = coupling_length_cmt(&spec, separation)?;
    let l_emp = coupling_length_empirical(separation, &CouplingFit::default())?;
    // default span covers the first full beat and its revival
    let z_end = config.geometry.length(2.2 * l_cmt)?;
    let z_steps = config.evolution.z_steps()?;
    let launch = config.evolution.launch(2)?;
    let threshold = config.evolution.recurrence_threshold()?;

    let model = build_planar(2, separation, &spec, false)?;
    let record = evolve_ode(&model, &AmplitudeState::single_guide(2, launch), z_end, z_steps)?;

    let (intensity_path, _) = intensity_csv(dir, &record)?;
    let coupling_path = dir.join("coupling.csv");
    emit_csv(
        &coupling_path,
        &["separation", "c", "l_cmt", "l_empirical"],
        &[vec![separation, c, l_cmt, l_emp]],
    )?;
    let recurrence_path = recurrence_csv(dir, &record, launch, threshold)?;
    Ok(vec![intensity_path, coupling_path, recurrence_path])
}

fn run_planar(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let spec = config.waveguide.resolve()?;
    let n = config.geometry.n_guides(21, 2)?;
    let pitch = config.geometry.pitch()?;
    let z_end = config.geometry.length(16_000.0)?;
    let include_nnn = config.geometry.include_nnn.unwrap_or(false);
    let z_steps = config.evolution.z_steps()?;
    let launch = config.evolution.launch(n)?;
    let threshold = config.evolution.recurrence_threshold()?;

    let model = build_planar(n, pitch, &spec, include_nnn)?;
    let record = evolve_ode(&model, &AmplitudeState::single_guide(n, launch), z_end, z_steps)?;
    let (intensity_path, _) = intensity_csv(dir, &record)?;
    let recurrence_path = recurrence_csv(dir, &record, launch, threshold)?;
    Ok(vec![intensity_path, recurrence_path])
}

fn run_tube(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let spec = config.waveguide.resolve()?;
    let n = config.geometry.n_guides(6, 3)?;
    let radius = config.geometry.tube_radius()?;
    let z_end = config.geometry.length(20_000.0)?;
    let orders = config.geometry.neighbour_orders.unwrap_or(2);
    let z_steps = config.evolution.z_steps()?;
    let launch = config.evolution.launch(n)?;
    let threshold = config.evolution.recurrence_threshold()?;

    let geom = TubeGeometry { n_guides: n, tube_radius: radius, length_z: z_end };
    let model = build_tube(&geom, &spec, orders)?;
    let record = evolve_ode(&model, &AmplitudeState::single_guide(n, launch), z_end, z_steps)?;
    let (intensity_path, _) = intensity_csv(dir, &record)?;
    let recurrence_path = recurrence_csv(dir, &record, launch, threshold)?;

    let report = nnnc_ratio(&spec, &geom)?;
    let modal = solve_dispersion(&spec)?;
    let (d1, d2) = (geom.chord(1), geom.chord(2.min(n / 2)));
    let c1 = coupling_coefficient(&spec, &modal, d1)?;
    let c2 = coupling_coefficient(&spec, &modal, d2)?;
    let nnnc_path = dir.join("nnnc.csv");
    emit_csv(
        &nnnc_path,
        &["d1", "d2", "c1", "c2", "ratio"],
        &[vec![d1, d2, c1, c2, report.ratio]],
    )?;
    Ok(vec![intensity_path, recurrence_path, nnnc_path])
}

fn run_fanin(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let spec = config.waveguide.resolve()?;
    let n = config.geometry.n_guides(6, 3)?;
    let radius = config.geometry.tube_radius()?;
    let stages = config.geometry.stages()?;
    let stage_length = config.geometry.stage_length()?;
    let z_steps = config.evolution.z_steps()?;
    let launch = config.evolution.launch(n)?;

    let tube = TubeGeometry { n_guides: n, tube_radius: radius, length_z: stage_length };
    let mut fanin = if stages == 1 {
        FanInPath::single_stage(tube, stage_length)
    } else {
        FanInPath::two_stage(tube, config.geometry.intermediate_radius()?, stage_length)
    };
    fanin.start_pitch = config.geometry.start_pitch()?;
    // one knot per micrometre of fan-in
    let samples = (fanin.total_length().ceil() as usize).max(2);
    let model = fanin_coupling_profile(&fanin, &spec, samples)?;

    let labels: Vec<String> = std::iter::once("z".to_string())
        .chain((0..n).flat_map(|i| (i + 1..n).map(move |j| format!("kappa_{i}_{j}"))))
        .collect();
    let header: Vec<&str> = labels.iter().map(String::as_str).collect();
    let profile_steps = 200usize;
    let rows: Vec<Vec<f64>> = (0..=profile_steps)
        .map(|s| {
            let z = fanin.total_length() * s as f64 / profile_steps as f64;
            let kappa = model.kappa_at(z);
            std::iter::once(z)
                .chain((0..n).flat_map(|i| {
                    let kappa = &kappa;
                    (i + 1..n).map(move |j| kappa[(i, j)])
                }))
                .collect()
        })
        .collect();
    let profile_path = dir.join("profile.csv");
    emit_csv(&profile_path, &header, &rows)?;

    let record = evolve_ode(
        &model,
        &AmplitudeState::single_guide(n, launch),
        fanin.total_length(),
        z_steps,
    )?;
    let (intensity_path, _) = intensity_csv(dir, &record)?;
    Ok(vec![profile_path, intensity_path])
}

fn run_ctqw(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let gamma = config.walk.gamma()?;
    let t_max = config.walk.t_max(10.0)?;
    let samples = config.walk.samples(201)?;
    let kind = match config.walk.graph.unwrap_or(WalkGraphName::Ring) {
        WalkGraphName::Ring => GraphKind::Ring { n: config.walk.n.unwrap_or(3) },
        WalkGraphName::Line => GraphKind::Line { n: config.walk.n.unwrap_or(21) },
        WalkGraphName::Gluedtree => GraphKind::GluedTree { depth: config.walk.depth.unwrap_or(4) },
    };
    let h = build_ctqw(&GraphSpec { kind, gamma })?;
    let start = config.walk.start_vertex.unwrap_or(0);
    if start >= h.n_vertices() {
        return Err(ConfigError::key(
            "walk.start_vertex",
            format!("vertex {start} out of range for {} vertices", h.n_vertices()),
        )
        .into());
    }

    let labels: Vec<String> = std::iter::once("t".to_string())
        .chain((0..h.n_vertices()).map(|v| format!("p{v}")))
        .collect();
    let header: Vec<&str> = labels.iter().map(String::as_str).collect();
    let rows: Vec<Vec<f64>> = (0..samples)
        .map(|s| {
            let t = t_max * s as f64 / (samples - 1) as f64;
            std::iter::once(t).chain(ctqw_evolve(&h, start, t)).collect()
        })
        .collect();
    let path = dir.join("probabilities.csv");
    emit_csv(&path, &header, &rows)?;
    Ok(vec![path])
}

fn run_coined(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let steps = config.walk.steps.unwrap_or(32);
    let mut state = CoinedState::symmetric_initial();
    let mut moment_rows = Vec::with_capacity(steps);
    for t in 1..=steps {
        state = crate::walks::coined_step(&state);
        let dist = state.position_distribution();
        moment_rows.push(vec![t as f64, dist.mean(), dist.variance()]);
    }
    let dist = state.position_distribution();
    let dist_rows: Vec<Vec<f64>> = dist
        .probabilities
        .iter()
        .enumerate()
        .map(|(i, &p)| vec![(dist.min_position + i as i64) as f64, p])
        .collect();
    let dist_path = dir.join("distribution.csv");
    emit_csv(&dist_path, &["x", "p"], &dist_rows)?;
    let moments_path = dir.join("moments.csv");
    emit_csv(&moments_path, &["t", "mean", "variance"], &moment_rows)?;
    Ok(vec![dist_path, moments_path])
}

fn run_scattering(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let steps = config.walk.steps.unwrap_or(16);
    let (r, t) = config.walk.splitter()?;
    let n_sites = config.walk.n_sites.unwrap_or(2 * steps + 9);
    let centre = (n_sites / 2) | 1; // odd, so the first column scatters it
    let init = ScatteringState::single_rightward(n_sites, centre - 1).map_err(|_| {
        ConfigError::key("walk.n_sites", format!("line of {n_sites} sites is too short"))
    })?;
    let out = scattering_walk(
        &init,
        Complex64::new(r, 0.0),
        Complex64::new(t, 0.0),
        StepParity::Odd,
        steps,
    )?;
    let dist = out.position_distribution();
    let rows: Vec<Vec<f64>> = dist
        .probabilities
        .iter()
        .enumerate()
        .map(|(site, &p)| vec![site as f64, p])
        .collect();
    let path = dir.join("distribution.csv");
    emit_csv(&path, &["site", "p"], &rows)?;
    Ok(vec![path])
}

fn run_gluedtree(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let depth = config.walk.depth.unwrap_or(4);
    let gamma = config.walk.gamma()?;
    let t_max = config.walk.t_max(10.0 / gamma)?;
    let samples = config.walk.samples(101)?;
    let walkers = config.walk.walkers.unwrap_or(100_000);
    let seed = config.seed.unwrap_or(12345);
    let trav = glued_tree_traversal(depth, gamma, t_max, samples, walkers, seed as u64)?;

    let labels: Vec<String> = std::iter::once("t".to_string())
        .chain((0..=2 * depth).map(|c| format!("col{c}")))
        .collect();
    let header: Vec<&str> = labels.iter().map(String::as_str).collect();
    let rows: Vec<Vec<f64>> = trav
        .times
        .iter()
        .zip(&trav.column_probabilities)
        .map(|(&t, row)| std::iter::once(t).chain(row.iter().copied()).collect())
        .collect();
    let columns_path = dir.join("columns.csv");
    emit_csv(&columns_path, &header, &rows)?;

    let classical_path = dir.join("classical.csv");
    emit_csv(
        &classical_path,
        &["walkers", "steps", "hits", "frequency", "seed"],
        &[vec![
            trav.classical.walkers as f64,
            trav.classical.steps as f64,
            trav.classical.hits as f64,
            trav.classical.frequency,
            trav.classical.seed as f64,
        ]],
    )?;
    Ok(vec![columns_path, classical_path])
}

fn run_correlations(
    config: &ExperimentConfig,
    dir: &Path,
    colormap: Colormap,
) -> Result<Vec<PathBuf>, RunError> {
    let spec = config.waveguide.resolve()?;
    let device = config.correlations.device.unwrap_or(DeviceName::Planar);
    let u = match device {
        DeviceName::Coupler => {
            let separation = config.geometry.pitch()?;
            let l = coupling_length_cmt(&spec, separation)?;
            let z = config.geometry.length(l / 2.0)?;
            let model = build_planar(2, separation, &spec, false)?;
            TransferMatrix::from_model(&model, z)?
        }
        DeviceName::Planar => {
            let n = config.geometry.n_guides(21, 2)?;
            let pitch = config.geometry.pitch()?;
            let z = config.geometry.length(16_000.0)?;
            let model = build_planar(n, pitch, &spec, config.geometry.include_nnn.unwrap_or(false))?;
            TransferMatrix::from_model(&model, z)?
        }
        DeviceName::Tube => {
            let n = config.geometry.n_guides(6, 3)?;
            let radius = config.geometry.tube_radius()?;
            let z = config.geometry.length(20_000.0)?;
            let geom = TubeGeometry { n_guides: n, tube_radius: radius, length_z: z };
            let model = build_tube(&geom, &spec, config.geometry.neighbour_orders.unwrap_or(2))?;
            TransferMatrix::from_model(&model, z)?
        }
    };
    let n = u.size();
    let k = config.correlations.k.unwrap_or(n / 2 - (n % 2 == 0) as usize);
    let l = config.correlations.l.unwrap_or(k + 1);
    for (key, idx) in [("correlations.k", k), ("correlations.l", l)] {
        if idx >= n {
            return Err(
                ConfigError::key(key, format!("guide {idx} out of range for {n} guides")).into()
            );
        }
    }
    let gamma: CorrelationMatrix =
        match config.correlations.input_kind.unwrap_or(InputKindName::Classical) {
            InputKindName::Distinguishable => corr_distinguishable(&u, k, l)?,
            InputKindName::Indistinguishable => corr_indistinguishable(&u, k, l)?,
            InputKindName::Entangled => {
                corr_path_entangled(&u, k, l, config.correlations.phase.unwrap_or(0.0))?
            }
            InputKindName::Classical => {
                corr_classical_phase_averaged(&u, k, l, config.correlations.n_phases.unwrap_or(0))?
            }
        };

    let rows: Vec<Vec<f64>> = (0..n)
        .flat_map(|q| (0..n).map(move |r| (q, r)))
        .map(|(q, r)| vec![q as f64, r as f64, gamma.prob(q, r)])
        .collect();
    let csv_path = dir.join("gamma.csv");
    emit_csv(&csv_path, &["q", "r", "gamma"], &rows)?;
    let ppm_path = dir.join("gamma.ppm");
    emit_heatmap(&ppm_path, gamma.matrix(), colormap)?;
    Ok(vec![csv_path, ppm_path])
}

/// One axis of a sweep: `key=start:stop:n` expands to n evenly spaced
/// values applied as overrides of `key`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub key: String,
    pub values: Vec<f64>,
}

impl GridAxis {
    pub fn parse(text: &str) -> Result<Self, RunError> {
        let (key, range) = text.split_once('=').ok_or_else(|| RunError::BadGrid(text.into()))?;
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 || key.is_empty() {
            return Err(RunError::BadGrid(text.into()));
        }
        let start: f64 = parts[0].parse().map_err(|_| RunError::BadGrid(text.into()))?;
        let stop: f64 = parts[1].parse().map_err(|_| RunError::BadGrid(text.into()))?;
        let n: usize = parts[2].parse().map_err(|_| RunError::BadGrid(text.into()))?;
        if n < 2 {
            return Err(RunError::BadGrid(text.into()));
        }
        let values = (0..n)
            .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
            .collect();
        Ok(Self { key: key.to_string(), values })
    }
}

/// Outcome of one grid point of a sweep.
#[derive(Debug)]
pub struct SweepRun {
    pub dir: PathBuf,
    pub overrides: Vec<String>,
    pub result: Result<Vec<PathBuf>, RunError>,
}

/// Cartesian-product sweep over one or more grid axes. Each point runs the
/// base config plus its value overrides in its own subdirectory of
/// `out_dir`. Points run concurrently on up to `WGWALK_THREADS` workers
/// (default: available parallelism).
pub fn sweep(
    json: &str,
    base_overrides: &[String],
    axes: &[GridAxis],
    out_dir: &Path,
) -> Result<Vec<SweepRun>, RunError> {
    // validate the base once so a broken config fails before any point runs
    ExperimentConfig::from_json(json, base_overrides)?;
    if axes.is_empty() {
        return Err(RunError::BadGrid("sweep needs at least one --grid axis".into()));
    }

    let mut points: Vec<Vec<(String, f64)>> = vec![Vec::new()];
    for axis in axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push((axis.key.clone(), v));
                    q
                })
            })
            .collect();
    }

    let jobs: Vec<(PathBuf, Vec<String>)> = points
        .iter()
        .map(|assignments| {
            let name = assignments
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join("__");
            let mut overrides = base_overrides.to_vec();
            overrides.extend(assignments.iter().map(|(k, v)| format!("{k}={v}")));
            (out_dir.join(name), overrides)
        })
        .collect();

    let workers = std::env::var("WGWALK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        .min(jobs.len().max(1));

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<SweepRun>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let (dir, overrides) = &jobs[i];
                let result = ExperimentConfig::from_json(json, overrides)
                    .map_err(RunError::from)
                    .and_then(|cfg| run(&cfg, Some(dir)));
                results.lock().unwrap()[i] =
                    Some(SweepRun { dir: dir.clone(), overrides: overrides.clone(), result });
            });
        }
    });
    Ok(results.into_inner().unwrap().into_iter().map(Option::unwrap).collect())
}
