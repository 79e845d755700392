//! Waveguide layouts and the coupling matrices they induce: planar arrays,
//! tubular (ring) arrays with non-nearest-neighbour coupling, and raised-sine
//! fan-in sections that route light from the wide input pitch of a V-groove
//! fiber array down onto the tube cross-section.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::waveguide::{coupling_coefficient, solve_dispersion, OpticsError, WaveguideSpec};

/// Spacing of the fibers a V-groove array presents to the chip, um.
pub const V_GROOVE_PITCH: f64 = 127.0;

/// Guides arranged on a circle, all parallel to the propagation axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeGeometry {
    pub n_guides: usize,
    /// Circle radius the guide centres sit on, um.
    pub tube_radius: f64,
    /// Length of the parallel coupling region, um.
    pub length_z: f64,
}

impl TubeGeometry {
    /// The fabricated design: six guides on a 7 um circle, 20 mm long.
    pub fn fabricated_default() -> Self {
        Self { n_guides: 6, tube_radius: 7.0, length_z: 20_000.0 }
    }

    pub fn validate(&self) -> Result<(), OpticsError> {
        if self.n_guides < 3 {
            return Err(OpticsError::Geometry(format!(
                "tube needs at least 3 guides, got {}",
                self.n_guides
            )));
        }
        if !(self.tube_radius > 0.0) {
            return Err(OpticsError::Geometry(format!(
                "tube_radius must be > 0, got {}",
                self.tube_radius
            )));
        }
        if !(self.length_z > 0.0) {
            return Err(OpticsError::Geometry(format!(
                "length_z must be > 0, got {}",
                self.length_z
            )));
        }
        Ok(())
    }

    /// Centre-to-centre separation of guides `order` steps apart on the
    /// circle: d_k = 2 R sin(pi k / N).
    pub fn chord(&self, order: usize) -> f64 {
        2.0 * self.tube_radius
            * (std::f64::consts::PI * order as f64 / self.n_guides as f64).sin()
    }

    /// Guide centres in the cross-section plane, guide k at angle 2 pi k / N.
    pub fn positions(&self) -> Vec<[f64; 2]> {
        (0..self.n_guides)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * k as f64 / self.n_guides as f64;
                [self.tube_radius * th.cos(), self.tube_radius * th.sin()]
            })
            .collect()
    }
}

/// Coupling matrix of an array of identical guides, optionally z-dependent.
///
/// `kappa` is symmetric with zero diagonal and nonnegative entries, in
/// rad/um; `beta` is the common propagation constant shared by every guide.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingModel {
    beta: f64,
    kappa: DMatrix<f64>,
    profile: Option<ZProfile>,
}

/// Sampled z-dependence of a coupling matrix; queried by linear
/// interpolation, clamped at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct ZProfile {
    z: Vec<f64>,
    kappas: Vec<DMatrix<f64>>,
}

impl CouplingModel {
    pub fn from_static(kappa: DMatrix<f64>, beta: f64) -> Result<Self, OpticsError> {
        validate_kappa(&kappa)?;
        Ok(Self { beta, kappa, profile: None })
    }

    pub fn from_profile(
        z: Vec<f64>,
        kappas: Vec<DMatrix<f64>>,
        beta: f64,
    ) -> Result<Self, OpticsError> {
        if z.len() != kappas.len() || z.len() < 2 {
            return Err(OpticsError::Geometry(format!(
                "profile needs >= 2 samples with matching z, got {} z / {} matrices",
                z.len(),
                kappas.len()
            )));
        }
        if z.windows(2).any(|w| w[1] <= w[0]) {
            return Err(OpticsError::Geometry(
                "profile z samples must be strictly increasing".into(),
            ));
        }
        for k in &kappas {
            validate_kappa(k)?;
            if k.nrows() != kappas[0].nrows() {
                return Err(OpticsError::Geometry("profile matrix sizes differ".into()));
            }
        }
        let kappa = kappas[0].clone();
        Ok(Self { beta, kappa, profile: Some(ZProfile { z, kappas }) })
    }

    pub fn size(&self) -> usize {
        self.kappa.nrows()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_static(&self) -> bool {
        self.profile.is_none()
    }

    /// The coupling matrix of a z-independent model.
    pub fn static_kappa(&self) -> Option<&DMatrix<f64>> {
        self.profile.is_none().then_some(&self.kappa)
    }

    /// Coupling matrix at propagation distance z.
    pub fn kappa_at(&self, z: f64) -> DMatrix<f64> {
        match &self.profile {
            None => self.kappa.clone(),
            Some(p) => p.interpolate(z),
        }
    }

    /// z positions at which a z-dependent model was sampled; interpolation
    /// is linear between them.
    pub fn profile_knots(&self) -> Option<&[f64]> {
        self.profile.as_ref().map(|p| p.z.as_slice())
    }

    /// True when every cyclic shift of row 0 reproduces the matrix, i.e. the
    /// layout is a ring with rotational symmetry.
    pub fn is_circulant(&self) -> bool {
        if self.profile.is_some() {
            return false;
        }
        let n = self.size();
        let k = &self.kappa;
        for i in 0..n {
            for j in 0..n {
                let want = k[(0, (j + n - i) % n)];
                if (k[(i, j)] - want).abs() > 1e-12 * (1.0 + want.abs()) {
                    return false;
                }
            }
        }
        true
    }
}

impl ZProfile {
    fn interpolate(&self, z: f64) -> DMatrix<f64> {
        if z <= self.z[0] {
            return self.kappas[0].clone();
        }
        if z >= *self.z.last().unwrap() {
            return self.kappas.last().unwrap().clone();
        }
        let i = match self.z.binary_search_by(|v| v.partial_cmp(&z).unwrap()) {
            Ok(i) => return self.kappas[i].clone(),
            Err(i) => i - 1,
        };
        let t = (z - self.z[i]) / (self.z[i + 1] - self.z[i]);
        &self.kappas[i] * (1.0 - t) + &self.kappas[i + 1] * t
    }
}

fn validate_kappa(kappa: &DMatrix<f64>) -> Result<(), OpticsError> {
    if kappa.nrows() != kappa.ncols() || kappa.nrows() < 2 {
        return Err(OpticsError::Geometry(format!(
            "coupling matrix must be square with size >= 2, got {}x{}",
            kappa.nrows(),
            kappa.ncols()
        )));
    }
    for i in 0..kappa.nrows() {
        if kappa[(i, i)] != 0.0 {
            return Err(OpticsError::Geometry("coupling matrix diagonal must be zero".into()));
        }
        for j in 0..i {
            if kappa[(i, j)] != kappa[(j, i)] {
                return Err(OpticsError::Geometry("coupling matrix must be symmetric".into()));
            }
            if kappa[(i, j)] < 0.0 {
                return Err(OpticsError::Geometry("coupling rates must be nonnegative".into()));
            }
        }
    }
    Ok(())
}

/// Coupling model of `n` identical guides in a row at uniform pitch.
/// With `include_nnn` the next-nearest pair rate C(2 pitch) is kept too.
pub fn build_planar(
    n: usize,
    pitch: f64,
    spec: &WaveguideSpec,
    include_nnn: bool,
) -> Result<CouplingModel, OpticsError> {
    if n < 2 {
        return Err(OpticsError::Geometry(format!("planar array needs >= 2 guides, got {n}")));
    }
    let modal = solve_dispersion(spec)?;
    let c1 = coupling_coefficient(spec, &modal, pitch)?;
    let mut kappa = DMatrix::zeros(n, n);
    for i in 0..n - 1 {
        kappa[(i, i + 1)] = c1;
        kappa[(i + 1, i)] = c1;
    }
    if include_nnn && n > 2 {
        let c2 = coupling_coefficient(spec, &modal, 2.0 * pitch)?;
        for i in 0..n - 2 {
            kappa[(i, i + 2)] = c2;
            kappa[(i + 2, i)] = c2;
        }
    }
    CouplingModel::from_static(kappa, modal.beta)
}

/// Coupling model of a tubular array, keeping chord couplings up to
/// `neighbour_orders` ring steps. The matrix is circulant by construction.
pub fn build_tube(
    geom: &TubeGeometry,
    spec: &WaveguideSpec,
    neighbour_orders: usize,
) -> Result<CouplingModel, OpticsError> {
    geom.validate()?;
    let modal = solve_dispersion(spec)?;
    let n = geom.n_guides;
    let max_order = n / 2;
    let orders = neighbour_orders.min(max_order).max(1);
    let mut by_order = vec![0.0; orders + 1];
    for (k, slot) in by_order.iter_mut().enumerate().skip(1) {
        *slot = coupling_coefficient(spec, &modal, geom.chord(k))?;
    }
    let mut kappa = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let diff = i.abs_diff(j);
            let order = diff.min(n - diff);
            if order <= orders {
                kappa[(i, j)] = by_order[order];
            }
        }
    }
    CouplingModel::from_static(kappa, modal.beta)
}

/// Lateral offset curve with zero slope at both ends:
///
///   offset(z) = start + (end - start) (z/L - sin(2 pi z / L) / (2 pi))
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RaisedSinePath {
    pub start: f64,
    pub end: f64,
    pub length: f64,
}

/// Builds a raised-sine transition over `stage_length` um.
pub fn raised_sine_path(
    start_offset: f64,
    end_offset: f64,
    stage_length: f64,
) -> Result<RaisedSinePath, OpticsError> {
    if !(stage_length > 0.0) {
        return Err(OpticsError::Geometry(format!(
            "stage_length must be > 0, got {stage_length}"
        )));
    }
    Ok(RaisedSinePath { start: start_offset, end: end_offset, length: stage_length })
}

impl RaisedSinePath {
    pub fn offset(&self, z: f64) -> f64 {
        let s = z / self.length;
        self.start
            + (self.end - self.start)
                * (s - (2.0 * std::f64::consts::PI * s).sin() / (2.0 * std::f64::consts::PI))
    }

    pub fn slope(&self, z: f64) -> f64 {
        let s = z / self.length;
        (self.end - self.start) * (1.0 - (2.0 * std::f64::consts::PI * s).cos()) / self.length
    }
}

/// One- or two-stage fan-in from a line of guides at the V-groove pitch down
/// to a tube cross-section. Both transverse coordinates of every guide
/// follow raised sines, so positions and slopes are continuous throughout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanInPath {
    pub stages: u8,
    /// Input pitch of the guide line, um.
    pub start_pitch: f64,
    /// Radius of the intermediate tube in the two-stage layout, um.
    pub intermediate_radius: f64,
    /// Length of each stage, um.
    pub stage_length: f64,
    /// Target tube the guides land on.
    pub tube: TubeGeometry,
}

impl FanInPath {
    pub fn single_stage(tube: TubeGeometry, stage_length: f64) -> Self {
        Self {
            stages: 1,
            start_pitch: V_GROOVE_PITCH,
            intermediate_radius: 2.0 * tube.tube_radius,
            stage_length,
            tube,
        }
    }

    pub fn two_stage(tube: TubeGeometry, intermediate_radius: f64, stage_length: f64) -> Self {
        Self { stages: 2, start_pitch: V_GROOVE_PITCH, intermediate_radius, stage_length, tube }
    }

    pub fn validate(&self) -> Result<(), OpticsError> {
        self.tube.validate()?;
        if !(self.stages == 1 || self.stages == 2) {
            return Err(OpticsError::Geometry(format!(
                "fan-in has 1 or 2 stages, got {}",
                self.stages
            )));
        }
        if !(self.start_pitch > 0.0 && self.stage_length > 0.0) {
            return Err(OpticsError::Geometry(
                "start_pitch and stage_length must be > 0".into(),
            ));
        }
        if self.stages == 2 && self.intermediate_radius <= self.tube.tube_radius {
            return Err(OpticsError::Geometry(
                "intermediate_radius must exceed the tube radius".into(),
            ));
        }
        Ok(())
    }

    pub fn total_length(&self) -> f64 {
        self.stages as f64 * self.stage_length
    }

    /// Angle each guide fans in to. Guide i of the input line lands at
    /// 240 - 60 i degrees on a six-guide tube; the assignment keeps left
    /// guides on the left of the tube and is mirror symmetric under
    /// i <-> N-1-i.
    fn target_angle(&self, i: usize) -> f64 {
        let n = self.tube.n_guides as f64;
        std::f64::consts::PI * (4.0 / 3.0) - 2.0 * std::f64::consts::PI * i as f64 / n
    }

    /// Cross-section positions of all guides at propagation distance z.
    pub fn positions_at(&self, z: f64) -> Vec<[f64; 2]> {
        let n = self.tube.n_guides;
        let line: Vec<[f64; 2]> = (0..n)
            .map(|i| [(i as f64 - (n as f64 - 1.0) / 2.0) * self.start_pitch, 0.0])
            .collect();
        let ring = |radius: f64| -> Vec<[f64; 2]> {
            (0..n)
                .map(|i| {
                    let th = self.target_angle(i);
                    [radius * th.cos(), radius * th.sin()]
                })
                .collect()
        };
        let (from, to, local_z) = if self.stages == 1 {
            (line, ring(self.tube.tube_radius), z)
        } else if z <= self.stage_length {
            (line, ring(self.intermediate_radius), z)
        } else {
            (
                ring(self.intermediate_radius),
                ring(self.tube.tube_radius),
                z - self.stage_length,
            )
        };
        let zc = local_z.clamp(0.0, self.stage_length);
        (0..n)
            .map(|i| {
                let px = RaisedSinePath {
                    start: from[i][0],
                    end: to[i][0],
                    length: self.stage_length,
                };
                let py = RaisedSinePath {
                    start: from[i][1],
                    end: to[i][1],
                    length: self.stage_length,
                };
                [px.offset(zc), py.offset(zc)]
            })
            .collect()
    }
}

/// Samples the pairwise coupling matrix of a fan-in section at `z_samples`
/// evenly spaced z positions, treating the guides as locally parallel at
/// their sampled separations. Every pair contributes, so residual crosstalk
/// during the fan-in is retained.
pub fn fanin_coupling_profile(
    fanin: &FanInPath,
    spec: &WaveguideSpec,
    z_samples: usize,
) -> Result<CouplingModel, OpticsError> {
    fanin.validate()?;
    if z_samples < 2 {
        return Err(OpticsError::Geometry(format!(
            "need at least 2 z samples, got {z_samples}"
        )));
    }
    let modal = solve_dispersion(spec)?;
    let n = fanin.tube.n_guides;
    let total = fanin.total_length();
    let mut zs = Vec::with_capacity(z_samples);
    let mut kappas = Vec::with_capacity(z_samples);
    for s in 0..z_samples {
        let z = total * s as f64 / (z_samples - 1) as f64;
        let pos = fanin.positions_at(z);
        let mut kappa = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..i {
                let d = ((pos[i][0] - pos[j][0]).powi(2) + (pos[i][1] - pos[j][1]).powi(2)).sqrt();
                if d < 2.0 * spec.core_radius {
                    return Err(OpticsError::Geometry(format!(
                        "guides {j} and {i} overlap at z = {z} um (separation {d} um)"
                    )));
                }
                let c = coupling_coefficient(spec, &modal, d)?;
                kappa[(i, j)] = c;
                kappa[(j, i)] = c;
            }
        }
        zs.push(z);
        kappas.push(kappa);
    }
    CouplingModel::from_profile(zs, kappas, modal.beta)
}
