//! Parameter sweeps behind the two figure tables.
//!
//! Rows are independent. With the `rayon` feature they are computed on the
//! global thread pool; output order is always the grid order.

use crate::error::Result;
use crate::geodesics::{circular_charges, circular_orbit_exists, OrbitSense};
use crate::geometry::{GravitationalSource, BOUNDARY_TOL, CHI_MAX};
use crate::wigner::{spin_bound_curves, Lowering, Pipeline, SpinRotation, DEFAULT_TOL};
use crate::Error;

/// Upper end of the circular-orbit window in `x = rs/r`.
pub const CIRCULAR_X_MAX: f64 = 2.0 / 3.0;
pub const DEFAULT_X_POINTS: usize = 201;
pub const DEFAULT_CHI_VALUES: [f64; 5] = [-0.5, -0.25, 0.0, 0.25, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without `rayon`.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "rayon") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

fn map_rows<T, R, F>(items: &[T], execution: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match execution {
        #[cfg(feature = "rayon")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// `n` evenly spaced points `upper·i/n`, `i = 1..=n`.
pub fn x_grid(n: usize, upper: f64) -> Vec<f64> {
    (1..=n).map(|i| upper * i as f64 / n as f64).collect()
}

/// `n ≥ 2` evenly spaced spins covering `[−0.5, 0.5]`.
pub fn chi_grid(n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| -CHI_MAX + 2.0 * CHI_MAX * i as f64 / (n - 1) as f64).collect()
}

/// Fixed 9-significant-digit scientific formatting used in every table.
pub fn format_sig9(v: f64) -> String {
    format!("{v:.8e}")
}

fn format_opt(v: Option<f64>) -> String {
    v.map(format_sig9).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Spec {
    pub chi_values: Vec<f64>,
    pub x_points: usize,
    pub tol: f64,
    pub lowering: Lowering,
}

impl Default for Figure1Spec {
    fn default() -> Self {
        Self {
            chi_values: DEFAULT_CHI_VALUES.to_vec(),
            x_points: DEFAULT_X_POINTS,
            tol: DEFAULT_TOL,
            lowering: Lowering::default(),
        }
    }
}

impl Figure1Spec {
    pub fn validate(&self) -> Result<()> {
        if self.x_points < 2 || self.chi_values.len() < 2 {
            return Err(Error::invalid("figure 1 needs at least 2 spins and 2 x points"));
        }
        if let Some(chi) = self.chi_values.iter().find(|c| !(c.abs() <= CHI_MAX)) {
            return Err(Error::CensorshipViolation { chi: *chi });
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::invalid(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

/// Total rotation for a fall from infinity down to `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Row {
    pub chi: f64,
    pub x: f64,
    pub omega: Option<f64>,
    pub err_estimate: Option<f64>,
    pub error: Option<String>,
}

impl Figure1Row {
    pub const HEADER: [&'static str; 5] = ["chi", "x", "omega_rad", "err_estimate", "error"];

    pub fn record(&self) -> [String; 5] {
        [
            format_sig9(self.chi),
            format_sig9(self.x),
            format_opt(self.omega),
            format_opt(self.err_estimate),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

pub fn figure1(spec: &Figure1Spec, execution: Execution) -> Result<Vec<Figure1Row>> {
    spec.validate()?;
    let pipeline = Pipeline::new(spec.lowering);
    let cells: Vec<(f64, f64)> = spec
        .chi_values
        .iter()
        .flat_map(|&chi| x_grid(spec.x_points, 1.0).into_iter().map(move |x| (chi, x)))
        .collect();
    Ok(map_rows(&cells, execution, |&(chi, x)| {
        let rotation = GravitationalSource::unit(chi).and_then(|s| pipeline.radial_fall_rotation(&s, 0.0, x, spec.tol));
        match rotation {
            Ok(rot) => Figure1Row {
                chi,
                x,
                omega: Some(rot.omega),
                err_estimate: Some(rot.err_estimate),
                error: None,
            },
            Err(e) => Figure1Row {
                chi,
                x,
                omega: None,
                err_estimate: None,
                error: Some(e.to_string()),
            },
        }
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure2Spec {
    pub x_points: usize,
    pub sense: OrbitSense,
    pub lowering: Lowering,
}

impl Default for Figure2Spec {
    fn default() -> Self {
        Self {
            x_points: DEFAULT_X_POINTS,
            sense: OrbitSense::CounterRotating,
            lowering: Lowering::default(),
        }
    }
}

/// Per-orbit gravitational rotation `δΩ` for the five spin curves at one `x`.
///
/// Empty entries mark spins with no circular orbit of the chosen sense at `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure2Row {
    pub x: f64,
    pub aplus: Option<f64>,
    pub aminus: Option<f64>,
    pub zero: Option<f64>,
    pub dyn_plus: Option<f64>,
    pub dyn_minus: Option<f64>,
    /// Every curve has an orbit (or its light-ring limit) at this `x`.
    pub admissible: bool,
}

impl Figure2Row {
    pub const HEADER: [&'static str; 7] = [
        "x",
        "delta_omega_aplus",
        "delta_omega_aminus",
        "delta_omega_zero",
        "delta_omega_dynbound_plus",
        "delta_omega_dynbound_minus",
        "admissible",
    ];

    pub fn record(&self) -> [String; 7] {
        [
            format_sig9(self.x),
            format_opt(self.aplus),
            format_opt(self.aminus),
            format_opt(self.zero),
            format_opt(self.dyn_plus),
            format_opt(self.dyn_minus),
            self.admissible.to_string(),
        ]
    }

    pub fn curves(&self) -> [Option<f64>; 5] {
        [self.aplus, self.aminus, self.zero, self.dyn_plus, self.dyn_minus]
    }
}

/// Per-orbit rotation for spin `chi`, falling back to the light-ring limit
/// when `x` sits on the orbit boundary. `None` when no orbit exists.
pub fn orbit_rotation_or_limit(pipeline: &Pipeline, chi: f64, x: f64, sense: OrbitSense) -> Option<SpinRotation> {
    let source = GravitationalSource::unit(chi).ok()?;
    let r = source.radius(x);
    if circular_charges(&source, r, sense).radicand.abs() <= BOUNDARY_TOL {
        pipeline.light_ring_rotation(&source, r, sense).ok()
    } else if circular_orbit_exists(&source, r, sense) {
        pipeline.per_orbit_rotation(&source, r, sense).ok()
    } else {
        None
    }
}

pub fn figure2_row(pipeline: &Pipeline, x: f64, sense: OrbitSense) -> Figure2Row {
    let delta = |chi: f64| orbit_rotation_or_limit(pipeline, chi, x, sense).and_then(|r| r.delta_omega());
    let bound = spin_bound_curves(1.0, 1.0 / x).effective();
    let mut row = Figure2Row {
        x,
        aplus: delta(CHI_MAX),
        aminus: delta(-CHI_MAX),
        zero: delta(0.0),
        dyn_plus: delta(bound),
        dyn_minus: delta(-bound),
        admissible: false,
    };
    row.admissible = row.curves().iter().all(Option::is_some);
    row
}

pub fn figure2(spec: &Figure2Spec, execution: Execution) -> Result<Vec<Figure2Row>> {
    if spec.x_points < 2 {
        return Err(Error::invalid("figure 2 needs at least 2 x points"));
    }
    let pipeline = Pipeline::new(spec.lowering);
    let grid = x_grid(spec.x_points, CIRCULAR_X_MAX);
    Ok(map_rows(&grid, execution, |&x| figure2_row(&pipeline, x, spec.sense)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = x_grid(4, 1.0);
        assert_eq!(g, vec![0.25, 0.5, 0.75, 1.0]);
        assert_eq!(chi_grid(3), vec![-0.5, 0.0, 0.5]);
        assert_eq!(chi_grid(1).len(), 2);
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(3.18277960152), "3.18277960e0");
        assert_eq!(format_sig9(-0.0001), "-1.00000000e-4");
    }

    #[test]
    fn figure1_spec_validation() {
        let mut spec = Figure1Spec::default();
        assert!(spec.validate().is_ok());
        spec.chi_values = vec![0.0, 0.7];
        assert!(matches!(spec.validate(), Err(Error::CensorshipViolation { .. })));
        spec.chi_values = vec![0.0];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let spec = Figure1Spec {
            chi_values: vec![-0.5, 0.5],
            x_points: 4,
            ..Default::default()
        };
        let a = figure1(&spec, Execution::Sequential).unwrap();
        let b = figure1(&spec, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        let spec2 = Figure2Spec {
            x_points: 9,
            ..Default::default()
        };
        assert_eq!(figure2(&spec2, Execution::Sequential).unwrap(), figure2(&spec2, Execution::Parallel).unwrap());
    }

    #[test]
    fn boundary_orbit_uses_light_ring_limit() {
        let p = Pipeline::default();
        // a = 0 orbit at x = 2/3 is the photon orbit
        let rot = orbit_rotation_or_limit(&p, 0.0, CIRCULAR_X_MAX, OrbitSense::CounterRotating).unwrap();
        assert!((rot.delta_omega().unwrap() - 1.0).abs() < 1e-6);
        assert!(orbit_rotation_or_limit(&p, 0.5, CIRCULAR_X_MAX, OrbitSense::CounterRotating).is_none());
    }
}
