//! Compatibility report: closed-form connection components against a
//! finite-difference Christoffel oracle, and pipeline `ϑ^1_3` against the
//! closed-form generators, under each [`Lowering`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frames::{connection_forms, connection_forms_numeric, ConnectionForms, DEFAULT_FD_STEP};
use crate::geodesics::{circular_orbit_exists, OrbitSense, Scenario};
use crate::geometry::{GravitationalSource, CHI_MAX};
use crate::published;
use crate::sweep::CIRCULAR_X_MAX;
use crate::wigner::{Lowering, Pipeline};
use crate::Result;

pub const ORACLE_ABS_TOL: f64 = 1e-6;
pub const ORACLE_REL_TOL: f64 = 1e-4;
pub const CROSS_CHECK_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportSpec {
    pub oracle_points: usize,
    pub cross_points: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ReportSpec {
    fn default() -> Self {
        Self {
            oracle_points: 50,
            cross_points: 20,
            seed: 0x5eed,
            tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSample {
    pub chi: f64,
    pub x: f64,
    pub closed: [f64; 6],
    pub numeric: [f64; 6],
}

impl OracleSample {
    /// Allowed deviation for each component.
    pub fn allowance(value: f64) -> f64 {
        ORACLE_ABS_TOL.max(ORACLE_REL_TOL * value.abs())
    }

    pub fn failures(&self) -> Vec<&'static str> {
        (0..6)
            .filter(|&i| !((self.closed[i] - self.numeric[i]).abs() <= Self::allowance(self.closed[i])))
            .map(|i| ConnectionForms::INDEPENDENT_LABELS[i])
            .collect()
    }

    pub fn max_abs_deviation(&self) -> f64 {
        (0..6).fold(0.0, |m, i| m.max((self.closed[i] - self.numeric[i]).abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckSample {
    pub lowering: Lowering,
    pub scenario: Scenario,
    pub chi: f64,
    pub x: f64,
    pub pipeline: f64,
    pub closed_form: f64,
}

impl CrossCheckSample {
    pub fn relative_deviation(&self) -> f64 {
        let diff = (self.pipeline - self.closed_form).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.closed_form.abs().max(f64::MIN_POSITIVE)
        }
    }

    pub fn matches(&self) -> bool {
        self.relative_deviation() <= CROSS_CHECK_REL_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndpointRotation {
    pub lowering: Lowering,
    pub omega: f64,
    pub err_estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompatibilityReport {
    pub spec: ReportSpec,
    pub oracle: Vec<OracleSample>,
    pub cross: Vec<CrossCheckSample>,
    /// Fall from infinity to the stationary limit surface at `a = rs/2`.
    pub endpoint: Vec<EndpointRotation>,
}

impl CompatibilityReport {
    pub fn oracle_passes(&self) -> bool {
        self.oracle.iter().all(|s| s.failures().is_empty())
    }

    pub fn deviations(&self) -> impl Iterator<Item = &CrossCheckSample> {
        self.cross.iter().filter(|s| !s.matches())
    }

    pub fn pipeline_matches(&self, lowering: Lowering) -> bool {
        self.cross.iter().filter(|s| s.lowering == lowering).all(CrossCheckSample::matches)
    }
}

fn random_source(rng: &mut ChaCha8Rng) -> Result<GravitationalSource> {
    GravitationalSource::unit(rng.random_range(-CHI_MAX..=CHI_MAX))
}

pub fn compatibility_report(spec: ReportSpec) -> Result<CompatibilityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut oracle = Vec::with_capacity(spec.oracle_points);
    for _ in 0..spec.oracle_points {
        let source = random_source(&mut rng)?;
        let x = rng.random_range(0.02..0.95);
        let r = source.radius(x);
        oracle.push(OracleSample {
            chi: source.chi(),
            x,
            closed: connection_forms(&source, r)?.independent(),
            numeric: connection_forms_numeric(&source, r, DEFAULT_FD_STEP)?.independent(),
        });
    }

    // shared sample points for both lowerings
    let mut points = Vec::with_capacity(spec.cross_points);
    while points.len() < spec.cross_points {
        let source = random_source(&mut rng)?;
        if points.len() % 2 == 0 {
            points.push((source, rng.random_range(0.02..0.98), Scenario::RadialFall));
        } else {
            let sense = if rng.random_bool(0.5) {
                OrbitSense::CoRotating
            } else {
                OrbitSense::CounterRotating
            };
            let x = rng.random_range(0.02..0.98 * CIRCULAR_X_MAX);
            if circular_orbit_exists(&source, source.radius(x), sense) {
                points.push((source, x, Scenario::Circular(sense)));
            }
        }
    }

    let mut cross = Vec::with_capacity(2 * points.len());
    for lowering in Lowering::ALL {
        let pipeline = Pipeline::new(lowering);
        for (source, x, scenario) in &points {
            let r = source.radius(*x);
            let (computed, closed_form) = match *scenario {
                Scenario::RadialFall => (pipeline.radial_theta13(source, r)?, published::radial_theta13(source, r)?),
                Scenario::Circular(sense) => (
                    pipeline.circular_theta13(source, r, sense)?,
                    published::circular_theta13(source, r, sense)?,
                ),
            };
            cross.push(CrossCheckSample {
                lowering,
                scenario: *scenario,
                chi: source.chi(),
                x: *x,
                pipeline: computed,
                closed_form,
            });
        }
    }

    let extremal = GravitationalSource::unit(CHI_MAX)?;
    let endpoint = Lowering::ALL
        .iter()
        .map(|&lowering| {
            Pipeline::new(lowering)
                .radial_fall_rotation(&extremal, 0.0, 1.0, spec.tol)
                .map(|rot| EndpointRotation {
                    lowering,
                    omega: rot.omega,
                    err_estimate: rot.err_estimate,
                })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CompatibilityReport {
        spec,
        oracle,
        cross,
        endpoint,
    })
}

fn scenario_label(s: &Scenario) -> String {
    match s {
        Scenario::RadialFall => "radial".to_string(),
        Scenario::Circular(sense) => format!("circular/{sense}"),
    }
}

impl fmt::Display for CompatibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worst = self.oracle.iter().map(OracleSample::max_abs_deviation).fold(0.0, f64::max);
        writeln!(
            f,
            "connection oracle: {} points (seed {:#x}), max |closed - numeric| = {:.3e}: {}",
            self.oracle.len(),
            self.spec.seed,
            worst,
            if self.oracle_passes() { "ok" } else { "MISMATCH" }
        )?;
        for s in self.oracle.iter().filter(|s| !s.failures().is_empty()) {
            writeln!(f, "  chi={:+.6} x={:.6}: {}", s.chi, s.x, s.failures().join(", "))?;
        }

        for lowering in Lowering::ALL {
            let samples: Vec<_> = self.cross.iter().filter(|s| s.lowering == lowering).collect();
            let bad: Vec<_> = samples.iter().filter(|s| !s.matches()).collect();
            let worst = samples.iter().map(|s| s.relative_deviation()).fold(0.0, f64::max);
            writeln!(
                f,
                "theta13 pipeline vs closed form [{lowering}]: {} points, {} deviations, max rel dev {:.3e}",
                samples.len(),
                bad.len(),
                worst
            )?;
            for s in bad {
                writeln!(
                    f,
                    "  {:<18} chi={:+.6} x={:.6} pipeline={:+.9e} closed={:+.9e} rel={:.3e}",
                    scenario_label(&s.scenario),
                    s.chi,
                    s.x,
                    s.pipeline,
                    s.closed_form,
                    s.relative_deviation()
                )?;
            }
        }

        for e in &self.endpoint {
            writeln!(
                f,
                "omega(chi=0.5, x: 0 -> 1) [{}] = {:.6} rad (err {:.1e})",
                e.lowering, e.omega, e.err_estimate
            )?;
        }
        Ok(())
    }
}
