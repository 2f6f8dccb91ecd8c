//! Local Lorentz generators along a geodesic, the infinitesimal Wigner rotation
//! they induce, and its integral along the two equatorial scenarios.
//!
//! Every angle here comes from one route: hovering tetrad → connection forms →
//! `λ^a_b = −u^ν ω_ν^a_b` → Wigner generator
//! `ϑ^a_b = λ^a_b + (λ^a_0 u_b − λ_b0 u^a) / (u^0 + 1)`.
//! Closed-form transcriptions live in [`crate::published`] and are only used
//! to cross-check this route.
//!
//! Both scenarios rotate the spin about the local 2-axis (the `θ` direction),
//! so the time-ordered exponential reduces to the scalar integral of `ϑ^1_3`.
//! Positive angles are right-handed about that axis.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::frames::{connection_forms, minkowski, tetrad, ConnectionForms, Tetrad};
use crate::geodesics::{
    circular_charges, circular_velocity, equatorial_velocity, radial_fall_velocity, FourVelocity, OrbitSense,
};
use crate::geometry::{metric_scalars, metric_tensor, GravitationalSource, BOUNDARY_TOL, CHI_MAX, EQUATOR};
use crate::quadrature::{integrate_bounded, DEFAULT_MAX_PANELS};

/// Default absolute tolerance for integrated angles, in radians.
pub const DEFAULT_TOL: f64 = 1e-8;

// Narrowest quadrature panel in s. Narrower panels put nodes where 1 − s²
// rounds to 1 and the integrand is dominated by cancellation noise.
const MIN_PANEL_WIDTH: f64 = 1e-5;

/// How the covariant local velocity `u_b` in the Wigner generator is formed.
///
/// The two conventions differ only in the sign of the conserved energy in
/// the covariant momentum `p_μ = (p_t, p_r, p_θ, J)` that is projected onto
/// the frame, `u_b = e_b^μ p_μ`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Lowering {
    /// `p_t = +K`: the conserved charges taken as `p_t = K`, `p_φ = J`.
    /// Reproduces the published closed forms and the published figures.
    #[default]
    ConservedCharges,
    /// `p_μ = g_μν u^ν` (so `p_t = −K`), i.e. `u_b = η_bc u^c`. With this
    /// choice the spatial block of `ϑ` is antisymmetric and the correction
    /// term vanishes on the zero-angular-momentum radial fall.
    Metric,
}

impl Lowering {
    pub const ALL: [Lowering; 2] = [Lowering::ConservedCharges, Lowering::Metric];

    pub fn label(self) -> &'static str {
        match self {
            Lowering::ConservedCharges => "conserved-charges",
            Lowering::Metric => "metric",
        }
    }
}

impl fmt::Display for Lowering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `λ^a_b` (row `a`, column `b`) in the local inertial frame.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzGenerator {
    pub lambda: Matrix4<f64>,
}

impl LorentzGenerator {
    /// Largest violation of `λ_ab = −λ_ba` after lowering with `η`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let low = minkowski() * self.lambda;
        (low + low.transpose()).iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn contract(velocity: &Vector4<f64>, forms: &ConnectionForms) -> Matrix4<f64> {
    (0..4).fold(Matrix4::zeros(), |acc, nu| acc - forms.along(nu) * velocity[nu])
}

/// `λ^a_b = −u^ν ω_ν^a_b` for free fall (no non-gravitational force).
pub fn lorentz_generator(u: &FourVelocity, forms: &ConnectionForms) -> LorentzGenerator {
    LorentzGenerator {
        lambda: contract(&u.components, forms),
    }
}

/// `ϑ^a_b`; `theta13` is the `ϑ^1_3` entry that drives the rotation about the 2-axis.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGenerator {
    pub theta: Matrix4<f64>,
    pub theta13: f64,
}

impl WignerGenerator {
    /// Largest violation of `ϑ_ik = −ϑ_ki` over spatial indices.
    pub fn spatial_antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 1..4 {
            for k in 1..4 {
                worst = worst.max((self.theta[(i, k)] + self.theta[(k, i)]).abs());
            }
        }
        worst
    }
}

/// Wigner generator in homogeneous form. `up` and `down` are the local
/// contravariant and covariant velocities, `norm = √(−u·u)` (1 on a timelike
/// unit geodesic, 0 in the light-ring limit).
fn thomas_generator(lambda: &Matrix4<f64>, up: &Vector4<f64>, down: &Vector4<f64>, norm: f64) -> Result<WignerGenerator> {
    let denom = up[0] + norm;
    if !(denom > 0.0) {
        return Err(Error::DegenerateFrame(denom));
    }
    let eta = minkowski();
    let mut theta = *lambda;
    for a in 0..4 {
        for b in 0..4 {
            let lambda_b0 = eta[(b, b)] * lambda[(b, 0)];
            theta[(a, b)] += (lambda[(a, 0)] * down[b] - lambda_b0 * up[a]) / denom;
        }
    }
    Ok(WignerGenerator {
        theta13: theta[(1, 3)],
        theta,
    })
}

/// Covariant momentum that is projected onto the frame to give `u_b`.
fn covariant_momentum(covariant: &Vector4<f64>, energy: f64, lowering: Lowering) -> Vector4<f64> {
    match lowering {
        Lowering::Metric => *covariant,
        Lowering::ConservedCharges => Vector4::new(energy, covariant[1], covariant[2], covariant[3]),
    }
}

/// Infinitesimal Wigner rotation generator for a velocity `u` measured in `tetrad`.
pub fn wigner_generator(
    lambda: &LorentzGenerator,
    u: &FourVelocity,
    covariant: &Vector4<f64>,
    tetrad: &Tetrad,
    lowering: Lowering,
) -> Result<WignerGenerator> {
    let up = tetrad.to_local(&u.components);
    let down = tetrad.project_covariant(&covariant_momentum(covariant, u.energy, lowering));
    thomas_generator(&lambda.lambda, &up, &down, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationKind {
    RadialFall,
    Circular {
        sense: OrbitSense,
        /// Gravitational part of the per-orbit angle, `1 − ϑ^1_3 / u^φ`, times `orbits`.
        delta_omega: f64,
        orbits: u64,
    },
}

/// A finite rotation of the spin about the local 2-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinRotation {
    /// Total angle in radians.
    pub omega: f64,
    pub err_estimate: f64,
    pub r_start: f64,
    pub r_end: f64,
    pub kind: RotationKind,
}

impl SpinRotation {
    pub fn delta_omega(&self) -> Option<f64> {
        match self.kind {
            RotationKind::Circular { delta_omega, .. } => Some(delta_omega),
            RotationKind::RadialFall => None,
        }
    }

    pub fn orbits(&self) -> Option<u64> {
        match self.kind {
            RotationKind::Circular { orbits, .. } => Some(orbits),
            RotationKind::RadialFall => None,
        }
    }
}

/// Rotation after `n` completed orbits; orbit rotations add.
pub fn n_orbit_rotation(per_orbit: &SpinRotation, n: u64) -> Result<SpinRotation> {
    let RotationKind::Circular {
        sense,
        delta_omega,
        orbits,
    } = per_orbit.kind
    else {
        return Err(Error::invalid("n-orbit scaling needs a circular-orbit rotation"));
    };
    let scale = n as f64;
    Ok(SpinRotation {
        omega: per_orbit.omega * scale,
        err_estimate: per_orbit.err_estimate * scale,
        kind: RotationKind::Circular {
            sense,
            delta_omega: delta_omega * scale,
            orbits: orbits * n,
        },
        ..*per_orbit
    })
}

/// Spin magnitudes that bound the admissible circular orbits at radius `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinBounds {
    /// `|a| ≤ rs/2` from cosmic censorship.
    pub censorship: f64,
    /// `|a| < (1 − 3rs/2r) √(r³ / 2rs)` from the circular-orbit condition;
    /// negative inside `r = 3rs/2`.
    pub dynamics: f64,
}

impl SpinBounds {
    /// Tighter of the two bounds, never negative.
    pub fn effective(&self) -> f64 {
        self.dynamics.min(self.censorship).max(0.0)
    }
}

pub fn spin_bound_curves(rs: f64, r: f64) -> SpinBounds {
    SpinBounds {
        censorship: CHI_MAX * rs,
        dynamics: (1.0 - 1.5 * rs / r) * (r * r * r / (2.0 * rs)).sqrt(),
    }
}

/// Generators at one point along a geodesic.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalRotation {
    pub lorentz: LorentzGenerator,
    pub wigner: WignerGenerator,
}

/// The tetrad → connection → generator route, parameterised by [`Lowering`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pipeline {
    pub lowering: Lowering,
}

impl Pipeline {
    pub fn new(lowering: Lowering) -> Self {
        Self { lowering }
    }

    fn evaluate(
        &self,
        source: &GravitationalSource,
        r: f64,
        velocity: &Vector4<f64>,
        covariant: &Vector4<f64>,
        energy: f64,
        norm: f64,
    ) -> Result<LocalRotation> {
        let forms = connection_forms(source, r)?;
        let frame = tetrad(source, r, EQUATOR)?;
        let lambda = contract(velocity, &forms);
        let up = frame.to_local(velocity);
        let down = frame.project_covariant(&covariant_momentum(covariant, energy, self.lowering));
        let wigner = thomas_generator(&lambda, &up, &down, norm)?;
        Ok(LocalRotation {
            lorentz: LorentzGenerator { lambda },
            wigner,
        })
    }

    /// Generators seen by a geodesic observer with velocity `u`.
    pub fn at(&self, source: &GravitationalSource, u: &FourVelocity) -> Result<LocalRotation> {
        let g = metric_tensor(source, u.radius, EQUATOR)?;
        let covariant = g * u.components;
        self.evaluate(source, u.radius, &u.components, &covariant, u.energy, 1.0)
    }

    pub fn radial_theta13(&self, source: &GravitationalSource, r: f64) -> Result<f64> {
        let u = radial_fall_velocity(source, r)?;
        Ok(self.at(source, &u)?.wigner.theta13)
    }

    pub fn circular_theta13(&self, source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<f64> {
        let u = circular_velocity(source, r, sense)?;
        Ok(self.at(source, &u)?.wigner.theta13)
    }

    /// Radial-fall integrand `dΩ/ds` under `x = rs/r = 1 − s²`.
    ///
    /// In `x` the integrand diverges like `(1 − x)^(−1/2)` at the stationary
    /// limit surface; in `s` it is bounded.
    pub fn radial_integrand(&self, source: &GravitationalSource, s: f64) -> Result<f64> {
        let x = 1.0 - s * s;
        let rs = source.rs();
        let r = rs / x;
        let u = radial_fall_velocity(source, r)?;
        let theta13 = self.at(source, &u)?.wigner.theta13;
        // dΩ = ϑ dτ = ϑ dr / u^r, with dr = −rs dx / x² and dx = −2s ds
        Ok(theta13 / u.u_r().abs() * rs / (x * x) * 2.0 * s)
    }

    /// Spin rotation accumulated while falling from `x_start` to `x_end`
    /// (`x = rs/r`; `x_start = 0` is spatial infinity, `x_end = 1` the
    /// equatorial stationary limit surface).
    pub fn radial_fall_rotation(
        &self,
        source: &GravitationalSource,
        x_start: f64,
        x_end: f64,
        tol: f64,
    ) -> Result<SpinRotation> {
        if !(0.0 <= x_start && x_start < x_end && x_end <= 1.0) {
            return Err(Error::invalid(format!(
                "need 0 <= x_start < x_end <= 1, got x_start = {x_start}, x_end = {x_end}"
            )));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
        }
        let s_near = (1.0 - x_end).sqrt();
        let s_far = (1.0 - x_start).sqrt();
        let q = integrate_bounded(
            |s| self.radial_integrand(source, s),
            s_near,
            s_far,
            0.5 * tol,
            DEFAULT_MAX_PANELS,
            MIN_PANEL_WIDTH,
        )?;
        if !q.converged {
            return Err(Error::ToleranceNotMet {
                value: q.value,
                err_estimate: q.error,
                tol,
            });
        }
        let rs = source.rs();
        Ok(SpinRotation {
            omega: q.value,
            err_estimate: q.error,
            r_start: if x_start == 0.0 { f64::INFINITY } else { rs / x_start },
            r_end: rs / x_end,
            kind: RotationKind::RadialFall,
        })
    }

    fn orbit_rotation(ratio: f64, r: f64, sense: OrbitSense) -> SpinRotation {
        SpinRotation {
            omega: TAU * ratio,
            err_estimate: 0.0,
            r_start: r,
            r_end: r,
            kind: RotationKind::Circular {
                sense,
                delta_omega: 1.0 - ratio,
                orbits: 1,
            },
        }
    }

    /// Rotation over one circular orbit: `Ω = 2π ϑ^1_3 / u^φ` and
    /// `δΩ = 1 − ϑ^1_3 / u^φ`, the part left after removing the trivial `2π`.
    pub fn per_orbit_rotation(&self, source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<SpinRotation> {
        let u = circular_velocity(source, r, sense)?;
        let theta13 = self.at(source, &u)?.wigner.theta13;
        Ok(Self::orbit_rotation(theta13 / u.u_phi(), r, sense))
    }

    /// Per-orbit rotation in the limit where the circular orbit at `r`
    /// approaches the light ring (`K, J → ∞`, the orbit radicand → 0).
    ///
    /// `ϑ` and `u^φ` both scale with the diverging energy, so their ratio has
    /// a finite limit, evaluated with the null direction of the orbit.
    pub fn light_ring_rotation(&self, source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<SpinRotation> {
        let c = circular_charges(source, r, sense);
        let x = source.rs() / r;
        if !(x <= 2.0 / 3.0 + BOUNDARY_TOL && c.radicand.abs() <= BOUNDARY_TOL) {
            return Err(Error::invalid(format!(
                "rs/r = {x} is not a light-ring radius for a/rs = {} ({sense}); radicand = {}",
                source.chi(),
                c.radicand
            )));
        }
        let s = metric_scalars(source, r, EQUATOR)?;
        let (k, j) = (c.energy_scaled, c.angular_momentum_scaled);
        let (u_t, u_phi) = equatorial_velocity(source, &s, r, k, j);
        let direction = Vector4::new(u_t, 0.0, 0.0, u_phi);
        let covariant = metric_tensor(source, r, EQUATOR)? * direction;
        let local = self.evaluate(source, r, &direction, &covariant, k, 0.0)?;
        Ok(Self::orbit_rotation(local.wigner.theta13 / u_phi, r, sense))
    }
}

/// [`Pipeline::radial_fall_rotation`] with the default lowering.
pub fn radial_fall_rotation(source: &GravitationalSource, x_start: f64, x_end: f64, tol: f64) -> Result<SpinRotation> {
    Pipeline::default().radial_fall_rotation(source, x_start, x_end, tol)
}

/// [`Pipeline::per_orbit_rotation`] with the default lowering.
pub fn per_orbit_rotation(source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<SpinRotation> {
    Pipeline::default().per_orbit_rotation(source, r, sense)
}
