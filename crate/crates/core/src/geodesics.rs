//! Equatorial timelike geodesics: zero-angular-momentum radial fall from rest
//! at infinity, and circular orbits.
//!
//! `K` and `J` are the conserved energy and angular momentum per unit mass.
//! They enter the coordinate velocity as `u_t = −K`, `u_φ = J`.

use std::fmt;

use nalgebra::Vector4;

use crate::error::{Error, Result};
use crate::geometry::{metric_scalars, metric_tensor, GravitationalSource, GeometryScalars, BOUNDARY_TOL, EQUATOR};

/// Direction of a circular orbit relative to the source's spin (`a > 0`
/// rotates towards increasing `φ`).
///
/// The paired signs in the circular-orbit constants read upper for
/// counter-rotating and lower for co-rotating. A co-rotating orbit around
/// `chi` is the mirror image of a counter-rotating one around `−chi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitSense {
    CoRotating,
    CounterRotating,
}

impl OrbitSense {
    /// `+1` for co-rotating (lower signs), `−1` for counter-rotating (upper signs).
    pub fn sign(self) -> f64 {
        match self {
            OrbitSense::CoRotating => 1.0,
            OrbitSense::CounterRotating => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            OrbitSense::CoRotating => OrbitSense::CounterRotating,
            OrbitSense::CounterRotating => OrbitSense::CoRotating,
        }
    }
}

impl fmt::Display for OrbitSense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitSense::CoRotating => "co-rotating",
            OrbitSense::CounterRotating => "counter-rotating",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    RadialFall,
    Circular(OrbitSense),
}

/// Geodesic 4-velocity at a point of the equatorial plane.
#[derive(Debug, Clone, PartialEq)]
pub struct FourVelocity {
    /// Contravariant components `(u^t, u^r, u^θ, u^φ)`.
    pub components: Vector4<f64>,
    /// Conserved energy `K`.
    pub energy: f64,
    /// Conserved angular momentum `J`.
    pub angular_momentum: f64,
    pub radius: f64,
    pub scenario: Scenario,
}

impl FourVelocity {
    pub fn u_t(&self) -> f64 {
        self.components[0]
    }

    pub fn u_r(&self) -> f64 {
        self.components[1]
    }

    pub fn u_theta(&self) -> f64 {
        self.components[2]
    }

    pub fn u_phi(&self) -> f64 {
        self.components[3]
    }

    /// `g_μν u^μ u^ν`; equals −1 for a unit-mass timelike geodesic.
    pub fn normalization(&self, source: &GravitationalSource) -> Result<f64> {
        let g = metric_tensor(source, self.radius, EQUATOR)?;
        Ok(self.components.dot(&(g * self.components)))
    }

    /// Coordinate angular velocity `dφ/dt`.
    pub fn angular_velocity(&self) -> f64 {
        self.u_phi() / self.u_t()
    }
}

fn exterior_scalars(source: &GravitationalSource, r: f64) -> Result<GeometryScalars> {
    let rs = source.rs();
    if !(r.is_finite() && r >= rs * (1.0 - BOUNDARY_TOL)) {
        return Err(Error::Domain {
            what: "equatorial geodesic (inside the stationary limit surface)",
            r,
        });
    }
    let s = metric_scalars(source, r, EQUATOR)?;
    if !(s.delta > 0.0) {
        return Err(Error::Domain {
            what: "equatorial geodesic (Δ ≤ 0)",
            r,
        });
    }
    Ok(s)
}

/// Zero-angular-momentum fall from rest at infinity (`K = 1`, `J = 0`),
/// moving inwards.
pub fn radial_fall_velocity(source: &GravitationalSource, r: f64) -> Result<FourVelocity> {
    let s = exterior_scalars(source, r)?;
    let rs = source.rs();
    let a = source.a();
    let u_t = s.a_over_omega * rs / (s.delta * r);
    let u_phi = a * rs / (s.delta * r);
    let u_r = -(rs / r + a * a * rs / (r * r * r)).sqrt();
    Ok(FourVelocity {
        components: Vector4::new(u_t, u_r, 0.0, u_phi),
        energy: 1.0,
        angular_momentum: 0.0,
        radius: r,
        scenario: Scenario::RadialFall,
    })
}

/// Numerators and radicand of the circular-orbit constants:
/// `K = energy_scaled / √radicand`, `J = angular_momentum_scaled / √radicand`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CircularCharges {
    pub energy_scaled: f64,
    pub angular_momentum_scaled: f64,
    pub radicand: f64,
}

pub(crate) fn circular_charges(source: &GravitationalSource, r: f64, sense: OrbitSense) -> CircularCharges {
    let rs = source.rs();
    let a = source.a();
    let x = rs / r;
    let sign = sense.sign();
    let q = (rs / (2.0 * r * r * r)).sqrt();
    CircularCharges {
        energy_scaled: 1.0 - x + sign * a * q,
        angular_momentum_scaled: sign * (1.0 + a * a / (r * r) - sign * 2.0 * a * q) * (r * rs / 2.0).sqrt(),
        radicand: 1.0 - 1.5 * x + sign * 2.0 * a * q,
    }
}

/// Whether a timelike circular orbit of the given sense exists at `r`.
///
/// Requires a positive radicand in the orbit constants and `rs/r ≤ 2/3`,
/// the window left once the orbit condition is combined with cosmic censorship.
pub fn circular_orbit_exists(source: &GravitationalSource, r: f64, sense: OrbitSense) -> bool {
    if !(r.is_finite() && r > 0.0) {
        return false;
    }
    let x = source.rs() / r;
    x <= 2.0 / 3.0 + BOUNDARY_TOL && circular_charges(source, r, sense).radicand > 0.0
}

fn require_circular(source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<()> {
    if circular_orbit_exists(source, r, sense) {
        Ok(())
    } else {
        Err(Error::NoCircularOrbit {
            chi: source.chi(),
            x: source.rs() / r,
            sense,
        })
    }
}

/// Conserved `(K, J)` of the circular orbit at `r`.
pub fn circular_constants(source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<(f64, f64)> {
    require_circular(source, r, sense)?;
    let c = circular_charges(source, r, sense);
    let root = c.radicand.sqrt();
    Ok((c.energy_scaled / root, c.angular_momentum_scaled / root))
}

/// Contravariant `(u^t, u^φ)` of an equatorial orbit with charges `(K, J)`.
pub(crate) fn equatorial_velocity(source: &GravitationalSource, s: &GeometryScalars, r: f64, k: f64, j: f64) -> (f64, f64) {
    let rs = source.rs();
    let a = source.a();
    let u_t = rs / (s.delta * r) * (k * s.a_over_omega - a * j);
    let u_phi = (a * k * rs / r + s.f * j) / s.delta;
    (u_t, u_phi)
}

pub fn circular_velocity(source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<FourVelocity> {
    let (k, j) = circular_constants(source, r, sense)?;
    let s = exterior_scalars(source, r)?;
    let (u_t, u_phi) = equatorial_velocity(source, &s, r, k, j);
    Ok(FourVelocity {
        components: Vector4::new(u_t, 0.0, 0.0, u_phi),
        energy: k,
        angular_momentum: j,
        radius: r,
        scenario: Scenario::Circular(sense),
    })
}

/// Angular velocity `ω = rs r a / Σ²` imparted by frame dragging on the equator.
pub fn frame_drag_rate(source: &GravitationalSource, r: f64) -> Result<f64> {
    Ok(metric_scalars(source, r, EQUATOR)?.omega)
}

/// Coordinate-time speeds of a geodesic, compared with the non-relativistic
/// bounds under which spin-curvature coupling can be neglected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    /// `|dr/dt|`
    pub dr_dt: f64,
    /// `|r dφ/dt|`
    pub r_dphi_dt: f64,
    pub within_bounds: bool,
}

pub const RADIAL_SPEED_BOUND: f64 = 0.4;
pub const RADIAL_FALL_AZIMUTHAL_BOUND: f64 = 1.0 / 3.0;
pub const CIRCULAR_AZIMUTHAL_BOUND: f64 = 0.7;

pub fn regime_check(source: &GravitationalSource, r: f64, scenario: Scenario) -> Result<RegimeReport> {
    let u = match scenario {
        Scenario::RadialFall => radial_fall_velocity(source, r)?,
        Scenario::Circular(sense) => circular_velocity(source, r, sense)?,
    };
    let dr_dt = (u.u_r() / u.u_t()).abs();
    let r_dphi_dt = (r * u.angular_velocity()).abs();
    let within_bounds = match scenario {
        Scenario::RadialFall => {
            dr_dt <= RADIAL_SPEED_BOUND + BOUNDARY_TOL && r_dphi_dt <= RADIAL_FALL_AZIMUTHAL_BOUND + BOUNDARY_TOL
        }
        Scenario::Circular(_) => r_dphi_dt <= CIRCULAR_AZIMUTHAL_BOUND + BOUNDARY_TOL,
    };
    Ok(RegimeReport {
        dr_dt,
        r_dphi_dt,
        within_bounds,
    })
}
