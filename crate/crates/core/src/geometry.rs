//! Kerr spacetime in Boyer-Lindquist coordinates `(t, r, θ, φ)` with `G = c = 1`.
//!
//! A source is described by its Schwarzschild radius `rs = 2M` and the
//! dimensionless spin ratio `chi = a / rs`. Every length returned here is in the
//! same units as `rs`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Matrix4;

use crate::error::{Error, Result};

/// Absolute tolerance for "on the boundary" comparisons of dimensionless quantities.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Largest spin ratio `|a / rs|` for which horizons exist.
pub const CHI_MAX: f64 = 0.5;

/// Equatorial plane.
pub const EQUATOR: f64 = FRAC_PI_2;

/// Verdict of the cosmic-censorship check on `chi = a / rs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Censorship {
    Ok,
    /// `|chi| = 1/2`: the two horizons coincide. Accepted so the bounding
    /// curves at `a = ±rs/2` can be evaluated.
    Extremal,
    Violation,
}

impl Censorship {
    pub fn is_allowed(self) -> bool {
        !matches!(self, Censorship::Violation)
    }
}

/// Classifies a spin ratio against `-1/2 < a/rs < 1/2`.
pub fn validate_censorship(chi: f64) -> Censorship {
    let margin = chi.abs() - CHI_MAX;
    if !chi.is_finite() || margin > BOUNDARY_TOL {
        Censorship::Violation
    } else if margin.abs() <= BOUNDARY_TOL {
        Censorship::Extremal
    } else {
        Censorship::Ok
    }
}

/// A rotating body of Schwarzschild radius `rs` and angular momentum `M a`.
///
/// `(rs, chi)` is the stored state; `a = chi * rs` is derived. Sources that
/// violate cosmic censorship cannot be constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravitationalSource {
    rs: f64,
    chi: f64,
}

impl GravitationalSource {
    pub fn new(rs: f64, chi: f64) -> Result<Self> {
        if !(rs.is_finite() && rs > 0.0) {
            return Err(Error::invalid(format!("rs must be positive and finite, got {rs}")));
        }
        match validate_censorship(chi) {
            Censorship::Violation => Err(Error::CensorshipViolation { chi }),
            _ => Ok(Self { rs, chi }),
        }
    }

    /// Source with `rs = 1`, the natural unit of the dimensionless API.
    pub fn unit(chi: f64) -> Result<Self> {
        Self::new(1.0, chi)
    }

    pub fn schwarzschild(rs: f64) -> Result<Self> {
        Self::new(rs, 0.0)
    }

    pub fn rs(&self) -> f64 {
        self.rs
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// Angular momentum per unit mass.
    pub fn a(&self) -> f64 {
        self.chi * self.rs
    }

    pub fn mass(&self) -> f64 {
        0.5 * self.rs
    }

    pub fn censorship(&self) -> Censorship {
        validate_censorship(self.chi)
    }

    /// Radius corresponding to `x = rs / r`.
    pub fn radius(&self, x: f64) -> f64 {
        self.rs / x
    }

    /// Same body with the spin reversed.
    pub fn mirrored(&self) -> Self {
        Self {
            rs: self.rs,
            chi: -self.chi,
        }
    }
}

/// Pointwise metric functions at `(r, θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryScalars {
    /// `ρ² = r² + a² cos²θ`
    pub rho2: f64,
    /// `Δ = r² − r rs + a²`
    pub delta: f64,
    /// `Σ² = (r² + a²)² − a² Δ sin²θ`
    pub sigma2: f64,
    /// `f = 1 − rs / r`
    pub f: f64,
    /// `W² = 1 − r rs / ρ²`; negative inside the stationary limit surface.
    pub w2: f64,
    /// Frame-drag rate `ω = rs r a / Σ²`.
    pub omega: f64,
    /// `a / ω` evaluated as `Σ² / (rs r)`, finite for `a = 0`.
    pub a_over_omega: f64,
}

impl GeometryScalars {
    /// `W`, or NaN inside the stationary limit surface.
    pub fn w(&self) -> f64 {
        self.w2.sqrt()
    }
}

pub fn metric_scalars(source: &GravitationalSource, r: f64, theta: f64) -> Result<GeometryScalars> {
    if !(r.is_finite() && r > 0.0) || !theta.is_finite() {
        return Err(Error::invalid(format!("need finite r > 0 and θ, got r = {r}, θ = {theta}")));
    }
    let rs = source.rs();
    let a = source.a();
    let (sin_t, cos_t) = theta.sin_cos();
    let rho2 = r * r + a * a * cos_t * cos_t;
    if rho2 == 0.0 {
        return Err(Error::Domain {
            what: "metric (ring singularity)",
            r,
        });
    }
    let delta = r * r - r * rs + a * a;
    let sigma2 = (r * r + a * a).powi(2) - a * a * delta * sin_t * sin_t;
    Ok(GeometryScalars {
        rho2,
        delta,
        sigma2,
        f: 1.0 - rs / r,
        w2: 1.0 - r * rs / rho2,
        omega: rs * r * a / sigma2,
        a_over_omega: sigma2 / (rs * r),
    })
}

/// Covariant metric `g_{μν}` with index order `(t, r, θ, φ)`.
pub fn metric_tensor(source: &GravitationalSource, r: f64, theta: f64) -> Result<Matrix4<f64>> {
    let s = metric_scalars(source, r, theta)?;
    let sin2 = theta.sin().powi(2);
    let g_phph = s.sigma2 * sin2 / s.rho2;
    let g_tph = -g_phph * s.omega;
    let g_tt = -s.rho2 * s.delta / s.sigma2 + g_phph * s.omega * s.omega;
    let mut g = Matrix4::zeros();
    g[(0, 0)] = g_tt;
    g[(1, 1)] = s.rho2 / s.delta;
    g[(2, 2)] = s.rho2;
    g[(3, 3)] = g_phph;
    g[(0, 3)] = g_tph;
    g[(3, 0)] = g_tph;
    Ok(g)
}

/// Contravariant metric `g^{μν}`.
pub fn inverse_metric(source: &GravitationalSource, r: f64, theta: f64) -> Result<Matrix4<f64>> {
    metric_tensor(source, r, theta)?
        .try_inverse()
        .ok_or(Error::Domain { what: "inverse metric", r })
}

/// Horizon and stationary-limit radii at a given polar angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizonStructure {
    pub r_minus: f64,
    pub r_plus: f64,
    pub s_minus: f64,
    pub s_plus: f64,
}

impl HorizonStructure {
    /// `S⁻ ≤ r⁻ ≤ r⁺ ≤ S⁺` within [`BOUNDARY_TOL`].
    pub fn is_nested(&self) -> bool {
        self.s_minus <= self.r_minus + BOUNDARY_TOL
            && self.r_minus <= self.r_plus + BOUNDARY_TOL
            && self.r_plus <= self.s_plus + BOUNDARY_TOL
    }
}

/// `r± = rs/2 ± √(rs²/4 − a²)` and `S± = rs/2 ± √(rs²/4 − a² cos θ)`.
///
/// The stationary limit radii use `cos θ` to the first power. On the equator
/// this agrees with the `cos² θ` ergosurface and gives `S⁺ = rs`.
pub fn horizons(source: &GravitationalSource, theta: f64) -> HorizonStructure {
    let half = 0.5 * source.rs();
    let a = source.a();
    // max(0) absorbs rounding at the extremal spin
    let dh = (half * half - a * a).max(0.0).sqrt();
    let ds = (half * half - a * a * theta.cos()).max(0.0).sqrt();
    HorizonStructure {
        r_minus: half - dh,
        r_plus: half + dh,
        s_minus: half - ds,
        s_plus: half + ds,
    }
}
