//! Closed-form generators for the two equatorial scenarios, transcribed term
//! by term. These are cross-check fixtures for [`crate::wigner::Pipeline`];
//! no angle in the crate is computed from them.
//!
//! Every `a / ω` is written as `a_over_omega = Σ² / (rs r)` so the
//! Schwarzschild limit is a regular point.

use crate::error::{Error, Result};
use crate::geodesics::{circular_constants, OrbitSense};
use crate::geometry::{metric_scalars, GeometryScalars, GravitationalSource, EQUATOR};

fn exterior(source: &GravitationalSource, r: f64) -> Result<GeometryScalars> {
    let s = metric_scalars(source, r, EQUATOR)?;
    if !(s.f > 0.0 && s.delta > 0.0) {
        return Err(Error::Domain {
            what: "closed-form generators (r ≤ rs)",
            r,
        });
    }
    Ok(s)
}

/// Radial fall `(λ^0_1, λ^0_3, λ^1_3)`.
pub fn radial_lorentz(source: &GravitationalSource, r: f64) -> Result<[f64; 3]> {
    let s = exterior(source, r)?;
    let (rs, a) = (source.rs(), source.a());
    let r4 = r.powi(4);
    let sf = s.f.sqrt();
    let l01 = rs * rs / (2.0 * s.delta * r4) * (a * a - s.a_over_omega) * (s.delta / s.f).sqrt();
    let l03 = a * rs / (2.0 * r * r * s.f * s.delta.sqrt()) * (rs / r * (1.0 + a * a / (r * r))).sqrt();
    let l13 = a * rs * rs / (2.0 * s.delta * r4 * sf) * (s.a_over_omega - a * a) + a * rs * sf / (s.delta * r);
    Ok([l01, l03, l13])
}

/// Radial fall `ϑ^1_3`.
pub fn radial_theta13(source: &GravitationalSource, r: f64) -> Result<f64> {
    let s = exterior(source, r)?;
    let (rs, a) = (source.rs(), source.a());
    let [_, _, l13] = radial_lorentz(source, r)?;
    let sf = s.f.sqrt();
    let tail = a * rs * rs / (2.0 * s.delta * r.powi(4) * (s.f + sf)) * (a * a * s.f + r * r + rs * s.a_over_omega / r);
    Ok(l13 + tail)
}

/// Circular orbit `(λ^0_1, λ^1_3)`.
pub fn circular_lorentz(source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<[f64; 2]> {
    let s = exterior(source, r)?;
    let (k, j) = circular_constants(source, r, sense)?;
    let (rs, a) = (source.rs(), source.a());
    let r4 = r.powi(4);
    let sf = s.f.sqrt();
    // a (J − K/ω + aK + fJr/rs)
    let boost = a * j - k * s.a_over_omega + a * a * k + a * s.f * j * r / rs;
    let l01 = rs * rs / (2.0 * r4 * (s.delta * s.f).sqrt()) * boost;
    let l13 = a * rs * rs / (2.0 * s.delta * r4 * sf) * (k * s.a_over_omega - a * j)
        - rs / (s.delta * r) * (a * k + s.f * j * r / rs) * (a * a * rs / (2.0 * r.powi(3) * sf) - sf);
    Ok([l01, l13])
}

/// Circular orbit `ϑ^1_3`.
pub fn circular_theta13(source: &GravitationalSource, r: f64, sense: OrbitSense) -> Result<f64> {
    let s = exterior(source, r)?;
    let (k, j) = circular_constants(source, r, sense)?;
    let (rs, a) = (source.rs(), source.a());
    let [_, l13] = circular_lorentz(source, r, sense)?;
    let sf = s.f.sqrt();
    let boost = a * j - k * s.a_over_omega + a * a * k + a * s.f * j * r / rs;
    let head = rs * rs * sf / (2.0 * r.powi(4) * s.delta * (k + sf)) * boost * (-a * k / s.f + a * k + j);
    Ok(head + l13)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schwarzschild_radial_terms_vanish() {
        let s = GravitationalSource::unit(0.0).unwrap();
        let [_, l03, l13] = radial_lorentz(&s, 3.0).unwrap();
        assert_eq!((l03, l13), (0.0, 0.0));
        assert_eq!(radial_theta13(&s, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn radial_theta13_is_odd_in_spin() {
        for r in [1.01, 2.0, 7.5] {
            let p = radial_theta13(&GravitationalSource::unit(0.4).unwrap(), r).unwrap();
            let m = radial_theta13(&GravitationalSource::unit(-0.4).unwrap(), r).unwrap();
            assert!((p + m).abs() < 1e-15 * p.abs().max(1.0));
        }
    }

    #[test]
    fn rejects_the_stationary_limit_surface() {
        let s = GravitationalSource::unit(0.5).unwrap();
        assert!(radial_theta13(&s, 1.0).is_err());
    }
}
