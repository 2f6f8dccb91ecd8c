//! Hovering-observer tetrad and its connection 1-forms.
//!
//! Local (Lorentz) indices `a, b` run over `0..4` with `η = diag(−1, 1, 1, 1)`;
//! coordinate indices follow `(t, r, θ, φ)`.

use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::geometry::{metric_scalars, metric_tensor, GravitationalSource, EQUATOR};

pub fn minkowski() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

fn max_abs(m: &Matrix4<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Local inertial frame of an observer hovering at fixed `(r, θ, φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tetrad {
    /// `e_a^μ`: row `a` is the frame vector `e_a` in coordinate components.
    pub e_inv: Matrix4<f64>,
    /// `e^a_μ`: row `a` is the dual 1-form `e^a`.
    pub e: Matrix4<f64>,
}

impl Tetrad {
    /// Local contravariant components `v^a = e^a_μ v^μ`.
    pub fn to_local(&self, v: &Vector4<f64>) -> Vector4<f64> {
        self.e * v
    }

    /// Frame components `p_b = e_b^μ p_μ` of a covariant vector.
    pub fn project_covariant(&self, p: &Vector4<f64>) -> Vector4<f64> {
        self.e_inv * p
    }

    /// `max |e_a^μ e_b^ν g_μν − η_ab|`
    pub fn orthonormality_residual(&self, g: &Matrix4<f64>) -> f64 {
        max_abs(&(self.e_inv * g * self.e_inv.transpose() - minkowski()))
    }

    /// `max |e^a_μ e_b^μ − δ^a_b|`
    pub fn inverse_residual(&self) -> f64 {
        max_abs(&(self.e * self.e_inv.transpose() - Matrix4::identity()))
    }
}

/// Hovering-observer tetrad at `(r, θ)`.
///
/// Requires `W² > 0` (outside the stationary limit surface), `Δ > 0` and
/// `sin θ ≠ 0`.
pub fn tetrad(source: &GravitationalSource, r: f64, theta: f64) -> Result<Tetrad> {
    let s = metric_scalars(source, r, theta)?;
    if !(s.w2 > 0.0) {
        return Err(Error::Domain {
            what: "hovering tetrad (inside the stationary limit surface)",
            r,
        });
    }
    if !(s.delta > 0.0) {
        return Err(Error::Domain {
            what: "hovering tetrad (Δ ≤ 0)",
            r,
        });
    }
    let sin_t = theta.sin();
    if sin_t == 0.0 {
        return Err(Error::Domain {
            what: "hovering tetrad (on the axis)",
            r,
        });
    }
    let w = s.w2.sqrt();
    let sqrt_delta = s.delta.sqrt();
    let rho = s.rho2.sqrt();

    let mut e_inv = Matrix4::zeros();
    e_inv[(0, 0)] = 1.0 / w;
    e_inv[(1, 1)] = sqrt_delta / rho;
    e_inv[(2, 2)] = 1.0 / rho;
    e_inv[(3, 3)] = w / (sqrt_delta * sin_t);
    e_inv[(3, 0)] = source.a() * sin_t / sqrt_delta * (w - 1.0 / w);

    let e = e_inv
        .try_inverse()
        .ok_or(Error::Domain { what: "tetrad inverse", r })?
        .transpose();
    Ok(Tetrad { e_inv, e })
}

/// Connection 1-forms `ω_μ^a_b`, one 4×4 matrix `(a, b)` per coordinate index `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionForms {
    forms: [Matrix4<f64>; 4],
}

impl ConnectionForms {
    pub fn from_components(forms: [Matrix4<f64>; 4]) -> Self {
        Self { forms }
    }

    pub fn along(&self, mu: usize) -> &Matrix4<f64> {
        &self.forms[mu]
    }

    pub fn component(&self, mu: usize, a: usize, b: usize) -> f64 {
        self.forms[mu][(a, b)]
    }

    /// `ω_t^0_1`
    pub fn t01(&self) -> f64 {
        self.component(0, 0, 1)
    }

    /// `ω_φ^0_1`
    pub fn phi01(&self) -> f64 {
        self.component(3, 0, 1)
    }

    /// `ω_r^0_3`
    pub fn r03(&self) -> f64 {
        self.component(1, 0, 3)
    }

    /// `ω_θ^1_2`
    pub fn theta12(&self) -> f64 {
        self.component(2, 1, 2)
    }

    /// `ω_t^1_3`
    pub fn t13(&self) -> f64 {
        self.component(0, 1, 3)
    }

    /// `ω_φ^1_3`
    pub fn phi13(&self) -> f64 {
        self.component(3, 1, 3)
    }

    /// The six independent equatorial components in a fixed order.
    pub fn independent(&self) -> [f64; 6] {
        [
            self.t01(),
            self.phi01(),
            self.r03(),
            self.theta12(),
            self.t13(),
            self.phi13(),
        ]
    }

    pub const INDEPENDENT_LABELS: [&'static str; 6] =
        ["w_t^0_1", "w_phi^0_1", "w_r^0_3", "w_theta^1_2", "w_t^1_3", "w_phi^1_3"];

    /// Largest violation of `ω_μab = −ω_μba` after lowering `a` with `η`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let eta = minkowski();
        self.forms
            .iter()
            .map(|w| {
                let low = eta * w;
                max_abs(&(low + low.transpose()))
            })
            .fold(0.0, f64::max)
    }
}

/// Closed-form equatorial connection forms of the hovering tetrad.
///
/// Valid for `r > rs` (so `f > 0`) and `Δ > 0`. Components proportional to `a`
/// vanish identically for a Schwarzschild source.
pub fn connection_forms(source: &GravitationalSource, r: f64) -> Result<ConnectionForms> {
    let s = metric_scalars(source, r, EQUATOR)?;
    if !(s.f > 0.0 && s.delta > 0.0) {
        return Err(Error::Domain {
            what: "equatorial connection forms (r ≤ rs)",
            r,
        });
    }
    let rs = source.rs();
    let a = source.a();
    let sf = s.f.sqrt();
    let sd = s.delta.sqrt();
    let r3 = r * r * r;

    let t01 = rs / (2.0 * r3) * (s.delta / s.f).sqrt();
    let phi01 = -a * t01;
    let r03 = a * rs / (2.0 * r * r * s.f * sd);
    let theta12 = -sd / r;
    let t13 = -a * rs / (2.0 * r3 * sf);
    let phi13 = a * a * rs / (2.0 * r3 * sf) - sf;

    let mut forms = [Matrix4::zeros(); 4];
    let boost = |m: &mut Matrix4<f64>, b: usize, v: f64| {
        m[(0, b)] = v;
        m[(b, 0)] = v;
    };
    let rotation = |m: &mut Matrix4<f64>, i: usize, k: usize, v: f64| {
        m[(i, k)] = v;
        m[(k, i)] = -v;
    };
    boost(&mut forms[0], 1, t01);
    rotation(&mut forms[0], 1, 3, t13);
    boost(&mut forms[1], 3, r03);
    rotation(&mut forms[2], 1, 2, theta12);
    boost(&mut forms[3], 1, phi01);
    rotation(&mut forms[3], 1, 3, phi13);
    Ok(ConnectionForms { forms })
}

/// Default finite-difference step, in units of `rs`.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Central difference with one Richardson extrapolation step.
fn derivative<F>(f: F, x: f64, h: f64) -> Result<Matrix4<f64>>
where
    F: Fn(f64) -> Result<Matrix4<f64>>,
{
    let central = |h: f64| -> Result<Matrix4<f64>> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

/// Equatorial connection forms rebuilt from the metric alone:
/// `ω_μ^a_b = e^a_ν ∇_μ e_b^ν`, with Christoffel symbols and tetrad
/// derivatives taken by finite differences in `r` and `θ`.
///
/// Independent of [`connection_forms`]; used as its oracle.
pub fn connection_forms_numeric(
    source: &GravitationalSource,
    r: f64,
    step: f64,
) -> Result<ConnectionForms> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::invalid(format!("finite-difference step must be positive, got {step}")));
    }
    let h = step * source.rs();
    let theta = EQUATOR;

    let g = metric_tensor(source, r, theta)?;
    let g_inv = g.try_inverse().ok_or(Error::Domain { what: "inverse metric", r })?;
    let frame = tetrad(source, r, theta)?;

    // ∂_μ g and ∂_μ e_b^ν; only r and θ derivatives are nonzero
    let mut dg = [Matrix4::zeros(); 4];
    let mut de = [Matrix4::zeros(); 4];
    dg[1] = derivative(|rr| metric_tensor(source, rr, theta), r, h)?;
    dg[2] = derivative(|th| metric_tensor(source, r, th), theta, h)?;
    de[1] = derivative(|rr| tetrad(source, rr, theta).map(|t| t.e_inv), r, h)?;
    de[2] = derivative(|th| tetrad(source, r, th).map(|t| t.e_inv), theta, h)?;

    // christoffel[nu][(mu, lambda)] = Γ^ν_{μλ}
    let mut christoffel = [Matrix4::zeros(); 4];
    for (nu, gamma) in christoffel.iter_mut().enumerate() {
        for mu in 0..4 {
            for lambda in 0..4 {
                let mut sum = 0.0;
                for sigma in 0..4 {
                    sum += g_inv[(nu, sigma)]
                        * (dg[mu][(sigma, lambda)] + dg[lambda][(sigma, mu)] - dg[sigma][(mu, lambda)]);
                }
                gamma[(mu, lambda)] = 0.5 * sum;
            }
        }
    }

    let mut forms = [Matrix4::zeros(); 4];
    for (mu, form) in forms.iter_mut().enumerate() {
        // covariant[(b, nu)] = ∇_μ e_b^ν
        let mut covariant = de[mu];
        for b in 0..4 {
            for nu in 0..4 {
                let mut sum = 0.0;
                for lambda in 0..4 {
                    sum += christoffel[nu][(mu, lambda)] * frame.e_inv[(b, lambda)];
                }
                covariant[(b, nu)] += sum;
            }
        }
        *form = frame.e * covariant.transpose();
    }
    Ok(ConnectionForms { forms })
}
