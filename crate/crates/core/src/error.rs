use thiserror::Error;

use crate::geodesics::OrbitSense;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cosmic censorship violated: a/rs = {chi} lies outside -0.5 <= a/rs <= 0.5 (naked singularity)")]
    CensorshipViolation { chi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} is undefined at r = {r}")]
    Domain { what: &'static str, r: f64 },

    #[error("no circular orbit at rs/r = {x} for a/rs = {chi} ({sense})")]
    NoCircularOrbit { chi: f64, x: f64, sense: OrbitSense },

    #[error("quadrature tolerance {tol:e} not met: best estimate {value} +/- {err_estimate:e}")]
    ToleranceNotMet {
        value: f64,
        err_estimate: f64,
        tol: f64,
    },

    #[error("degenerate local frame: u^0 + |u| = {0}")]
    DegenerateFrame(f64),

    #[error("qubit state is not normalized: |alpha|^2 + |beta|^2 = {0}")]
    NotNormalized(f64),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
