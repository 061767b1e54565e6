//! Cycle bases on the tori over a loop of regular values, their actions and
//! Maslov indices, and the monodromy matrix read off by continuation.
//!
//! The basis is `γ₁` = the J-orbit and `γ₂` = one radial period of the
//! H-flow closed up by the J-flow by `-Θ`.

mod continuation;
mod cycles;
mod maslov;

use thiserror::Error;

use crate::dynamics::{DynamicsError, IntegrationError};
use crate::normal_forms::NormalFormError;

pub use continuation::{continue_loop, CycleSample, LoopSpec, MonodromyReport, Orientation};
pub use cycles::{actions, first_return, radial_action, Actions, FirstReturn};
pub use maslov::{caustic_count, maslov_winding, Cycle, Traversal};

/// Longest radial period accepted before a value is declared near-critical.
pub const RETURN_TIME_CAP: f64 = 1000.0;

/// Distance from the nearest integer tolerated for windings and for `k`.
pub const INTEGER_SLACK: f64 = 0.05;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error("no radial return before t = {cap} at (j, h) = ({j}, {h}); value is too close to critical")]
    NoReturn { j: f64, h: f64, cap: f64 },
    #[error("{what} = {value} is not resolved to an integer; refine sampling")]
    Resolution { what: &'static str, value: f64 },
    #[error("action cancellation failed: orbit gives {orbit}, radial quadrature gives {radial}")]
    Cancellation { orbit: f64, radial: f64 },
    #[error("Maslov index changes along the loop: {first:?} at s = 0, {other:?} at s = {s}")]
    MaslovNotConstant { first: [i64; 2], other: [i64; 2], s: f64 },
    #[error("sample at s = {s}: {source}")]
    AtSample {
        s: f64,
        #[source]
        source: Box<MonodromyError>,
    },
}

impl From<IntegrationError> for MonodromyError {
    fn from(e: IntegrationError) -> Self {
        Self::Dynamics(e.into())
    }
}

impl MonodromyError {
    /// The loop parameter of the failing sample, if any.
    pub fn failing_s(&self) -> Option<f64> {
        match self {
            Self::AtSample { s, .. } | Self::MaslovNotConstant { s, .. } => Some(*s),
            _ => None,
        }
    }
}
