//! Error type shared by every numerical module.

use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Failures of the numerical pipeline.
///
/// Every variant knows the module that raised it (see [`Error::module`]) and,
/// where one is involved, the energy at which it happened.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor or operation received a parameter outside its domain.
    InvalidParameter {
        /// Parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
        /// What was expected.
        reason: &'static str,
    },
    /// Energy outside the interval where the operation is defined.
    EnergyOutOfRange {
        /// Requested energy.
        eps: f64,
        /// Lower limit (exclusive).
        lo: f64,
        /// Upper limit, `f64::INFINITY` for unbounded wells.
        hi: f64,
    },
    /// The operation needs a well with finite height `U`.
    InfiniteWell {
        /// Name of the operation that was refused.
        operation: &'static str,
    },
    /// The Padé denominator `1 + b·s + g·s²` vanishes on `[−√U, √U]`.
    DenominatorRoot {
        /// Position of the (first) root found.
        s: f64,
    },
    /// `1 − c·s²` vanishes strictly inside the moment-integral interval.
    SingularMoment {
        /// Energy of the failed evaluation.
        eps: f64,
    },
    /// Tanh-sinh refinement exhausted without meeting the tolerance.
    Quadrature {
        /// Energy of the failed integral.
        eps: f64,
        /// Last difference between refinement levels.
        estimate: f64,
    },
    /// Integrand produced a non-finite value.
    NonFinite {
        /// Energy of the failed integral.
        eps: f64,
    },
    /// Finite-difference stencil does not fit inside the energy window.
    StencilRoom {
        /// Centre of the stencil.
        eps: f64,
        /// Step that was required.
        step: f64,
    },
    /// Quadrature noise amplified by differentiation exceeds the budget.
    NoisyIntegral {
        /// Centre of the stencil.
        eps: f64,
        /// Estimated noise in the differentiated quantity.
        noise: f64,
    },
    /// Closed form evaluated outside its validity domain.
    OutsideValidity {
        /// Energy of the evaluation.
        eps: f64,
    },
    /// Extraction linear system is degenerate.
    DegenerateSystem {
        /// Energy at which the system was set up.
        eps: f64,
    },
    /// The quantization function has no sign change: the level does not exist.
    NoBracket {
        /// Quantum number.
        n: usize,
    },
    /// Root polishing failed to reach the residual target.
    RootNotConverged {
        /// Quantum number.
        n: usize,
        /// Last residual.
        residual: f64,
    },
    /// Tabulated potential rejected.
    InvalidTable(&'static str),
    /// The oracle box does not confine states below the cutoff.
    LeakyBox {
        /// Requested cutoff.
        cutoff: f64,
        /// Smallest wall value `min(V(−L), V(L))` after enlarging the box.
        wall: f64,
    },
    /// Oracle grid too small.
    GridTooCoarse {
        /// Number of grid points.
        points: usize,
    },
}

impl Error {
    /// Name of the module that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. }
            | Error::DenominatorRoot { .. }
            | Error::InvalidTable(_) => "potentials",
            Error::EnergyOutOfRange { .. }
            | Error::SingularMoment { .. }
            | Error::Quadrature { .. }
            | Error::NonFinite { .. } => "quadrature",
            Error::StencilRoom { .. }
            | Error::NoisyIntegral { .. }
            | Error::OutsideValidity { .. } => "corrections",
            Error::InfiniteWell { .. } | Error::DegenerateSystem { .. } => "extraction",
            Error::NoBracket { .. } | Error::RootNotConverged { .. } => "spectrum",
            Error::LeakyBox { .. } | Error::GridTooCoarse { .. } => "oracle",
        }
    }

    /// Energy at which the failure happened, when meaningful.
    pub fn energy(&self) -> Option<f64> {
        match *self {
            Error::EnergyOutOfRange { eps, .. }
            | Error::SingularMoment { eps }
            | Error::Quadrature { eps, .. }
            | Error::NonFinite { eps }
            | Error::StencilRoom { eps, .. }
            | Error::NoisyIntegral { eps, .. }
            | Error::OutsideValidity { eps }
            | Error::DegenerateSystem { eps } => Some(eps),
            _ => None,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.module())?;
        match self {
            Error::InvalidParameter { name, value, reason } => {
                write!(f, "invalid {name} = {value}: {reason}")
            }
            Error::EnergyOutOfRange { eps, lo, hi } => {
                write!(f, "energy {eps} outside ({lo}, {hi})")
            }
            Error::InfiniteWell { operation } => {
                write!(f, "{operation} needs a well of finite height")
            }
            Error::DenominatorRoot { s } => {
                write!(f, "denominator 1 + b s + g s^2 vanishes at s = {s}")
            }
            Error::SingularMoment { eps } => {
                write!(f, "1 - c s^2 vanishes inside (0, sqrt(eps)) at eps = {eps}")
            }
            Error::Quadrature { eps, estimate } => write!(
                f,
                "no convergence at eps = {eps} (achieved error estimate {estimate:e})"
            ),
            Error::NonFinite { eps } => write!(f, "non-finite integrand at eps = {eps}"),
            Error::StencilRoom { eps, step } => {
                write!(f, "no room for a stencil of step {step} at eps = {eps}")
            }
            Error::NoisyIntegral { eps, noise } => {
                write!(f, "differentiated integral too noisy at eps = {eps} (noise {noise:e})")
            }
            Error::OutsideValidity { eps } => {
                write!(f, "closed form outside its validity domain at eps = {eps}")
            }
            Error::DegenerateSystem { eps } => {
                write!(f, "degenerate extraction system at eps = {eps}")
            }
            Error::NoBracket { n } => write!(f, "level n = {n} does not exist"),
            Error::RootNotConverged { n, residual } => {
                write!(f, "level n = {n} not converged (residual {residual:e})")
            }
            Error::InvalidTable(reason) => write!(f, "invalid table: {reason}"),
            Error::LeakyBox { cutoff, wall } => write!(
                f,
                "box walls reach only {wall}, below the cutoff {cutoff}"
            ),
            Error::GridTooCoarse { points } => {
                write!(f, "{points} grid points, at least 200 required")
            }
        }
    }
}

impl core::error::Error for Error {}
