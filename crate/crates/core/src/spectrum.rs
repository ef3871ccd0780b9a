//! Eigenlevels from the quantization condition `Φ(ε) = n + 1/2 + δ(ε)`.
//!
//! Roots are bracketed on `(0, U)` (or `(0, ε_max)` for unbounded wells),
//! bisected to a width of `1e−6·U` and polished by regula falsi until the
//! residual is below `1e−10`. In improved mode `δ(ε)` is evaluated inside the
//! residual at every iterate.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::corrections::{delta_from_delta1, CorrectionSource, Corrector, FREEZE_HIGH, FREEZE_LOW};
use crate::error::{Error, Result};
use crate::potentials::PotentialModel;
use crate::quadrature::{phase_derivative, phase_integral, phase_integral_at_top};
use crate::roots::bracketed_root;

/// Bisection stops at this width relative to the energy window.
pub const BISECTION_WIDTH: f64 = 1e-6;
/// Residual target for `Φ − n − 1/2 − δ`.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Which quantization condition to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `δ ≡ 0`.
    Wkb,
    /// Resummed `δ(ε)` from the configured source.
    Improved,
}

/// One eigenlevel in every available mode.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LevelRecord {
    /// Quantum number.
    pub n: usize,
    /// Plain WKB energy; absent when that condition has no root.
    pub eps_wkb: Option<f64>,
    /// Improved energy.
    pub eps_improved: Option<f64>,
    /// Reference energy from the diagonalization.
    pub eps_oracle: Option<f64>,
    /// `δ` at `eps_improved`.
    pub delta_used: Option<f64>,
    /// `δ` had to be frozen at the edge of the trusted window.
    pub delta_frozen: bool,
}

impl LevelRecord {
    /// `|ε_wkb − ε_oracle|`.
    pub fn abs_err_wkb(&self) -> Option<f64> {
        Some((self.eps_wkb? - self.eps_oracle?).abs())
    }

    /// `|ε_improved − ε_oracle|`.
    pub fn abs_err_improved(&self) -> Option<f64> {
        Some((self.eps_improved? - self.eps_oracle?).abs())
    }

    /// `|ε_wkb − ε_oracle|/ε_oracle`.
    pub fn rel_err_wkb(&self) -> Option<f64> {
        Some(self.abs_err_wkb()? / self.eps_oracle?.abs())
    }

    /// `|ε_improved − ε_oracle|/ε_oracle`.
    pub fn rel_err_improved(&self) -> Option<f64> {
        Some(self.abs_err_improved()? / self.eps_oracle?.abs())
    }
}

/// Error statistics of one mode against the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats {
    /// Largest absolute error.
    pub max_abs: f64,
    /// Mean absolute error.
    pub mean_abs: f64,
    /// Largest relative error.
    pub max_rel: f64,
    /// Levels that entered the statistics.
    pub count: usize,
}

impl ErrorStats {
    fn collect(pairs: impl Iterator<Item = (f64, f64)>) -> Option<Self> {
        let mut stats = ErrorStats { max_abs: 0.0, mean_abs: 0.0, max_rel: 0.0, count: 0 };
        for (abs, rel) in pairs {
            stats.max_abs = stats.max_abs.max(abs);
            stats.max_rel = stats.max_rel.max(rel);
            stats.mean_abs += abs;
            stats.count += 1;
        }
        if stats.count == 0 {
            return None;
        }
        stats.mean_abs /= stats.count as f64;
        Some(stats)
    }
}

/// Levels of one well.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumSummary {
    /// Solved levels; empty for a pure count.
    pub levels: Vec<LevelRecord>,
    /// Number of improved-mode levels.
    pub n_levels: usize,
    /// `Φ(U)` for finite wells.
    pub phi_at_top: Option<f64>,
    /// `δ(U⁻)` used in the count.
    pub delta_at_top: Option<f64>,
    /// Number of oracle levels supplied.
    pub oracle_count: Option<usize>,
    /// Plain WKB errors against the oracle.
    pub wkb_errors: Option<ErrorStats>,
    /// Improved errors against the oracle.
    pub improved_errors: Option<ErrorStats>,
}

impl SpectrumSummary {
    /// The oracle and the improved count disagree.
    pub fn count_mismatch(&self) -> bool {
        self.oracle_count.is_some_and(|c| c != self.n_levels)
    }

    /// Recomputes the error statistics from the levels carrying an oracle energy.
    pub fn fill_errors(&mut self) {
        self.wkb_errors = ErrorStats::collect(self.levels.iter().filter_map(|l| Some((l.abs_err_wkb()?, l.rel_err_wkb()?))));
        self.improved_errors =
            ErrorStats::collect(self.levels.iter().filter_map(|l| Some((l.abs_err_improved()?, l.rel_err_improved()?))));
    }
}

/// A root of the quantization condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    /// Energy.
    pub eps: f64,
    /// `δ` at the root (zero in WKB mode).
    pub delta: f64,
    /// `δ` was frozen at the edge of its window.
    pub frozen: bool,
    /// `Φ(ε) − n − 1/2 − δ(ε)`.
    pub residual: f64,
}

/// Quantization solver with its correction plan prepared once.
#[derive(Debug, Clone)]
pub struct SpectrumSolver<'a> {
    model: &'a PotentialModel,
    corrector: Corrector<'a>,
    limit: Option<f64>,
}

impl<'a> SpectrumSolver<'a> {
    /// Solver for a model; unbounded wells also need [`Self::with_limit`].
    pub fn new(model: &'a PotentialModel, source: CorrectionSource) -> Result<Self> {
        Ok(SpectrumSolver { model, corrector: Corrector::new(model, source)?, limit: None })
    }

    /// Energy ceiling `ε_max`; for finite wells the ceiling is `min(ε_max, U)`.
    pub fn with_limit(mut self, emax: f64) -> Result<Self> {
        if !(emax.is_finite() && emax > 0.0) {
            return Err(Error::InvalidParameter { name: "emax", value: emax, reason: "must be positive" });
        }
        self.limit = Some(emax);
        Ok(self)
    }

    /// The correction plan.
    pub fn corrector(&self) -> &Corrector<'a> {
        &self.corrector
    }

    fn ceiling(&self) -> Result<(f64, bool)> {
        match (self.model.height(), self.limit) {
            (Some(u), Some(e)) if e < u => Ok((e, false)),
            (Some(u), _) => Ok((u, true)),
            (None, Some(e)) => Ok((e, false)),
            (None, None) => Err(Error::InfiniteWell { operation: "level search without an energy ceiling" }),
        }
    }

    /// `δ(ε)`, frozen into the trusted window when the evaluation fails.
    pub fn delta(&self, eps: f64) -> Result<(f64, bool)> {
        match self.corrector.delta(eps) {
            Ok(d) => Ok((d, false)),
            Err(first) => {
                let top = self.model.height().map_or(f64::INFINITY, |u| FREEZE_HIGH * u);
                let bottom = FREEZE_LOW * self.model.height().or(self.limit).unwrap_or(1.0);
                let frozen = eps.clamp(bottom, top);
                if frozen == eps {
                    return Err(first);
                }
                Ok((self.corrector.delta(frozen)?, true))
            }
        }
    }

    fn delta_at_top(&self) -> Result<f64> {
        Ok(delta_from_delta1(self.corrector.delta1_at_top()?))
    }

    fn condition(&self, n: usize, mode: Mode, eps: f64) -> Result<(f64, f64, bool)> {
        let phi = phase_integral(self.model, eps)?.phi_total;
        let (delta, frozen) = match mode {
            Mode::Wkb => (0.0, false),
            Mode::Improved => self.delta(eps)?,
        };
        Ok((phi - n as f64 - 0.5 - delta, delta, frozen))
    }

    fn top_condition(&self, n: usize, mode: Mode) -> Result<f64> {
        let (ceiling, at_top) = self.ceiling()?;
        if at_top {
            let phi = phase_integral_at_top(self.model)?.phi_total;
            let delta = match mode {
                Mode::Wkb => 0.0,
                Mode::Improved => self.delta_at_top()?,
            };
            Ok(phi - n as f64 - 0.5 - delta)
        } else {
            Ok(self.condition(n, mode, ceiling)?.0)
        }
    }

    /// Root of the quantization condition for level `n`.
    pub fn solve(&self, n: usize, mode: Mode) -> Result<Solution> {
        let (ceiling, _) = self.ceiling()?;
        let f_hi = self.top_condition(n, mode)?;
        if !(f_hi > 0.0) {
            return Err(Error::NoBracket { n });
        }
        // n + 1/2 + δ > 0 since δ > −1/2, so the condition is negative at ε → 0
        let f_lo = -(n as f64 + 0.5);
        let root = bracketed_root(
            |eps| self.condition(n, mode, eps).map(|r| r.0),
            0.0,
            f_lo,
            ceiling,
            f_hi,
            BISECTION_WIDTH * ceiling,
            RESIDUAL_TOL,
        )?;
        if !root.converged {
            return Err(Error::RootNotConverged { n, residual: root.residual });
        }
        let (residual, delta, frozen) = self.condition(n, mode, root.x)?;
        Ok(Solution { eps: root.x, delta, frozen, residual })
    }

    /// Level `n` in both modes. A missing WKB root is recorded as absent.
    pub fn level(&self, n: usize) -> Result<LevelRecord> {
        let improved = self.solve(n, Mode::Improved)?;
        let eps_wkb = match self.solve(n, Mode::Wkb) {
            Ok(s) => Some(s.eps),
            Err(Error::NoBracket { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(LevelRecord {
            n,
            eps_wkb,
            eps_improved: Some(improved.eps),
            eps_oracle: None,
            delta_used: Some(improved.delta),
            delta_frozen: improved.frozen,
        })
    }

    /// Number of improved-mode levels below the ceiling.
    ///
    /// For a finite well this is `floor(Φ(U) − δ(U⁻) − 1/2) + 1`, at least 1.
    pub fn count(&self) -> Result<SpectrumSummary> {
        let (ceiling, at_top) = self.ceiling()?;
        if at_top {
            let phi = phase_integral_at_top(self.model)?.phi_total;
            let delta = self.delta_at_top()?;
            let n_levels = ((phi - delta - 0.5).floor() + 1.0).max(1.0) as usize;
            Ok(SpectrumSummary { n_levels, phi_at_top: Some(phi), delta_at_top: Some(delta), ..Default::default() })
        } else {
            let phi = phase_integral(self.model, ceiling)?.phi_total;
            let (delta, _) = self.delta(ceiling)?;
            let x = phi - delta - 0.5;
            let n_levels = if x >= 0.0 { x.floor() as usize + 1 } else { 0 };
            Ok(SpectrumSummary { n_levels, ..Default::default() })
        }
    }

    /// Counts and solves every level below the ceiling.
    pub fn spectrum(&self) -> Result<SpectrumSummary> {
        let mut summary = self.count()?;
        summary.levels = (0..summary.n_levels).map(|n| self.level(n)).collect::<Result<_>>()?;
        Ok(summary)
    }
}

/// Solves level `n` in one mode.
pub fn solve_level(model: &PotentialModel, n: usize, mode: Mode, source: CorrectionSource) -> Result<LevelRecord> {
    let s = SpectrumSolver::new(model, source)?.solve(n, mode)?;
    let mut record = LevelRecord { n, delta_used: Some(s.delta), delta_frozen: s.frozen, ..Default::default() };
    match mode {
        Mode::Wkb => record.eps_wkb = Some(s.eps),
        Mode::Improved => record.eps_improved = Some(s.eps),
    }
    Ok(record)
}

/// Level count of a finite well (levels left empty).
pub fn count_levels(model: &PotentialModel, source: CorrectionSource) -> Result<SpectrumSummary> {
    if model.height().is_none() {
        return Err(Error::InfiniteWell { operation: "level counting" });
    }
    SpectrumSolver::new(model, source)?.count()
}

/// `dΦ/dε`, the leading-order density of states.
pub fn state_density(model: &PotentialModel, eps: f64) -> Result<f64> {
    Ok(phase_derivative(model, eps)?.value)
}

/// Both modes against supplied reference energies.
///
/// Finite wells solve every counted level; unbounded wells solve as many
/// levels as there are reference energies, below `1.5×` the last one. A
/// count mismatch is reported through [`SpectrumSummary::count_mismatch`].
pub fn compare_spectra(model: &PotentialModel, oracle_levels: &[f64], source: CorrectionSource) -> Result<SpectrumSummary> {
    let solver = SpectrumSolver::new(model, source)?;
    let mut summary = match model.height() {
        Some(_) => solver.spectrum()?,
        None => {
            let Some(&last) = oracle_levels.last() else {
                return Ok(SpectrumSummary::default());
            };
            let solver = solver.with_limit(1.5 * last)?;
            let levels = (0..oracle_levels.len()).map(|n| solver.level(n)).collect::<Result<Vec<_>>>()?;
            SpectrumSummary { n_levels: levels.len(), levels, ..Default::default() }
        }
    };
    if !oracle_levels.is_empty() {
        summary.oracle_count = Some(oracle_levels.len());
        for (record, &e) in summary.levels.iter_mut().zip(oracle_levels) {
            record.eps_oracle = Some(e);
        }
        summary.fill_errors();
    }
    Ok(summary)
}

/// Exact levels `U − β²p²(s − n)²` of `U·tanh²(px)`, with `s(s + 1) = U/β²p²`.
pub fn tanh2_exact_levels(depth: f64, p: f64, beta: f64) -> Vec<f64> {
    let scale = beta * beta * p * p;
    let s = (-1.0 + (1.0 + 4.0 * depth / scale).sqrt()) / 2.0;
    (0..)
        .map(|n| n as f64)
        .take_while(|&n| n < s)
        .map(|n| depth - scale * (s - n) * (s - n))
        .collect()
}
