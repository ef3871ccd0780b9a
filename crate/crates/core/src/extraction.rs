//! Recovery of the reference parameters `(b, g, c)` from phase integrals.
//!
//! With `V = s²` and `σ = k(1 − cs²)/(1 + bs + gs²)` the half-integrals are
//! moments of `√(ε − s²)/(1 − cs²)`:
//!
//! ```text
//! Φ⁺ + Φ⁻ = (2/πβk)(I₀ + g·I₂)
//! Φ⁺ − Φ⁻ = (2b/πβk)·J₁
//! ```
//!
//! At `ε = U`, `c = 1/U` these reduce to `g = 2βkΦ/U² − 2/U` and
//! `b = πβk(Φ⁺ − Φ⁻)/(2U^{3/2})`. For `g = 0` the state density gives `c`
//! directly: `c = {1 − [1/(2kβ·dΦ/dε)]²}/ε`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::corrections::SNAP;
use crate::error::{Error, Result};
use crate::potentials::{PadeParams, PotentialModel};
use crate::quadrature::{moment_integrals_with, phase_derivative, phase_integral, phase_integral_at_top, PhaseSplit};

/// Smallest `I₂` or `J₁` accepted in the linear system.
pub const DEGENERACY_LIMIT: f64 = 1e-14;
/// `|c·ε|` below which the adiabaticity ratio is undefined.
pub const ZERO_C: f64 = 1e-8;
/// Points in the default adiabaticity grid.
pub const DEFAULT_GRID_POINTS: usize = 9;

/// How the corrections downstream of an extraction must be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DownstreamPath {
    /// `b = 0` or `g = 0`: a closed-form `δ₁` exists.
    ClosedForm,
    /// Both non-zero: `δ₁` must be differentiated numerically.
    DirectNumeric,
}

/// Error estimates attached to an extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    /// Quadrature error of `Φ⁺ + Φ⁻`.
    pub phase: f64,
    /// Propagated error in `b`.
    pub b: f64,
    /// Propagated error in `g`.
    pub g: f64,
}

/// Parameters recovered from one well.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionReport {
    /// Recovered parameters; `k` is the model curvature and `c = 1/U`.
    pub params: PadeParams,
    /// Energy of the phase integrals.
    pub eps_used: f64,
    /// Phase split the parameters were computed from.
    pub phase: PhaseSplit,
    /// Error estimates.
    pub residuals: Residuals,
    /// Largest `|ε·dc/dε|/|c|` on the default grid, when requested and defined.
    pub adiabaticity: Option<f64>,
    /// Whether `params` pass [`PadeParams::validate`].
    pub valid: bool,
    /// Route for downstream corrections.
    pub path: DownstreamPath,
}

impl ExtractionReport {
    /// Parameters with `b` or `g` set to zero when `|b|√U` or `|g|U` is
    /// below [`SNAP`].
    pub fn snapped(&self) -> PadeParams {
        let mut p = self.params;
        let root = p.height().map_or(1.0, f64::sqrt);
        if (p.b * root).abs() < SNAP {
            p.b = 0.0;
        }
        if (p.g * root * root).abs() < SNAP {
            p.g = 0.0;
        }
        p
    }

    /// Fills [`ExtractionReport::adiabaticity`] from the default grid.
    pub fn with_adiabaticity(mut self, model: &PotentialModel) -> Result<Self> {
        let grid = default_grid(model)?;
        let ratios = adiabaticity_check(model, &grid)?;
        self.adiabaticity = ratios.into_iter().flatten().reduce(f64::max);
        Ok(self)
    }
}

fn finite_height(model: &PotentialModel) -> Result<f64> {
    model.height().ok_or(Error::InfiniteWell {
        operation: "b, g extraction (use the density-based c extraction for unbounded wells)",
    })
}

fn report(model: &PotentialModel, phase: PhaseSplit, b: f64, g: f64, residuals: Residuals) -> ExtractionReport {
    let depth = model.height().unwrap_or(f64::INFINITY);
    let params = PadeParams { k: model.curvature(), c: 1.0 / depth, b, g };
    let mut r = ExtractionReport {
        params,
        eps_used: phase.eps,
        phase,
        residuals,
        adiabaticity: None,
        valid: params.validate().is_ok() && residuals.b.is_finite() && residuals.g.is_finite(),
        path: DownstreamPath::ClosedForm,
    };
    let snapped = r.snapped();
    if snapped.b != 0.0 && snapped.g != 0.0 {
        r.path = DownstreamPath::DirectNumeric;
    }
    r
}

/// `(b, g)` from `Φ⁺(U)`, `Φ⁻(U)` with `c = 1/U`.
pub fn extract_at_top(model: &PotentialModel) -> Result<ExtractionReport> {
    let depth = finite_height(model)?;
    let phase = phase_integral_at_top(model)?;
    let bk = model.beta() * model.curvature();
    let g = 2.0 * bk * phase.phi_total / (depth * depth) - 2.0 / depth;
    let b = PI * bk * (phase.phi_plus - phase.phi_minus) / (2.0 * depth.powf(1.5));
    let residuals = Residuals {
        phase: phase.error,
        b: PI * bk * phase.error / (2.0 * depth.powf(1.5)),
        g: 2.0 * bk * phase.error / (depth * depth),
    };
    Ok(report(model, phase, b, g, residuals))
}

/// `(b(ε), g(ε))` from the moment equations at `0 < ε ≤ U`.
pub fn extract_at_energy(model: &PotentialModel, eps: f64) -> Result<ExtractionReport> {
    let depth = finite_height(model)?;
    if !(eps > 0.0 && eps <= depth) {
        return Err(Error::EnergyOutOfRange { eps, lo: 0.0, hi: depth });
    }
    let phase = if eps == depth { phase_integral_at_top(model)? } else { phase_integral(model, eps)? };
    let m = moment_integrals_with(model.quadrature(), 1.0 / depth, eps)?;
    if m.i2 < DEGENERACY_LIMIT || m.j1 < DEGENERACY_LIMIT {
        return Err(Error::DegenerateSystem { eps });
    }
    let half = PI * model.beta() * model.curvature() / 2.0;
    let g = (half * phase.phi_total - m.i0) / m.i2;
    let b = half * (phase.phi_plus - phase.phi_minus) / m.j1;
    let residuals = Residuals {
        phase: phase.error,
        b: (half * phase.error + b.abs() * m.error) / m.j1,
        g: (half * phase.error + (1.0 + g.abs()) * m.error) / m.i2,
    };
    Ok(report(model, phase, b, g, residuals))
}

/// Which bracket sign to use in [`extract_c_from_density`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DensityForm {
    /// `c = {1 − [1/(2kβΦ')]²}/ε`, which gives `c = 1/U` on `U·tanh²`.
    #[default]
    Corrected,
    /// `c = {[1/(2kβΦ')]² − 1}/ε`; gives `−1/U` on `U·tanh²`.
    AsPrinted,
}

/// `c(ε)` from the state density, assuming `g = 0`.
pub fn extract_c_from_density(model: &PotentialModel, eps: f64, form: DensityForm) -> Result<f64> {
    let density = phase_derivative(model, eps)?.value;
    if !(density > 0.0) {
        return Err(Error::DegenerateSystem { eps });
    }
    let r = 1.0 / (2.0 * model.curvature() * model.beta() * density);
    let bracket = 1.0 - r * r;
    Ok(match form {
        DensityForm::Corrected => bracket / eps,
        DensityForm::AsPrinted => -bracket / eps,
    })
}

/// `|ε·dc/dε|/|c|` at each grid energy; `None` where `c` vanishes.
///
/// `dc/dε` is a central difference with step `0.01·min(ε, U − ε)`.
pub fn adiabaticity_check(model: &PotentialModel, eps_grid: &[f64]) -> Result<Vec<Option<f64>>> {
    if eps_grid.len() < 3 {
        return Err(Error::InvalidParameter {
            name: "eps_grid",
            value: eps_grid.len() as f64,
            reason: "at least 3 energies required",
        });
    }
    let form = DensityForm::Corrected;
    eps_grid
        .iter()
        .map(|&eps| {
            model.check_interior(eps)?;
            let c = extract_c_from_density(model, eps, form)?;
            if (c * eps).abs() < ZERO_C {
                return Ok(None);
            }
            let span = model.height().map_or(eps, |u| eps.min(u - eps));
            let h = 0.01 * span;
            let up = extract_c_from_density(model, eps + h, form)?;
            let down = extract_c_from_density(model, eps - h, form)?;
            Ok(Some((eps * (up - down) / (2.0 * h)).abs() / c.abs()))
        })
        .collect()
}

/// Chebyshev points on `[0.1U, 0.9U]`, ascending.
pub fn default_grid(model: &PotentialModel) -> Result<Vec<f64>> {
    let depth = finite_height(model)?;
    Ok(chebyshev_grid(0.1 * depth, 0.9 * depth, DEFAULT_GRID_POINTS))
}

/// `n` Chebyshev nodes on `[lo, hi]`, ascending.
pub fn chebyshev_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..n)
        .map(|j| mid - half * (PI * (2 * j + 1) as f64 / (2 * n) as f64).cos())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tanh2_is_basic() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        let r = extract_at_top(&m).unwrap();
        assert_abs_diff_eq!(r.params.b, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(r.params.g, 0.0, epsilon = 1e-6);
        assert_eq!(r.params.c, 0.04);
        assert!(r.valid);
        for &f in &[0.3, 0.6, 0.9] {
            let e = extract_at_energy(&m, f * 25.0).unwrap();
            assert_abs_diff_eq!(e.params.b, 0.0, epsilon = 1e-5);
            assert_abs_diff_eq!(e.params.g, 0.0, epsilon = 1e-5);
        }
    }

    #[test]
    fn energy_extraction_meets_top() {
        let p = PadeParams::new(2.0, 0.04, 0.05, 0.01).unwrap();
        let m = PotentialModel::from_pade(p, 1.0).unwrap();
        let top = extract_at_top(&m).unwrap();
        let at = extract_at_energy(&m, 25.0).unwrap();
        assert_abs_diff_eq!(top.params.b, at.params.b, epsilon = 1e-8);
        assert_abs_diff_eq!(top.params.g, at.params.g, epsilon = 1e-8);
        assert_abs_diff_eq!(top.params.b, 0.05, epsilon = 1e-4);
        assert_abs_diff_eq!(top.params.g, 0.01, epsilon = 1e-4);
        assert_eq!(top.path, DownstreamPath::DirectNumeric);
        let mid = extract_at_energy(&m, 10.0).unwrap();
        assert_abs_diff_eq!(mid.params.g, 0.01, epsilon = 1e-6);
    }

    #[test]
    fn infinite_well_rejected() {
        let h = PotentialModel::harmonic(1.0, 1.0).unwrap();
        assert!(matches!(extract_at_top(&h), Err(Error::InfiniteWell { .. })));
        assert!(extract_at_energy(&h, 1.0).is_err());
    }

    #[test]
    fn density_c() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        for &eps in &[5.0, 16.0, 24.0] {
            let c = extract_c_from_density(&m, eps, DensityForm::Corrected).unwrap();
            assert_abs_diff_eq!(c, 0.04, epsilon = 1e-6);
            let printed = extract_c_from_density(&m, eps, DensityForm::AsPrinted).unwrap();
            assert_abs_diff_eq!(printed, -0.04, epsilon = 1e-6);
        }
        let h = PotentialModel::harmonic(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(extract_c_from_density(&h, 3.0, DensityForm::Corrected).unwrap(), 0.0, epsilon = 1e-8);
    }

    #[test]
    fn adiabaticity() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        let grid = default_grid(&m).unwrap();
        assert_eq!(grid.len(), 9);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        let ratios = adiabaticity_check(&m, &grid).unwrap();
        assert!(ratios.iter().all(|r| r.unwrap() < 1e-3));
        let h = PotentialModel::harmonic(1.0, 1.0).unwrap();
        let ratios = adiabaticity_check(&h, &[1.0, 2.0, 3.0]).unwrap();
        assert!(ratios.iter().all(Option::is_none));
        assert!(adiabaticity_check(&m, &[1.0, 2.0]).is_err());
    }
}
