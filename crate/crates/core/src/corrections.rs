//! Phase corrections to the quantization condition.
//!
//! `δ₁` is the first term of the `β`-expansion of the phase defect. For the
//! reference family `σ = k(1 − cs²)/(1 + bs + gs²)` it has closed forms when
//! `b = 0` or `g = 0`; for any well it can be computed directly as
//! `(β/24π)·d²W/dε²`. The resummed defect `δ = 2δ₁/(1 + √(1 + 16δ₁²))` is
//! exact for the solvable class, where `γ = dδ₁/dε` vanishes.
//!
//! The closed forms use `s²` in the numerator of the σ-integral and the
//! denominators `(1 + εg)^{5/2}` and `(1 − εb²)^{5/2}`; these are the forms
//! consistent with the small-ε series and with the numeric route. The other
//! sign choice is kept in [`delta1_closed_as_printed`] for regression tests.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::extraction;
use crate::potentials::{PadeParams, PotentialModel};
use crate::quadrature::{raw_integral_with, Estimate};

/// Finite-difference step for `d²W/dε²` as a fraction of the distance to the
/// nearest end of the energy window.
pub const STENCIL_FRACTION: f64 = 0.02;
/// Step for `γ = dδ₁/dε`, same convention.
pub const GAMMA_FRACTION: f64 = 0.05;
/// Largest tolerated quadrature noise in `δ₁` after differentiation.
pub const NOISE_LIMIT: f64 = 1e-7;
/// Upper end of the window where the direct route is trusted, as a
/// fraction of `U`.
pub const FREEZE_HIGH: f64 = 0.98;
/// Lower end of that window.
pub const FREEZE_LOW: f64 = 0.02;
/// Extracted `|b|√U` or `|g|U` below this count as zero.
pub const SNAP: f64 = 1e-7;

/// Where `δ₁` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionSource {
    /// Closed forms from the (exact or extracted) Padé parameters.
    ClosedForm,
    /// `(β/24π)·d²W/dε²` by quadrature and finite differences.
    DirectNumeric,
    /// The `b = g = 0` well with the same `k` and `U`: `δ₁ = −βk/8U`.
    BasicWell,
}

/// Corrections at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionSet {
    /// Energy.
    pub eps: f64,
    /// First correction.
    pub delta1: f64,
    /// Resummed defect, in `(−1/2, 1/2)`.
    pub delta_total: f64,
    /// Third-order term `−4δ₁³`.
    pub delta3: f64,
    /// `dδ₁/dε` when it could be evaluated.
    pub gamma: Option<f64>,
    /// Route actually used for `δ₁`.
    pub source: CorrectionSource,
}

/// `δ = 2δ₁/(1 + √(1 + 16δ₁²))` in any floating type.
pub fn resummed_delta<T: Float>(delta1: T) -> T {
    let one = T::one();
    let sixteen = T::from(16.0).expect("16 is representable");
    (one + one) * delta1 / (one + (one + sixteen * delta1 * delta1).sqrt())
}

/// Resummed defect `δ(δ₁)`.
pub fn delta_from_delta1(delta1: f64) -> f64 {
    resummed_delta(delta1)
}

/// `δ₃ = −4δ₁³`.
pub fn delta3_from_delta1(delta1: f64) -> f64 {
    -4.0 * delta1 * delta1 * delta1
}

/// `δ₁ = −βp/(8√U)` of `U·tanh²(px)`, independent of energy.
///
/// Inputs are expected positive.
pub fn delta1_basic(depth: f64, p: f64, beta: f64) -> f64 {
    -beta * p / (8.0 * depth.sqrt())
}

fn check_closed_energy(params: &PadeParams, eps: f64) -> Result<()> {
    let hi = params.height().unwrap_or(f64::INFINITY);
    if eps.is_finite() && eps > 0.0 && eps < hi {
        Ok(())
    } else {
        Err(Error::EnergyOutOfRange { eps, lo: 0.0, hi })
    }
}

fn closed_branches(params: &PadeParams, beta: f64, eps: f64, sign: f64) -> Option<Result<f64>> {
    let PadeParams { k, c, b, g } = *params;
    let (numerator, base) = if b == 0.0 {
        (c + g, 1.0 + sign * eps * g)
    } else if g == 0.0 {
        (c - b * b, 1.0 - sign * eps * b * b)
    } else {
        return None;
    };
    if base <= 0.0 {
        return Some(Err(Error::OutsideValidity { eps }));
    }
    Some(Ok(-beta * k * numerator / (8.0 * base.powf(2.5))))
}

/// Closed-form `δ₁` for `b = 0` or `g = 0`:
///
/// * `b = 0`: `−βk(c + g)/(8(1 + εg)^{5/2})`
/// * `g = 0`: `−βk(c − b²)/(8(1 − εb²)^{5/2})`
///
/// With both non-zero there is no closed form and the well generated from
/// `params` is differentiated numerically.
pub fn delta1_closed(params: &PadeParams, beta: f64, eps: f64) -> Result<f64> {
    check_closed_energy(params, eps)?;
    match closed_branches(params, beta, eps, 1.0) {
        Some(r) => r,
        None => {
            let model = PotentialModel::from_pade(*params, beta)?;
            Ok(delta1_direct(&model, eps)?.value)
        }
    }
}

/// The closed forms with the opposite inner signs, `(1 − εg)` and `(1 + εb²)`.
///
/// Kept only to document that this variant disagrees with the numeric route.
pub fn delta1_closed_as_printed(params: &PadeParams, beta: f64, eps: f64) -> Result<f64> {
    check_closed_energy(params, eps)?;
    closed_branches(params, beta, eps, -1.0).unwrap_or(Err(Error::InvalidParameter {
        name: "b",
        value: params.b,
        reason: "closed form needs b = 0 or g = 0",
    }))
}

/// Two-term small-ε expansion
/// `−βk(c + g − b²)/8 + 5βkε(cg + g² + b⁴ − 3b²g − cb²)/16`.
pub fn delta1_series(params: &PadeParams, beta: f64, eps: f64) -> f64 {
    let PadeParams { k, c, b, g } = *params;
    let b2 = b * b;
    -beta * k * (c + g - b2) / 8.0 + 5.0 * beta * k * eps * (c * g + g * g + b2 * b2 - 3.0 * b2 * g - c * b2) / 16.0
}

/// Half-width of the energy window around `ε` that stays inside `(0, U)`.
fn span(model: &PotentialModel, eps: f64) -> f64 {
    match model.height() {
        Some(u) => eps.min(u - eps),
        None => eps,
    }
}

/// `δ₁ = (β/24π)·d²W/dε²`, with `W` from [`crate::quadrature::delta1_raw_integral`].
///
/// The second derivative uses the five-point stencil at steps `h` and `h/2`
/// combined by Richardson extrapolation, `h = 0.02·min(ε, U − ε)`. The error
/// estimate adds the propagated quadrature noise to the extrapolation change.
pub fn delta1_direct(model: &PotentialModel, eps: f64) -> Result<Estimate> {
    model.check_interior(eps)?;
    let h = STENCIL_FRACTION * span(model, eps);
    if !(eps - 2.0 * h > 0.0) || model.height().is_some_and(|u| !(eps + 2.0 * h < u)) || h == 0.0 {
        return Err(Error::StencilRoom { eps, step: h });
    }
    let quad = model.quadrature().tightened(1e-13);
    let mut worst = 0.0f64;
    let mut w = |offset: f64| -> Result<f64> {
        let r = raw_integral_with(model, eps + offset, &quad)?;
        worst = worst.max(r.error);
        Ok(r.value)
    };
    let (m2, m1, mh) = (w(-2.0 * h)?, w(-h)?, w(-0.5 * h)?);
    let w0 = w(0.0)?;
    let (ph, p1, p2) = (w(0.5 * h)?, w(h)?, w(2.0 * h)?);
    let coarse = (-p2 + 16.0 * p1 - 30.0 * w0 + 16.0 * m1 - m2) / (12.0 * h * h);
    let fine = (-p1 + 16.0 * ph - 30.0 * w0 + 16.0 * mh - m1) / (3.0 * h * h);
    let extrapolated = (16.0 * fine - coarse) / 15.0;
    let scale = model.beta() / (24.0 * PI);
    // |coefficients| sum to 64 in both stencils
    let noise = scale * worst * (16.0 / 15.0 * 64.0 / (3.0 * h * h) + 1.0 / 15.0 * 64.0 / (12.0 * h * h));
    if noise > NOISE_LIMIT {
        return Err(Error::NoisyIntegral { eps, noise });
    }
    Ok(Estimate { value: scale * extrapolated, error: noise + scale * (extrapolated - fine).abs() })
}

/// `γ = dδ₁/dε` by a central difference of [`delta1_direct`]; zero within
/// tolerance for the exactly solvable class.
pub fn gamma_diagnostic(model: &PotentialModel, eps: f64) -> Result<f64> {
    model.check_interior(eps)?;
    let h = GAMMA_FRACTION * span(model, eps);
    let up = delta1_direct(model, eps + h)?.value;
    let down = delta1_direct(model, eps - h)?.value;
    Ok((up - down) / (2.0 * h))
}

#[derive(Debug, Clone, Copy)]
enum Plan {
    Constant(f64),
    Closed(PadeParams),
    Direct,
}

/// `δ₁(ε)` for one model and source, with any extraction done up front.
#[derive(Debug, Clone)]
pub struct Corrector<'a> {
    model: &'a PotentialModel,
    plan: Plan,
    requested: CorrectionSource,
}

impl<'a> Corrector<'a> {
    /// Prepares the evaluation plan.
    ///
    /// `ClosedForm` uses the model's exact reference parameters when it has
    /// them, otherwise the parameters extracted at the well top; if both
    /// extracted `b` and `g` are non-zero the plan falls back to direct.
    pub fn new(model: &'a PotentialModel, source: CorrectionSource) -> Result<Self> {
        let beta = model.beta();
        let plan = match source {
            CorrectionSource::BasicWell => Plan::Constant(match model.height() {
                Some(u) => delta1_basic(u, model.curvature() / u.sqrt(), beta),
                None => 0.0,
            }),
            CorrectionSource::DirectNumeric => Plan::Direct,
            CorrectionSource::ClosedForm => {
                let params = match model.reference_params() {
                    Some(p) => p,
                    None => {
                        extraction::extract_at_top(model)?.snapped()
                    }
                };
                if params.b != 0.0 && params.g != 0.0 {
                    Plan::Direct
                } else {
                    Plan::Closed(params)
                }
            }
        };
        Ok(Corrector { model, plan, requested: source })
    }

    /// Source requested by the caller.
    pub fn requested(&self) -> CorrectionSource {
        self.requested
    }

    /// Source actually used.
    pub fn effective(&self) -> CorrectionSource {
        match self.plan {
            Plan::Constant(_) => CorrectionSource::BasicWell,
            Plan::Closed(_) => CorrectionSource::ClosedForm,
            Plan::Direct => CorrectionSource::DirectNumeric,
        }
    }

    /// `δ₁(ε)`.
    pub fn delta1(&self, eps: f64) -> Result<f64> {
        match self.plan {
            Plan::Constant(d) => Ok(d),
            Plan::Closed(p) => delta1_closed(&p, self.model.beta(), eps),
            Plan::Direct => Ok(delta1_direct(self.model, eps)?.value),
        }
    }

    /// Resummed `δ(ε)`.
    pub fn delta(&self, eps: f64) -> Result<f64> {
        self.delta1(eps).map(delta_from_delta1)
    }

    /// `δ₁` just below the well top, used for level counting.
    ///
    /// Closed forms are evaluated at `U` itself; the direct route is frozen
    /// at `0.98U`, where its stencil still fits.
    pub fn delta1_at_top(&self) -> Result<f64> {
        let depth = self.model.height().ok_or(Error::InfiniteWell { operation: "correction at the well top" })?;
        match self.plan {
            Plan::Constant(d) => Ok(d),
            Plan::Closed(p) => closed_branches(&p, self.model.beta(), depth, 1.0)
                .unwrap_or(Err(Error::OutsideValidity { eps: depth })),
            Plan::Direct => self.delta1(FREEZE_HIGH * depth),
        }
    }

    /// `γ(ε)` for the plan in use.
    pub fn gamma(&self, eps: f64) -> Result<f64> {
        match self.plan {
            Plan::Constant(_) => Ok(0.0),
            Plan::Closed(_) => {
                self.model.check_interior(eps)?;
                let h = GAMMA_FRACTION * span(self.model, eps);
                Ok((self.delta1(eps + h)? - self.delta1(eps - h)?) / (2.0 * h))
            }
            Plan::Direct => gamma_diagnostic(self.model, eps),
        }
    }

    /// All corrections at `ε`.
    pub fn at(&self, eps: f64) -> Result<CorrectionSet> {
        let delta1 = self.delta1(eps)?;
        Ok(CorrectionSet {
            eps,
            delta1,
            delta_total: delta_from_delta1(delta1),
            delta3: delta3_from_delta1(delta1),
            gamma: self.gamma(eps).ok(),
            source: self.effective(),
        })
    }
}

/// Corrections at `ε` from the given source.
pub fn correction_set(model: &PotentialModel, eps: f64, source: CorrectionSource) -> Result<CorrectionSet> {
    Corrector::new(model, source)?.at(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn resummation_basics() {
        assert_eq!(delta_from_delta1(0.0), 0.0);
        let u: f64 = 25.0;
        let exact = u.sqrt() - (1.0 + 4.0 * u).sqrt() / 2.0;
        assert_abs_diff_eq!(delta_from_delta1(-0.025), exact, epsilon = 1e-12);
        assert_abs_diff_eq!(delta_from_delta1(-1.25), -0.40990, epsilon = 1e-5);
        assert!(delta_from_delta1(-1e8) > -0.5);
        assert!(delta_from_delta1(1e8) < 0.5);
    }

    #[test]
    fn basic_values() {
        assert_abs_diff_eq!(delta1_basic(25.0, 1.0, 1.0), -0.025, epsilon = 1e-15);
        assert_abs_diff_eq!(delta1_basic(0.01, 1.0, 1.0), -1.25, epsilon = 1e-12);
        assert_abs_diff_eq!(delta1_basic(25.0, 2.0, 1.0), 2.0 * delta1_basic(25.0, 1.0, 1.0), epsilon = 1e-15);
    }

    #[test]
    fn closed_reduces_to_basic() {
        let p = PadeParams::basic(25.0, 1.0);
        for &eps in &[1.0, 12.5, 24.0] {
            assert_abs_diff_eq!(delta1_closed(&p, 1.0, eps).unwrap(), -0.025, epsilon = 1e-15);
        }
        assert!(delta1_closed(&p, 1.0, 25.0).is_err());
    }

    #[test]
    fn closed_matches_series_at_small_energy() {
        for params in [
            PadeParams::new(2.0, 0.04, 0.0, 0.01).unwrap(),
            PadeParams::new(2.0, 0.04, 0.05, 0.0).unwrap(),
        ] {
            for &eps in &[1e-3, 1e-2] {
                let closed = delta1_closed(&params, 1.0, eps).unwrap();
                let series = delta1_series(&params, 1.0, eps);
                // remainder is O(ε²)
                assert!((closed - series).abs() < 1e-3 * eps * eps, "{closed} {series}");
            }
        }
    }

    #[test]
    fn leading_term_linear_in_c_plus_g() {
        let c = 0.04;
        let doubled = PadeParams::new(2.0, c, 0.0, c).unwrap();
        let plain = PadeParams::new(2.0, c, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(delta1_series(&doubled, 1.0, 0.0), 2.0 * delta1_series(&plain, 1.0, 0.0), epsilon = 1e-16);
        let tiny = 1e-9;
        let ratio = delta1_closed(&doubled, 1.0, tiny).unwrap() / delta1_closed(&plain, 1.0, tiny).unwrap();
        assert_abs_diff_eq!(ratio, 2.0, epsilon = 1e-8);
    }

    #[test]
    fn closed_validity_domain() {
        // ε g ≤ −1 is rejected
        let p = PadeParams { k: 1.0, c: 0.0, b: 0.0, g: -0.5 };
        assert!(matches!(delta1_closed(&p, 1.0, 3.0), Err(Error::OutsideValidity { .. })));
    }

    #[test]
    fn direct_on_harmonic_and_tanh2() {
        let h = PotentialModel::harmonic(1.0, 1.0).unwrap();
        for &eps in &[0.5, 3.0, 40.0] {
            assert_abs_diff_eq!(delta1_direct(&h, eps).unwrap().value, 0.0, epsilon = 1e-8);
        }
        let t = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(delta1_direct(&t, 12.5).unwrap().value, -0.025, epsilon = 1e-5);
        assert!(gamma_diagnostic(&t, 12.5).unwrap().abs() < 1e-4);
        assert!(gamma_diagnostic(&h, 5.0).unwrap().abs() < 1e-6);
    }

    #[test]
    fn delta3_identity() {
        let set = correction_set(&PotentialModel::tanh2(4.0, 1.0, 1.0).unwrap(), 2.0, CorrectionSource::BasicWell).unwrap();
        assert_eq!(set.delta3, -4.0 * set.delta1.powi(3));
        assert_eq!(set.delta_total.signum(), set.delta1.signum());
        assert_eq!(set.gamma, Some(0.0));
    }
}
