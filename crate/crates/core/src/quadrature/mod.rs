//! Energy-dependent integrals over a well.
//!
//! Every integral between turning points is taken in the flank variable
//! `s = sign(x)√V` with `s = ±√ε·sin θ`, `θ ∈ [0, π/2]`:
//!
//! ```text
//! Φ±(ε)   = (ε/πβ) ∫ cos²θ · x'(±√ε sin θ) dθ
//! dΦ/dε   = (1/2πβ) ∫ [x'(s₊) + x'(s₋)] dθ
//! W(ε)    = ∫ (dV/dx)²/√(ε − V) dx = 4ε ∫ sin²θ · [σ(s₊) + σ(s₋)] dθ
//! ```
//!
//! with `x' = dx/ds = 1/σ`. The substitution absorbs the square-root
//! endpoint behaviour of `√(ε − V)` and `1/√(ε − V)`; what remains is
//! integrated by tanh-sinh, which also copes with the `ε = U` limit where the
//! outer turning points recede to infinity.

mod tanh_sinh;

use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;

pub use tanh_sinh::{Estimate, TanhSinh};

use crate::error::{Error, Result};
use crate::potentials::PotentialModel;

/// `Φ(ε)` and its halves over `x > 0` and `x < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSplit {
    /// Energy.
    pub eps: f64,
    /// Half-integral over `x > 0`.
    pub phi_plus: f64,
    /// Half-integral over `x < 0`.
    pub phi_minus: f64,
    /// `phi_plus + phi_minus`.
    pub phi_total: f64,
    /// Combined quadrature error estimate.
    pub error: f64,
}

/// `I₀`, `I₂` and `J₁` of the reference-potential moment equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// `∫₀^√ε √(ε−s²)/(1−cs²) ds`.
    pub i0: f64,
    /// `∫₀^√ε s²√(ε−s²)/(1−cs²) ds`.
    pub i2: f64,
    /// `∫₀^√ε s√(ε−s²)/(1−cs²) ds`.
    pub j1: f64,
    /// Largest quadrature error estimate of the three.
    pub error: f64,
}

/// `(sin θ, cos θ)` from the node and its distances to `0` and `π/2`.
fn trig(theta: f64, from_zero: f64, to_right_angle: f64) -> (f64, f64) {
    if from_zero < to_right_angle {
        (from_zero.sin(), theta.cos())
    } else {
        (theta.sin(), to_right_angle.sin())
    }
}

/// `∫₀^{π/2} f(sin θ, cos θ, x'(s₊), x'(s₋)) dθ` with `s± = ±√ε sin θ`.
fn flank_integral<F>(model: &PotentialModel, eps: f64, quad: &TanhSinh, f: F) -> Result<Estimate>
where
    F: Fn(f64, f64, f64, f64) -> f64,
{
    let root = eps.sqrt();
    let top = model.height();
    quad.integrate(0.0, FRAC_PI_2, eps, |theta, lo, hi| {
        let (sin, cos) = trig(theta, lo, hi);
        let s = root * sin;
        let gap = top.map(|u| (u - eps) + eps * cos * cos);
        f(sin, cos, model.dx_ds(s, gap), model.dx_ds(-s, gap))
    })
}

fn phase_split(model: &PotentialModel, eps: f64) -> Result<PhaseSplit> {
    let quad = model.quadrature();
    let scale = eps / (PI * model.beta());
    let plus = flank_integral(model, eps, quad, |_, cos, xp, _| cos * cos * xp)?;
    let minus = flank_integral(model, eps, quad, |_, cos, _, xm| cos * cos * xm)?;
    let phi_plus = scale * plus.value;
    let phi_minus = scale * minus.value;
    Ok(PhaseSplit {
        eps,
        phi_plus,
        phi_minus,
        phi_total: phi_plus + phi_minus,
        error: scale * (plus.error + minus.error),
    })
}

/// `Φ(ε) = (1/πβ)∫√(ε − V) dx` between turning points, split at `x = 0`.
pub fn phase_integral(model: &PotentialModel, eps: f64) -> Result<PhaseSplit> {
    model.check_interior(eps)?;
    phase_split(model, eps)
}

/// `Φ(U)`: the phase integral at the top of a finite well, where the outer
/// turning points are at infinity but the integral converges.
pub fn phase_integral_at_top(model: &PotentialModel) -> Result<PhaseSplit> {
    let depth = model.height().ok_or(Error::InfiniteWell { operation: "phase integral at the well top" })?;
    phase_split(model, depth)
}

/// `dΦ/dε = (1/2πβ)∫dx/√(ε − V)`, the leading-order state density.
pub fn phase_derivative(model: &PotentialModel, eps: f64) -> Result<Estimate> {
    model.check_interior(eps)?;
    let quad = model.quadrature();
    let r = flank_integral(model, eps, quad, |_, _, xp, xm| xp + xm)?;
    let scale = 1.0 / (2.0 * PI * model.beta());
    Ok(Estimate { value: scale * r.value, error: scale * r.error })
}

/// `W(ε) = ∫(dV/dx)²/√(ε − V) dx`, the integral differentiated twice in `δ₁`.
pub fn delta1_raw_integral(model: &PotentialModel, eps: f64) -> Result<Estimate> {
    model.check_interior(eps)?;
    raw_integral_with(model, eps, model.quadrature())
}

pub(crate) fn raw_integral_with(model: &PotentialModel, eps: f64, quad: &TanhSinh) -> Result<Estimate> {
    let r = flank_integral(model, eps, quad, |sin, _, xp, xm| sin * sin * (1.0 / xp + 1.0 / xm))?;
    Ok(Estimate { value: 4.0 * eps * r.value, error: 4.0 * eps * r.error })
}

/// Moment integrals `I₀`, `I₂`, `J₁` at energy `ε` for curvature parameter `c`.
///
/// For `c > 0` the energy may not exceed `1/c`; at `ε = 1/c` the integrable
/// singularity of `1/(1 − cs²)` is handled by the same substitution.
pub fn moment_integrals(c: f64, eps: f64) -> Result<Moments> {
    moment_integrals_with(&TanhSinh::default(), c, eps)
}

/// [`moment_integrals`] with an explicit quadrature policy.
pub fn moment_integrals_with(quad: &TanhSinh, c: f64, eps: f64) -> Result<Moments> {
    if !(eps.is_finite() && eps > 0.0) || !c.is_finite() {
        return Err(Error::EnergyOutOfRange { eps, lo: 0.0, hi: f64::INFINITY });
    }
    let mut lead = 1.0 - c * eps;
    if lead.abs() <= 4.0 * f64::EPSILON {
        lead = 0.0;
    }
    if lead < 0.0 {
        return Err(Error::SingularMoment { eps });
    }
    let ce = c * eps;
    // √(ε − s²) ds = ε cos²θ dθ, 1 − cs² = (1 − cε) + cε cos²θ
    let ratio = |cos: f64| {
        let c2 = cos * cos;
        c2 / (lead + ce * c2)
    };
    let i0 = quad.integrate(0.0, FRAC_PI_2, eps, |theta, lo, hi| {
        let (_, cos) = trig(theta, lo, hi);
        ratio(cos)
    })?;
    let i2 = quad.integrate(0.0, FRAC_PI_2, eps, |theta, lo, hi| {
        let (sin, cos) = trig(theta, lo, hi);
        sin * sin * ratio(cos)
    })?;
    let j1 = quad.integrate(0.0, FRAC_PI_2, eps, |theta, lo, hi| {
        let (sin, cos) = trig(theta, lo, hi);
        sin * ratio(cos)
    })?;
    Ok(Moments {
        i0: eps * i0.value,
        i2: eps * eps * i2.value,
        j1: eps * eps.sqrt() * j1.value,
        error: (eps * i0.error).max(eps * eps * i2.error).max(eps * eps.sqrt() * j1.error),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn harmonic_phase() {
        let m = PotentialModel::harmonic(1.0, 1.0).unwrap();
        let p = phase_integral(&m, 1.0).unwrap();
        assert_abs_diff_eq!(p.phi_total, 0.5, epsilon = 1e-12);
        assert_eq!(p.phi_total, p.phi_plus + p.phi_minus);
        assert_abs_diff_eq!(phase_derivative(&m, 3.7).unwrap().value, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn tanh2_phase_closed_form() {
        // Φ(ε) = (√U − √(U − ε))/βp
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        for &eps in &[0.5, 9.0, 16.0, 24.99] {
            let p = phase_integral(&m, eps).unwrap();
            assert_abs_diff_eq!(p.phi_total, 5.0 - (25.0f64 - eps).sqrt(), epsilon = 1e-10);
            assert_abs_diff_eq!(p.phi_plus, p.phi_minus, epsilon = 1e-12);
        }
        let top = phase_integral_at_top(&m).unwrap();
        assert_abs_diff_eq!(top.phi_total, 5.0, epsilon = 1e-10);
        let d = phase_derivative(&m, 16.0).unwrap();
        assert_abs_diff_eq!(d.value, 1.0 / 6.0, epsilon = 1e-10);
    }

    #[test]
    fn density_grows_towards_top() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        let near = phase_derivative(&m, 0.999 * 25.0).unwrap().value;
        let far = phase_derivative(&m, 0.9 * 25.0).unwrap().value;
        assert!(near > far);
    }

    #[test]
    fn out_of_range() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        assert!(matches!(phase_integral(&m, 25.0), Err(Error::EnergyOutOfRange { .. })));
        assert!(phase_derivative(&m, -1.0).is_err());
        let h = PotentialModel::harmonic(1.0, 1.0).unwrap();
        assert!(matches!(phase_integral_at_top(&h), Err(Error::InfiniteWell { .. })));
    }

    #[test]
    fn moments_at_top_and_free() {
        let u = 25.0;
        let m = moment_integrals(1.0 / u, u).unwrap();
        assert_relative_eq!(m.i0, PI * u / 2.0, max_relative = 1e-9);
        assert_relative_eq!(m.i2, PI * u * u / 4.0, max_relative = 1e-9);
        assert_relative_eq!(m.j1, u.powf(1.5), max_relative = 1e-9);
        let free = moment_integrals(0.0, 3.0).unwrap();
        assert_relative_eq!(free.i0, PI * 3.0 / 4.0, max_relative = 1e-12);
        assert!(matches!(moment_integrals(0.1, 11.0), Err(Error::SingularMoment { .. })));
    }

    #[test]
    fn harmonic_raw_integral() {
        // W = 2πkε for V = k²x²
        let m = PotentialModel::harmonic(1.5, 1.0).unwrap();
        let w = delta1_raw_integral(&m, 2.0).unwrap();
        assert_relative_eq!(w.value, 2.0 * PI * 1.5 * 2.0, max_relative = 1e-12);
    }
}
