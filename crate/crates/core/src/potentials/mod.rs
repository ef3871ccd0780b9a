//! One-dimensional single-minimum wells.
//!
//! Every well is normalised to `V(0) = 0` at its sole minimum, with
//! `V → k²x²` nearby. Finite wells approach their height `U` on both sides.
//! Besides `V(x)` each model exposes the flank map `s(x) = sign(x)√V(x)` and
//! its inverse, which is what the quadrature works with.

mod pade;
mod tabulated;

use alloc::sync::Arc;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quadrature::TanhSinh;
use crate::roots::safeguarded_newton;

pub use pade::{PadeParams, PadeWell};
pub use tabulated::{TabulatedPotential, MIN_SAMPLES};

/// Which family a [`PotentialModel`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// `k²x²`.
    Harmonic,
    /// `U·tanh²(px)`.
    Tanh2,
    /// Generated from Padé parameters.
    PadeGenerated,
    /// Interpolated samples.
    Tabulated,
    /// User closure.
    Custom,
}

type Func = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Well given by a closure, e.g. a perturbed analytic form.
#[derive(Clone)]
pub struct CustomWell {
    value: Func,
    slope: Option<Func>,
    curvature: f64,
    height: Option<f64>,
    symmetric: bool,
}

impl CustomWell {
    /// `value` must have its sole minimum at `x = 0`; its value there is
    /// subtracted. `height` is in the same (unshifted) units as `value`.
    pub fn new<F>(value: F, curvature: f64, height: Option<f64>) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        CustomWell { value: Arc::new(value), slope: None, curvature, height, symmetric: false }
    }

    /// Supplies the analytic derivative; otherwise five-point differences are used.
    pub fn with_slope<F>(mut self, slope: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.slope = Some(Arc::new(slope));
        self
    }

    /// Declares `V(−x) = V(x)`.
    pub fn symmetric(mut self) -> Self {
        self.symmetric = true;
        self
    }
}

impl fmt::Debug for CustomWell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomWell")
            .field("curvature", &self.curvature)
            .field("height", &self.height)
            .field("symmetric", &self.symmetric)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Harmonic { k: f64 },
    Tanh2 { depth: f64, p: f64 },
    Pade(PadeWell),
    Tabulated(TabulatedPotential),
    Custom(CustomWell),
}

/// An evaluatable well with its semiclassical scale `β` (`β² = ħ²/2m`).
#[derive(Debug, Clone)]
pub struct PotentialModel {
    shape: Shape,
    beta: f64,
    offset: f64,
    quadrature: TanhSinh,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be positive and finite" })
    }
}

impl PotentialModel {
    fn build(shape: Shape, beta: f64, offset: f64) -> Result<Self> {
        let quadrature = match shape {
            // piecewise cubics converge algebraically under tanh-sinh
            Shape::Tabulated(_) => TanhSinh { max_level: 14, ..TanhSinh::default() }.with_tolerance(1e-8),
            _ => TanhSinh::default(),
        };
        Ok(PotentialModel { shape, beta: positive("beta", beta)?, offset, quadrature })
    }

    /// `V = k²x²`.
    pub fn harmonic(k: f64, beta: f64) -> Result<Self> {
        Self::build(Shape::Harmonic { k: positive("k", k)? }, beta, 0.0)
    }

    /// `V = U·tanh²(px)`, curvature `k = p√U`.
    pub fn tanh2(depth: f64, p: f64, beta: f64) -> Result<Self> {
        Self::build(Shape::Tanh2 { depth: positive("U", depth)?, p: positive("p", p)? }, beta, 0.0)
    }

    /// Well generated by integrating `dx/ds = 1/σ(s)`; needs `c > 0`.
    pub fn from_pade(params: PadeParams, beta: f64) -> Result<Self> {
        Self::build(Shape::Pade(PadeWell::new(params)?), beta, 0.0)
    }

    /// Interpolated samples (already normalised by [`TabulatedPotential::new`]).
    pub fn tabulated(table: TabulatedPotential, beta: f64) -> Result<Self> {
        let offset = table.energy_shift();
        Self::build(Shape::Tabulated(table), beta, offset)
    }

    /// Closure-defined well.
    pub fn custom(well: CustomWell, beta: f64) -> Result<Self> {
        positive("k", well.curvature)?;
        let offset = (well.value)(0.0);
        if !offset.is_finite() {
            return Err(Error::InvalidParameter { name: "V(0)", value: offset, reason: "must be finite" });
        }
        if let Some(h) = well.height {
            if !(h > offset) {
                return Err(Error::InvalidParameter { name: "U", value: h, reason: "must exceed V(0)" });
            }
        }
        Self::build(Shape::Custom(well), beta, offset)
    }

    /// Replaces the quadrature policy used for every integral over this model.
    pub fn with_quadrature(mut self, quadrature: TanhSinh) -> Self {
        self.quadrature = quadrature;
        self
    }

    /// Quadrature policy.
    pub fn quadrature(&self) -> &TanhSinh {
        &self.quadrature
    }

    /// Model family.
    pub fn kind(&self) -> Kind {
        match self.shape {
            Shape::Harmonic { .. } => Kind::Harmonic,
            Shape::Tanh2 { .. } => Kind::Tanh2,
            Shape::Pade(_) => Kind::PadeGenerated,
            Shape::Tabulated(_) => Kind::Tabulated,
            Shape::Custom(_) => Kind::Custom,
        }
    }

    /// `β`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Energy subtracted at construction to put the minimum at zero.
    pub fn energy_offset(&self) -> f64 {
        self.offset
    }

    /// `k` with `V → k²x²` near the minimum.
    pub fn curvature(&self) -> f64 {
        match &self.shape {
            Shape::Harmonic { k } => *k,
            Shape::Tanh2 { depth, p } => p * depth.sqrt(),
            Shape::Pade(w) => w.params().k,
            Shape::Tabulated(t) => t.curvature(),
            Shape::Custom(c) => c.curvature,
        }
    }

    /// Height `U`, `None` for unbounded wells.
    pub fn height(&self) -> Option<f64> {
        match &self.shape {
            Shape::Harmonic { .. } => None,
            Shape::Tanh2 { depth, .. } => Some(*depth),
            Shape::Pade(w) => Some(w.depth()),
            Shape::Tabulated(t) => Some(t.height()),
            Shape::Custom(c) => c.height.map(|h| h - self.offset),
        }
    }

    /// Whether `V(−x) = V(x)` holds by construction.
    pub fn is_symmetric(&self) -> bool {
        match &self.shape {
            Shape::Harmonic { .. } | Shape::Tanh2 { .. } => true,
            Shape::Pade(w) => w.params().b == 0.0,
            Shape::Tabulated(_) => false,
            Shape::Custom(c) => c.symmetric,
        }
    }

    /// Exact Padé coefficients when the model is a member of the reference
    /// family (harmonic has `c = b = g = 0`).
    pub fn reference_params(&self) -> Option<PadeParams> {
        match &self.shape {
            Shape::Harmonic { k } => Some(PadeParams { k: *k, c: 0.0, b: 0.0, g: 0.0 }),
            Shape::Tanh2 { depth, p } => Some(PadeParams::basic(*depth, *p)),
            Shape::Pade(w) => Some(*w.params()),
            _ => None,
        }
    }

    /// `(U, p)` of a `tanh²` well.
    pub fn tanh2_params(&self) -> Option<(f64, f64)> {
        match self.shape {
            Shape::Tanh2 { depth, p } => Some((depth, p)),
            _ => None,
        }
    }

    /// `V(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Harmonic { k } => k * k * x * x,
            Shape::Tanh2 { depth, p } => {
                let t = (p * x).tanh();
                depth * t * t
            }
            Shape::Pade(w) => w.evaluate(x),
            Shape::Tabulated(t) => t.evaluate(x),
            Shape::Custom(c) => (c.value)(x) - self.offset,
        }
    }

    /// `dV/dx`.
    pub fn slope(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Harmonic { k } => 2.0 * k * k * x,
            Shape::Tanh2 { depth, p } => {
                let t = (p * x).tanh();
                2.0 * depth * p * t * (1.0 - t * t)
            }
            Shape::Pade(w) => w.slope(x),
            Shape::Tabulated(t) => t.slope(x),
            Shape::Custom(c) => match &c.slope {
                Some(slope) => slope(x),
                None => five_point(&*c.value, x, 1e-3 * (x.abs() + self.length_scale())),
            },
        }
    }

    /// Length over which the harmonic approximation reaches `U` (or 1/k).
    fn length_scale(&self) -> f64 {
        let k = self.curvature();
        self.height().map_or(1.0 / k, |u| u.sqrt() / k)
    }

    /// `s(x) = sign(x)·√V(x)`.
    pub fn s_map(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Harmonic { k } => k * x,
            Shape::Tanh2 { depth, p } => depth.sqrt() * (p * x).tanh(),
            Shape::Pade(w) => w.s_of_position(x),
            _ => {
                let v = self.evaluate(x).max(0.0).sqrt();
                if x < 0.0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Position `x` with `s(x) = s`, i.e. the inverse of [`PotentialModel::s_map`].
    ///
    /// Returns `±∞` at or beyond the height of an analytic finite well.
    pub fn flank_position(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 0.0;
        }
        match &self.shape {
            Shape::Harmonic { k } => s / k,
            Shape::Tanh2 { depth, p } => {
                let r = s / depth.sqrt();
                if r.abs() >= 1.0 {
                    r.signum() * f64::INFINITY
                } else {
                    r.atanh() / p
                }
            }
            Shape::Pade(w) => {
                let r = s / w.depth().sqrt();
                if r.abs() >= 1.0 {
                    r.signum() * f64::INFINITY
                } else {
                    w.position_of_s(s)
                }
            }
            Shape::Tabulated(t) => t.flank_position(s),
            Shape::Custom(_) => self.bisect_flank(s),
        }
    }

    /// Monotone search for `V(x) = s²` on the flank selected by `sign(s)`.
    fn bisect_flank(&self, s: f64) -> f64 {
        let target = s * s;
        if let Some(u) = self.height() {
            if target >= u {
                return s.signum() * f64::INFINITY;
            }
        }
        let sign = s.signum();
        let mut hi = (target.sqrt() / self.curvature()).max(1e-300);
        let mut grew = 0;
        while self.evaluate(sign * hi) < target && grew < 2000 {
            hi *= 2.0;
            grew += 1;
        }
        safeguarded_newton(
            |r| (self.evaluate(sign * r) - target, sign * self.slope(sign * r)),
            0.0,
            hi,
            0.5 * hi,
            1e-15,
            200,
        ) * sign
    }

    /// Turning points `x₋ < 0 < x₊` with `V(x±) = ε`, for `0 < ε < U`.
    pub fn turning_points(&self, eps: f64) -> Result<(f64, f64)> {
        self.check_interior(eps)?;
        let root = eps.sqrt();
        Ok((self.flank_position(-root), self.flank_position(root)))
    }

    /// Errors unless `0 < ε < U` (or `ε > 0` for unbounded wells).
    pub fn check_interior(&self, eps: f64) -> Result<()> {
        let hi = self.height().unwrap_or(f64::INFINITY);
        if eps.is_finite() && eps > 0.0 && eps < hi {
            Ok(())
        } else {
            Err(Error::EnergyOutOfRange { eps, lo: 0.0, hi })
        }
    }

    /// `dx/ds = 1/σ(s)` on the flank of `s`.
    ///
    /// `top_gap` is `U − s²` when the caller can compute it without
    /// cancellation; analytic finite wells use it so that `σ` stays accurate
    /// next to the well top.
    pub fn dx_ds(&self, s: f64, top_gap: Option<f64>) -> f64 {
        match &self.shape {
            Shape::Harmonic { k } => 1.0 / k,
            Shape::Tanh2 { depth, p } => {
                let gap = top_gap.unwrap_or(depth - s * s);
                depth.sqrt() / (p * gap)
            }
            Shape::Pade(w) => {
                let gap = top_gap.unwrap_or(w.depth() - s * s);
                let params = w.params();
                params.denominator(s) * w.depth() / (params.k * gap)
            }
            Shape::Tabulated(_) | Shape::Custom(_) => {
                if s * s < 1e-280 {
                    return 1.0 / self.curvature();
                }
                let x = self.flank_position(s);
                if !x.is_finite() {
                    return f64::INFINITY;
                }
                let slope = self.slope(x);
                if slope == 0.0 {
                    f64::INFINITY
                } else {
                    2.0 * s / slope
                }
            }
        }
    }
}

/// Five-point central derivative.
pub(crate) fn five_point<F: Fn(f64) -> f64 + ?Sized>(f: &F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}
