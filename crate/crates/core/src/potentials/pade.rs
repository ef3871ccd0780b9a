//! Wells generated from Padé parameters.
//!
//! `σ = ds/dx = k(1 − c s²)/(1 + b s + g s²)` integrates in closed form. With
//! `u = atanh(s/√U)` (so `1 − c s² = sech² u`) the position is
//!
//! ```text
//! x(u) = (√U/k)·[(1 + gU)·u − gU·tanh u] + (bU/k)·ln cosh u
//! ```
//!
//! which is smooth on the whole real line with slope
//! `(√U/k)(1 + b√U tanh u + gU tanh² u) > 0`. Positions are inverted on a
//! monotone table in `u` and polished with safeguarded Newton steps.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::roots::safeguarded_newton;

const TABLE_SIZE: usize = 4096;
const U_MAX: f64 = 20.0;

/// Reference-potential coefficients of `σ = k(1 − c s²)/(1 + b s + g s²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PadeParams {
    /// Curvature: `V → k² x²` near the minimum.
    pub k: f64,
    /// `1/U` for wells of finite height `U`; `0` for unbounded wells.
    pub c: f64,
    /// Odd coefficient (asymmetry).
    pub b: f64,
    /// Even coefficient.
    pub g: f64,
}

impl PadeParams {
    /// Validated parameters: `k > 0`, all finite, `c ≥ 0`, and for `c > 0`
    /// a denominator with no root on `[−√U, √U]`.
    pub fn new(k: f64, c: f64, b: f64, g: f64) -> Result<Self> {
        let params = PadeParams { k, c, b, g };
        params.validate()?;
        Ok(params)
    }

    /// The `b = g = 0` member with curvature `k = p√U`, i.e. `U·tanh²(px)`.
    pub fn basic(depth: f64, p: f64) -> Self {
        PadeParams { k: p * depth.sqrt(), c: 1.0 / depth, b: 0.0, g: 0.0 }
    }

    /// Checks the invariants listed on [`PadeParams::new`].
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("k", self.k), ("c", self.c), ("b", self.b), ("g", self.g)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter { name, value, reason: "must be finite" });
            }
        }
        if self.k <= 0.0 {
            return Err(Error::InvalidParameter { name: "k", value: self.k, reason: "must be positive" });
        }
        if self.c < 0.0 {
            return Err(Error::InvalidParameter { name: "c", value: self.c, reason: "must be non-negative" });
        }
        if let Some(depth) = self.height() {
            if let Some(s) = self.denominator_root(depth.sqrt()) {
                return Err(Error::DenominatorRoot { s });
            }
        }
        Ok(())
    }

    /// `U = 1/c` when `c > 0`.
    pub fn height(&self) -> Option<f64> {
        (self.c > 0.0).then(|| 1.0 / self.c)
    }

    /// `1 + b s + g s²`.
    pub fn denominator(&self, s: f64) -> f64 {
        1.0 + s * (self.b + self.g * s)
    }

    /// `σ(s) = ds/dx`.
    pub fn sigma(&self, s: f64) -> f64 {
        self.k * (1.0 - self.c * s * s) / self.denominator(s)
    }

    /// First point of `[−half, half]` where the denominator is not positive.
    fn denominator_root(&self, half: f64) -> Option<f64> {
        let mut candidates = [-half, half, 0.0];
        let mut count = 2;
        if self.g != 0.0 {
            let vertex = -self.b / (2.0 * self.g);
            if vertex.abs() < half {
                candidates[2] = vertex;
                count = 3;
            }
        }
        candidates[..count].iter().copied().find(|&s| self.denominator(s) <= 0.0)
    }
}

/// Padé-generated well of finite height, with its inversion table.
#[derive(Debug, Clone)]
pub struct PadeWell {
    params: PadeParams,
    depth: f64,
    root_depth: f64,
    /// `(u, x(u))` on a uniform grid in `u`.
    table: Vec<(f64, f64)>,
}

impl PadeWell {
    /// Builds the well; needs `c > 0`.
    pub fn new(params: PadeParams) -> Result<Self> {
        params.validate()?;
        let depth = params
            .height()
            .ok_or(Error::InvalidParameter { name: "c", value: params.c, reason: "must be positive for a generated well" })?;
        let mut well = PadeWell { params, depth, root_depth: depth.sqrt(), table: Vec::new() };
        let du = 2.0 * U_MAX / (TABLE_SIZE - 1) as f64;
        well.table = (0..TABLE_SIZE)
            .map(|i| {
                let u = -U_MAX + i as f64 * du;
                (u, well.position_of_u(u))
            })
            .collect();
        Ok(well)
    }

    /// Parameters the well was generated from.
    pub fn params(&self) -> &PadeParams {
        &self.params
    }

    /// Height `U = 1/c`.
    pub fn depth(&self) -> f64 {
        self.depth
    }

    /// `x(u)`.
    pub fn position_of_u(&self, u: f64) -> f64 {
        let PadeParams { k, b, g, .. } = self.params;
        let gu = g * self.depth;
        (self.root_depth / k) * ((1.0 + gu) * u - gu * u.tanh()) + (b * self.depth / k) * ln_cosh(u)
    }

    /// `dx/du`.
    pub fn position_slope(&self, u: f64) -> f64 {
        let t = u.tanh();
        (self.root_depth / self.params.k) * self.params.denominator(self.root_depth * t)
    }

    /// `x(s) = (1/k)∫₀ˢ (1 + bt + gt²)/(1 − ct²) dt` for `|s| < √U`.
    pub fn position_of_s(&self, s: f64) -> f64 {
        self.position_of_u((s / self.root_depth).atanh())
    }

    /// Inverse of [`PadeWell::position_of_u`].
    pub fn u_of_position(&self, x: f64) -> f64 {
        let idx = self.table.partition_point(|&(_, xi)| xi <= x);
        // outside the table x(u) is asymptotically linear
        let (lo, hi, guess) = if idx == 0 {
            let (u0, x0) = self.table[0];
            let guess = u0 + (x - x0) / self.position_slope(u0);
            (2.0 * guess - u0 - 1.0, u0, guess)
        } else if idx == self.table.len() {
            let (u1, x1) = self.table[self.table.len() - 1];
            let guess = u1 + (x - x1) / self.position_slope(u1);
            (u1, 2.0 * guess - u1 + 1.0, guess)
        } else {
            let (u0, x0) = self.table[idx - 1];
            let (u1, x1) = self.table[idx];
            let frac = if x1 > x0 { (x - x0) / (x1 - x0) } else { 0.5 };
            (u0, u1, u0 + frac * (u1 - u0))
        };
        safeguarded_newton(
            |u| (self.position_of_u(u) - x, self.position_slope(u)),
            lo,
            hi,
            guess,
            1e-15,
            60,
        )
    }

    /// `s(x) = √U·tanh(u(x))`.
    pub fn s_of_position(&self, x: f64) -> f64 {
        self.root_depth * self.u_of_position(x).tanh()
    }

    /// `V(x) = s(x)²`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let t = self.u_of_position(x).tanh();
        self.depth * t * t
    }

    /// `dV/dx = 2 s σ(s)`.
    pub fn slope(&self, x: f64) -> f64 {
        let t = self.u_of_position(x).tanh();
        let s = self.root_depth * t;
        2.0 * s * self.params.k * (1.0 - t * t) / self.params.denominator(s)
    }
}

/// `ln cosh u` without overflow.
fn ln_cosh(u: f64) -> f64 {
    let a = u.abs();
    a + (-2.0 * a).exp().ln_1p() - core::f64::consts::LN_2
}
