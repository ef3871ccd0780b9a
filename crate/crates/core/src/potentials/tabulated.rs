//! Potentials given as samples, interpolated by a monotone cubic.
//!
//! Samples are normalised at construction: the smallest sample becomes the
//! origin `(0, 0)` and the applied shifts are kept for reporting. Slopes come
//! from the Fritsch–Carlson harmonic-mean rule, which keeps the interpolant
//! monotone on each flank and flat at the minimum node, so no spurious minima
//! appear between samples.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::roots::safeguarded_newton;

/// Minimum number of samples.
pub const MIN_SAMPLES: usize = 16;

/// Monotone-cubic interpolant of a single-minimum well.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    x: Vec<f64>,
    v: Vec<f64>,
    slopes: Vec<f64>,
    min_index: usize,
    position_shift: f64,
    energy_shift: f64,
}

impl TabulatedPotential {
    /// Builds the interpolant from raw samples.
    ///
    /// The grid must be strictly increasing with at least
    /// [`MIN_SAMPLES`] points, the minimum sample must be unique and interior,
    /// and the samples must decrease strictly towards it from the left and
    /// increase strictly after it.
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidTable("grid and values differ in length"));
        }
        if grid.len() < MIN_SAMPLES {
            return Err(Error::InvalidTable("fewer than 16 samples"));
        }
        if grid.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidTable("non-finite sample"));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTable("grid not strictly increasing"));
        }
        let min_index = values
            .iter()
            .enumerate()
            .fold(0, |best, (i, &v)| if v < values[best] { i } else { best });
        if min_index == 0 || min_index == values.len() - 1 {
            return Err(Error::InvalidTable("minimum on the grid boundary"));
        }
        if values[..=min_index].windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidTable("left flank not strictly decreasing"));
        }
        if values[min_index..].windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTable("right flank not strictly increasing"));
        }
        let position_shift = grid[min_index];
        let energy_shift = values[min_index];
        let x: Vec<f64> = grid.iter().map(|&xi| xi - position_shift).collect();
        let mut v: Vec<f64> = values.iter().map(|&vi| vi - energy_shift).collect();
        v[min_index] = 0.0;
        let slopes = fritsch_carlson(&x, &v);
        Ok(TabulatedPotential { x, v, slopes, min_index, position_shift, energy_shift })
    }

    /// Normalised grid.
    pub fn grid(&self) -> &[f64] {
        &self.x
    }

    /// Normalised samples.
    pub fn values(&self) -> &[f64] {
        &self.v
    }

    /// Position subtracted from the raw grid.
    pub fn position_shift(&self) -> f64 {
        self.position_shift
    }

    /// Energy subtracted from the raw samples.
    pub fn energy_shift(&self) -> f64 {
        self.energy_shift
    }

    /// Lower of the two end samples: the highest energy with two turning
    /// points inside the table.
    pub fn height(&self) -> f64 {
        self.v[0].min(self.v[self.v.len() - 1])
    }

    /// `k` from the parabola through the minimum and its two neighbours.
    pub fn curvature(&self) -> f64 {
        let m = self.min_index;
        let (xl, vl) = (self.x[m - 1], self.v[m - 1]);
        let (xr, vr) = (self.x[m + 1], self.v[m + 1]);
        // V = a x² + d x through (0, 0)
        let a = (vr / xr - vl / xl) / (xr - xl);
        a.max(f64::MIN_POSITIVE).sqrt()
    }

    fn segment(&self, x: f64) -> usize {
        self.x.partition_point(|&xi| xi <= x).clamp(1, self.x.len() - 1) - 1
    }

    fn hermite(&self, i: usize, x: f64) -> (f64, f64) {
        let h = self.x[i + 1] - self.x[i];
        let t = (x - self.x[i]) / h;
        let (v0, v1) = (self.v[i], self.v[i + 1]);
        let (d0, d1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let value = (2.0 * t3 - 3.0 * t2 + 1.0) * v0
            + (t3 - 2.0 * t2 + t) * d0
            + (-2.0 * t3 + 3.0 * t2) * v1
            + (t3 - t2) * d1;
        let deriv = ((6.0 * t2 - 6.0 * t) * v0
            + (3.0 * t2 - 4.0 * t + 1.0) * d0
            + (-6.0 * t2 + 6.0 * t) * v1
            + (3.0 * t2 - 2.0 * t) * d1)
            / h;
        (value, deriv)
    }

    /// Interpolated `V(x)`; constant beyond the table ends.
    pub fn evaluate(&self, x: f64) -> f64 {
        let last = self.x.len() - 1;
        if x <= self.x[0] {
            self.v[0]
        } else if x >= self.x[last] {
            self.v[last]
        } else {
            self.hermite(self.segment(x), x).0
        }
    }

    /// Derivative of the interpolant (one-sided at the end nodes, zero beyond).
    pub fn slope(&self, x: f64) -> f64 {
        let last = self.x.len() - 1;
        if x < self.x[0] || x > self.x[last] {
            0.0
        } else {
            self.hermite(self.segment(x), x).1
        }
    }

    /// Position on the right (`s > 0`) or left (`s < 0`) flank where
    /// `V = s²`; clamps to the table end when `s²` exceeds that end sample.
    pub fn flank_position(&self, s: f64) -> f64 {
        let target = s * s;
        let m = self.min_index;
        let last = self.x.len() - 1;
        if target == 0.0 {
            return 0.0;
        }
        let segment = if s > 0.0 {
            if target >= self.v[last] {
                return self.x[last];
            }
            // first node on the right flank with v > target
            let j = m + self.v[m..].partition_point(|&v| v <= target);
            j - 1
        } else {
            if target >= self.v[0] {
                return self.x[0];
            }
            // left flank values decrease with index
            self.v[..=m].partition_point(|&v| v > target) - 1
        };
        let (a, b) = (self.x[segment], self.x[segment + 1]);
        let sign = if s > 0.0 { 1.0 } else { -1.0 };
        let guess = a + (b - a) * (target - self.v[segment]) / (self.v[segment + 1] - self.v[segment]);
        safeguarded_newton(
            |x| {
                let (value, deriv) = self.hermite(segment, x.clamp(a, b));
                (sign * (value - target), sign * deriv)
            },
            a,
            b,
            guess,
            1e-15,
            60,
        )
        .clamp(a, b)
    }
}

fn fritsch_carlson(x: &[f64], v: &[f64]) -> Vec<f64> {
    let n = x.len();
    let secants: Vec<f64> = (0..n - 1).map(|i| (v[i + 1] - v[i]) / (x[i + 1] - x[i])).collect();
    let mut d = alloc::vec![0.0; n];
    d[0] = end_slope(x[1] - x[0], x[2] - x[1], secants[0], secants[1]);
    d[n - 1] = end_slope(x[n - 1] - x[n - 2], x[n - 2] - x[n - 3], secants[n - 2], secants[n - 3]);
    for i in 1..n - 1 {
        let (s0, s1) = (secants[i - 1], secants[i]);
        if s0 * s1 <= 0.0 {
            d[i] = 0.0;
        } else {
            let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
            let w0 = 2.0 * h1 + h0;
            let w1 = h1 + 2.0 * h0;
            d[i] = (w0 + w1) / (w0 / s0 + w1 / s1);
        }
    }
    d
}

/// One-sided three-point end slope, limited to keep monotonicity.
fn end_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 <= 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use approx::assert_abs_diff_eq;

    fn parabola(n: usize, offset: f64) -> TabulatedPotential {
        let grid: Vec<f64> = (0..n).map(|i| -3.0 + 6.0 * i as f64 / (n - 1) as f64 + 0.5).collect();
        let values = grid.iter().map(|&x| 4.0 * (x - 0.5) * (x - 0.5) + offset).collect();
        TabulatedPotential::new(grid, values).unwrap()
    }

    #[test]
    fn normalises_minimum() {
        let t = parabola(61, 7.0);
        assert_abs_diff_eq!(t.position_shift(), 0.5, epsilon = 1e-12);
        assert_eq!(t.energy_shift(), 7.0);
        assert_eq!(t.evaluate(0.0), 0.0);
        assert_abs_diff_eq!(t.curvature(), 2.0, epsilon = 1e-10);
    }

    #[test]
    fn matches_nodes_and_stays_monotone() {
        let t = parabola(41, 0.0);
        for (&x, &v) in t.grid().iter().zip(t.values()) {
            assert_abs_diff_eq!(t.evaluate(x), v, epsilon = 1e-12);
        }
        let xs: Vec<f64> = (0..3000).map(|i| 3.0 * i as f64 / 2999.0).collect();
        assert!(xs.windows(2).all(|w| t.evaluate(w[1]) >= t.evaluate(w[0])));
    }

    #[test]
    fn flank_inversion() {
        let t = parabola(41, 0.0);
        for &s in &[0.3, -0.3, 2.0, -5.9] {
            let x = t.flank_position(s);
            assert_abs_diff_eq!(t.evaluate(x), s * s, epsilon = 1e-12);
            assert!(x * s > 0.0);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let grid: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let flat = alloc::vec![1.0; 20];
        assert!(TabulatedPotential::new(grid.clone(), flat).is_err());
        let double: Vec<f64> = grid.iter().map(|&x| ((x - 9.5) * 0.7).cos()).collect();
        assert!(TabulatedPotential::new(grid.clone(), double).is_err());
        assert!(TabulatedPotential::new(grid[..10].to_vec(), alloc::vec![0.0; 10]).is_err());
    }
}
