//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

/// Symmetric tridiagonal matrix stored as its diagonal and squared
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    diag: Vec<f64>,
    off2: Vec<f64>,
    pivot_floor: f64,
}

impl Tridiagonal {
    /// `off2.len()` must be `diag.len() − 1`.
    pub fn new(diag: Vec<f64>, off2: Vec<f64>) -> Self {
        assert_eq!(off2.len() + 1, diag.len(), "off-diagonal length");
        let scale = off2.iter().fold(1.0f64, |m, &o| m.max(o));
        Tridiagonal { diag, off2, pivot_floor: f64::MIN_POSITIVE * scale }
    }

    /// Matrix order.
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    /// Whether the matrix is empty.
    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - lambda } else { d - lambda - self.off2[i - 1] / q };
            if q.abs() < self.pivot_floor {
                q = -self.pivot_floor;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let radius = |i: usize| {
            let left = if i > 0 { self.off2[i - 1].sqrt() } else { 0.0 };
            let right = if i + 1 < n { self.off2[i].sqrt() } else { 0.0 };
            left + right
        };
        (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            (lo.min(self.diag[i] - radius(i)), hi.max(self.diag[i] + radius(i)))
        })
    }

    /// Eigenvalue `j` (ascending, from 0) inside `[lo, hi]` to absolute `tol`.
    pub fn eigenvalue(&self, j: usize, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// All eigenvalues strictly below `cutoff`, ascending.
    pub fn eigenvalues_below(&self, cutoff: f64, tol: f64) -> Vec<f64> {
        let (lo, _) = self.bounds();
        let m = self.count_below(cutoff);
        let mut out: Vec<f64> = Vec::with_capacity(m);
        for j in 0..m {
            let start = out.last().copied().unwrap_or(lo).max(lo);
            out.push(self.eigenvalue(j, start, cutoff, tol));
        }
        out
    }
}
