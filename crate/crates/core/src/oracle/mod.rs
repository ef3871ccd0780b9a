//! Finite-difference reference spectra.
//!
//! `−β²ψ'' + Vψ = εψ` on `[−L, L]` with Dirichlet ends, three-point
//! Laplacian on `N` equally spaced nodes. Eigenvalues below a cutoff come from
//! Sturm-sequence bisection. [`converge`] refines the grid twice and
//! Richardson-extrapolates the `O(h²)` error.

mod sturm;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

pub use sturm::Tridiagonal;

use crate::error::{Error, Result};
use crate::potentials::PotentialModel;

/// Smallest accepted grid.
pub const MIN_GRID_POINTS: usize = 200;
/// Largest grid chosen by [`OracleConfig::for_model`].
pub const MAX_DEFAULT_POINTS: usize = 200_001;
/// Walls must reach `U(1 − WALL_SLACK)`.
pub const WALL_SLACK: f64 = 1e-6;
/// Decay exponent `κ·(L − x_t)` required of the top level when the box adapts.
pub const DECAY_LENGTHS: f64 = 12.0;

/// Box and grid of one diagonalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Half-width `L` of the box.
    pub half_width: f64,
    /// Number of nodes, ends included.
    pub grid_points: usize,
    /// `β` of the operator.
    pub beta: f64,
    /// Discard energies at or above this; defaults to `U`.
    pub energy_cutoff: Option<f64>,
    /// Bisection tolerance; defaults to `1e−12·max(1, cutoff)`.
    pub bisection_tol: Option<f64>,
    /// Let [`converge`] widen the box until the top level has decayed.
    pub adapt_box: bool,
}

impl OracleConfig {
    /// Explicit box and grid.
    pub fn new(half_width: f64, grid_points: usize, beta: f64) -> Self {
        OracleConfig { half_width, grid_points, beta, energy_cutoff: None, bisection_tol: None, adapt_box: false }
    }

    /// Sets the energy cutoff.
    pub fn with_cutoff(mut self, cutoff: f64) -> Self {
        self.energy_cutoff = Some(cutoff);
        self
    }

    /// Node spacing `2L/(N − 1)`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.grid_points - 1) as f64
    }

    /// Box and grid sized from the model.
    ///
    /// The wall position `x_w` is where `V` reaches `U(1 − 10⁻⁶)` (or `4×` the
    /// cutoff for unbounded wells). Then `L = max(2·x_w, 30β/√U)` and
    /// `h = min(x_w/800, πβ/(20√E))`, `E` the cutoff.
    pub fn for_model(model: &PotentialModel, cutoff: Option<f64>) -> Result<Self> {
        let beta = model.beta();
        let (cutoff, wall_energy) = match (model.height(), cutoff) {
            (Some(u), c) => (c.unwrap_or(u).min(u), u * (1.0 - WALL_SLACK)),
            (None, Some(c)) => (c, 4.0 * c),
            (None, None) => return Err(Error::InfiniteWell { operation: "oracle without an energy cutoff" }),
        };
        if !(cutoff > 0.0) {
            return Err(Error::InvalidParameter { name: "energy_cutoff", value: cutoff, reason: "must be positive" });
        }
        let s = wall_energy.sqrt();
        let wall = model.flank_position(s).abs().max(model.flank_position(-s).abs());
        let mut half_width = 2.0 * wall;
        let mut h = wall / 800.0;
        if let Some(u) = model.height() {
            half_width = half_width.max(30.0 * beta / u.sqrt());
        }
        h = h.min(core::f64::consts::PI * beta / (20.0 * cutoff.sqrt()));
        let intervals = (2.0 * half_width / h).ceil() as usize;
        let points = (intervals + 1).clamp(401, MAX_DEFAULT_POINTS) | 1;
        Ok(OracleConfig {
            half_width,
            grid_points: points,
            beta,
            energy_cutoff: Some(cutoff),
            bisection_tol: None,
            adapt_box: true,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.grid_points < MIN_GRID_POINTS {
            return Err(Error::GridTooCoarse { points: self.grid_points });
        }
        for (name, value) in [("half_width", self.half_width), ("beta", self.beta)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter { name, value, reason: "must be positive and finite" });
            }
        }
        Ok(())
    }
}

fn cutoff_of(model: &PotentialModel, config: &OracleConfig) -> Result<f64> {
    config
        .energy_cutoff
        .or(model.height())
        .ok_or(Error::InfiniteWell { operation: "oracle without an energy cutoff" })
}

/// Enlarges the box (keeping the spacing) until the walls reach the cutoff.
fn confine(model: &PotentialModel, config: &OracleConfig, cutoff: f64) -> Result<OracleConfig> {
    let need = cutoff * (1.0 - WALL_SLACK);
    let mut c = *config;
    let mut wall = 0.0;
    for _ in 0..3 {
        wall = model.evaluate(-c.half_width).min(model.evaluate(c.half_width));
        if wall >= need {
            return Ok(c);
        }
        c.half_width *= 2.0;
        c.grid_points = 2 * (c.grid_points - 1) + 1;
    }
    Err(Error::LeakyBox { cutoff, wall })
}

fn matrix(model: &PotentialModel, config: &OracleConfig) -> Tridiagonal {
    let h = config.spacing();
    let kinetic = config.beta * config.beta / (h * h);
    let interior = config.grid_points - 2;
    let diag = (1..=interior)
        .map(|i| 2.0 * kinetic + model.evaluate(-config.half_width + i as f64 * h))
        .collect();
    Tridiagonal::new(diag, alloc::vec![kinetic * kinetic; interior - 1])
}

fn tolerance(config: &OracleConfig, cutoff: f64) -> f64 {
    config.bisection_tol.unwrap_or(1e-12 * cutoff.max(1.0))
}

/// Eigenvalues below the cutoff, ascending.
pub fn diagonalize(model: &PotentialModel, config: &OracleConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let cutoff = cutoff_of(model, config)?;
    let config = confine(model, config, cutoff)?;
    Ok(matrix(model, &config).eigenvalues_below(cutoff, tolerance(&config, cutoff)))
}

/// Extrapolated reference spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Converged {
    /// Extrapolated energies, ascending.
    pub levels: Vec<f64>,
    /// `max |R(N, 2N−1) − R(2N−1, 4N−3)|` over the levels.
    pub achieved_tol: f64,
    /// Every level moved the same way with shrinking steps.
    pub monotone: bool,
    /// Level counts on the three grids.
    pub counts: [usize; 3],
    /// Box actually used.
    pub config: OracleConfig,
}

/// Widens the box (same spacing, up to [`MAX_DEFAULT_POINTS`]) until the
/// highest level below the cutoff has decayed by `e^{−12}` at the walls.
fn widen_for_decay(model: &PotentialModel, mut config: OracleConfig, cutoff: f64, tol: f64) -> OracleConfig {
    for _ in 0..8 {
        let levels = matrix(model, &config).eigenvalues_below(cutoff, tol);
        let Some(&top) = levels.last() else { return config };
        let kappa = (cutoff - top).max(0.0).sqrt() / config.beta;
        let reach = model.turning_points(top).map_or(config.half_width, |(a, b)| a.abs().max(b));
        let need = reach + DECAY_LENGTHS / kappa.max(f64::MIN_POSITIVE);
        if !(need > config.half_width) || need > 1e3 * config.half_width {
            return config;
        }
        let spacing = config.spacing();
        config.half_width = need;
        let points = (2.0 * need / spacing).ceil() as usize + 1;
        config.grid_points = points.min(MAX_DEFAULT_POINTS) | 1;
    }
    config
}

/// Diagonalizes on `N`, `2N − 1` and `4N − 3` nodes and Richardson-
/// extrapolates consecutive pairs as `E_fine + (E_fine − E_coarse)/3`.
///
/// Only levels present on all three grids are returned.
pub fn converge(model: &PotentialModel, base: &OracleConfig) -> Result<Converged> {
    base.validate()?;
    let cutoff = cutoff_of(model, base)?;
    let mut config = confine(model, base, cutoff)?;
    let tol = tolerance(&config, cutoff);
    if config.adapt_box {
        config = widen_for_decay(model, config, cutoff, tol);
    }
    let mut runs: [Vec<f64>; 3] = Default::default();
    let mut grid = config;
    for run in runs.iter_mut() {
        *run = matrix(model, &grid).eigenvalues_below(cutoff, tol);
        grid.grid_points = 2 * (grid.grid_points - 1) + 1;
    }
    let counts = [runs[0].len(), runs[1].len(), runs[2].len()];
    let m = *counts.iter().min().unwrap_or(&0);
    let mut levels = Vec::with_capacity(m);
    let mut achieved_tol = 0.0f64;
    let mut monotone = true;
    for j in 0..m {
        let (e1, e2, e3) = (runs[0][j], runs[1][j], runs[2][j]);
        let r12 = e2 + (e2 - e1) / 3.0;
        let r23 = e3 + (e3 - e2) / 3.0;
        achieved_tol = achieved_tol.max((r23 - r12).abs());
        let (d12, d23) = (e2 - e1, e3 - e2);
        let resolved = d12.abs() > 100.0 * tol;
        if resolved && (d12 * d23 < 0.0 || d23.abs() > d12.abs()) {
            monotone = false;
        }
        levels.push(r23);
    }
    Ok(Converged { levels, achieved_tol, monotone, counts, config })
}

/// Even and odd spectra of a symmetric well, from the half-box problems.
///
/// Level `n` of the full problem is even for even `n`, so the two lists
/// interlace starting with the even one.
pub fn parity_spectra(model: &PotentialModel, config: &OracleConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    config.validate()?;
    if !model.is_symmetric() {
        return Err(Error::InvalidParameter { name: "model", value: 0.0, reason: "parity needs a symmetric well" });
    }
    let cutoff = cutoff_of(model, config)?;
    let mut config = confine(model, config, cutoff)?;
    config.grid_points |= 1;
    let h = config.spacing();
    let kinetic = config.beta * config.beta / (h * h);
    let half = (config.grid_points - 1) / 2;
    let v = |i: usize| model.evaluate(i as f64 * h);
    // nodes 0..half−1 with ψ(−x) = ψ(x); scaling ψ₀ by √2 symmetrises row 0
    let even_diag: Vec<f64> = (0..half).map(|i| 2.0 * kinetic + v(i)).collect();
    let mut even_off = alloc::vec![kinetic * kinetic; half - 1];
    even_off[0] *= 2.0;
    // nodes 1..half−1 with ψ(0) = 0
    let odd_diag: Vec<f64> = (1..half).map(|i| 2.0 * kinetic + v(i)).collect();
    let odd_off = alloc::vec![kinetic * kinetic; half - 2];
    let tol = tolerance(&config, cutoff);
    Ok((
        Tridiagonal::new(even_diag, even_off).eigenvalues_below(cutoff, tol),
        Tridiagonal::new(odd_diag, odd_off).eigenvalues_below(cutoff, tol),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::tanh2_exact_levels;

    #[test]
    fn harmonic_levels() {
        let m = PotentialModel::harmonic(1.0, 1.0).unwrap();
        let cfg = OracleConfig::new(12.0, 4001, 1.0).with_cutoff(10.0);
        let levels = diagonalize(&m, &cfg).unwrap();
        assert_eq!(levels.len(), 5);
        // second-order grid error, about h²ε²/12
        let h = cfg.spacing();
        for (n, e) in levels.iter().enumerate() {
            let exact = (2 * n + 1) as f64;
            assert!((e - exact).abs() < h * h * exact * exact / 6.0, "{e}");
        }
        let c = converge(&m, &cfg).unwrap();
        assert!((c.levels[0] - 1.0).abs() < 1e-9);
        for (n, e) in c.levels.iter().enumerate() {
            assert!((e - (2 * n + 1) as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn tanh2_levels_from_below() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        let cfg = OracleConfig::new(15.0, 6001, 1.0);
        let exact = tanh2_exact_levels(25.0, 1.0, 1.0);
        let levels = diagonalize(&m, &cfg).unwrap();
        assert_eq!(levels.len(), 5);
        let h = cfg.spacing();
        for (e, x) in levels.iter().zip(&exact) {
            assert!(*e < *x);
            assert!(x - e < h * h * x * x / 6.0, "{e} {x}");
        }
        let c = converge(&m, &OracleConfig::new(15.0, 4001, 1.0)).unwrap();
        assert!(c.achieved_tol < 1e-8, "{}", c.achieved_tol);
        assert!(c.monotone);
        assert_eq!(c.counts, [5, 5, 5]);
        // the top level feels the box at about 1e−6
        for (e, x) in c.levels.iter().zip(&exact) {
            assert!((e - x).abs() < 1e-6 * x, "{e} {x}");
        }
    }

    #[test]
    fn parity_interlaces() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        let cfg = OracleConfig::new(15.0, 3001, 1.0);
        let (even, odd) = parity_spectra(&m, &cfg).unwrap();
        let full = diagonalize(&m, &cfg).unwrap();
        assert_eq!(even.len() + odd.len(), full.len());
        for (n, e) in full.iter().enumerate() {
            let sector = if n % 2 == 0 { &even } else { &odd };
            assert!((sector[n / 2] - e).abs() < 1e-9);
        }
    }

    #[test]
    fn guards() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        assert!(matches!(diagonalize(&m, &OracleConfig::new(15.0, 100, 1.0)), Err(Error::GridTooCoarse { .. })));
        assert!(matches!(diagonalize(&m, &OracleConfig::new(0.5, 1001, 1.0)), Err(Error::LeakyBox { .. })));
        let wider = confine(&m, &OracleConfig::new(4.0, 1001, 1.0), 25.0).unwrap();
        assert_eq!(wider.half_width, 8.0);
        let h = PotentialModel::harmonic(1.0, 1.0).unwrap();
        assert!(matches!(diagonalize(&h, &OracleConfig::new(5.0, 1001, 1.0)), Err(Error::InfiniteWell { .. })));
    }

    #[test]
    fn default_config() {
        let m = PotentialModel::tanh2(25.0, 1.0, 1.0).unwrap();
        let cfg = OracleConfig::for_model(&m, None).unwrap();
        let levels = converge(&m, &cfg).unwrap();
        let exact = tanh2_exact_levels(25.0, 1.0, 1.0);
        assert_eq!(levels.levels.len(), 5);
        for (e, x) in levels.levels.iter().zip(&exact) {
            assert!((e - x).abs() < 1e-6 * x, "{e} {x}");
        }
    }
}
