//! One function per subcommand. Each returns the CSV text and a human report.

use std::fmt::Write as _;

use padewkb_core::corrections::{delta3_from_delta1, gamma_diagnostic, CorrectionSource, Corrector};
use padewkb_core::extraction::{
    adiabaticity_check, chebyshev_grid, default_grid, extract_at_top, extract_c_from_density, DensityForm,
};
use padewkb_core::oracle::{converge, Converged, OracleConfig};
use padewkb_core::quadrature::phase_integral;
use padewkb_core::spectrum::{state_density, LevelRecord, SpectrumSolver, SpectrumSummary};
use padewkb_core::{Kind, PotentialModel};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::{cell, g12, Table};

/// Header of the spectrum CSV.
pub const SPECTRUM_HEADER: [&str; 7] =
    ["n", "eps_wkb", "eps_improved", "eps_oracle", "abs_err_wkb", "abs_err_improved", "delta_used"];
/// Header of the plot-data CSV.
pub const PLOT_HEADER: [&str; 4] = ["eps", "phi", "delta1", "delta"];
/// Points in the plot-data grid.
pub const PLOT_POINTS: usize = 64;

/// Result of a command.
#[derive(Debug, Default)]
pub struct Output {
    /// Machine-readable table.
    pub csv: String,
    /// Human-readable report.
    pub report: String,
    /// Plot data, when requested.
    pub plot: Option<String>,
}

/// Effective settings after merging flags into the config.
#[derive(Debug, Clone)]
pub struct Settings {
    /// The merged config.
    pub config: RunConfig,
    /// Write plot data.
    pub plot: bool,
}

impl Settings {
    fn source(&self) -> CorrectionSource {
        self.config.correction.map(Into::into).unwrap_or(CorrectionSource::ClosedForm)
    }

    /// `U`, or the configured `ε_max` for unbounded wells.
    fn ceiling(&self, model: &PotentialModel) -> Result<f64, CliError> {
        match (model.height(), self.config.emax) {
            (Some(u), Some(e)) => Ok(u.min(e)),
            (Some(u), None) => Ok(u),
            (None, Some(e)) => Ok(e),
            (None, None) => Err(CliError::Config("unbounded well: --emax (or \"emax\") is required".into())),
        }
    }

    fn solver<'a>(&self, model: &'a PotentialModel) -> Result<SpectrumSolver<'a>, CliError> {
        let solver = SpectrumSolver::new(model, self.source())?;
        Ok(match self.config.emax {
            Some(e) => solver.with_limit(e)?,
            None => solver,
        })
    }

    fn oracle(&self, model: &PotentialModel) -> Result<Converged, CliError> {
        let cutoff = if model.height().is_some() { self.config.emax } else { Some(self.ceiling(model)?) };
        let mut cfg = OracleConfig::for_model(model, cutoff)?;
        if let Some(l) = self.config.oracle_half_width {
            cfg.half_width = l;
        }
        if let Some(n) = self.config.oracle_points {
            cfg.grid_points = n;
        }
        Ok(converge(model, &cfg)?)
    }

    fn energies(&self, model: &PotentialModel, points: usize) -> Result<Vec<f64>, CliError> {
        if let Some(e) = &self.config.energies {
            if e.is_empty() {
                return Err(CliError::Config("energies: empty list".into()));
            }
            return Ok(e.clone());
        }
        let top = self.ceiling(model)?;
        Ok(chebyshev_grid(0.1 * top, 0.9 * top, points))
    }
}

fn spectrum_table(levels: &[LevelRecord]) -> String {
    let mut t = Table::new(&SPECTRUM_HEADER);
    for l in levels {
        t.row([
            l.n.to_string(),
            cell(l.eps_wkb),
            cell(l.eps_improved),
            cell(l.eps_oracle),
            cell(l.abs_err_wkb()),
            cell(l.abs_err_improved()),
            cell(l.delta_used),
        ]);
    }
    t.finish()
}

/// Adds oracle energies, padding with oracle-only rows.
fn attach_oracle(summary: &mut SpectrumSummary, oracle: &[f64]) {
    for (n, &e) in oracle.iter().enumerate() {
        match summary.levels.get_mut(n) {
            Some(level) => level.eps_oracle = Some(e),
            None => summary.levels.push(LevelRecord { n, eps_oracle: Some(e), ..Default::default() }),
        }
    }
    summary.oracle_count = Some(oracle.len());
}

fn solve_all(settings: &Settings, model: &PotentialModel) -> Result<SpectrumSummary, CliError> {
    settings.ceiling(model)?;
    Ok(settings.solver(model)?.spectrum()?)
}

fn summary_lines(report: &mut String, summary: &SpectrumSummary, oracle: Option<&Converged>) {
    let _ = writeln!(report, "levels: {}", summary.n_levels);
    if let Some(phi) = summary.phi_at_top {
        let _ = writeln!(report, "phi(U): {}", g12(phi));
    }
    if let Some(d) = summary.delta_at_top {
        let _ = writeln!(report, "delta(U-): {}", g12(d));
    }
    if let Some(o) = oracle {
        let _ = writeln!(
            report,
            "oracle: {} levels, achieved tolerance {}, {}",
            o.levels.len(),
            g12(o.achieved_tol),
            if o.monotone { "monotone" } else { "NON-MONOTONE convergence" }
        );
        let agreement = if summary.count_mismatch() { "MISMATCH" } else { "agree" };
        let _ = writeln!(report, "level count: solver {} oracle {} ({agreement})", summary.n_levels, o.levels.len());
    }
    let frozen: Vec<String> = summary.levels.iter().filter(|l| l.delta_frozen).map(|l| l.n.to_string()).collect();
    if !frozen.is_empty() {
        let _ = writeln!(report, "delta frozen at window edge for n = {}", frozen.join(", "));
    }
}

fn error_lines(report: &mut String, summary: &SpectrumSummary) {
    for (name, stats) in [("wkb", summary.wkb_errors), ("improved", summary.improved_errors)] {
        if let Some(s) = stats {
            let _ = writeln!(
                report,
                "{name}: max abs err {}, mean abs err {}, max rel err {}, levels {}",
                g12(s.max_abs),
                g12(s.mean_abs),
                g12(s.max_rel),
                s.count
            );
        }
    }
}

/// `spectrum`: both modes, oracle optional.
pub fn spectrum(settings: &Settings, model: &PotentialModel) -> Result<Output, CliError> {
    let mut summary = solve_all(settings, model)?;
    let oracle = if settings.config.oracle { Some(settings.oracle(model)?) } else { None };
    if let Some(o) = &oracle {
        attach_oracle(&mut summary, &o.levels);
    }
    let mut report = String::new();
    summary_lines(&mut report, &summary, oracle.as_ref());
    let plot = if settings.plot { Some(plot_data(settings, model)?) } else { None };
    Ok(Output { csv: spectrum_table(&summary.levels), report, plot })
}

/// `compare`: three-way comparison with error summaries.
pub fn compare(settings: &Settings, model: &PotentialModel) -> Result<Output, CliError> {
    let mut summary = solve_all(settings, model)?;
    let oracle = settings.oracle(model)?;
    attach_oracle(&mut summary, &oracle.levels);
    summary.fill_errors();
    let mut report = String::new();
    summary_lines(&mut report, &summary, Some(&oracle));
    error_lines(&mut report, &summary);
    if let Some(d) = summary.levels.first().and_then(|l| l.delta_used) {
        let _ = writeln!(report, "delta(n=0): {}", g12(d));
    }
    let plot = if settings.plot { Some(plot_data(settings, model)?) } else { None };
    Ok(Output { csv: spectrum_table(&summary.levels), report, plot })
}

/// `eps,phi,delta1,delta` on 64 interior energies.
pub fn plot_data(settings: &Settings, model: &PotentialModel) -> Result<String, CliError> {
    let top = settings.ceiling(model)?;
    let corrector = Corrector::new(model, settings.source())?;
    let mut t = Table::new(&PLOT_HEADER);
    for j in 0..PLOT_POINTS {
        let eps = top * (j + 1) as f64 / (PLOT_POINTS + 1) as f64;
        let phi = phase_integral(model, eps)?.phi_total;
        let d1 = corrector.delta1(eps).ok();
        t.row([g12(eps), g12(phi), cell(d1), cell(d1.map(padewkb_core::corrections::delta_from_delta1))]);
    }
    Ok(t.finish())
}

/// `extract`: `(k, c, b, g)`, residuals, γ and adiabaticity.
pub fn extract(_settings: &Settings, model: &PotentialModel) -> Result<Output, CliError> {
    let Some(depth) = model.height() else {
        return Err(CliError::Config(
            "extract needs a finite well; for unbounded wells use the `density` command, \
             which reports c from the state density"
                .into(),
        ));
    };
    let r = extract_at_top(model)?;
    let grid = default_grid(model)?;
    let ratios = adiabaticity_check(model, &grid)?;
    let mut t = Table::new(&["quantity", "eps", "value"]);
    let mut report = String::new();
    let p = r.params;
    for (name, value) in [("k", p.k), ("c", p.c), ("b", p.b), ("g", p.g)] {
        t.row([name.to_string(), String::new(), g12(value)]);
        let _ = writeln!(report, "{name} = {}", g12(value));
    }
    for (name, value) in [("residual_phase", r.residuals.phase), ("residual_b", r.residuals.b), ("residual_g", r.residuals.g)]
    {
        t.row([name.to_string(), String::new(), g12(value)]);
        let _ = writeln!(report, "{name} = {}", g12(value));
    }
    let _ = writeln!(report, "valid: {}", r.valid);
    let _ = writeln!(report, "downstream corrections: {:?}", r.path);
    for f in [0.25, 0.5, 0.75] {
        let eps = f * depth;
        let gamma = gamma_diagnostic(model, eps).ok();
        t.row(["gamma".to_string(), g12(eps), cell(gamma)]);
        let _ = writeln!(report, "gamma({}) = {}", g12(eps), gamma.map(g12).unwrap_or_else(|| "n/a".into()));
    }
    for (eps, ratio) in grid.iter().zip(&ratios) {
        t.row(["adiabaticity".to_string(), g12(*eps), cell(*ratio)]);
        let _ = writeln!(report, "adiabaticity({}) = {}", g12(*eps), ratio.map(g12).unwrap_or_else(|| "absent".into()));
    }
    Ok(Output { csv: t.finish(), report, plot: None })
}

/// `delta1`: corrections on an energy grid.
pub fn delta1(settings: &Settings, model: &PotentialModel) -> Result<Output, CliError> {
    let corrector = Corrector::new(model, settings.source())?;
    let mut t = Table::new(&["eps", "delta1", "delta", "delta3", "gamma"]);
    for eps in settings.energies(model, 9)? {
        let set = corrector.at(eps)?;
        t.row([g12(eps), g12(set.delta1), g12(set.delta_total), g12(delta3_from_delta1(set.delta1)), cell(set.gamma)]);
    }
    let report = format!("correction source: {:?}\n", corrector.effective());
    Ok(Output { csv: t.finish(), report, plot: None })
}

/// `density`: `dΦ/dε` and `c` from the density on an energy grid.
pub fn density(settings: &Settings, model: &PotentialModel) -> Result<Output, CliError> {
    let mut t = Table::new(&["eps", "density", "c_density"]);
    for eps in settings.energies(model, PLOT_POINTS)? {
        let d = state_density(model, eps)?;
        let c = extract_c_from_density(model, eps, DensityForm::Corrected)?;
        t.row([g12(eps), g12(d), g12(c)]);
    }
    Ok(Output { csv: t.finish(), report: String::new(), plot: None })
}

/// `generate`: samples a Padé-generated well as `x,V`.
pub fn generate(_settings: &Settings, model: &PotentialModel) -> Result<Output, CliError> {
    if model.kind() != Kind::PadeGenerated {
        return Err(CliError::Config("generate needs a potential of kind \"pade\"".into()));
    }
    let depth = model.height().expect("generated wells are finite");
    let s = (depth * (1.0 - 1e-6)).sqrt();
    let (lo, hi) = (model.flank_position(-s), model.flank_position(s));
    let n = 801;
    let mut t = Table::new(&["x", "V"]);
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        t.row([g12(x), g12(model.evaluate(x))]);
    }
    let report = format!("{n} samples on [{}, {}]\n", g12(lo), g12(hi));
    Ok(Output { csv: t.finish(), report, plot: None })
}

/// `oracle`: extrapolated finite-difference levels.
pub fn oracle(settings: &Settings, model: &PotentialModel) -> Result<Output, CliError> {
    let o = settings.oracle(model)?;
    let mut t = Table::new(&["n", "eps_oracle"]);
    for (n, e) in o.levels.iter().enumerate() {
        t.row([n.to_string(), g12(*e)]);
    }
    let report = format!(
        "{} levels, achieved tolerance {}, L = {}, N = {}{}\n",
        o.levels.len(),
        g12(o.achieved_tol),
        g12(o.config.half_width),
        o.config.grid_points,
        if o.monotone { "" } else { ", NON-MONOTONE convergence" }
    );
    Ok(Output { csv: t.finish(), report, plot: None })
}
