//! JSON run configuration and potential specifications.

use std::fs;
use std::path::{Path, PathBuf};

use padewkb_core::corrections::CorrectionSource;
use padewkb_core::{PadeParams, PotentialModel, TabulatedPotential};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Potential family named in a config.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindSpec {
    /// `U·tanh²(px)`.
    Tanh2,
    /// `k²x²`.
    Harmonic,
    /// Generated from `(k, c, b, g)`.
    Pade,
    /// Two-column `x,V` samples.
    Tabulated,
}

/// A potential as written in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSpec {
    /// Family.
    pub kind: KindSpec,
    /// Semiclassical scale; defaults to 1.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub beta: f64,
    /// Well height.
    #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<f64>,
    /// Inverse width of `U·tanh²(px)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Curvature.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Padé `c`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// Padé `b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    /// Padé `g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    /// CSV with `x,V` rows, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_file: Option<PathBuf>,
}

fn one() -> f64 {
    1.0
}

fn is_one(x: &f64) -> bool {
    *x == 1.0
}

/// Correction source as written in JSON or on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SourceSpec {
    /// Closed forms from exact or extracted parameters.
    Closed,
    /// Numeric second derivative of the raw integral.
    Direct,
    /// The `b = g = 0` well with the same `k` and `U`.
    Basic,
}

impl From<SourceSpec> for CorrectionSource {
    fn from(s: SourceSpec) -> Self {
        match s {
            SourceSpec::Closed => CorrectionSource::ClosedForm,
            SourceSpec::Direct => CorrectionSource::DirectNumeric,
            SourceSpec::Basic => CorrectionSource::BasicWell,
        }
    }
}

/// Full run configuration; command-line flags override these fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// The well.
    pub potential: PotentialSpec,
    /// Correction source, default closed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correction: Option<SourceSpec>,
    /// Run the diagonalization oracle.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub oracle: bool,
    /// Energy ceiling for unbounded wells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emax: Option<f64>,
    /// Energies for `delta1` and `density`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energies: Option<Vec<f64>>,
    /// Oracle base grid size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_points: Option<usize>,
    /// Oracle box half-width.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_half_width: Option<f64>,
}

impl RunConfig {
    /// Config with only a potential.
    pub fn bare(potential: PotentialSpec) -> Self {
        RunConfig {
            potential,
            correction: None,
            oracle: false,
            emax: None,
            energies: None,
            oracle_points: None,
            oracle_half_width: None,
        }
    }

    /// Reads a run config or a bare potential document.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let located = |e: serde_json::Error| CliError::Config(format!("{}: {e}", path.display()));
        let value: serde_json::Value = serde_json::from_str(&text).map_err(located)?;
        let mut config = if value.get("potential").is_some() {
            serde_json::from_str::<RunConfig>(&text).map_err(located)?
        } else {
            RunConfig::bare(serde_json::from_str::<PotentialSpec>(&text).map_err(located)?)
        };
        if let Some(file) = &config.potential.grid_file {
            if file.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                config.potential.grid_file = Some(base.join(file));
            }
        }
        Ok(config)
    }
}

impl PotentialSpec {
    /// `U·tanh²(px)`.
    pub fn tanh2(depth: f64, p: f64, beta: f64) -> Self {
        PotentialSpec { depth: Some(depth), p: Some(p), ..Self::empty(KindSpec::Tanh2, beta) }
    }

    /// `k²x²`.
    pub fn harmonic(k: f64, beta: f64) -> Self {
        PotentialSpec { k: Some(k), ..Self::empty(KindSpec::Harmonic, beta) }
    }

    /// Padé-generated well.
    pub fn pade(params: PadeParams, beta: f64) -> Self {
        PotentialSpec {
            k: Some(params.k),
            c: Some(params.c),
            b: Some(params.b),
            g: Some(params.g),
            ..Self::empty(KindSpec::Pade, beta)
        }
    }

    fn empty(kind: KindSpec, beta: f64) -> Self {
        PotentialSpec { kind, beta, depth: None, p: None, k: None, c: None, b: None, g: None, grid_file: None }
    }

    fn keys(&self) -> [(&'static str, bool); 7] {
        [
            ("U", self.depth.is_some()),
            ("p", self.p.is_some()),
            ("k", self.k.is_some()),
            ("c", self.c.is_some()),
            ("b", self.b.is_some()),
            ("g", self.g.is_some()),
            ("grid_file", self.grid_file.is_some()),
        ]
    }

    fn check_keys(&self, required: &[&str], optional: &[&str]) -> Result<(), CliError> {
        for (key, present) in self.keys() {
            if present && !required.contains(&key) && !optional.contains(&key) {
                return Err(CliError::Config(format!("potential.{key}: not used by kind {:?}", self.kind)));
            }
            if !present && required.contains(&key) {
                return Err(CliError::Config(format!("potential.{key}: required for kind {:?}", self.kind)));
            }
        }
        Ok(())
    }

    /// Builds the model; parameter-domain failures are config errors.
    pub fn build(&self) -> Result<PotentialModel, CliError> {
        let invalid = |e: padewkb_core::Error| CliError::Config(format!("potential: {e}"));
        match self.kind {
            KindSpec::Tanh2 => {
                self.check_keys(&["U", "p"], &[])?;
                PotentialModel::tanh2(self.depth.unwrap(), self.p.unwrap(), self.beta).map_err(invalid)
            }
            KindSpec::Harmonic => {
                self.check_keys(&["k"], &[])?;
                PotentialModel::harmonic(self.k.unwrap(), self.beta).map_err(invalid)
            }
            KindSpec::Pade => {
                self.check_keys(&["k", "b", "g"], &["c", "U"])?;
                let c = match (self.c, self.depth) {
                    (Some(c), None) => c,
                    (None, Some(u)) => 1.0 / u,
                    (Some(c), Some(u)) if (c * u - 1.0).abs() < 1e-12 => c,
                    (Some(_), Some(_)) => return Err(CliError::Config("potential: c must equal 1/U".into())),
                    (None, None) => return Err(CliError::Config("potential.c: required for kind Pade".into())),
                };
                let params = PadeParams::new(self.k.unwrap(), c, self.b.unwrap(), self.g.unwrap()).map_err(invalid)?;
                PotentialModel::from_pade(params, self.beta).map_err(invalid)
            }
            KindSpec::Tabulated => {
                self.check_keys(&["grid_file"], &[])?;
                let path = self.grid_file.as_ref().unwrap();
                let (x, v) = read_grid(path)?;
                let table = TabulatedPotential::new(x, v).map_err(invalid)?;
                PotentialModel::tabulated(table, self.beta).map_err(invalid)
            }
        }
    }
}

/// Reads `x,V` rows; a non-numeric first row is taken as a header.
pub fn read_grid(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let fail = |what: String| CliError::Config(format!("{}: {what}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| fail(e.to_string()))?;
    let (mut x, mut v) = (Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| fail(e.to_string()))?;
        if record.len() != 2 {
            return Err(fail(format!("row {}: expected 2 columns, found {}", i + 1, record.len())));
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(pair) => {
                x.push(pair[0]);
                v.push(pair[1]);
            }
            Err(_) if i == 0 => continue,
            Err(e) => return Err(fail(format!("row {}: {e}", i + 1))),
        }
    }
    Ok((x, v))
}
