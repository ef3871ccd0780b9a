//! Built-in benchmark configs written by `--seed-examples`.

use std::fs;
use std::path::Path;

use padewkb_core::PadeParams;

use crate::config::{PotentialSpec, RunConfig, SourceSpec};
use crate::error::CliError;

/// File name of the benchmark used for the determinism check.
pub const BENCHMARK: &str = "benchmark.json";

fn with_oracle(potential: PotentialSpec) -> RunConfig {
    RunConfig { oracle: true, correction: Some(SourceSpec::Closed), ..RunConfig::bare(potential) }
}

/// `(file name, config)` for every seeded example.
pub fn all() -> Vec<(String, RunConfig)> {
    let mut out = Vec::new();
    for depth in [0.01, 4.0, 25.0, 100.0] {
        out.push((format!("tanh2_u{depth}.json"), with_oracle(PotentialSpec::tanh2(depth, 1.0, 1.0))));
    }
    out.push((
        "harmonic.json".into(),
        RunConfig { emax: Some(10.0), ..with_oracle(PotentialSpec::harmonic(1.0, 1.0)) },
    ));
    for (k, b, g) in [(2.0, 0.05, 0.01), (5.0, 0.0, 0.02)] {
        let params = PadeParams { k, c: 0.04, b, g };
        out.push((format!("pade_k{k}_b{b}_g{g}.json"), with_oracle(PotentialSpec::pade(params, 1.0))));
    }
    out.push((BENCHMARK.into(), with_oracle(PotentialSpec::tanh2(25.0, 1.0, 1.0))));
    out
}

/// Writes every example into `dir` and returns the file names.
pub fn write_all(dir: &Path) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for (name, config) in all() {
        let mut text = serde_json::to_string_pretty(&config).map_err(|e| CliError::Config(e.to_string()))?;
        text.push('\n');
        fs::write(dir.join(&name), text)?;
        names.push(name);
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_load_back() {
        let dir = tempfile::tempdir().unwrap();
        let names = write_all(dir.path()).unwrap();
        assert_eq!(names.len(), 8);
        for (name, config) in all() {
            let loaded = RunConfig::load(&dir.path().join(name)).unwrap();
            assert_eq!(loaded, config);
            loaded.potential.build().unwrap();
        }
    }
}
