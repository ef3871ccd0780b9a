use thiserror::Error;

/// Failures reported by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent configuration, or an unusable request.
    #[error("config error: {0}")]
    Config(String),
    /// The numerical pipeline failed.
    #[error("numerical failure in {}{}", .0, energy_suffix(.0))]
    Numerical(#[from] padewkb_core::Error),
    /// Reading inputs or writing results failed.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn energy_suffix(e: &padewkb_core::Error) -> String {
    match e.energy() {
        Some(eps) => format!(" (at energy {eps})"),
        None => String::new(),
    }
}

impl CliError {
    /// Process exit code: 2 for configuration, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}
