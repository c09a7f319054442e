use thiserror::Error;

/// Failures of a command, split by exit status: usage and input problems
/// exit with 2, mathematical failures (no recurrence, collapse, a failed
/// check or grid mismatch) with 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 1,
        }
    }

    /// Prefixes the message with a step or file name.
    pub fn context(self, what: &str) -> CliError {
        match self {
            CliError::Input(m) => CliError::Input(format!("{what}: {m}")),
            CliError::Math(m) => CliError::Math(format!("{what}: {m}")),
        }
    }
}

impl From<qrec_core::Error> for CliError {
    fn from(e: qrec_core::Error) -> Self {
        use qrec_core::Error as E;
        match e {
            E::Collapse | E::AllZero | E::Undefined(_) => CliError::Math(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("JSON: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
