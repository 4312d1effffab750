use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] invgen_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 2 for bad input, 3 for exhausted budgets.
    pub fn exit_code(&self) -> u8 {
        use invgen_core::Error as E;
        match self {
            CliError::Core(E::Budget { .. } | E::Capacity(_)) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            3 => "budget",
            _ => "usage",
        }
    }
}
