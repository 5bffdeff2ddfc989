use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input data: unreadable file, malformed row, invalid values.
    #[error("{0}")]
    Input(String),
    /// Bad flags or configuration file.
    #[error("{0}")]
    Config(String),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Output(_) => 2,
            CliError::Config(_) => 3,
        }
    }
}
