//! Command implementations behind the `bbgroups` binary.
//!
//! Exit codes: 0 success, 1 invalid input, 2 theorem-hypothesis gate refused,
//! 3 oracle disagreement.

pub mod commands;
pub mod document;
pub mod report;

pub use document::GraphDocument;
pub use report::InvariantReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("gate refused: {0}")]
    Gate(String),
    #[error("oracle disagreement: {0}")]
    Disagreement(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Gate(_) => 2,
            CliError::Disagreement(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Gate(m) | CliError::Disagreement(m) => m,
        }
    }
}

impl From<bbgroups::Error> for CliError {
    fn from(e: bbgroups::Error) -> Self {
        use bbgroups::Error as E;
        match e {
            E::NotSimplyConnected | E::SimpleConnectivityUnknown | E::Disconnected(_) => CliError::Gate(e.to_string()),
            E::OracleDisagreement(m) => CliError::Disagreement(m),
            other => CliError::Input(other.to_string()),
        }
    }
}
