use hql_core::asymptotics::AsymptoticsError;
use hql_core::lie::ValidationReport;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
/// `classify`: the pair is distinguished by some invariant.
pub const EXIT_DISTINGUISHED: i32 = 5;
/// `classify`: no invariant tells the pair apart.
pub const EXIT_INCONCLUSIVE: i32 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{context}: spec failed validation\n{report}")]
    Validation { context: String, report: ValidationReport },
    #[error("{0}")]
    Input(String),
    #[error("numerical guard: {0}")]
    Guard(AsymptoticsError),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Validation { .. } | CliError::Input(_) => EXIT_VALIDATION,
            CliError::Guard(_) => EXIT_GUARD,
            CliError::Failed(_) | CliError::Io { .. } => EXIT_FAILED,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<AsymptoticsError> for CliError {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::Conditioning { .. } => CliError::Guard(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
