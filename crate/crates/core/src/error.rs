use thiserror::Error;

/// Errors produced anywhere in the pipeline.
///
/// `TheoremViolation` is special: it means a proven statement failed on
/// concrete data, which can only be an implementation bug. The witness
/// carries everything needed to reproduce the failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(
        "genericity error: no certified bases after {attempts} attempts \
         (seed {seed}, final coefficient bound {bound})"
    )]
    Genericity { attempts: u32, seed: u64, bound: i64 },

    #[error("oracle scope error: {0}")]
    OracleScope(String),

    #[error("theorem violation in {check}: {witness}")]
    TheoremViolation { check: String, witness: String },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn violation(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::TheoremViolation {
            check: check.into(),
            witness: witness.into(),
        }
    }

    /// Stable machine-readable tag, used by the CLI error report.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Parse(_) => "parse",
            Error::Genericity { .. } => "genericity",
            Error::OracleScope(_) => "oracle_scope",
            Error::TheoremViolation { .. } => "theorem_violation",
        }
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TheoremViolation { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
