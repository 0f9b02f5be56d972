use thiserror::Error;
use twistlab_constructions::ConstructionError;
use twistlab_core::TwistError;
use twistlab_groups::{GroupError, SpecError};

/// Errors that end the process before or outside step execution.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{source_name}: {message}")]
    Parse { source_name: String, message: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 2,
            CliError::Usage(_) | CliError::Parse { .. } => 3,
        }
    }

    pub fn parse(source_name: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Parse { source_name: source_name.into(), message: message.into() }
    }
}

/// Why a single step could not produce an outcome.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    /// An identity that must hold did not: exit code 2.
    #[error("internal consistency failure: {0}")]
    Internal(String),
    /// Caps, hypotheses, parse problems in embedded inputs.
    #[error("{0}")]
    Failed(String),
}

impl From<TwistError> for OpError {
    fn from(e: TwistError) -> OpError {
        if e.is_internal() {
            OpError::Internal(e.to_string())
        } else {
            OpError::Failed(e.to_string())
        }
    }
}

impl From<ConstructionError> for OpError {
    fn from(e: ConstructionError) -> OpError {
        if e.is_internal() {
            OpError::Internal(e.to_string())
        } else {
            OpError::Failed(e.to_string())
        }
    }
}

impl From<GroupError> for OpError {
    fn from(e: GroupError) -> OpError {
        OpError::Failed(e.to_string())
    }
}

impl From<SpecError> for OpError {
    fn from(e: SpecError) -> OpError {
        OpError::Failed(format!("group spec {e}"))
    }
}
