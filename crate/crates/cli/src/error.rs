//! Errors carrying their exit code.

use smilelab::format::LoadError;
use smilelab::residual::ResidualError;
use smilelab::selectors::{ExprError, SelectorError};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub type CliResult<T> = Result<T, CliError>;

pub const INVARIANT: u8 = 2;
pub const PARSE: u8 = 3;
pub const BUDGET: u8 = 4;
pub const USAGE: u8 = 5;

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> CliError {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> CliError {
        CliError::new(INVARIANT, message)
    }

    pub fn parse(message: impl Into<String>) -> CliError {
        CliError::new(PARSE, message)
    }

    pub fn budget(message: impl Into<String>) -> CliError {
        CliError::new(BUDGET, message)
    }

    pub fn usage(message: impl Into<String>) -> CliError {
        CliError::new(USAGE, message)
    }

    pub fn from_selector(e: SelectorError) -> CliError {
        match e {
            SelectorError::Budget(_) => CliError::budget(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }

    pub fn from_residual(e: ResidualError) -> CliError {
        match e {
            ResidualError::Selector(s) => CliError::from_selector(s),
            ResidualError::Budget(_) => CliError::budget(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        let code = match e {
            LoadError::Io { .. } | LoadError::Parse { .. } => PARSE,
            LoadError::Invalid { .. } => INVARIANT,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Syntax { .. } | ExprError::UnknownSelector { .. } | ExprError::Arity { .. } => {
                CliError::parse(e.to_string())
            }
            ExprError::Unbound { .. } | ExprError::Kind { .. } | ExprError::VectorLength { .. } => {
                CliError::usage(e.to_string())
            }
            ExprError::Selector(s) => CliError::from_selector(s),
        }
    }
}
