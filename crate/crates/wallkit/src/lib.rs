//! Command line surface for `wallkit-core`: file formats, a read-through
//! cache, the verification runner and the `wallkit` commands.

pub mod cache;
pub mod cli;
pub mod format;
pub mod verify;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const INVARIANT: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Core(#[from] wallkit_core::Error),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(wallkit_core::Error::BudgetExceeded { .. }) => exit::BUDGET,
            CliError::Core(wallkit_core::Error::SignConventionBroken(_) | wallkit_core::Error::OracleMismatch(_)) => exit::INVARIANT,
            CliError::Invariant(_) => exit::INVARIANT,
            _ => exit::VALIDATION,
        }
    }
}
