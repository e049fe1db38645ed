//! The `symcalc` command-line tool.

pub mod args;
pub mod commands;
pub mod front;
pub mod repl;

use thiserror::Error;

pub use args::{Cli, Command, Format, Global, Input};
pub use commands::run;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn user(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USER,
            message: message.into(),
        }
    }
}

/// Rendered command output with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub text: String,
}

impl Output {
    pub fn ok(text: impl Into<String>) -> Self {
        Output {
            code: EXIT_OK,
            text: text.into(),
        }
    }

    pub fn with_code(code: i32, text: impl Into<String>) -> Self {
        Output {
            code,
            text: text.into(),
        }
    }
}
