//! Command-line front end: argument parsing, presets, and canonical JSON
//! report emission for every evaluator in `ebh-core`.

pub mod args;
pub mod commands;
pub mod emit;
pub mod presets;

use std::fmt;

use ebh_core::Error;

pub use args::{Cli, Command};
pub use commands::run;
pub use emit::{canonical_json, envelope, SCHEMA_VERSION};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const INDETERMINATE: i32 = 4;
    pub const RESOURCE_GUARD: i32 = 5;
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Parse(_)) | CliError::Io(_) => exit::PARSE,
            CliError::Core(Error::Indeterminate(_)) => exit::INDETERMINATE,
            CliError::Core(Error::ResourceGuard { .. }) => exit::RESOURCE_GUARD,
            CliError::Core(_) => exit::PRECONDITION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let cases = [
            (CliError::Core(Error::Parse("x".into())), exit::PARSE),
            (CliError::Io("x".into()), exit::PARSE),
            (CliError::Core(Error::Precondition("x".into())), exit::PRECONDITION),
            (CliError::Core(Error::Domain("x".into())), exit::PRECONDITION),
            (CliError::Core(Error::Indeterminate("x".into())), exit::INDETERMINATE),
            (CliError::Core(Error::ResourceGuard { predicted: 2, ceiling: 1 }), exit::RESOURCE_GUARD),
        ];
        for (e, code) in cases {
            assert_eq!(e.exit_code(), code, "{e}");
        }
    }
}
