//! Command implementations behind the `cytoric` binary. Each command returns
//! a [`Report`] that renders as JSON or as a table.

pub mod betti_cmd;
pub mod coxeter_cmd;
pub mod fiber;
pub mod report;
pub mod resolve;
pub mod verify;

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use thiserror::Error;

pub use report::{Check, Report, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cytoric::Error),

    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed JSON in {context}: {message}")]
    Json { context: String, line: usize, column: usize, message: String },

    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

/// Reads JSON either inline (when the argument starts with `{` or `[`) or
/// from the named file.
pub fn load_json<T: DeserializeOwned>(source: &str) -> CliResult<T> {
    let trimmed = source.trim_start();
    let (text, context) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        (source.to_string(), "inline argument".to_string())
    } else {
        let path = Path::new(source);
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        (text, path.display().to_string())
    };
    parse_json(&text, &context)
}

pub fn parse_json<T: DeserializeOwned>(text: &str, context: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        context: context.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cytoric::polytope::Polyhedron;

    #[test]
    fn json_errors_carry_location() {
        let err = load_json::<Polyhedron>("{\"dim\": 3,\n \"halfspaces\": [}").unwrap_err();
        match err {
            CliError::Json { line, .. } => assert_eq!(line, 2),
            other => panic!("{other}"),
        }
        assert!(matches!(load_json::<Polyhedron>("/no/such/file.json"), Err(CliError::Io { .. })));
    }
}
