//! Plain `key=value` configuration shared by the library and the CLI.
//!
//! ```text
//! # comments and blank lines are ignored
//! agents = a, b, c
//! gamma1 = knowledge.schemas
//! closure = table1
//! ceiling = 65536
//! ```
//!
//! The `gamma1` file holds one extra axiom schema per line, written
//! `NAME: <schema>` with `$name` metavariables.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::knowledge::Closure;
use crate::syntax::{parse_schema, Schema, SyntaxError, Universe};

pub const DEFAULT_CEILING: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub universe: Universe,
    pub gamma1: Vec<Schema>,
    pub closure: Closure,
    /// Largest exhaustive state bound `decide` accepts without an explicit limit.
    pub ceiling: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { universe: Universe::default(), gamma1: Vec::new(), closure: Closure::DataMining, ceiling: DEFAULT_CEILING }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("gamma1 line {line}: {source}")]
    Schema { line: usize, source: SyntaxError },
}

fn line_error(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Line { line, message: message.into() }
}

impl Config {
    /// Parses configuration text. Relative `gamma1` paths resolve against `dir`.
    pub fn parse(text: &str, dir: &Path) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        let mut gamma1_path: Option<(usize, PathBuf)> = None;
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| line_error(n, "expected key=value"))?;
            let value = value.trim();
            match key.trim() {
                "agents" => cfg.universe = Universe::from_list(value).map_err(|e| line_error(n, e.to_string()))?,
                "gamma1" => gamma1_path = Some((n, dir.join(value))),
                "closure" => {
                    cfg.closure = Closure::from_name(value)
                        .ok_or_else(|| line_error(n, format!("unknown closure `{value}` (table1|identity)")))?
                }
                "ceiling" => {
                    cfg.ceiling = value.parse().map_err(|_| line_error(n, format!("bad ceiling `{value}`")))?
                }
                other => return Err(line_error(n, format!("unknown key `{other}`"))),
            }
        }
        // Schemas are parsed last so they see the final agent universe.
        if let Some((_, path)) = gamma1_path {
            let text = read(&path)?;
            cfg.gamma1 = parse_gamma1(&text, &cfg.universe)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = read(path)?;
        Config::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })
}

/// Parses `NAME: <schema>` lines.
pub fn parse_gamma1(text: &str, universe: &Universe) -> Result<Vec<Schema>, ConfigError> {
    let mut out: Vec<Schema> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, body) = line.split_once(':').ok_or_else(|| line_error(n, "expected NAME: <schema>"))?;
        let name = name.trim();
        if name.is_empty() || out.iter().any(|s| s.name == name) {
            return Err(line_error(n, format!("missing or duplicate schema name `{name}`")));
        }
        out.push(parse_schema(name, body, universe).map_err(|source| ConfigError::Schema { line: n, source })?);
    }
    Ok(out)
}
