//! Text and JSON input formats and DOT export.
//!
//! All external formats use 1-based element indices. Text formats ignore
//! blank lines and everything after `#`.

mod dot;
mod rees;
mod semilattice;
mod table;

pub use dot::{cayley_dot, egg_box_dot};
pub use rees::{parse_rees_text, rees_from_json, rees_to_json, rees_to_text, ReesJson};
pub use semilattice::{
    parse_semilattice_text, semilattice_from_json, semilattice_to_json, semilattice_to_text, HomJson, SemilatticeJson,
};
pub use table::{parse_table_text, semigroup_from_json, semigroup_to_json, semigroup_to_text, SemigroupJson};

use thiserror::Error;

use crate::rees::{make_rees, make_strong_semilattice, ReesError, ReesMatrixData, StrongSemilatticeData};
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Rees(#[from] ReesError),
}

pub(crate) fn parse_err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Parse { line, reason: reason.into() }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        parse_err(e.line(), e.to_string())
    }
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

/// `key = value` with the given key, if the line has that shape.
pub(crate) fn keyed<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let (k, v) = line.split_once('=')?;
    (k.trim() == key).then(|| v.trim())
}

pub(crate) fn parse_index(line: usize, token: &str, bound: usize) -> Result<usize, FormatError> {
    match token.parse::<usize>() {
        Ok(k) if (1..=bound).contains(&k) => Ok(k - 1),
        Ok(k) => Err(parse_err(line, format!("index {k} outside 1..={bound}"))),
        Err(_) => Err(parse_err(line, format!("expected an index, found `{token}`"))),
    }
}

/// A parsed input file of any supported kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spec {
    Table(FiniteSemigroup),
    Rees(ReesMatrixData),
    Semilattice(StrongSemilatticeData),
}

impl Spec {
    pub fn kind(&self) -> &'static str {
        match self {
            Spec::Table(_) => "table",
            Spec::Rees(_) => "rees",
            Spec::Semilattice(_) => "semilattice",
        }
    }

    pub fn semigroup(&self) -> Result<FiniteSemigroup, FormatError> {
        Ok(match self {
            Spec::Table(s) => s.clone(),
            Spec::Rees(d) => make_rees(d)?,
            Spec::Semilattice(d) => make_strong_semilattice(d)?.0,
        })
    }

    pub fn to_text(&self) -> String {
        match self {
            Spec::Table(s) => semigroup_to_text(s),
            Spec::Rees(d) => rees_to_text(d),
            Spec::Semilattice(d) => semilattice_to_text(d),
        }
    }

    pub fn to_json(&self) -> String {
        let value = match self {
            Spec::Table(s) => serde_json::to_value(semigroup_to_json(s)),
            Spec::Rees(d) => serde_json::to_value(rees_to_json(d)),
            Spec::Semilattice(d) => serde_json::to_value(semilattice_to_json(d)),
        };
        let mut out = serde_json::to_string_pretty(&value.expect("plain data serialises")).expect("serialises");
        out.push('\n');
        out
    }
}

/// Parses any supported input, choosing JSON when the first non-blank
/// character is `{` and otherwise dispatching on the text keywords.
pub fn parse_spec(text: &str) -> Result<Spec, FormatError> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text)?;
        return if value.get("group").is_some() {
            Ok(Spec::Rees(rees_from_json(&serde_json::from_value(value)?)?))
        } else if value.get("components").is_some() {
            Ok(Spec::Semilattice(semilattice_from_json(&serde_json::from_value(value)?)?))
        } else {
            Ok(Spec::Table(semigroup_from_json(&serde_json::from_value(value)?)?))
        };
    }
    let lines = content_lines(text);
    if lines.iter().any(|(_, l)| keyed(l, "components").is_some()) {
        Ok(Spec::Semilattice(parse_semilattice_text(text)?))
    } else if lines.iter().any(|(_, l)| keyed(l, "I").is_some()) {
        Ok(Spec::Rees(parse_rees_text(text)?))
    } else {
        Ok(Spec::Table(parse_table_text(text)?))
    }
}
