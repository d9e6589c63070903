//! The built-in catalog, shipped as text files in `catalog/`.

use crate::format::{parse_spec, FormatError, Spec};
use crate::semigroup::{is_completely_simple, monoid_completion, FiniteSemigroup};

macro_rules! entries {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../catalog/", $name, ".txt")))),*]
    };
}

/// `(name, file contents)`, sorted by name.
pub const CATALOG_FILES: &[(&str, &str)] = entries![
    "diamond-trivial",
    "klein-four",
    "left-group-z2-lz2",
    "left-group-z3-lz2",
    "left-zero-2",
    "left-zero-2-with-zero",
    "left-zero-3",
    "rect-band-2x2",
    "rect-band-2x2-with-zero",
    "rect-band-2x3",
    "rees-z2-2x2-normalized",
    "rees-z2-2x2-unnormalized",
    "right-zero-2",
    "right-zero-3",
    "trivial",
    "two-chain-z2",
    "z2",
    "z2-with-zero",
    "z3",
    "z6",
];

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: Spec,
    pub semigroup: FiniteSemigroup,
}

impl CatalogEntry {
    pub fn parse(name: &str, text: &str) -> Result<Self, FormatError> {
        let spec = parse_spec(text)?;
        let semigroup = spec.semigroup()?;
        Ok(CatalogEntry { name: name.to_string(), spec, semigroup })
    }

    /// The semigroup itself if it has an identity, otherwise with one
    /// adjoined.
    pub fn monoid(&self) -> FiniteSemigroup {
        monoid_completion(&self.semigroup)
    }

    pub fn is_completely_simple(&self) -> bool {
        is_completely_simple(&self.semigroup)
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG_FILES
        .iter()
        .map(|(name, text)| CatalogEntry::parse(name, text).expect("shipped catalog files parse"))
        .collect()
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    CATALOG_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, t)| CatalogEntry::parse(n, t).expect("shipped catalog files parse"))
}
