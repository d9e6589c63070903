//! Versioned JSON reports.

use serde::Serialize;

use crate::resolution::{verify_exact, DegreeCheck, Resolution};
use crate::semigroup::{green_classes, idempotents, is_completely_simple, minimal_ideal, FiniteSemigroup};

pub const SCHEMA_VERSION: u32 = 1;

/// The wrapper every report is written in.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub passed: bool,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, input: Option<String>, passed: bool, report: T) -> Self {
        Envelope { schema: SCHEMA_VERSION, command: command.to_string(), input, passed, report }
    }
}

/// Pretty JSON with a trailing newline. Every map in the crate's reports is
/// ordered, so equal values give byte-identical output.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialise");
    out.push('\n');
    out
}

/// Structure of a finite semigroup, with elements by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupAnalysis {
    pub order: usize,
    pub identity: Option<String>,
    pub commutative: bool,
    pub idempotents: Vec<String>,
    pub r_classes: Vec<Vec<String>>,
    pub l_classes: Vec<Vec<String>>,
    pub h_classes: Vec<Vec<String>>,
    pub d_classes: Vec<Vec<String>>,
    pub group_h_classes: usize,
    pub completely_simple: bool,
    pub minimal_ideal: Vec<String>,
}

pub fn analyze(s: &FiniteSemigroup) -> SemigroupAnalysis {
    let g = green_classes(s);
    let names = |c: &[usize]| c.iter().map(|&x| s.name(x)).collect::<Vec<_>>();
    let classes = |cs: &[Vec<usize>]| cs.iter().map(|c| names(c)).collect();
    SemigroupAnalysis {
        order: s.order(),
        identity: s.identity().map(|e| s.name(e)),
        commutative: s.is_commutative(),
        idempotents: names(&idempotents(s).into_iter().collect::<Vec<_>>()),
        r_classes: classes(&g.r_classes),
        l_classes: classes(&g.l_classes),
        h_classes: classes(&g.h_classes),
        d_classes: classes(&g.d_classes),
        group_h_classes: g.group_h_class_count(),
        completely_simple: is_completely_simple(s),
        minimal_ideal: names(&minimal_ideal(s).into_iter().collect::<Vec<_>>()),
    }
}

/// Per-degree rank, generator count, kernel rank and exactness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub length: usize,
    pub ring_order: usize,
    pub ranks: Vec<usize>,
    pub surjective: bool,
    pub degrees: Vec<DegreeCheck>,
    pub exact: bool,
}

pub fn resolution_report(r: &Resolution) -> ResolutionReport {
    let check = verify_exact(r);
    ResolutionReport {
        length: r.length(),
        ring_order: r.ring().size(),
        ranks: r.ranks(),
        surjective: check.surjective,
        exact: check.all_pass(),
        degrees: check.degrees,
    }
}
