//! Explicit transfers of free resolutions between a monoid and its ideals,
//! maximal subgroups and left groups.
//!
//! Every construction returns a [`TransferBundle`] whose output resolution
//! has been certified exact and whose construction-specific claims have all
//! been checked on the instance. A failed check is reported as
//! [`TransferError::VerificationFailed`]; a bundle never exists in a failed
//! state.

mod context;
mod descend;
mod ideal;
mod left_group;
mod pipeline;
mod restrict;

pub use context::{decompose_ring_element, ContextSummary, DecompositionContext};
pub use descend::{cs_descend, EQUIVARIANCE_SAMPLES};
pub use ideal::ideal_lift;
pub use left_group::left_group_lift;
pub use pipeline::{completely_simple_pipeline, PipelineReport, PipelineRun};
pub use restrict::{maximal_subgroup_restrict, phi_restrict, ProductDecomposition};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::IntMatrix;
use crate::resolution::{
    kernel_lattice, orbit_lattice, verify_exact, FreeModule, Label, MapValue, ModuleElement, ModuleError, ModuleMap,
    MonoidRing, Resolution, RingElement,
};
use crate::semigroup::SemigroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("subset is not a right ideal")]
    NotARightIdeal,
    #[error("product decomposition check failed: {0}")]
    IsoCheckFailed(String),
    #[error("second factor is not a right zero semigroup")]
    NotRightZero,
    #[error("subset is not a two-sided ideal")]
    NotAnIdeal,
    #[error("the ideal has no two-sided identity")]
    NoTwoSidedIdentity,
    #[error("not a left group: {0}")]
    NotALeftGroup(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("input resolution is not in standard form: {0}")]
    NotStandardForm(String),
    #[error("verification failed: {}", .0.failing_checks().join(", "))]
    VerificationFailed(Box<BundleReport>),
}

/// Checks recorded for one degree of a transfer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub rank_in: Option<usize>,
    pub rank_out: usize,
    pub exact: Option<bool>,
    pub y_size: Option<usize>,
    pub lemma_checks: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleReport {
    pub construction: String,
    pub context: BTreeMap<String, String>,
    pub surjective: bool,
    pub degrees: Vec<DegreeReport>,
    pub passed: bool,
}

impl BundleReport {
    /// Names of failed checks as `degree k: name`.
    pub fn failing_checks(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.surjective {
            out.push("augmentation not surjective".to_string());
        }
        for d in &self.degrees {
            if d.exact == Some(false) {
                out.push(format!("degree {}: exact", d.degree));
            }
            for (name, ok) in &d.lemma_checks {
                if !ok {
                    out.push(format!("degree {}: {name}", d.degree));
                }
            }
        }
        out
    }
}

/// A named ℤ-linear map between flat coordinate spaces, such as `θ` or `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryMap {
    pub name: String,
    pub degree: usize,
    pub matrix: IntMatrix,
}

/// The result of a transfer: the input and the certified output resolution,
/// whose recorded generating sets are the kernel generating sets `Y_k`.
#[derive(Debug, Clone)]
pub struct TransferBundle {
    pub input: Resolution,
    pub output: Resolution,
    pub auxiliary: Vec<AuxiliaryMap>,
    pub report: BundleReport,
}

impl TransferBundle {
    /// `Y_k` for every degree where it was constructed.
    pub fn kernel_generators(&self) -> &[Vec<ModuleElement>] {
        self.output.generators()
    }
}

/// Checks that `A_0 = ℤM` with `∂_0 = ε` and `A_i = ⊕_{x ∈ X_{i-1}} ℤM[x]`
/// with `∂_i[x] = x`.
pub(crate) fn check_standard_form(r: &Resolution) -> Result<(), TransferError> {
    let bad = |m: String| Err(TransferError::NotStandardForm(m));
    if r.module(0).labels() != [Label::Unit] {
        return bad("degree 0 is not the ring itself".into());
    }
    match r.map(0).apply(&ModuleElement::basis(r.module(0), 0))? {
        MapValue::Integer(n) if n.is_one() => {}
        _ => return bad("degree 0 map is not the augmentation".into()),
    }
    for i in 1..=r.length() {
        let Some(x) = r.generators_at(i - 1) else {
            return bad(format!("no generating set recorded in degree {}", i - 1));
        };
        let expected: Vec<Label> = (0..x.len()).map(|index| Label::Gen { degree: i - 1, index }).collect();
        if r.module(i).labels() != expected.as_slice() {
            return bad(format!("degree {i} is not indexed by the generating set"));
        }
        if r.map(i).images() != Some(x) {
            return bad(format!("degree {i} map does not send [x] to x"));
        }
    }
    Ok(())
}

/// Copies `x` into a module whose labels contain those of `x`.
pub(crate) fn embed(x: &ModuleElement, target: &Arc<FreeModule>) -> ModuleElement {
    let mut out = ModuleElement::zero(target);
    for (label, c) in x.module().labels().iter().zip(x.coeffs()) {
        if !c.is_zero() {
            out = out.add(&ModuleElement::labelled(target, label, c.clone())).expect("same module");
        }
    }
    out
}

/// `a - b` as a ring element.
pub(crate) fn difference(a: usize, b: usize) -> RingElement {
    let mut r = RingElement::basis(a);
    r.add_term(b, -BigInt::one());
    r
}

pub(crate) fn maps_to_zero(f: &ModuleMap, y: &ModuleElement) -> bool {
    match f.apply(y) {
        Ok(MapValue::Integer(n)) => n.is_zero(),
        Ok(MapValue::Module(m)) => m.is_zero(),
        Err(_) => false,
    }
}

pub(crate) fn names(s: &crate::semigroup::FiniteSemigroup, xs: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| s.name(x)).collect();
    format!("{{{}}}", v.join(","))
}

/// The raw output of a construction before verification. `extra[k]` holds
/// construction-specific checks for degree `k`.
pub(crate) struct Draft {
    pub ring: Arc<MonoidRing>,
    pub modules: Vec<Arc<FreeModule>>,
    pub maps: Vec<ModuleMap>,
    pub ys: Vec<Vec<ModuleElement>>,
    pub auxiliary: Vec<AuxiliaryMap>,
    pub extra: Vec<BTreeMap<String, bool>>,
}

/// Builds the output resolution, runs exactness and the `Y_k` checks, merges
/// in the construction-specific checks and refuses to return a bundle if
/// anything failed.
pub(crate) fn assemble(
    construction: &str,
    context: BTreeMap<String, String>,
    input: &Resolution,
    draft: Draft,
) -> Result<TransferBundle, TransferError> {
    let Draft { ring, modules, maps, ys, auxiliary, mut extra } = draft;
    let output = Resolution::from_parts(ring, modules, maps, ys, None)?;
    let exactness = verify_exact(&output);
    extra.resize(output.length() + 1, BTreeMap::new());
    let degrees = exactness
        .degrees
        .iter()
        .zip(extra)
        .map(|(d, mut checks)| {
            let k = d.degree;
            if let Some(z) = d.composite_zero {
                checks.insert("composite_zero".into(), z);
            }
            let y = output.generators_at(k);
            if let Some(y) = y {
                let map = output.map(k);
                checks.insert("y_in_kernel".into(), y.iter().all(|g| maps_to_zero(map, g)));
                let dim = output.module(k).flat_dim();
                checks.insert("y_generates_kernel".into(), orbit_lattice(y, output.ring(), dim) == kernel_lattice(map));
            }
            DegreeReport {
                degree: k,
                rank_in: (k <= input.length()).then(|| input.module(k).rank()),
                rank_out: d.rank,
                exact: d.exact,
                y_size: y.map(<[_]>::len),
                lemma_checks: checks,
            }
        })
        .collect::<Vec<_>>();
    let passed =
        exactness.surjective && degrees.iter().all(|d| d.exact != Some(false) && d.lemma_checks.values().all(|&ok| ok));
    let report = BundleReport {
        construction: construction.to_string(),
        context,
        surjective: exactness.surjective,
        degrees,
        passed,
    };
    if !passed {
        return Err(TransferError::VerificationFailed(Box::new(report)));
    }
    Ok(TransferBundle { input: input.clone(), output, auxiliary, report })
}

/// The flat matrix of a ℤ-linear map given on module elements: row `(b, s)`
/// is the image of `s·[b]`.
pub(crate) fn flat_matrix(
    domain: &Arc<FreeModule>,
    codomain: &Arc<FreeModule>,
    f: impl Fn(&ModuleElement) -> ModuleElement,
) -> IntMatrix {
    let rows = (0..domain.flat_dim())
        .map(|k| {
            let (b, s) = domain.flat_basis(k);
            f(&ModuleElement::single(domain, b, RingElement::basis(s))).flatten()
        })
        .collect();
    IntMatrix::from_rows(codomain.flat_dim(), rows)
}
