//! Inputs shared by the benchmarks.

use std::sync::Arc;

use monores::catalog::catalog_entry;
use monores::lattice::IntMatrix;
use monores::resolution::{resolve_monoid, with_top_generators, z_matrix_of, Resolution};
use monores::semigroup::{adjoin_identity, idempotents, minimal_ideal, FiniteSemigroup};
use monores::transfer::DecompositionContext;

/// A built-in catalog entry with an identity adjoined when it lacks one.
pub fn catalog_monoid(name: &str) -> Arc<FiniteSemigroup> {
    Arc::new(catalog_entry(name).expect("catalog entry").monoid())
}

/// `U¹` for a completely simple catalog entry `U`.
pub fn u_one(name: &str) -> Arc<FiniteSemigroup> {
    Arc::new(adjoin_identity(&catalog_entry(name).expect("catalog entry").semigroup))
}

/// A resolution with generating sets recorded in every degree, as the
/// transfers expect.
pub fn standard_resolution(s: &Arc<FiniteSemigroup>, n: usize) -> Resolution {
    with_top_generators(&resolve_monoid(s, n).expect("resolves")).expect("top generators")
}

pub fn context(s: &Arc<FiniteSemigroup>) -> DecompositionContext {
    DecompositionContext::new(s.clone(), None).expect("completely simple context")
}

/// The flattened integer matrix of the top boundary map of a resolution.
pub fn boundary_matrix(s: &Arc<FiniteSemigroup>, n: usize) -> IntMatrix {
    let r = resolve_monoid(s, n).expect("resolves");
    z_matrix_of(r.map(n))
}

/// The least idempotent of the minimal ideal.
pub fn minimal_ideal_idempotent(s: &FiniteSemigroup) -> usize {
    let j = minimal_ideal(s);
    *idempotents(s).iter().find(|x| j.contains(x)).expect("the minimal ideal has an idempotent")
}
