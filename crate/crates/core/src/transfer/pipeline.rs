use std::sync::Arc;

use serde::Serialize;

use super::context::ContextSummary;
use super::{cs_descend, left_group_lift, DecompositionContext, TransferBundle, TransferError};
use crate::resolution::{resolve, resolve_monoid, verify_exact, with_top_generators};
use crate::semigroup::{adjoin_identity, is_completely_simple, FiniteSemigroup};

/// Rank data of the two routes from a completely simple `U` to `T = L¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub length: usize,
    pub u_order: usize,
    pub group_order: usize,
    pub context: ContextSummary,
    pub group_ranks: Vec<usize>,
    pub group_exact: bool,
    pub lift_ranks: Vec<usize>,
    pub lift_exact: bool,
    pub monoid_ranks: Vec<usize>,
    pub monoid_exact: bool,
    pub descent_ranks: Vec<usize>,
    pub descent_exact: bool,
    pub generators_upgraded: bool,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub report: PipelineReport,
    pub lift: TransferBundle,
    pub descent: TransferBundle,
}

/// Resolves `H` and lifts it to `T = L¹`; resolves `S = U¹` and descends it
/// to `T`; checks every resulting resolution.
pub fn completely_simple_pipeline(u: &FiniteSemigroup, n: usize) -> Result<PipelineRun, TransferError> {
    if !is_completely_simple(u) {
        return Err(TransferError::HypothesisViolation("U is not completely simple".into()));
    }
    let s = Arc::new(adjoin_identity(u));
    let ctx = DecompositionContext::new(s.clone(), None)?;

    let res_h = with_top_generators(&resolve(ctx.h_ring.clone(), n, None)?)?;
    let group_exact = verify_exact(&res_h).all_pass();
    let lift = left_group_lift(&res_h, &ctx)?;

    let res_s = with_top_generators(&resolve_monoid(&s, n)?)?;
    let monoid_exact = verify_exact(&res_s).all_pass();
    let descent = cs_descend(&res_s, &ctx)?;

    let lift_exact = verify_exact(&lift.output).all_pass();
    let descent_exact = verify_exact(&descent.output).all_pass();
    let generators_upgraded = descent.report.context.get("generators upgraded to ZT").is_some_and(|v| v == "true");
    let report = PipelineReport {
        length: n,
        u_order: u.order(),
        group_order: ctx.h.len(),
        context: ctx.summary(),
        group_ranks: res_h.ranks(),
        group_exact,
        lift_ranks: lift.output.ranks(),
        lift_exact,
        monoid_ranks: res_s.ranks(),
        monoid_exact,
        descent_ranks: descent.output.ranks(),
        descent_exact,
        generators_upgraded,
        passed: group_exact && lift_exact && monoid_exact && descent_exact,
    };
    Ok(PipelineRun { report, lift, descent })
}
