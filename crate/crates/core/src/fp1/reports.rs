use std::sync::Arc;

use serde::Serialize;

use super::Fp1Error;
use crate::rees::{make_strong_semilattice, StrongSemilatticeData};
use crate::resolution::{resolve, resolve_monoid, verify_exact, with_top_generators, MonoidRing};
use crate::semigroup::{monoid_completion, FiniteSemigroup};
use crate::transfer::ideal_lift;

/// Resolving a strong semilattice of monoids from its least component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemilatticeFpReport {
    pub length: usize,
    pub order: usize,
    pub component_count: usize,
    /// Whether a fresh identity was adjoined because `Y` has no greatest
    /// element carrying the identity of `S`.
    pub identity_adjoined: bool,
    pub minimum: usize,
    pub minimum_order: usize,
    pub component_ranks: Vec<usize>,
    pub component_exact: bool,
    pub lift_ranks: Vec<usize>,
    pub lift_exact: bool,
    pub lift_checks_passed: bool,
    pub direct_ranks: Vec<usize>,
    pub direct_exact: bool,
    /// The lifted and direct resolutions receive the same exactness verdict.
    pub verdicts_agree: bool,
    pub passed: bool,
}

/// Resolves the least component `A_e` to length `n`, lifts the result to `S`
/// through the ideal `A_e`, and compares with a direct resolution of `S`.
pub fn semilattice_fp_report(data: &StrongSemilatticeData, n: usize) -> Result<SemilatticeFpReport, Fp1Error> {
    let (built, sl) = make_strong_semilattice(data)?;
    let s = Arc::new(monoid_completion(&built));
    let e = sl.minimum().ok_or_else(|| Fp1Error::HypothesisViolation("semilattice has no least element".into()))?;
    let bottom = sl.component(e);
    let ring = Arc::new(MonoidRing::sub(s.clone(), &bottom, sl.identity_of(e))?);
    let res_t = with_top_generators(&resolve(ring, n, None)?)?;
    let component_exact = verify_exact(&res_t).all_pass();
    let bundle = ideal_lift(&res_t)?;
    let lift_exact = verify_exact(&bundle.output).all_pass();
    let direct = resolve_monoid(&s, n)?;
    let direct_exact = verify_exact(&direct).all_pass();
    Ok(SemilatticeFpReport {
        length: n,
        order: s.order(),
        component_count: sl.component_count(),
        identity_adjoined: s.order() != built.order(),
        minimum: e,
        minimum_order: bottom.len(),
        component_ranks: res_t.ranks(),
        component_exact,
        lift_ranks: bundle.output.ranks(),
        lift_exact,
        lift_checks_passed: bundle.report.passed,
        direct_ranks: direct.ranks(),
        direct_exact,
        verdicts_agree: lift_exact == direct_exact,
        passed: component_exact && lift_exact && bundle.report.passed && direct_exact,
    })
}

/// One side of a two-sided run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub ranks: Vec<usize>,
    pub failing_degrees: Vec<usize>,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiFpReport {
    pub length: usize,
    pub order: usize,
    pub commutative: bool,
    pub left: SideReport,
    /// The left run on the opposite monoid.
    pub right: SideReport,
    pub sides_identical: bool,
    pub bi_fp: bool,
}

fn side(s: FiniteSemigroup, n: usize) -> Result<SideReport, Fp1Error> {
    let r = resolve_monoid(&Arc::new(s), n)?;
    let report = verify_exact(&r);
    Ok(SideReport { ranks: r.ranks(), failing_degrees: report.failing_degrees(), exact: report.all_pass() })
}

/// Resolves `s` and its opposite to length `n`.
pub fn bi_fp_report(s: &FiniteSemigroup, n: usize) -> Result<BiFpReport, Fp1Error> {
    s.require_identity()?;
    let left = side(s.clone(), n)?;
    let right = side(s.opposite(), n)?;
    Ok(BiFpReport {
        length: n,
        order: s.order(),
        commutative: s.is_commutative(),
        sides_identical: left == right,
        bi_fp: left.exact && right.exact,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::semigroup::*;

    #[test]
    fn single_component_is_the_degenerate_lift() {
        let data = StrongSemilatticeData { components: vec![cyclic_group(3)], order: vec![], homs: BTreeMap::new() };
        let r = semilattice_fp_report(&data, 3).unwrap();
        assert!(r.passed && !r.identity_adjoined);
        let x = &r.component_ranks;
        assert_eq!(r.lift_ranks, vec![1, x[1] + 1, x[1] + x[2] + 1, x[1] + x[2] + x[3] + 1]);
    }

    #[test]
    fn two_chain_of_z2() {
        let z2 = cyclic_group(2);
        let data = StrongSemilatticeData {
            components: vec![z2.clone(), z2],
            order: vec![(1, 0)],
            homs: [((0, 1), vec![0, 1])].into(),
        };
        let r = semilattice_fp_report(&data, 3).unwrap();
        assert!(r.passed && r.verdicts_agree);
        assert_eq!((r.minimum, r.minimum_order, r.order), (1, 2, 4));
    }

    #[test]
    fn diamond_of_trivial_groups() {
        let t = trivial_monoid();
        let data = StrongSemilatticeData {
            components: vec![t.clone(), t.clone(), t.clone(), t],
            order: vec![(1, 0), (2, 0), (3, 1), (3, 2)],
            homs: BTreeMap::new(),
        };
        let r = semilattice_fp_report(&data, 3).unwrap();
        assert!(r.passed && r.verdicts_agree);
        assert_eq!(r.minimum, 3);
        assert_eq!(r.component_ranks, vec![1, 0, 0, 0]);
        assert_eq!(r.lift_ranks, vec![1, 1, 1, 1]);
    }

    #[test]
    fn semilattice_without_top_gets_an_identity() {
        let t = trivial_monoid();
        let data = StrongSemilatticeData {
            components: vec![t.clone(), t.clone(), t],
            order: vec![(2, 0), (2, 1)],
            homs: BTreeMap::new(),
        };
        let r = semilattice_fp_report(&data, 2).unwrap();
        assert!(r.identity_adjoined && r.passed);
    }

    #[test]
    fn commutative_sides_are_identical() {
        for s in [cyclic_group(3), klein_four(), adjoin_zero(&cyclic_group(2))] {
            let r = bi_fp_report(&s, 3).unwrap();
            assert!(r.commutative && r.sides_identical && r.bi_fp);
        }
    }

    #[test]
    fn left_zero_adjoined_resolves_on_both_sides() {
        for s in [adjoin_identity(&left_zero(2)), adjoin_identity(&left_zero(3))] {
            let r = bi_fp_report(&s, 3).unwrap();
            assert!(r.left.exact && r.right.exact && r.bi_fp);
            assert!(!r.commutative);
            let json = serde_json::to_value(&r).unwrap();
            assert!(json.get("left").is_some() && json.get("right").is_some());
        }
    }

    #[test]
    fn requires_a_monoid() {
        assert!(bi_fp_report(&left_zero(2), 1).is_err());
    }
}
