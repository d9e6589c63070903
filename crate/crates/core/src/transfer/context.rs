use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::TransferError;
use crate::resolution::{ModuleError, MonoidRing, RingElement};
use crate::semigroup::{green_classes, is_completely_simple, ElementSet, FiniteSemigroup};

/// Notation for `S = U¹` with `U` completely simple and a distinguished
/// idempotent `e ∈ U`.
///
/// `descent_idempotents` is `(E(U) \ {e}) ∩ R_e`, the set used when passing
/// from `S` to `T = L_e ∪ {1}`; `left_idempotents` is `E(L_e)`, the set used
/// when passing from `H_e` to `T`.
#[derive(Debug, Clone)]
pub struct DecompositionContext {
    pub s: Arc<FiniteSemigroup>,
    pub identity: usize,
    pub u: ElementSet,
    pub e: usize,
    pub l: ElementSet,
    pub r: ElementSet,
    pub h: ElementSet,
    pub t: ElementSet,
    pub descent_idempotents: Vec<usize>,
    pub left_idempotents: Vec<usize>,
    /// `L_f` for each `f` in `descent_idempotents`.
    pub l_classes: BTreeMap<usize, ElementSet>,
    pub r_class_count: usize,
    pub l_class_count: usize,
    pub s_ring: Arc<MonoidRing>,
    pub t_ring: Arc<MonoidRing>,
    pub h_ring: Arc<MonoidRing>,
}

/// The choices a context was built with, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextSummary {
    pub e: String,
    pub descent_idempotents: Vec<String>,
    pub left_idempotents: Vec<String>,
    pub t: Vec<String>,
    pub h: Vec<String>,
    pub r_class_count: usize,
    pub l_class_count: usize,
}

impl DecompositionContext {
    /// Builds the context for a monoid `S` whose non-identity elements form a
    /// completely simple semigroup `U`. Without an explicit choice, `e` is the
    /// least idempotent of `U`.
    pub fn new(s: Arc<FiniteSemigroup>, e: Option<usize>) -> Result<Self, TransferError> {
        let identity = s.identity().ok_or(ModuleError::NotAMonoid)?;
        let u: ElementSet = s.elements().filter(|&x| x != identity).collect();
        let not_cs = || TransferError::HypothesisViolation("the monoid is not U¹ for a completely simple U".into());
        if u.is_empty() || !s.is_closed(&u) {
            return Err(not_cs());
        }
        let (u_semigroup, _) = s.induced(&u)?;
        if !is_completely_simple(&u_semigroup) {
            return Err(not_cs());
        }
        let e = match e {
            Some(e) => {
                if !u.contains(&e) || !s.is_idempotent(e) {
                    return Err(TransferError::HypothesisViolation(format!(
                        "{} is not an idempotent of U",
                        s.name(e.min(s.order() - 1))
                    )));
                }
                e
            }
            None => *u.iter().find(|&&x| s.is_idempotent(x)).expect("completely simple semigroups have idempotents"),
        };
        let green = green_classes(&s);
        let set = |v: &[usize]| -> ElementSet { v.iter().copied().collect() };
        let l = set(green.l_class_of(e));
        let r = set(green.r_class_of(e));
        let h = set(green.h_class_of(e));
        let descent_idempotents: Vec<usize> = r.iter().copied().filter(|&x| x != e && s.is_idempotent(x)).collect();
        let left_idempotents: Vec<usize> = l.iter().copied().filter(|&x| s.is_idempotent(x)).collect();
        let l_classes: BTreeMap<usize, ElementSet> =
            descent_idempotents.iter().map(|&f| (f, set(green.l_class_of(f)))).collect();
        let r_class_count = green.r_classes.iter().filter(|c| u.contains(&c[0])).count();
        let l_class_count = green.l_classes.iter().filter(|c| u.contains(&c[0])).count();
        if descent_idempotents.len() + 1 != l_class_count {
            return Err(TransferError::HypothesisViolation("idempotents of R_e do not index the L-classes".into()));
        }
        let mut t = l.clone();
        t.insert(identity);
        let s_ring = Arc::new(MonoidRing::full(s.clone())?);
        let t_ring = Arc::new(MonoidRing::sub(s.clone(), &t, identity)?);
        let h_ring = Arc::new(MonoidRing::sub(s.clone(), &h, e)?);
        Ok(DecompositionContext {
            s,
            identity,
            u,
            e,
            l,
            r,
            h,
            t,
            descent_idempotents,
            left_idempotents,
            l_classes,
            r_class_count,
            l_class_count,
            s_ring,
            t_ring,
            h_ring,
        })
    }

    pub fn summary(&self) -> ContextSummary {
        let names = |xs: &mut dyn Iterator<Item = usize>| xs.map(|x| self.s.name(x)).collect::<Vec<_>>();
        ContextSummary {
            e: self.s.name(self.e),
            descent_idempotents: names(&mut self.descent_idempotents.iter().copied()),
            left_idempotents: names(&mut self.left_idempotents.iter().copied()),
            t: names(&mut self.t.iter().copied()),
            h: names(&mut self.h.iter().copied()),
            r_class_count: self.r_class_count,
            l_class_count: self.l_class_count,
        }
    }

    /// The `f` with `x ∈ L_f`, or `None` when `x ∈ T`.
    pub fn class_of(&self, x: usize) -> Option<usize> {
        if self.t.contains(&x) {
            return None;
        }
        self.l_classes.iter().find(|(_, c)| c.contains(&x)).map(|(&f, _)| f)
    }
}

/// Splits `λ ∈ ℤS` as `λ^{(1)} + Σ_f λ^{(f)}` with `λ^{(1)}` supported on `T`
/// and `λ^{(f)}` on `L_f`. Every `f` appears in the map, possibly with zero.
pub fn decompose_ring_element(
    lambda: &RingElement,
    ctx: &DecompositionContext,
) -> (RingElement, BTreeMap<usize, RingElement>) {
    let mut one = RingElement::zero();
    let mut parts: BTreeMap<usize, RingElement> =
        ctx.descent_idempotents.iter().map(|&f| (f, RingElement::zero())).collect();
    for (x, c) in lambda.terms() {
        match ctx.class_of(x) {
            None => one.add_term(x, c.clone()),
            Some(f) => parts.get_mut(&f).expect("every class is listed").add_term(x, c.clone()),
        }
    }
    (one, parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rees::{make_rees, ReesMatrixData};
    use crate::semigroup::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx_of(u: &FiniteSemigroup) -> DecompositionContext {
        DecompositionContext::new(Arc::new(adjoin_identity(u)), None).unwrap()
    }

    #[test]
    fn rectangular_band_context() {
        let ctx = ctx_of(&rectangular_band(2, 2));
        assert_eq!(ctx.e, 0);
        assert_eq!(ctx.descent_idempotents.len(), 1);
        assert_eq!(ctx.left_idempotents.len(), 2);
        assert_eq!(ctx.t.len(), 3);
        assert_eq!((ctx.r_class_count, ctx.l_class_count), (2, 2));
        assert!(ctx.t_ring.is_subring_of(&ctx.s_ring));
    }

    #[test]
    fn group_context_has_no_descent_idempotents() {
        let ctx = ctx_of(&cyclic_group(3));
        assert!(ctx.descent_idempotents.is_empty());
        assert_eq!(ctx.t.len(), 4);
        assert_eq!(ctx.h.len(), 3);
    }

    #[test]
    fn rejects_non_completely_simple() {
        let s = Arc::new(adjoin_identity(&adjoin_zero(&cyclic_group(2))));
        assert!(matches!(DecompositionContext::new(s, None), Err(TransferError::HypothesisViolation(_))));
        assert!(DecompositionContext::new(Arc::new(cyclic_group(2)), None).is_err());
    }

    #[test]
    fn decomposition_partitions_support() {
        let z2 = cyclic_group(2);
        let data = ReesMatrixData::new(z2, 2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let ctx = ctx_of(&make_rees(&data).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let lambda =
                RingElement::from_terms((0..6).map(|_| (rng.gen_range(0..ctx.s.order()), rng.gen_range(-4..5))));
            let (one, parts) = decompose_ring_element(&lambda, &ctx);
            assert!(one.support().all(|x| ctx.t.contains(&x)));
            let mut sum = one.clone();
            for (f, p) in &parts {
                assert!(p.support().all(|x| ctx.l_classes[f].contains(&x)));
                sum = sum.add(p);
            }
            assert_eq!(sum, lambda);
        }
        let on_t = RingElement::from_terms(ctx.t.iter().map(|&x| (x, 2)));
        let (one, parts) = decompose_ring_element(&on_t, &ctx);
        assert_eq!(one, on_t);
        assert!(parts.values().all(RingElement::is_zero));
        let f = ctx.descent_idempotents[0];
        let (one, parts) = decompose_ring_element(&RingElement::basis(f), &ctx);
        assert!(one.is_zero());
        assert_eq!(parts[&f], RingElement::basis(f));
    }
}
