use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{
    assemble, check_standard_form, difference, embed, names, DecompositionContext, Draft, TransferBundle, TransferError,
};
use crate::resolution::{FreeModule, Label, ModuleElement, ModuleMap, Resolution, RingElement};
use crate::semigroup::{green_classes, is_completely_simple};

/// Lifts a resolution over `ℤH`, `H = H_e`, to one over `ℤT` with
/// `T = L¹` for the left group `L = L_e` and `F = E(L)`.
///
/// `B_0 = ℤT` and `B_m = ⊕_{i<m, x ∈ X_i} ℤT[x] ⊕ ⊕_{f ∈ F} ℤT[f]`.
pub fn left_group_lift(res_h: &Resolution, ctx: &DecompositionContext) -> Result<TransferBundle, TransferError> {
    let s = &ctx.s;
    let (l, _) = s.induced(&ctx.l)?;
    if !is_completely_simple(&l) {
        return Err(TransferError::NotALeftGroup("not completely simple".into()));
    }
    if green_classes(&l).l_classes.len() != 1 {
        return Err(TransferError::NotALeftGroup("more than one L-class".into()));
    }
    if res_h.ring().as_ref() != ctx.h_ring.as_ref() {
        return Err(TransferError::HypothesisViolation("resolution is not over ZH for the context's H".into()));
    }
    check_standard_form(res_h)?;
    let f = &ctx.left_idempotents;
    let e = ctx.e;
    let n = res_h.length();
    let x = |j: usize| res_h.generators_at(j).expect("standard form records X_j");
    let one_minus_e = difference(ctx.identity, e);
    let e_ring = RingElement::basis(e);

    let mut modules: Vec<Arc<FreeModule>> = Vec::with_capacity(n + 1);
    let mut maps = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let labels = if m == 0 {
            vec![Label::Unit]
        } else {
            let mut l: Vec<Label> =
                (0..m).rev().flat_map(|i| (0..x(i).len()).map(move |index| Label::Gen { degree: i, index })).collect();
            l.extend(f.iter().map(|&g| Label::Idem(g)));
            l
        };
        let module = FreeModule::new(ctx.t_ring.clone(), labels)?;
        let map = if m == 0 {
            ModuleMap::to_integers(module.clone(), vec![BigInt::from(1)])?
        } else {
            let target = &modules[m - 1];
            let images = module
                .labels()
                .iter()
                .map(|label| match *label {
                    Label::Gen { degree, index } => {
                        let d = m - 1 - degree;
                        if d == 0 {
                            embed(&x(m - 1)[index], target)
                        } else if d % 2 == 1 {
                            ModuleElement::labelled(target, label, one_minus_e.clone())
                        } else {
                            ModuleElement::labelled(target, label, e_ring.clone())
                        }
                    }
                    Label::Idem(g) if m == 1 => ModuleElement::single(target, 0, difference(g, ctx.identity)),
                    Label::Idem(g) if m % 2 == 1 => ModuleElement::labelled(target, label, difference(g, ctx.identity)),
                    Label::Idem(g) => ModuleElement::labelled(target, label, RingElement::basis(g)),
                    _ => unreachable!("B_m has no other labels"),
                })
                .collect();
            ModuleMap::new(module.clone(), target.clone(), images)?
        };
        modules.push(module);
        maps.push(map);
    }

    let mut ys = Vec::new();
    for m in 0..=n {
        let Some(xm) = res_h.generators_at(m) else { break };
        let bm = &modules[m];
        let mut y: Vec<ModuleElement> = xm.iter().map(|g| embed(g, bm)).collect();
        if m == 0 {
            y.extend(f.iter().map(|&g| ModuleElement::single(bm, 0, difference(ctx.identity, g))));
        } else {
            for i in (0..m).rev() {
                let coeff = if (m - 1 - i) % 2 == 0 { &one_minus_e } else { &e_ring };
                for index in 0..x(i).len() {
                    y.push(ModuleElement::labelled(bm, &Label::Gen { degree: i, index }, coeff.clone()));
                }
            }
            for &g in f {
                let q = if m % 2 == 0 { difference(ctx.identity, g) } else { RingElement::basis(g) };
                y.push(ModuleElement::labelled(bm, &Label::Idem(g), q));
            }
        }
        ys.push(y);
    }

    let mut extra = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut checks = BTreeMap::new();
        let expected = if m == 0 { 1 } else { (0..m).map(|i| x(i).len()).sum::<usize>() + f.len() };
        checks.insert("rank_formula".to_string(), modules[m].rank() == expected);
        if m > 0 {
            let extends = (0..x(m - 1).len()).all(|index| {
                let b = modules[m].label_index(&Label::Gen { degree: m - 1, index }).expect("label present");
                maps[m].images().expect("module map")[b]
                    == embed(&res_h.map(m).images().expect("module map")[index], &modules[m - 1])
            });
            checks.insert("extends_input".to_string(), extends);
        }
        extra.push(checks);
    }

    let context = BTreeMap::from([
        ("e".to_string(), s.name(e)),
        ("F".to_string(), names(s, f.iter().copied())),
        ("H".to_string(), names(s, ctx.h.iter().copied())),
        ("T".to_string(), names(s, ctx.t.iter().copied())),
    ]);
    let draft = Draft { ring: ctx.t_ring.clone(), modules, maps, ys, auxiliary: Vec::new(), extra };
    assemble("left_group_lift", context, res_h, draft)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{
        apply_mutation, mutation_sites, resolve, resolve_monoid, verify_exact, with_top_generators,
    };
    use crate::semigroup::*;

    fn lift(l: &FiniteSemigroup, n: usize) -> (TransferBundle, DecompositionContext) {
        let ctx = DecompositionContext::new(Arc::new(adjoin_identity(l)), None).unwrap();
        let r = with_top_generators(&resolve(ctx.h_ring.clone(), n, None).unwrap()).unwrap();
        (left_group_lift(&r, &ctx).unwrap(), ctx)
    }

    #[test]
    fn group_uses_the_degenerate_first_branch() {
        let (b, ctx) = lift(&cyclic_group(2), 3);
        assert_eq!(ctx.left_idempotents, vec![ctx.e]);
        let b1 = b.output.module(1);
        let k = b1.label_index(&Label::Idem(ctx.e)).unwrap();
        assert_eq!(b.output.map(1).images().unwrap()[k].coeff(0), &difference(ctx.e, ctx.identity));
        let b3 = b.output.module(3);
        let k = b3.label_index(&Label::Idem(ctx.e)).unwrap();
        let im = &b.output.map(3).images().unwrap()[k];
        assert_eq!(im.coeff_of(&Label::Idem(ctx.e)), difference(ctx.e, ctx.identity));
    }

    #[test]
    fn z2_times_left_zero_two() {
        let l = left_group(&cyclic_group(2), 2);
        let (b, _) = lift(&l, 3);
        assert!(b.report.passed);
        assert!(verify_exact(&resolve_monoid(&Arc::new(adjoin_identity(&l)), 3).unwrap()).all_pass());
    }

    #[test]
    fn mutations_of_the_output_are_detected() {
        let (b, _) = lift(&left_group(&cyclic_group(2), 2), 3);
        for k in 1..3 {
            for site in mutation_sites(&b.output, k) {
                let failing = verify_exact(&apply_mutation(&b.output, site)).failing_degrees();
                assert!(!failing.is_empty() && failing.iter().all(|&d| d + 1 == k || d == k), "{site:?}");
            }
        }
    }

    #[test]
    fn trivial_group_times_left_zero_three() {
        let (b, ctx) = lift(&left_group(&trivial_monoid(), 3), 4);
        assert_eq!(ctx.left_idempotents.len(), 3);
        assert!(b.input.generators().iter().all(Vec::is_empty));
        assert_eq!(b.output.ranks(), vec![1, 3, 3, 3, 3]);
    }
}
