use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{assemble, check_standard_form, difference, embed, names, Draft, TransferBundle, TransferError};
use crate::resolution::{
    FreeModule, Label, ModuleElement, ModuleError, ModuleMap, MonoidRing, Resolution, RingElement,
};
use crate::semigroup::{is_two_sided_ideal, two_sided_identity_of};

/// Lifts a resolution over `ℤT`, for an ideal `T` of a monoid `S` with
/// two-sided identity `e`, to one over `ℤS`.
///
/// The input ring must be `ℤT` built over `S` itself. The output has
/// `B_0 = ℤS` and `B_i = ⊕_{j<i, x ∈ X_j} ℤS[x] ⊕ ℤS[e]`.
pub fn ideal_lift(res_t: &Resolution) -> Result<TransferBundle, TransferError> {
    let ring_t = res_t.ring();
    let s = ring_t.ambient().clone();
    let identity = s.identity().ok_or(ModuleError::NotAMonoid)?;
    let t = ring_t.member_set();
    if !is_two_sided_ideal(&s, &t) {
        return Err(TransferError::NotAnIdeal);
    }
    let e = ring_t.unit();
    if two_sided_identity_of(&s, &t) != Some(e) {
        return Err(TransferError::NoTwoSidedIdentity);
    }
    check_standard_form(res_t)?;
    let ring_s = Arc::new(MonoidRing::full(s.clone())?);
    let n = res_t.length();
    let x = |j: usize| res_t.generators_at(j).expect("standard form records X_j");
    let one_minus_e = difference(identity, e);
    let e_ring = RingElement::basis(e);

    let mut modules: Vec<Arc<FreeModule>> = Vec::with_capacity(n + 1);
    let mut maps = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let labels = if i == 0 {
            vec![Label::Unit]
        } else {
            let mut l: Vec<Label> =
                (0..i).rev().flat_map(|j| (0..x(j).len()).map(move |index| Label::Gen { degree: j, index })).collect();
            l.push(Label::Idem(e));
            l
        };
        let module = FreeModule::new(ring_s.clone(), labels)?;
        let map = if i == 0 {
            ModuleMap::to_integers(module.clone(), vec![BigInt::from(1)])?
        } else {
            let target = &modules[i - 1];
            let images = module
                .labels()
                .iter()
                .map(|label| match *label {
                    Label::Gen { degree, index } => {
                        let d = i - 1 - degree;
                        if d == 0 {
                            embed(&x(i - 1)[index], target)
                        } else if d % 2 == 1 {
                            ModuleElement::labelled(target, label, one_minus_e.clone())
                        } else {
                            ModuleElement::labelled(target, label, e_ring.clone())
                        }
                    }
                    Label::Idem(_) if i % 2 == 0 => ModuleElement::labelled(target, label, e_ring.clone()),
                    Label::Idem(_) if i == 1 => ModuleElement::single(target, 0, one_minus_e.clone()),
                    Label::Idem(_) => ModuleElement::labelled(target, label, one_minus_e.clone()),
                    _ => unreachable!("B_i has no other labels"),
                })
                .collect();
            ModuleMap::new(module.clone(), target.clone(), images)?
        };
        modules.push(module);
        maps.push(map);
    }

    let mut ys = Vec::new();
    for k in 0..=n {
        let Some(xk) = res_t.generators_at(k) else { break };
        let bk = &modules[k];
        let mut y: Vec<ModuleElement> = xk.iter().map(|g| embed(g, bk)).collect();
        if k == 0 {
            y.push(ModuleElement::single(bk, 0, one_minus_e.clone()));
        } else {
            for j in (0..k).rev() {
                let coeff = if (k - 1 - j) % 2 == 0 { &one_minus_e } else { &e_ring };
                for index in 0..x(j).len() {
                    y.push(ModuleElement::labelled(bk, &Label::Gen { degree: j, index }, coeff.clone()));
                }
            }
            let z = if k % 2 == 1 { &e_ring } else { &one_minus_e };
            y.push(ModuleElement::labelled(bk, &Label::Idem(e), z.clone()));
        }
        ys.push(y);
    }

    let mut extra = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut checks = BTreeMap::new();
        let expected = if i == 0 { 1 } else { (0..i).map(|j| x(j).len()).sum::<usize>() + 1 };
        checks.insert("rank_formula".to_string(), modules[i].rank() == expected);
        if i > 0 {
            // ∂′_i restricted to A_i ⊆ B_i is ∂_i
            let extends = (0..x(i - 1).len()).all(|index| {
                let label = Label::Gen { degree: i - 1, index };
                let b = modules[i].label_index(&label).expect("label present");
                let image = &maps[i].images().expect("module map")[b];
                *image == embed(&res_t.map(i).images().expect("module map")[index], &modules[i - 1])
            });
            checks.insert("extends_input".to_string(), extends);
        }
        extra.push(checks);
    }

    let context = BTreeMap::from([("e".to_string(), s.name(e)), ("T".to_string(), names(&s, t.iter().copied()))]);
    let draft = Draft { ring: ring_s, modules, maps, ys, auxiliary: Vec::new(), extra };
    assemble("ideal_lift", context, res_t, draft)
}
