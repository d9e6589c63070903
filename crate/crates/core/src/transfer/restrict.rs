use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{assemble, names, Draft, TransferBundle, TransferError};
use crate::resolution::{
    FreeModule, Label, ModuleElement, ModuleError, ModuleMap, MonoidRing, Resolution, RingElement,
};
use crate::semigroup::{
    green_classes, is_completely_simple, is_right_ideal, minimal_ideal, right_zero, ElementSet, FiniteSemigroup,
};

/// A right ideal `R` of a monoid `S` together with an isomorphism
/// `R ≅ N × B` for a monoid `N` and a right zero semigroup `B`, given by the
/// coordinates of each element of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDecomposition {
    pub right_ideal: ElementSet,
    pub monoid: FiniteSemigroup,
    pub right_zero: FiniteSemigroup,
    pub coords: BTreeMap<usize, (usize, usize)>,
}

/// The validated data: `M = {(n, y)}`, its identity `e = (1, y)` and
/// `F = {(1, b)}` in order of `b`.
struct Split {
    members: ElementSet,
    e: usize,
    f: Vec<usize>,
    element: BTreeMap<(usize, usize), usize>,
    y: usize,
}

impl ProductDecomposition {
    fn validate(&self, s: &FiniteSemigroup, y: usize) -> Result<Split, TransferError> {
        let fail = |m: &str| TransferError::IsoCheckFailed(m.to_string());
        s.check_subset(&self.right_ideal)?;
        if !is_right_ideal(s, &self.right_ideal) {
            return Err(TransferError::NotARightIdeal);
        }
        let b = &self.right_zero;
        if !b.elements().all(|p| b.elements().all(|q| b.mul(p, q) == q)) {
            return Err(TransferError::NotRightZero);
        }
        let one = self.monoid.identity().ok_or_else(|| fail("first factor has no identity"))?;
        if y >= b.order() {
            return Err(fail("chosen element of B is out of range"));
        }
        if self.coords.keys().copied().collect::<ElementSet>() != self.right_ideal {
            return Err(fail("coordinates are not given exactly on R"));
        }
        let mut element = BTreeMap::new();
        for (&r, &(n, k)) in &self.coords {
            if n >= self.monoid.order() || k >= b.order() || element.insert((n, k), r).is_some() {
                return Err(fail("coordinates are not a bijection onto N × B"));
            }
        }
        if element.len() != self.monoid.order() * b.order() {
            return Err(fail("coordinates are not a bijection onto N × B"));
        }
        for (&r, &(n, _)) in &self.coords {
            for (&q, &(m, l)) in &self.coords {
                if self.coords[&s.mul(r, q)] != (self.monoid.mul(n, m), l) {
                    return Err(fail("coordinates do not preserve products"));
                }
            }
        }
        let members = self.monoid.elements().map(|n| element[&(n, y)]).collect();
        let e = element[&(one, y)];
        let f = b.elements().map(|k| element[&(one, k)]).collect();
        let e_s: ElementSet = s.elements().map(|x| s.mul(e, x)).collect();
        if e_s != self.right_ideal {
            return Err(fail("eS differs from R"));
        }
        Ok(Split { members, e, f, element, y })
    }
}

/// Applies `Φ(A) = eA` to every term of `res_s`, giving a resolution over
/// `ℤM` with basis `F·X` in each degree.
///
/// Each coefficient `r ∈ ℤR` of a restricted boundary is rewritten through
/// the unique factorisation `r = m·f`, `m ∈ M`, `f ∈ F`. The recorded
/// generating sets become `F·X_k`.
pub fn phi_restrict(
    res_s: &Resolution,
    decomposition: &ProductDecomposition,
    y: usize,
) -> Result<TransferBundle, TransferError> {
    let s = res_s.ring().ambient().clone();
    if res_s.ring().size() != s.order() {
        return Err(ModuleError::RingMismatch.into());
    }
    let split = decomposition.validate(&s, y)?;
    let ring_m = Arc::new(MonoidRing::sub(s.clone(), &split.members, split.e)?);
    let width = split.f.len();

    // rewrites λ·[k] with λ supported on R as Σ_b λ_b·(f_b[k])
    let restrict = |v: &ModuleElement, target: &Arc<FreeModule>| -> ModuleElement {
        let mut coeffs = vec![RingElement::zero(); target.rank()];
        for (k, c) in v.coeffs().iter().enumerate() {
            for (r, z) in c.terms() {
                let (n, b) = decomposition.coords[&r];
                coeffs[k * width + b].add_term(split.element[&(n, split.y)], z.clone());
            }
        }
        let mut out = ModuleElement::zero(target);
        for (b, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&ModuleElement::single(target, b, c)).expect("same module");
            }
        }
        out
    };
    // f_b[k] in the output as an element of A
    let unrestrict = |v: &ModuleElement, source: &Arc<FreeModule>| -> ModuleElement {
        let mut out = ModuleElement::zero(source);
        for (idx, c) in v.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let coeff = c.mul_in(&s, &RingElement::basis(split.f[idx % width]));
                out = out.add(&ModuleElement::single(source, idx / width, coeff)).expect("same module");
            }
        }
        out
    };

    let n = res_s.length();
    let mut modules: Vec<Arc<FreeModule>> = Vec::with_capacity(n + 1);
    let mut maps = Vec::with_capacity(n + 1);
    let mut extra = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let a = res_s.module(i);
        let labels = a
            .labels()
            .iter()
            .flat_map(|l| split.f.iter().map(move |&by| Label::Translate { by, base: Box::new(l.clone()) }))
            .collect();
        let module = FreeModule::new(ring_m.clone(), labels)?;
        let mut checks = BTreeMap::new();
        checks.insert("rank_multiplied".to_string(), module.rank() == a.rank() * width);
        let map = match res_s.map(i).images() {
            None => {
                let eps = res_s.map(i);
                let images = (0..module.rank())
                    .map(|idx| {
                        let fb = ModuleElement::single(a, idx / width, RingElement::basis(split.f[idx % width]));
                        match eps.apply(&fb) {
                            Ok(crate::resolution::MapValue::Integer(v)) => v,
                            _ => BigInt::from(0),
                        }
                    })
                    .collect();
                ModuleMap::to_integers(module.clone(), images)?
            }
            Some(images) => {
                let target = &modules[i - 1];
                let new_images: Vec<ModuleElement> = (0..module.rank())
                    .map(|idx| restrict(&images[idx / width].act(&RingElement::basis(split.f[idx % width])), target))
                    .collect();
                let faithful = new_images.iter().enumerate().all(|(idx, im)| {
                    unrestrict(im, res_s.module(i - 1))
                        == images[idx / width].act(&RingElement::basis(split.f[idx % width]))
                });
                checks.insert("restriction_of_input".to_string(), faithful);
                ModuleMap::new(module.clone(), target.clone(), new_images)?
            }
        };
        modules.push(module);
        maps.push(map);
        extra.push(checks);
    }

    let ys = res_s
        .generators()
        .iter()
        .enumerate()
        .map(|(k, xk)| {
            xk.iter()
                .flat_map(|x| split.f.iter().map(|&fb| restrict(&x.act(&RingElement::basis(fb)), &modules[k])))
                .collect()
        })
        .collect();

    let context = BTreeMap::from([
        ("e".to_string(), s.name(split.e)),
        ("M".to_string(), names(&s, split.members.iter().copied())),
        ("F".to_string(), names(&s, split.f.iter().copied())),
        ("|B|".to_string(), width.to_string()),
    ]);
    let draft = Draft { ring: ring_m, modules, maps, ys, auxiliary: Vec::new(), extra };
    assemble("phi_restrict", context, res_s, draft)
}

/// Restricts a resolution of `S` to the maximal subgroup `H_e` for an
/// idempotent `e` of a completely simple minimal ideal, through
/// `eS ≅ H_e × (E(S) ∩ eS)`.
pub fn maximal_subgroup_restrict(res_s: &Resolution, e: usize) -> Result<TransferBundle, TransferError> {
    let s = res_s.ring().ambient().clone();
    s.check_element(e)?;
    let u = minimal_ideal(&s);
    let (u_semigroup, _) = s.induced(&u)?;
    if !is_completely_simple(&u_semigroup) {
        return Err(TransferError::HypothesisViolation("minimal ideal is not completely simple".into()));
    }
    if !u.contains(&e) || !s.is_idempotent(e) {
        return Err(TransferError::HypothesisViolation(format!(
            "{} is not an idempotent of the minimal ideal",
            s.name(e)
        )));
    }
    let green = green_classes(&s);
    let r: ElementSet = s.elements().map(|x| s.mul(e, x)).collect();
    let h: ElementSet = green.h_class_of(e).iter().copied().collect();
    let f: Vec<usize> = r.iter().copied().filter(|&x| s.is_idempotent(x)).collect();
    let (group, embedding) = s.induced(&h)?;
    let position = |x: usize| embedding.iter().position(|&y| y == x).expect("element of H");
    // r = (r·e)·f with f the idempotent of R_e in the L-class of r
    let coords = r
        .iter()
        .map(|&x| {
            let b = f.iter().position(|&g| green.l_of[g] == green.l_of[x]).expect("each L-class meets R_e in a group");
            (x, (position(s.mul(x, e)), b))
        })
        .collect();
    let decomposition = ProductDecomposition { right_ideal: r, monoid: group, right_zero: right_zero(f.len()), coords };
    let y = f.iter().position(|&g| g == e).expect("e is in F");
    let mut bundle = phi_restrict(res_s, &decomposition, y)?;
    bundle.report.construction = "maximal_subgroup_restrict".into();
    let l_count = green.l_classes.iter().filter(|c| u.contains(&c[0])).count();
    bundle.report.context.insert("L-classes of minimal ideal".into(), l_count.to_string());
    bundle.report.context.insert("H".into(), names(&s, h.iter().copied()));
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rees::{make_rees, ReesMatrixData};
    use crate::resolution::{resolve_monoid, verify_exact, with_top_generators};
    use crate::semigroup::*;

    fn resolved(s: FiniteSemigroup, n: usize) -> Resolution {
        with_top_generators(&resolve_monoid(&Arc::new(s), n).unwrap()).unwrap()
    }

    #[test]
    fn rectangular_band_doubles_ranks() {
        let r = resolved(adjoin_identity(&rectangular_band(2, 2)), 3);
        let b = maximal_subgroup_restrict(&r, 0).unwrap();
        let doubled: Vec<usize> = r.ranks().iter().map(|k| 2 * k).collect();
        assert_eq!(b.output.ranks(), doubled);
        assert_eq!(b.output.ring().size(), 1);
    }

    #[test]
    fn any_idempotent_of_the_minimal_ideal_works() {
        let r = resolved(adjoin_identity(&rectangular_band(2, 2)), 2);
        for e in 0..4 {
            assert!(verify_exact(&maximal_subgroup_restrict(&r, e).unwrap().output).all_pass());
        }
        assert!(matches!(maximal_subgroup_restrict(&r, 4), Err(TransferError::HypothesisViolation(_))));
    }

    #[test]
    fn rees_over_z2_gives_z2_resolution() {
        let data = ReesMatrixData::new(cyclic_group(2), 2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let r = resolved(adjoin_identity(&make_rees(&data).unwrap()), 2);
        let b = maximal_subgroup_restrict(&r, 0).unwrap();
        assert_eq!(b.output.ring().size(), 2);
        assert_eq!(b.output.ranks(), r.ranks().iter().map(|k| 2 * k).collect::<Vec<_>>());
    }

    #[test]
    fn left_group_restricts_to_its_group() {
        let r = resolved(adjoin_identity(&left_group(&cyclic_group(3), 2)), 2);
        let b = maximal_subgroup_restrict(&r, 0).unwrap();
        assert_eq!(b.output.ring().size(), 3);
        assert!(b.report.passed);
    }

    #[test]
    fn zero_ideal_restricts_to_trivial_monoid() {
        let s = adjoin_zero(&cyclic_group(2));
        let r = resolved(s, 3);
        let decomposition = ProductDecomposition {
            right_ideal: [2].into(),
            monoid: trivial_monoid(),
            right_zero: right_zero(1),
            coords: [(2, (0, 0))].into(),
        };
        let b = phi_restrict(&r, &decomposition, 0).unwrap();
        assert_eq!(b.output.ranks(), r.ranks());
        assert!(verify_exact(&b.output).all_pass());
    }

    #[test]
    fn rejects_bad_decompositions() {
        let s = adjoin_zero(&cyclic_group(2));
        let r = resolved(s, 1);
        let mut d = ProductDecomposition {
            right_ideal: [0, 1].into(),
            monoid: cyclic_group(2),
            right_zero: right_zero(1),
            coords: [(0, (0, 0)), (1, (1, 0))].into(),
        };
        assert_eq!(phi_restrict(&r, &d, 0).unwrap_err(), TransferError::NotARightIdeal);
        d.right_ideal = [2].into();
        d.monoid = trivial_monoid();
        d.coords = [(2, (0, 0))].into();
        d.right_zero = left_zero(2);
        assert_eq!(phi_restrict(&r, &d, 0).unwrap_err(), TransferError::NotRightZero);
        d.right_zero = right_zero(2);
        assert!(matches!(phi_restrict(&r, &d, 0), Err(TransferError::IsoCheckFailed(_))));
    }
}
