use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    assemble, check_standard_form, decompose_ring_element, difference, flat_matrix, names, AuxiliaryMap,
    DecompositionContext, Draft, TransferBundle, TransferError,
};
use crate::lattice::{kernel_basis, IntMatrix};
use crate::resolution::{
    kernel_lattice, orbit_lattice, upgrade_generators, z_matrix_of, FreeModule, Label, ModuleElement, ModuleMap,
    Resolution, RingElement,
};

struct Descent<'a> {
    ctx: &'a DecompositionContext,
    a: &'a Resolution,
    b: Vec<Arc<FreeModule>>,
}

impl Descent<'_> {
    fn x(&self, j: usize) -> &[ModuleElement] {
        self.a.generators_at(j).expect("standard form records X_j")
    }

    fn e(&self) -> RingElement {
        RingElement::basis(self.ctx.e)
    }

    fn one_minus_e(&self) -> RingElement {
        difference(self.ctx.identity, self.ctx.e)
    }

    /// `λ^{(1)}[p] + Σ_f λ^{(f)}e[q_f]` added into `out`.
    fn theta_coefficient(&self, lambda: &RingElement, p: &Label, q: impl Fn(usize) -> Label, out: &mut ModuleElement) {
        let (one, parts) = decompose_ring_element(lambda, self.ctx);
        let m = out.module().clone();
        let mut acc = out.add(&ModuleElement::labelled(&m, p, one)).expect("same module");
        for (f, part) in parts {
            let coeff = part.mul_in(&self.ctx.s, &self.e());
            acc = acc.add(&ModuleElement::labelled(&m, &q(f), coeff)).expect("same module");
        }
        *out = acc;
    }

    /// `θ: A_m → B_m`.
    fn theta(&self, m: usize, alpha: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.b[m]);
        if m == 0 {
            self.theta_coefficient(alpha.coeff(0), &Label::Idem(self.ctx.e), Label::Idem, &mut out);
        } else {
            for (index, lambda) in alpha.coeffs().iter().enumerate() {
                let gen = Label::Gen { degree: m - 1, index };
                let pair = |idem| Label::Pair { idem, degree: m - 1, index };
                self.theta_coefficient(lambda, &gen, pair, &mut out);
            }
        }
        out
    }

    /// `φ: B_m → A_m`.
    fn phi(&self, m: usize, beta: &ModuleElement) -> ModuleElement {
        let target = self.a.module(m);
        let s = &self.ctx.s;
        let mut out = ModuleElement::zero(target);
        for (label, lambda) in beta.module().labels().iter().zip(beta.coeffs()) {
            let term = match (m, label) {
                (0, Label::Idem(x)) if *x == self.ctx.e => ModuleElement::basis(target, 0).act(lambda),
                (0, Label::Idem(f)) => ModuleElement::basis(target, 0).act(&lambda.mul_in(s, &RingElement::basis(*f))),
                (_, Label::Gen { index, .. }) => ModuleElement::basis(target, *index).act(lambda),
                (_, Label::Pair { idem, degree, index }) if *degree + 1 == m => {
                    ModuleElement::basis(target, *index).act(&lambda.mul_in(s, &RingElement::basis(*idem)))
                }
                _ => continue,
            };
            out = out.add(&term).expect("same module");
        }
        out
    }

    fn labels(&self, m: usize) -> Vec<Label> {
        let f = &self.ctx.descent_idempotents;
        let mut labels = Vec::new();
        if m == 0 {
            labels.push(Label::Idem(self.ctx.e));
        } else {
            labels.extend((0..self.x(m - 1).len()).map(|index| Label::Gen { degree: m - 1, index }));
            for i in (0..m).rev() {
                for &idem in f {
                    labels.extend((0..self.x(i).len()).map(|index| Label::Pair { idem, degree: i, index }));
                }
            }
        }
        labels.extend(f.iter().map(|&x| Label::Idem(x)));
        labels
    }

    /// `∂′_m` on one basis label of `B_m`, `m ≥ 1`.
    fn boundary(&self, m: usize, label: &Label) -> ModuleElement {
        let target = &self.b[m - 1];
        match *label {
            Label::Gen { index, .. } => self.theta(m - 1, &self.x(m - 1)[index]),
            Label::Pair { idem, degree, index } => {
                let d = m - 1 - degree;
                if d == 0 {
                    let fx = self.x(m - 1)[index].act(&RingElement::basis(idem));
                    self.theta(m - 1, &fx)
                } else if d % 2 == 1 {
                    ModuleElement::labelled(target, label, self.one_minus_e())
                } else {
                    ModuleElement::labelled(target, label, self.e())
                }
            }
            Label::Idem(_) if m % 2 == 0 => ModuleElement::labelled(target, label, self.e()),
            Label::Idem(_) => ModuleElement::labelled(target, label, self.one_minus_e()),
            _ => unreachable!("B_m has no other labels"),
        }
    }

    /// `Y_m`; requires `X_m`.
    fn kernel_generators(&self, m: usize) -> Vec<ModuleElement> {
        let bm = &self.b[m];
        let mut y: Vec<ModuleElement> = self.x(m).iter().map(|x| self.theta(m, x)).collect();
        for i in (0..m).rev() {
            let coeff = if (m - 1 - i) % 2 == 0 { self.one_minus_e() } else { self.e() };
            for &idem in &self.ctx.descent_idempotents {
                for index in 0..self.x(i).len() {
                    y.push(ModuleElement::labelled(bm, &Label::Pair { idem, degree: i, index }, coeff.clone()));
                }
            }
        }
        let q = if m % 2 == 0 { self.one_minus_e() } else { self.e() };
        for &f in &self.ctx.descent_idempotents {
            y.push(ModuleElement::labelled(bm, &Label::Idem(f), q.clone()));
        }
        y
    }
}

fn random_element(module: &Arc<FreeModule>, rng: &mut ChaCha8Rng) -> ModuleElement {
    let v: Vec<BigInt> = (0..module.flat_dim()).map(|_| BigInt::from(rng.gen_range(-3..4))).collect();
    ModuleElement::unflatten(module, &v)
}

/// Random `(x, t)` pairs on which `θ` and `φ` are checked to commute with
/// the `ZT` action, in addition to the check on every ℤ-basis element.
pub const EQUIVARIANCE_SAMPLES: usize = 100;

/// Additivity on random samples, agreement with the flat matrix, and
/// commutation with every `t ∈ T` on every ℤ-basis element and on
/// `EQUIVARIANCE_SAMPLES` random elements.
fn linear_and_equivariant(
    domain: &Arc<FreeModule>,
    matrix: &IntMatrix,
    t: &[usize],
    f: &dyn Fn(&ModuleElement) -> ModuleElement,
    rng: &mut ChaCha8Rng,
) -> (bool, bool) {
    let mut additive = true;
    for _ in 0..4 {
        let (a, b) = (random_element(domain, rng), random_element(domain, rng));
        let sum = a.add(&b).expect("same module");
        let fa = f(&a);
        additive &= f(&sum) == fa.add(&f(&b)).expect("same module");
        additive &= matrix.apply(&a.flatten()) == fa.flatten();
    }
    let mut equivariant = true;
    for k in 0..domain.flat_dim() {
        let (b, s) = domain.flat_basis(k);
        let base = ModuleElement::single(domain, b, RingElement::basis(s));
        let image = f(&base);
        for &x in t {
            let tx = RingElement::basis(x);
            equivariant &= f(&base.act(&tx)) == image.act(&tx);
        }
    }
    for _ in 0..EQUIVARIANCE_SAMPLES {
        let x = random_element(domain, rng);
        let tx = RingElement::basis(t[rng.gen_range(0..t.len())]);
        equivariant &= f(&x.act(&tx)) == f(&x).act(&tx);
    }
    (additive, equivariant)
}

fn composes_to_zero(k: &IntMatrix, a: &IntMatrix, b: &IntMatrix) -> bool {
    k.mul(a).mul(b).is_zero()
}

/// Passes from a resolution over `ℤS`, `S = U¹`, to one over `ℤT`,
/// `T = L_e ∪ {1}`.
///
/// The input must be in standard form. Generating sets that only generate
/// over `ℤS` are first replaced by `X ∪ FX`; the report records whether that
/// happened. All claims about `θ`, `φ` and `Y_m` are checked on the instance.
pub fn cs_descend(res_s: &Resolution, ctx: &DecompositionContext) -> Result<TransferBundle, TransferError> {
    if res_s.ring().as_ref() != ctx.s_ring.as_ref() {
        return Err(TransferError::HypothesisViolation("resolution is not over ZS for the context's S".into()));
    }
    check_standard_form(res_s)?;
    let f = &ctx.descent_idempotents;
    let (a, upgraded) = upgrade_generators(res_s, ctx.t_ring.clone(), f)?;
    for (j, x) in a.generators().iter().enumerate() {
        if orbit_lattice(x, &ctx.t_ring, a.module(j).flat_dim()) != kernel_lattice(a.map(j)) {
            return Err(TransferError::HypothesisViolation(format!("X_{j} does not generate ker ∂_{j} over ZT")));
        }
    }
    let n = a.length();
    let mut d = Descent { ctx, a: &a, b: Vec::with_capacity(n + 1) };
    let mut maps = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let module = FreeModule::new(ctx.t_ring.clone(), d.labels(m))?;
        d.b.push(module.clone());
        let map = if m == 0 {
            ModuleMap::to_integers(module.clone(), vec![BigInt::from(1); module.rank()])?
        } else {
            let images = module.labels().iter().map(|l| d.boundary(m, l)).collect();
            ModuleMap::new(module, d.b[m - 1].clone(), images)?
        };
        maps.push(map);
    }

    let t: Vec<usize> = ctx.t.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
    let mut auxiliary = Vec::new();
    let mut extra = Vec::new();
    let mut ys = Vec::new();
    for m in 0..=n {
        let (am, bm) = (a.module(m), &d.b[m]);
        let theta = flat_matrix(am, bm, |x| d.theta(m, x));
        let phi = flat_matrix(bm, am, |x| d.phi(m, x));
        let mut checks = BTreeMap::new();
        let (add, eq) = linear_and_equivariant(am, &theta, &t, &|x| d.theta(m, x), &mut rng);
        checks.insert("theta_additive".to_string(), add);
        checks.insert("theta_equivariant".to_string(), eq);
        let (add, eq) = linear_and_equivariant(bm, &phi, &t, &|x| d.phi(m, x), &mut rng);
        checks.insert("phi_additive".to_string(), add);
        checks.insert("phi_equivariant".to_string(), eq);
        checks.insert("phi_theta_identity".to_string(), theta.mul(&phi) == IntMatrix::identity(am.flat_dim()));
        let (za, zb) = (z_matrix_of(a.map(m)), z_matrix_of(&maps[m]));
        checks.insert("phi_kernel_to_kernel".to_string(), composes_to_zero(&kernel_basis(&zb), &phi, &za));
        checks.insert("theta_kernel_to_kernel".to_string(), composes_to_zero(&kernel_basis(&za), &theta, &zb));
        if a.generators_at(m).is_some() {
            let y = d.kernel_generators(m);
            let phi_y: Vec<ModuleElement> = y.iter().map(|g| d.phi(m, g)).collect();
            checks.insert(
                "phi_y_generates_kernel".to_string(),
                orbit_lattice(&phi_y, &ctx.t_ring, am.flat_dim()) == kernel_lattice(a.map(m)),
            );
            ys.push(y);
        }
        extra.push(checks);
        auxiliary.push(AuxiliaryMap { name: "theta".into(), degree: m, matrix: theta });
        auxiliary.push(AuxiliaryMap { name: "phi".into(), degree: m, matrix: phi });
    }

    let s = &ctx.s;
    let context = BTreeMap::from([
        ("e".to_string(), s.name(ctx.e)),
        ("F".to_string(), names(s, f.iter().copied())),
        ("T".to_string(), names(s, ctx.t.iter().copied())),
        ("R-classes".to_string(), ctx.r_class_count.to_string()),
        ("L-classes".to_string(), ctx.l_class_count.to_string()),
        ("generators upgraded to ZT".to_string(), upgraded.to_string()),
        ("equivariance samples".to_string(), EQUIVARIANCE_SAMPLES.to_string()),
    ]);
    let draft = Draft { ring: ctx.t_ring.clone(), modules: d.b, maps, ys, auxiliary, extra };
    assemble("cs_descend", context, &a, draft)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rees::{make_rees, ReesMatrixData};
    use crate::resolution::{
        apply_mutation, mutation_sites, resolve, resolve_monoid, verify_exact, with_top_generators,
    };
    use crate::semigroup::*;

    fn descend(u: &FiniteSemigroup, n: usize) -> TransferBundle {
        let s = Arc::new(adjoin_identity(u));
        let ctx = DecompositionContext::new(s.clone(), None).unwrap();
        let r = with_top_generators(&resolve_monoid(&s, n).unwrap()).unwrap();
        cs_descend(&r, &ctx).unwrap()
    }

    #[test]
    fn group_case_has_no_f_strata() {
        let b = descend(&cyclic_group(2), 2);
        assert!(b.report.passed);
        // with F empty, B_m = A_m and θ, φ are mutually inverse
        for m in 0..=2 {
            assert_eq!(b.output.module(m).rank(), b.input.module(m).rank());
            let theta = &b.auxiliary[2 * m].matrix;
            let phi = &b.auxiliary[2 * m + 1].matrix;
            assert_eq!(phi.mul(theta), IntMatrix::identity(theta.cols()));
        }
    }

    #[test]
    fn rectangular_band_bundle() {
        let b = descend(&rectangular_band(2, 2), 3);
        assert!(b.report.passed);
        assert!(verify_exact(&b.output).all_pass());
        let x: Vec<usize> = (0..3).map(|j| b.input.generators_at(j).unwrap().len()).collect();
        // B_m = X_{m-1} ⊕ F×(X_{m-1} ⊕ … ⊕ X_0) ⊕ F with |F| = 1
        for m in 1..=3 {
            let expected = x[m - 1] + x[..m].iter().sum::<usize>() + 1;
            assert_eq!(b.output.module(m).rank(), expected);
        }
        assert_eq!(b.output.module(0).rank(), 2);
    }

    #[test]
    fn nontrivial_sandwich_matrix_bundle() {
        let data = ReesMatrixData::new(cyclic_group(2), 2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let b = descend(&make_rees(&data).unwrap(), 2);
        assert!(b.report.passed);
        for d in &b.report.degrees {
            if d.y_size.is_some() {
                assert_eq!(d.lemma_checks.get("phi_y_generates_kernel"), Some(&true));
            }
        }
    }

    #[test]
    fn greedy_generators_are_upgraded_and_recorded() {
        let s = Arc::new(adjoin_identity(&rectangular_band(2, 2)));
        let ctx = DecompositionContext::new(s.clone(), None).unwrap();
        let over_s = resolve_monoid(&s, 2).unwrap();
        let b = cs_descend(&over_s, &ctx).unwrap();
        let over_t = resolve(ctx.s_ring.clone(), 2, Some(ctx.t_ring.clone())).unwrap();
        let b2 = cs_descend(&over_t, &ctx).unwrap();
        assert_eq!(b2.report.context["generators upgraded to ZT"], "false");
        assert!(b.report.passed && b2.report.passed);
        assert!(b.report.context.contains_key("generators upgraded to ZT"));
    }

    #[test]
    fn mutations_of_the_output_are_detected() {
        let b = descend(&rectangular_band(2, 2), 3);
        for k in 1..3 {
            for site in mutation_sites(&b.output, k).into_iter().step_by(3) {
                let failing = verify_exact(&apply_mutation(&b.output, site)).failing_degrees();
                assert!(!failing.is_empty() && failing.iter().all(|&d| d + 1 == k || d == k), "{site:?} {failing:?}");
            }
        }
    }

    #[test]
    fn rejects_foreign_ring() {
        let s = Arc::new(adjoin_identity(&rectangular_band(2, 2)));
        let ctx = DecompositionContext::new(s, None).unwrap();
        let other = resolve_monoid(&Arc::new(cyclic_group(2)), 1).unwrap();
        assert!(matches!(cs_descend(&other, &ctx), Err(TransferError::HypothesisViolation(_))));
    }
}
