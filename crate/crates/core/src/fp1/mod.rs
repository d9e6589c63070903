//! Right unitary generation, Cayley graph connectivity and the finite-scale
//! left-FP₁ certificates built from them.

mod reports;

pub use reports::{bi_fp_report, semilattice_fp_report, BiFpReport, SemilatticeFpReport, SideReport};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::rees::{idempotent_entry_subgroup, normalize_rees, rees_decomposition, ReesError};
use crate::resolution::ModuleError;
use crate::semigroup::{
    adjoin_identity, check_group, generated_subsemigroup, green_classes, idempotents, is_connected_undirected,
    is_left_ideal, minimal_ideal, monoid_completion, right_cayley_graph, right_unitary_closure, ElementSet,
    FiniteSemigroup, SemigroupError,
};
use crate::transfer::TransferError;

/// Largest order for which modes that enumerate every subset are allowed.
pub const EXHAUSTIVE_ORDER_LIMIT: usize = 10;

/// Largest number of candidate subsets a capped search may examine.
pub const SEARCH_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Fp1Error {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Rees(#[from] ReesError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("subset is not a left ideal")]
    NotALeftIdeal,
    #[error("input set is not a witness: {0}")]
    InputNotAWitness(String),
    #[error("search over {candidates} subsets exceeds the limit of {limit}")]
    SearchTooLarge { candidates: u64, limit: u64 },
    #[error("constructed witness fails: {0}")]
    CertificateFailed(String),
    #[error("{0}")]
    HypothesisViolation(String),
}

/// Both sides of the right unitary generation criterion for a subset `A` of
/// a monoid. They agree on every monoid; `consistent` checks that.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fp1Witness {
    pub subset: ElementSet,
    pub names: Vec<String>,
    /// `Γ_r(S, A)` is connected as an undirected graph.
    pub connected: bool,
    /// The right unitary submonoid generated by `A` is all of `S`.
    pub closure_is_all: bool,
}

impl Fp1Witness {
    pub fn passes(&self) -> bool {
        self.connected && self.closure_is_all
    }

    pub fn consistent(&self) -> bool {
        self.connected == self.closure_is_all
    }
}

/// Computes Cayley graph connectivity and right unitary generation
/// independently. The closure is taken over `A ∪ {1}`, so `A = ∅` generates
/// exactly the trivial monoid.
pub fn kobayashi_check(s: &FiniteSemigroup, a: &ElementSet) -> Result<Fp1Witness, Fp1Error> {
    let one = s.require_identity()?;
    s.check_subset(a)?;
    let connected = is_connected_undirected(&right_cayley_graph(s, a));
    let mut seeds = a.clone();
    seeds.insert(one);
    let closure_is_all = right_unitary_closure(s, &seeds)?.len() == s.order();
    Ok(Fp1Witness { subset: a.clone(), names: a.iter().map(|&x| s.name(x)).collect(), connected, closure_is_all })
}

/// Agreement of the two sides of [`kobayashi_check`] over many subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub order: usize,
    pub exhaustive: bool,
    pub subsets_checked: usize,
    pub passing_subsets: usize,
    pub disagreements: Vec<ElementSet>,
}

/// Every subset when `|S| ≤ EXHAUSTIVE_ORDER_LIMIT`, otherwise `samples`
/// random subsets drawn from `seed`.
pub fn kobayashi_agreement(s: &FiniteSemigroup, samples: usize, seed: u64) -> Result<AgreementReport, Fp1Error> {
    let n = s.order();
    let exhaustive = n <= EXHAUSTIVE_ORDER_LIMIT;
    let subsets: Vec<ElementSet> = if exhaustive {
        (0u32..1 << n).map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect()).collect()
    };
    let mut report =
        AgreementReport { order: n, exhaustive, subsets_checked: 0, passing_subsets: 0, disagreements: Vec::new() };
    for a in subsets {
        let w = kobayashi_check(s, &a)?;
        report.subsets_checked += 1;
        report.passing_subsets += usize::from(w.passes());
        if !w.consistent() {
            report.disagreements.push(a);
        }
    }
    Ok(report)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

fn check_search_size(n: usize, cap: usize) -> Result<(), Fp1Error> {
    let candidates = (0..=cap.min(n)).fold(0u64, |acc, k| acc.saturating_add(binomial(n, k)));
    if candidates > SEARCH_LIMIT {
        return Err(Fp1Error::SearchTooLarge { candidates, limit: SEARCH_LIMIT });
    }
    Ok(())
}

/// The lexicographically first smallest `A` with `|A| ≤ size_cap` that right
/// unitarily generates the monoid `s`.
pub fn minimal_ru_genset(s: &FiniteSemigroup, size_cap: usize) -> Result<Option<Fp1Witness>, Fp1Error> {
    s.require_identity()?;
    check_search_size(s.order(), size_cap)?;
    for k in 0..=size_cap.min(s.order()) {
        for combo in s.elements().combinations(k) {
            let w = kobayashi_check(s, &combo.into_iter().collect())?;
            if !w.consistent() {
                return Err(Fp1Error::CertificateFailed(format!("criterion sides disagree on {:?}", w.names)));
            }
            if w.passes() {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelativeRank {
    pub rank: usize,
    /// Lexicographically first `A` of that size with `⟨K ∪ A⟩ = G`.
    pub witness: ElementSet,
}

/// `rank(G : K)`, the fewest elements to add to the subgroup `K` to generate
/// the group `G`.
pub fn relative_rank(g: &FiniteSemigroup, k: &ElementSet) -> Result<RelativeRank, Fp1Error> {
    check_group(g)?;
    g.check_subset(k)?;
    if k.is_empty() || !g.is_closed(k) {
        return Err(Fp1Error::NotASubgroup);
    }
    let outside: Vec<usize> = g.elements().filter(|x| !k.contains(x)).collect();
    // each added generator at least doubles the subgroup
    let bound = (g.order() / k.len()).ilog2() as usize;
    check_search_size(outside.len(), bound)?;
    for size in 0..=bound {
        for combo in outside.iter().copied().combinations(size) {
            let mut gens = k.clone();
            gens.extend(combo.iter().copied());
            if generated_subsemigroup(g, &gens)?.len() == g.order() {
                return Ok(RelativeRank { rank: size, witness: combo.into_iter().collect() });
            }
        }
    }
    unreachable!("K ∪ G generates G")
}

/// The constructive left-FP₁ witness `F ∪ X` for `U¹`, `U` completely simple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsFp1Certificate {
    pub order: usize,
    pub r_class_count: usize,
    pub l_class_count: usize,
    pub group_order: usize,
    /// `|K|` for `K` generated by the entries of the normalised sandwich
    /// matrix.
    pub k_order: usize,
    pub relative_rank: usize,
    /// Idempotents of the `L`-class of the chosen idempotent.
    pub f: Vec<String>,
    /// Elements of the maximal subgroup completing `K` to `H`.
    pub x: Vec<String>,
    pub witness_size: usize,
    pub witness: Fp1Witness,
    pub passed: bool,
}

/// Decomposes `u`, normalises the sandwich matrix, computes `K` and a
/// relative-rank witness `X`, and checks `F ∪ X` on `U¹`.
pub fn cs_fp1_certificate(u: &FiniteSemigroup) -> Result<CsFp1Certificate, Fp1Error> {
    let (data, psi) = rees_decomposition(u)?;
    let (norm, iso) = normalize_rees(&data)?;
    let mut to_u = vec![0; iso.len()];
    for (x, &y) in iso.iter().enumerate() {
        to_u[y] = psi[x];
    }
    let k = idempotent_entry_subgroup(&norm)?;
    let rr = relative_rank(&norm.group, &k)?;
    let one = norm.group.require_identity()?;
    let f: ElementSet = (0..norm.i_count).map(|i| to_u[norm.index(i, one, 0)]).collect();
    debug_assert!(f.iter().all(|&x| u.is_idempotent(x)));
    let x: ElementSet = rr.witness.iter().map(|&g| to_u[norm.index(0, g, 0)]).collect();
    let s1 = adjoin_identity(u);
    let a: ElementSet = f.union(&x).copied().collect();
    let witness = kobayashi_check(&s1, &a)?;
    Ok(CsFp1Certificate {
        order: u.order(),
        r_class_count: norm.i_count,
        l_class_count: norm.omega_count,
        group_order: norm.group.order(),
        k_order: k.len(),
        relative_rank: rr.rank,
        f: f.iter().map(|&e| u.name(e)).collect(),
        x: x.iter().map(|&h| u.name(h)).collect(),
        witness_size: a.len(),
        passed: witness.passes() && witness.consistent(),
        witness,
    })
}

/// `T¹` for a subsemigroup `T ⊆ S` (its own identity if it has one) and the
/// positions of `S`-elements of `T` in it.
fn completed(s: &FiniteSemigroup, t: &ElementSet) -> Result<(FiniteSemigroup, Vec<Option<usize>>), Fp1Error> {
    let (sub, embedding) = s.induced(t)?;
    let mut local = vec![None; s.order()];
    for (k, &x) in embedding.iter().enumerate() {
        local[x] = Some(k);
    }
    Ok((monoid_completion(&sub), local))
}

/// Given a witness `A ⊆ J` for `J¹`, `J` a left ideal of the monoid `s`,
/// checks that `A` is a witness for `s`.
pub fn ideal_witness_lift(s: &FiniteSemigroup, j: &ElementSet, a: &ElementSet) -> Result<Fp1Witness, Fp1Error> {
    s.require_identity()?;
    s.check_subset(j)?;
    s.check_subset(a)?;
    if j.is_empty() || !is_left_ideal(s, j) {
        return Err(Fp1Error::NotALeftIdeal);
    }
    if a.is_empty() || !a.is_subset(j) {
        return Err(Fp1Error::InputNotAWitness("A must be a non-empty subset of J".into()));
    }
    let (t, local) = completed(s, j)?;
    let local_a: ElementSet = a.iter().map(|&x| local[x].expect("A ⊆ J")).collect();
    let input = kobayashi_check(&t, &local_a)?;
    if !input.passes() {
        return Err(Fp1Error::InputNotAWitness("A does not right unitarily generate J¹".into()));
    }
    let lifted = kobayashi_check(s, a)?;
    if !(lifted.passes() && lifted.consistent()) {
        return Err(Fp1Error::CertificateFailed("lifted set does not generate S".into()));
    }
    Ok(lifted)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalIdealTransfer {
    pub minimal_ideal: Vec<String>,
    pub f: Vec<String>,
    /// `B = F ∪ AF`, as elements of `S`.
    pub b: Vec<String>,
    /// The check of `B` on `J¹`; its indices are positions in `J¹`.
    pub witness: Fp1Witness,
}

/// From a witness `A` for the monoid `s`, builds `B = F ∪ AF` for the minimal
/// ideal `J`, with `F` the idempotents of one `L`-class of `J`, and checks it
/// on `J¹`.
pub fn minimal_ideal_certificate_transfer(
    s: &FiniteSemigroup,
    a: &ElementSet,
) -> Result<MinimalIdealTransfer, Fp1Error> {
    let input = kobayashi_check(s, a)?;
    if !input.passes() {
        return Err(Fp1Error::InputNotAWitness("A does not right unitarily generate S".into()));
    }
    let j = minimal_ideal(s);
    let (sub, embedding) = s.induced(&j)?;
    let green = green_classes(&sub);
    let local_e =
        *idempotents(&sub).iter().next().expect("the minimal ideal of a finite semigroup is completely simple");
    let f: ElementSet =
        green.l_class_of(local_e).iter().filter(|&&x| sub.is_idempotent(x)).map(|&x| embedding[x]).collect();
    let mut b = f.clone();
    b.extend(a.iter().flat_map(|&x| f.iter().map(move |&g| s.mul(x, g))));
    let (t, local) = completed(s, &j)?;
    let local_b: ElementSet = b.iter().map(|&x| local[x].expect("AF ⊆ J")).collect();
    let witness = kobayashi_check(&t, &local_b)?;
    if !(witness.passes() && witness.consistent()) {
        return Err(Fp1Error::CertificateFailed("F ∪ AF does not generate J¹".into()));
    }
    let names = |set: &ElementSet| set.iter().map(|&x| s.name(x)).collect();
    Ok(MinimalIdealTransfer { minimal_ideal: names(&j), f: names(&f), b: names(&b), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rees::{make_rees, make_strong_semilattice, ReesMatrixData, StrongSemilatticeData};
    use crate::semigroup::*;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn small_monoids() -> Vec<FiniteSemigroup> {
        vec![
            trivial_monoid(),
            cyclic_group(2),
            cyclic_group(3),
            cyclic_group(6),
            klein_four(),
            adjoin_identity(&left_zero(2)),
            adjoin_identity(&left_zero(3)),
            adjoin_identity(&right_zero(2)),
            adjoin_identity(&right_zero(3)),
            adjoin_identity(&rectangular_band(2, 2)),
            adjoin_zero(&cyclic_group(2)),
            adjoin_zero(&cyclic_group(3)),
            full_transformation_monoid(2),
        ]
    }

    #[test]
    fn whole_set_and_empty_set() {
        for s in small_monoids() {
            let all: ElementSet = s.elements().collect();
            let w = kobayashi_check(&s, &all).unwrap();
            assert!(w.connected && w.closure_is_all);
            let w = kobayashi_check(&s, &ElementSet::new()).unwrap();
            assert_eq!(w.passes(), s.order() == 1);
            assert!(w.consistent());
        }
    }

    #[test]
    fn exhaustive_agreement_on_small_monoids() {
        for s in small_monoids() {
            assert!(s.order() <= 6);
            let r = kobayashi_agreement(&s, 0, 0).unwrap();
            assert!(r.exhaustive);
            assert_eq!(r.subsets_checked, 1 << s.order());
            assert!(r.disagreements.is_empty(), "{:?}", s.rows());
        }
    }

    #[test]
    fn sampled_agreement_above_the_limit() {
        let s = full_transformation_monoid(3);
        let r = kobayashi_agreement(&s, 200, 7).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.subsets_checked, 200);
        assert!(r.disagreements.is_empty());
        assert_eq!(r, kobayashi_agreement(&s, 200, 7).unwrap());
    }

    #[test]
    fn right_unitary_subsets_are_closed_under_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in small_monoids().into_iter().chain([full_transformation_monoid(3)]) {
            let one = s.identity().unwrap();
            let mut closures = Vec::new();
            for _ in 0..12 {
                let mut a: ElementSet = s.elements().filter(|_| rng.gen_bool(0.3)).collect();
                a.insert(one);
                closures.push(right_unitary_closure(&s, &a).unwrap());
            }
            for (x, y) in closures.iter().tuple_combinations() {
                let meet: ElementSet = x.intersection(y).copied().collect();
                assert!(is_right_unitary(&s, &meet));
            }
        }
    }

    fn brute_minimum(s: &FiniteSemigroup) -> usize {
        let n = s.order();
        (0u32..1 << n)
            .filter(|mask| {
                let a: ElementSet = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
                kobayashi_check(s, &a).unwrap().passes()
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    #[test]
    fn minimal_generating_sets() {
        assert_eq!(minimal_ru_genset(&trivial_monoid(), 3).unwrap().unwrap().subset, ElementSet::new());
        assert_eq!(minimal_ru_genset(&cyclic_group(2), 3).unwrap().unwrap().subset, set(&[1]));
        assert_eq!(minimal_ru_genset(&klein_four(), 1).unwrap(), None);
        for (m, n) in [(1, 2), (2, 1), (2, 2), (2, 3), (3, 2)] {
            let s = adjoin_identity(&rectangular_band(m, n));
            let w = minimal_ru_genset(&s, s.order()).unwrap().unwrap();
            assert_eq!(w.subset.len(), brute_minimum(&s), "{m}x{n}");
        }
    }

    #[test]
    fn search_limit_is_enforced() {
        let s = full_transformation_monoid(4);
        assert!(matches!(minimal_ru_genset(&s, 256), Err(Fp1Error::SearchTooLarge { .. })));
    }

    #[test]
    fn relative_ranks() {
        let z6 = cyclic_group(6);
        assert_eq!(relative_rank(&z6, &z6.elements().collect()).unwrap().rank, 0);
        let r = relative_rank(&z6, &set(&[0, 2, 4])).unwrap();
        assert_eq!((r.rank, r.witness), (1, set(&[1])));
        let v = klein_four();
        assert_eq!(relative_rank(&v, &set(&[0])).unwrap().rank, 2);
        assert!((1..4).all(|x| generated_subsemigroup(&v, &set(&[0, x])).unwrap().len() < 4));
        assert_eq!(relative_rank(&z6, &set(&[0, 1])).unwrap_err(), Fp1Error::NotASubgroup);
        assert!(relative_rank(&adjoin_zero(&z6), &set(&[0])).is_err());
    }

    #[test]
    fn certificate_for_groups_uses_the_ordinary_rank() {
        for (g, rank) in [(cyclic_group(6), 1), (klein_four(), 2), (trivial_monoid(), 0)] {
            let c = cs_fp1_certificate(&g).unwrap();
            assert_eq!((c.f.len(), c.k_order, c.relative_rank), (1, 1, rank));
            assert!(c.passed);
        }
    }

    #[test]
    fn certificate_for_rectangular_bands_is_f_alone() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let c = cs_fp1_certificate(&rectangular_band(m, n)).unwrap();
            assert_eq!((c.r_class_count, c.l_class_count, c.relative_rank), (m, n, 0));
            assert_eq!(c.x.len(), 0);
            assert_eq!(c.f.len(), m);
            assert!(c.passed);
        }
    }

    #[test]
    fn certificate_for_sandwich_with_nontrivial_entry() {
        let z2 = cyclic_group(2);
        for p in [vec![vec![0, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 0]], vec![vec![1, 0], vec![1, 1]]] {
            let data = ReesMatrixData::new(z2.clone(), 2, 2, p.clone()).unwrap();
            let c = cs_fp1_certificate(&make_rees(&data).unwrap()).unwrap();
            assert!(c.passed);
            // the third matrix normalises to one with p'_{22} = g
            let nontrivial = p != vec![vec![0, 0], vec![0, 0]];
            assert_eq!(c.k_order, if nontrivial { 2 } else { 1 });
            assert_eq!(c.relative_rank, if nontrivial { 0 } else { 1 });
        }
        let lg = cs_fp1_certificate(&left_group(&cyclic_group(3), 2)).unwrap();
        assert!(lg.passed && lg.relative_rank == 1 && lg.f.len() == 2);
    }

    #[test]
    fn certificate_rejects_non_completely_simple() {
        assert!(matches!(cs_fp1_certificate(&adjoin_zero(&cyclic_group(2))), Err(Fp1Error::Rees(_))));
    }

    #[test]
    fn minimal_ideal_r_class_unions_with_identity_are_right_unitary() {
        for u in [rectangular_band(2, 3), left_group(&cyclic_group(2), 2), right_group(&cyclic_group(2), 2)] {
            let s = adjoin_identity(&u);
            let one = s.identity().unwrap();
            let classes = green_classes(&s).r_classes.into_iter().filter(|c| !c.contains(&one)).collect::<Vec<_>>();
            for mask in 1u32..1 << classes.len() {
                let mut t: ElementSet = (0..classes.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .flat_map(|k| classes[k].iter().copied())
                    .collect();
                t.insert(one);
                assert!(is_right_unitary(&s, &t));
            }
        }
    }

    fn two_chain(top: FiniteSemigroup, bottom: FiniteSemigroup, hom: Vec<usize>) -> (FiniteSemigroup, ElementSet) {
        let data =
            StrongSemilatticeData { components: vec![top, bottom], order: vec![(1, 0)], homs: [((0, 1), hom)].into() };
        let (s, sl) = make_strong_semilattice(&data).unwrap();
        (s, sl.component(1))
    }

    #[test]
    fn ideal_witness_lifts() {
        let s = cyclic_group(3);
        let all: ElementSet = s.elements().collect();
        assert_eq!(ideal_witness_lift(&s, &all, &set(&[1])).unwrap(), kobayashi_check(&s, &set(&[1])).unwrap());

        let (s, bottom) = two_chain(cyclic_group(2), cyclic_group(2), vec![0, 1]);
        let g = *bottom.iter().find(|&&x| !s.is_idempotent(x)).unwrap();
        assert!(ideal_witness_lift(&s, &bottom, &set(&[g])).unwrap().passes());

        let (s, bottom) = two_chain(cyclic_group(2), cyclic_group(2), vec![0, 0]);
        let g = *bottom.iter().find(|&&x| !s.is_idempotent(x)).unwrap();
        assert!(ideal_witness_lift(&s, &bottom, &set(&[g])).unwrap().passes());

        let s = adjoin_zero(&cyclic_group(3));
        let zero = s.order() - 1;
        assert!(ideal_witness_lift(&s, &set(&[zero]), &set(&[zero])).unwrap().passes());

        let s = adjoin_identity(&left_zero(3));
        assert!(ideal_witness_lift(&s, &set(&[0, 1, 2]), &set(&[0, 1, 2])).unwrap().passes());
        assert!(matches!(ideal_witness_lift(&s, &set(&[0, 1, 2]), &set(&[0])), Err(Fp1Error::InputNotAWitness(_))));
    }

    #[test]
    fn ideal_witness_lift_rejections() {
        let (s, bottom) = two_chain(cyclic_group(2), cyclic_group(2), vec![0, 1]);
        let top: ElementSet = s.elements().filter(|x| !bottom.contains(x)).collect();
        assert_eq!(ideal_witness_lift(&s, &top, &top).unwrap_err(), Fp1Error::NotALeftIdeal);
        let e = *bottom.iter().find(|&&x| s.is_idempotent(x)).unwrap();
        assert!(matches!(ideal_witness_lift(&s, &bottom, &set(&[e])), Err(Fp1Error::InputNotAWitness(_))));
        assert!(matches!(ideal_witness_lift(&s, &bottom, &ElementSet::new()), Err(Fp1Error::InputNotAWitness(_))));
    }

    #[test]
    fn minimal_ideal_transfers() {
        let s = adjoin_identity(&rectangular_band(2, 2));
        // (1,1) and (2,1), one per R-class
        let a = set(&[0, 2]);
        let t = minimal_ideal_certificate_transfer(&s, &a).unwrap();
        assert!(t.witness.passes());
        assert_eq!(t.minimal_ideal.len(), 4);

        let (s, bottom) = two_chain(cyclic_group(2), cyclic_group(2), vec![0, 1]);
        let a = minimal_ru_genset(&s, 4).unwrap().unwrap().subset;
        let t = minimal_ideal_certificate_transfer(&s, &a).unwrap();
        let e = *bottom.iter().find(|&&x| s.is_idempotent(x)).unwrap();
        assert_eq!(t.f, vec![s.name(e)]);
        let expected: ElementSet = std::iter::once(e).chain(a.iter().map(|&x| s.mul(x, e))).collect();
        assert_eq!(t.b, expected.iter().map(|&x| s.name(x)).collect::<Vec<_>>());

        let s = adjoin_zero(&cyclic_group(2));
        let zero = s.order() - 1;
        let t = minimal_ideal_certificate_transfer(&s, &set(&[1, zero])).unwrap();
        assert_eq!(t.b, vec![s.name(zero)]);
        assert!(t.witness.passes());

        let s = full_transformation_monoid(3);
        let a = minimal_ru_genset(&s, 3).unwrap().unwrap().subset;
        assert!(minimal_ideal_certificate_transfer(&s, &a).unwrap().witness.passes());
    }

    #[test]
    fn minimal_ideal_transfer_rejects_non_witness() {
        let s = adjoin_identity(&rectangular_band(2, 2));
        assert!(matches!(minimal_ideal_certificate_transfer(&s, &set(&[0])), Err(Fp1Error::InputNotAWitness(_))));
    }
}
