//! Rees matrix semigroups `M[G; I, Ω; P]`, their decomposition and
//! normalisation, and strong semilattices of monoids.
//!
//! `P` is stored as an `|Ω| × |I|` matrix of group element indices and the
//! element `(i, g, ω)` has index `i·|G|·|Ω| + g·|Ω| + ω`. The distinguished
//! index `1` of `I` and `Ω` is position 0.

mod semilattice;

pub use semilattice::{make_strong_semilattice, semilattice_minimum, StrongSemilattice, StrongSemilatticeData};

use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{
    check_group, generated_subsemigroup, green_classes, idempotents, is_completely_simple, left_group,
    maximal_subgroup, rectangular_band, right_group, ElementSet, FiniteSemigroup, SemigroupError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReesError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("structure matrix shape: {0}")]
    BadMatrixShape(String),
    #[error("semigroup is not completely simple")]
    NotCompletelySimple,
    #[error("structure matrix is not normalized")]
    NotNormalized,
    #[error("decomposition map is not an isomorphism")]
    IsomorphismCheckFailed,
    #[error("semilattice: {0}")]
    Semilattice(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReesMatrixData {
    pub group: FiniteSemigroup,
    pub i_count: usize,
    pub omega_count: usize,
    /// `p[ω][i]`.
    pub p: Vec<Vec<usize>>,
    pub normalized: bool,
}

impl ReesMatrixData {
    /// Validates shape and group, and computes the normal-form flag.
    pub fn new(
        group: FiniteSemigroup,
        i_count: usize,
        omega_count: usize,
        p: Vec<Vec<usize>>,
    ) -> Result<Self, ReesError> {
        let one = check_group(&group)?;
        if i_count == 0 || omega_count == 0 {
            return Err(ReesError::BadMatrixShape("index sets must be non-empty".into()));
        }
        if p.len() != omega_count || p.iter().any(|row| row.len() != i_count) {
            return Err(ReesError::BadMatrixShape(format!("P must be {omega_count}×{i_count}")));
        }
        if p.iter().flatten().any(|&g| g >= group.order()) {
            return Err(ReesError::BadMatrixShape("entry outside the group".into()));
        }
        let normalized = p[0].iter().all(|&g| g == one) && p.iter().all(|row| row[0] == one);
        Ok(ReesMatrixData { group, i_count, omega_count, p, normalized })
    }

    pub fn order(&self) -> usize {
        self.i_count * self.group.order() * self.omega_count
    }

    pub fn index(&self, i: usize, g: usize, omega: usize) -> usize {
        (i * self.group.order() + g) * self.omega_count + omega
    }

    pub fn coords(&self, x: usize) -> (usize, usize, usize) {
        let omega = x % self.omega_count;
        let rest = x / self.omega_count;
        (rest / self.group.order(), rest % self.group.order(), omega)
    }
}

/// Builds `M[G; I, Ω; P]` with `(i,g,ω)(j,h,μ) = (i, g·p_{ωj}·h, μ)`.
pub fn make_rees(data: &ReesMatrixData) -> Result<FiniteSemigroup, ReesError> {
    check_group(&data.group)?;
    let g = &data.group;
    let n = data.order();
    let mut rows = vec![vec![0; n]; n];
    for (x, row) in rows.iter_mut().enumerate() {
        let (i, a, omega) = data.coords(x);
        for (y, slot) in row.iter_mut().enumerate() {
            let (j, b, mu) = data.coords(y);
            *slot = data.index(i, g.mul(g.mul(a, data.p[omega][j]), b), mu);
        }
    }
    let names = (0..n)
        .map(|x| {
            let (i, a, omega) = data.coords(x);
            format!("({},{},{})", i + 1, g.name(a), omega + 1)
        })
        .collect();
    Ok(FiniteSemigroup::from_table(rows, None)?.with_names(names)?)
}

fn inverse(g: &FiniteSemigroup, x: usize) -> usize {
    let one = g.identity().expect("validated group");
    g.elements().find(|&y| g.mul(x, y) == one).expect("validated group")
}

/// Exhaustive check that `map` is a bijective homomorphism `a → b`.
pub fn is_isomorphism(a: &FiniteSemigroup, b: &FiniteSemigroup, map: &[usize]) -> bool {
    if a.order() != b.order() || map.len() != a.order() {
        return false;
    }
    let mut hit = vec![false; b.order()];
    for &y in map {
        if y >= b.order() || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    a.elements().all(|x| a.elements().all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
}

/// Changes coordinates so the first row and column of `P` are the identity.
///
/// With `a_i = p_{1i}` and `b_ω = p_{ω1}·p_{11}^{-1}`, the map
/// `(i,g,ω) ↦ (i, a_i·g·b_ω, ω)` is an isomorphism onto the semigroup with
/// `p'_{ωi} = b_ω^{-1}·p_{ωi}·a_i^{-1}`. The returned map sends indices of
/// `make_rees(data)` to indices of `make_rees(normalized)`.
pub fn normalize_rees(data: &ReesMatrixData) -> Result<(ReesMatrixData, Vec<usize>), ReesError> {
    let g = &data.group;
    let a: Vec<usize> = (0..data.i_count).map(|i| data.p[0][i]).collect();
    let p11_inv = inverse(g, data.p[0][0]);
    let b: Vec<usize> = (0..data.omega_count).map(|w| g.mul(data.p[w][0], p11_inv)).collect();
    let p = (0..data.omega_count)
        .map(|w| (0..data.i_count).map(|i| g.mul(g.mul(inverse(g, b[w]), data.p[w][i]), inverse(g, a[i]))).collect())
        .collect();
    let out = ReesMatrixData::new(g.clone(), data.i_count, data.omega_count, p)?;
    debug_assert!(out.normalized);
    let iso = (0..data.order())
        .map(|x| {
            let (i, h, w) = data.coords(x);
            out.index(i, g.mul(g.mul(a[i], h), b[w]), w)
        })
        .collect();
    Ok((out, iso))
}

/// Recovers `M[G; I, Ω; P]` for a completely simple `u`.
///
/// `G = H_e` for the least idempotent `e`; `R_e` and `L_e` take position 0 and
/// the remaining classes follow by least element. Representatives
/// `r_i ∈ H_{i1}`, `q_ω ∈ H_{1ω}` are least-index elements, except
/// `r_1 = q_1 = e`. Then `(i,g,ω) ↦ r_i·g·q_ω` and `p_{ωj} = q_ω·r_j`. The
/// returned map sends indices of `make_rees(data)` to indices of `u` and is
/// verified to be an isomorphism.
pub fn rees_decomposition(u: &FiniteSemigroup) -> Result<(ReesMatrixData, Vec<usize>), ReesError> {
    if !is_completely_simple(u) {
        return Err(ReesError::NotCompletelySimple);
    }
    let e = *idempotents(u).iter().next().expect("completely simple semigroups have idempotents");
    let green = green_classes(u);
    let (group, embedding) = maximal_subgroup(u, e)?;
    let mut local = vec![usize::MAX; u.order()];
    for (k, &x) in embedding.iter().enumerate() {
        local[x] = k;
    }
    let ordered = |classes: &[Vec<usize>], first: usize| -> Vec<Vec<usize>> {
        let mut out = vec![classes[first].clone()];
        out.extend(classes.iter().enumerate().filter(|(k, _)| *k != first).map(|(_, c)| c.clone()));
        out
    };
    let r_classes = ordered(&green.r_classes, green.r_of[e]);
    let l_classes = ordered(&green.l_classes, green.l_of[e]);
    let l_e = &l_classes[0];
    let r_e = &r_classes[0];
    let r: Vec<usize> = r_classes
        .iter()
        .enumerate()
        .map(|(i, class)| if i == 0 { e } else { *class.iter().find(|x| l_e.contains(x)).expect("H_{i1} non-empty") })
        .collect();
    let q: Vec<usize> = l_classes
        .iter()
        .enumerate()
        .map(|(w, class)| if w == 0 { e } else { *class.iter().find(|x| r_e.contains(x)).expect("H_{1ω} non-empty") })
        .collect();
    let p: Vec<Vec<usize>> = q.iter().map(|&qw| r.iter().map(|&rj| local[u.mul(qw, rj)]).collect()).collect();
    if p.iter().flatten().any(|&g| g == usize::MAX) {
        return Err(ReesError::IsomorphismCheckFailed);
    }
    let data = ReesMatrixData::new(group, r.len(), q.len(), p)?;
    let psi: Vec<usize> = (0..data.order())
        .map(|x| {
            let (i, g, w) = data.coords(x);
            u.mul(u.mul(r[i], embedding[g]), q[w])
        })
        .collect();
    if !is_isomorphism(&make_rees(&data)?, u, &psi) {
        return Err(ReesError::IsomorphismCheckFailed);
    }
    Ok((data, psi))
}

/// `K = ⟨p_{ωi}⟩ ≤ G` for a normalized structure matrix. This is the subgroup
/// of `H` generated by products of idempotents.
pub fn idempotent_entry_subgroup(data: &ReesMatrixData) -> Result<ElementSet, ReesError> {
    if !data.normalized {
        return Err(ReesError::NotNormalized);
    }
    let entries: ElementSet = data.p.iter().flatten().copied().collect();
    Ok(generated_subsemigroup(&data.group, &entries)?)
}

pub fn make_left_group(g: &FiniteSemigroup, k: usize) -> Result<FiniteSemigroup, ReesError> {
    check_group(g)?;
    Ok(left_group(g, k))
}

pub fn make_right_group(g: &FiniteSemigroup, k: usize) -> Result<FiniteSemigroup, ReesError> {
    check_group(g)?;
    Ok(right_group(g, k))
}

pub fn make_rectangular_band(m: usize, n: usize) -> FiniteSemigroup {
    rectangular_band(m, n)
}
