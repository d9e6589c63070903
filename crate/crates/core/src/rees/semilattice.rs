use std::collections::BTreeMap;

use serde::Serialize;

use super::ReesError;
use crate::semigroup::{ElementSet, FiniteSemigroup};

/// Input for a strong semilattice of monoids `S = ⋃_{α ∈ Y} A_α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongSemilatticeData {
    pub components: Vec<FiniteSemigroup>,
    /// Pairs `(β, α)` meaning `β < α`. The order is their reflexive
    /// transitive closure.
    pub order: Vec<(usize, usize)>,
    /// `φ_{α,β}: A_α → A_β` for `β < α`, keyed by `(α, β)`. Maps along
    /// composite chains or into trivial components may be omitted; they are
    /// then obtained by composition or are constant.
    pub homs: BTreeMap<(usize, usize), Vec<usize>>,
}

/// A validated strong semilattice with its element layout in the built
/// semigroup: component `α` occupies a contiguous block starting at
/// `offsets[α]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongSemilattice {
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub homs: BTreeMap<(usize, usize), Vec<usize>>,
    pub offsets: Vec<usize>,
    pub sizes: Vec<usize>,
    pub identities: Vec<usize>,
}

impl StrongSemilattice {
    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    /// Whether `b ≤ a`.
    pub fn is_below(&self, b: usize, a: usize) -> bool {
        self.leq[a][b]
    }

    pub fn element(&self, alpha: usize, local: usize) -> usize {
        self.offsets[alpha] + local
    }

    pub fn component_of(&self, x: usize) -> (usize, usize) {
        let alpha = (0..self.sizes.len()).rev().find(|&a| self.offsets[a] <= x).expect("offsets start at 0");
        (alpha, x - self.offsets[alpha])
    }

    pub fn component(&self, alpha: usize) -> ElementSet {
        (self.offsets[alpha]..self.offsets[alpha] + self.sizes[alpha]).collect()
    }

    /// `1_α` as an element of `S`.
    pub fn identity_of(&self, alpha: usize) -> usize {
        self.element(alpha, self.identities[alpha])
    }

    pub fn minimum(&self) -> Option<usize> {
        let n = self.component_count();
        (0..n).find(|&b| (0..n).all(|a| self.leq[a][b]))
    }
}

fn err(msg: impl Into<String>) -> ReesError {
    ReesError::Semilattice(msg.into())
}

fn validate(data: &StrongSemilatticeData) -> Result<StrongSemilattice, ReesError> {
    let n = data.components.len();
    if n == 0 {
        return Err(err("no components"));
    }
    let mut identities = Vec::with_capacity(n);
    for (a, c) in data.components.iter().enumerate() {
        identities.push(c.identity().ok_or_else(|| err(format!("component {} is not a monoid", a + 1)))?);
    }

    // leq[a][b] means b ≤ a
    let mut leq = vec![vec![false; n]; n];
    for (a, row) in leq.iter_mut().enumerate() {
        row[a] = true;
    }
    for &(b, a) in &data.order {
        if a >= n || b >= n {
            return Err(err("order refers to a missing component"));
        }
        leq[a][b] = true;
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if leq[a][k] && leq[k][b] {
                    leq[a][b] = true;
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(err(format!("order is not antisymmetric at {} and {}", a + 1, b + 1)));
            }
        }
    }
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
            meet[a][b] = *lower
                .iter()
                .find(|&&m| lower.iter().all(|&c| leq[m][c]))
                .ok_or_else(|| err(format!("components {} and {} have no meet", a + 1, b + 1)))?;
        }
    }

    let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        homs.insert((a, a), (0..data.components[a].order()).collect());
    }
    for (&(a, b), map) in &data.homs {
        if a >= n || b >= n || a == b || !leq[a][b] {
            return Err(err(format!("hom ({}, {}) is not along a strict order pair", a + 1, b + 1)));
        }
        if map.len() != data.components[a].order() || map.iter().any(|&y| y >= data.components[b].order()) {
            return Err(err(format!("hom ({}, {}) has the wrong shape", a + 1, b + 1)));
        }
        homs.insert((a, b), map.clone());
    }
    // maps into a trivial component are forced
    for a in 0..n {
        for b in 0..n {
            if leq[a][b] && data.components[b].order() == 1 {
                homs.entry((a, b)).or_insert_with(|| vec![0; data.components[a].order()]);
            }
        }
    }
    // fill in composites along chains
    loop {
        let mut added = false;
        for a in 0..n {
            for c in 0..n {
                if !leq[a][c] || homs.contains_key(&(a, c)) {
                    continue;
                }
                let via =
                    (0..n).find(|&b| homs.contains_key(&(a, b)) && homs.contains_key(&(b, c)) && b != a && b != c);
                if let Some(b) = via {
                    let composite = homs[&(a, b)].iter().map(|&x| homs[&(b, c)][x]).collect();
                    homs.insert((a, c), composite);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if leq[a][b] && !homs.contains_key(&(a, b)) {
                return Err(err(format!("missing hom from {} to {}", a + 1, b + 1)));
            }
        }
    }
    for (&(a, b), map) in &homs {
        let (src, dst) = (&data.components[a], &data.components[b]);
        if map[identities[a]] != identities[b] {
            return Err(err(format!("hom ({}, {}) does not preserve the identity", a + 1, b + 1)));
        }
        if !src.elements().all(|x| src.elements().all(|y| map[src.mul(x, y)] == dst.mul(map[x], map[y]))) {
            return Err(err(format!("hom ({}, {}) is not multiplicative", a + 1, b + 1)));
        }
    }
    for (&(a, b), ab) in &homs {
        for c in 0..n {
            if let Some(bc) = homs.get(&(b, c)) {
                let ac = &homs[&(a, c)];
                if ab.iter().any(|&x| bc[x] != ac[x]) {
                    return Err(err(format!("homs along {} > {} > {} do not compose", a + 1, b + 1, c + 1)));
                }
            }
        }
    }

    let sizes: Vec<usize> = data.components.iter().map(FiniteSemigroup::order).collect();
    let offsets = sizes.iter().scan(0, |acc, &s| {
        let o = *acc;
        *acc += s;
        Some(o)
    });
    Ok(StrongSemilattice { leq, meet, homs, offsets: offsets.collect(), sizes, identities })
}

/// Builds `S` with `ab = φ_{α,αβ}(a)·φ_{β,αβ}(b)` for `a ∈ A_α`, `b ∈ A_β`.
pub fn make_strong_semilattice(
    data: &StrongSemilatticeData,
) -> Result<(FiniteSemigroup, StrongSemilattice), ReesError> {
    let sl = validate(data)?;
    let order: usize = sl.sizes.iter().sum();
    let mut rows = vec![vec![0; order]; order];
    for (x, row) in rows.iter_mut().enumerate() {
        let (a, lx) = sl.component_of(x);
        for (y, slot) in row.iter_mut().enumerate() {
            let (b, ly) = sl.component_of(y);
            let m = sl.meet[a][b];
            let product = data.components[m].mul(sl.homs[&(a, m)][lx], sl.homs[&(b, m)][ly]);
            *slot = sl.element(m, product);
        }
    }
    let names = (0..order)
        .map(|x| {
            let (a, l) = sl.component_of(x);
            format!("{}_{}", data.components[a].name(l), a + 1)
        })
        .collect();
    let s = FiniteSemigroup::from_table(rows, None)?.with_names(names)?;
    Ok((s, sl))
}

/// The least element of `Y`, if it exists.
pub fn semilattice_minimum(data: &StrongSemilatticeData) -> Result<Option<usize>, ReesError> {
    Ok(validate(data)?.minimum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::*;

    fn chain(top: FiniteSemigroup, bottom: FiniteSemigroup, hom: Vec<usize>) -> StrongSemilatticeData {
        StrongSemilatticeData { components: vec![top, bottom], order: vec![(1, 0)], homs: [((0, 1), hom)].into() }
    }

    #[test]
    fn single_component_is_itself() {
        let data = StrongSemilatticeData { components: vec![cyclic_group(3)], order: vec![], homs: BTreeMap::new() };
        let (s, sl) = make_strong_semilattice(&data).unwrap();
        assert_eq!(s.rows(), cyclic_group(3).rows());
        assert_eq!(sl.minimum(), Some(0));
    }

    #[test]
    fn two_chain_of_z2() {
        let (s, sl) = make_strong_semilattice(&chain(cyclic_group(2), cyclic_group(2), vec![0, 1])).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.mul(sl.identity_of(0), sl.identity_of(1)), sl.identity_of(1));
        assert_eq!(s.identity(), Some(sl.identity_of(0)));
        let bottom = sl.component(1);
        assert!(is_two_sided_ideal(&s, &bottom));
        assert_eq!(two_sided_identity_of(&s, &bottom), Some(sl.identity_of(1)));
    }

    #[test]
    fn trivialising_hom_is_accepted_and_non_hom_rejected() {
        // g ↦ 1 is a homomorphism Z2 → Z2
        let (s, _) = make_strong_semilattice(&chain(cyclic_group(2), cyclic_group(2), vec![0, 0])).unwrap();
        let rows = s.rows();
        let n = rows.len();
        assert!((0..n).all(|i| (0..n).all(|j| (0..n).all(|k| rows[rows[i][j]][k] == rows[i][rows[j][k]]))));
        // 1 ↦ g does not preserve the identity
        assert!(make_strong_semilattice(&chain(cyclic_group(2), cyclic_group(2), vec![1, 0])).is_err());
        // Z3 → Z2 has no non-trivial homomorphism
        assert!(make_strong_semilattice(&chain(cyclic_group(3), cyclic_group(2), vec![0, 1, 1])).is_err());
    }

    fn diamond(c: FiniteSemigroup) -> StrongSemilatticeData {
        // 0 = top, 1 and 2 in the middle, 3 = bottom
        let id: Vec<usize> = c.elements().collect();
        StrongSemilatticeData {
            components: vec![c.clone(), c.clone(), c.clone(), c],
            order: vec![(1, 0), (2, 0), (3, 1), (3, 2)],
            homs: [((0, 1), id.clone()), ((0, 2), id.clone()), ((1, 3), id.clone()), ((2, 3), id)].into(),
        }
    }

    #[test]
    fn diamond_semilattice() {
        let data = diamond(trivial_monoid());
        assert_eq!(semilattice_minimum(&data).unwrap(), Some(3));
        let (s, sl) = make_strong_semilattice(&data).unwrap();
        assert_eq!(s.order(), 4);
        assert!(s.is_commutative());
        assert_eq!(sl.meet[1][2], 3);
        assert_eq!(sl.homs[&(0, 3)], vec![0]);
        let (s, _) = make_strong_semilattice(&diamond(cyclic_group(2))).unwrap();
        assert_eq!(s.order(), 8);
    }

    #[test]
    fn missing_meet_and_incoherent_homs_are_rejected() {
        let two_minimal = StrongSemilatticeData {
            components: vec![trivial_monoid(), trivial_monoid(), trivial_monoid()],
            order: vec![(1, 0), (2, 0)],
            homs: [((0, 1), vec![0]), ((0, 2), vec![0])].into(),
        };
        assert!(matches!(make_strong_semilattice(&two_minimal), Err(ReesError::Semilattice(_))));
        let mut data = diamond(cyclic_group(2));
        data.homs.insert((1, 3), vec![0, 0]);
        assert!(make_strong_semilattice(&data).is_err());
        let chain_only = StrongSemilatticeData {
            components: vec![trivial_monoid(), trivial_monoid(), trivial_monoid()],
            order: vec![(1, 0), (2, 1)],
            homs: [((0, 1), vec![0]), ((1, 2), vec![0])].into(),
        };
        let (_, sl) = make_strong_semilattice(&chain_only).unwrap();
        assert_eq!(sl.minimum(), Some(2));
        assert_eq!(sl.homs[&(0, 2)], vec![0]);
    }
}
