use std::collections::HashMap;

use serde::Serialize;

use super::{monoid_completion, ElementSet, FiniteSemigroup, SemigroupError};

/// Green's relations of a finite semigroup, with classes sorted by least
/// element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenStructure {
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
    /// The idempotent of each H-class, for those that are groups.
    pub h_idempotent: Vec<Option<usize>>,
    pub r_of: Vec<usize>,
    pub l_of: Vec<usize>,
    pub h_of: Vec<usize>,
    pub d_of: Vec<usize>,
}

impl GreenStructure {
    pub fn r_class_of(&self, x: usize) -> &[usize] {
        &self.r_classes[self.r_of[x]]
    }

    pub fn l_class_of(&self, x: usize) -> &[usize] {
        &self.l_classes[self.l_of[x]]
    }

    pub fn h_class_of(&self, x: usize) -> &[usize] {
        &self.h_classes[self.h_of[x]]
    }

    pub fn group_h_class_count(&self) -> usize {
        self.h_idempotent.iter().flatten().count()
    }
}

/// Groups elements by a key, numbering classes in order of least element.
fn partition_by<K: std::hash::Hash + Eq>(keys: Vec<K>) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut ids: HashMap<K, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut of = Vec::with_capacity(keys.len());
    for (x, key) in keys.into_iter().enumerate() {
        let next = classes.len();
        let id = *ids.entry(key).or_insert(next);
        if id == classes.len() {
            classes.push(Vec::new());
        }
        classes[id].push(x);
        of.push(id);
    }
    (classes, of)
}

fn principal_right_ideal(s1: &FiniteSemigroup, x: usize) -> Vec<bool> {
    let mut set = vec![false; s1.order()];
    for y in s1.elements() {
        set[s1.mul(x, y)] = true;
    }
    set
}

fn principal_left_ideal(s1: &FiniteSemigroup, x: usize) -> Vec<bool> {
    let mut set = vec![false; s1.order()];
    for y in s1.elements() {
        set[s1.mul(y, x)] = true;
    }
    set
}

/// Computes R, L, H and D by comparing principal one-sided ideals `xS¹`,
/// `S¹x`. For a monoid `S¹ = S`; otherwise an identity is adjoined
/// internally.
pub fn green_classes(s: &FiniteSemigroup) -> GreenStructure {
    let n = s.order();
    let s1 = monoid_completion(s);
    // indices of S are preserved by the completion, and the ideal of x in S¹
    // restricted to S is still xS¹ because x·1 = x lies in S
    let r_keys: Vec<Vec<bool>> = (0..n).map(|x| principal_right_ideal(&s1, x)[..n].to_vec()).collect();
    let l_keys: Vec<Vec<bool>> = (0..n).map(|x| principal_left_ideal(&s1, x)[..n].to_vec()).collect();
    let (r_classes, r_of) = partition_by(r_keys);
    let (l_classes, l_of) = partition_by(l_keys);
    let (h_classes, h_of) = partition_by((0..n).map(|x| (r_of[x], l_of[x])).collect());

    // D: smallest equivalence containing R and L
    let mut uf = UnionFind::new(n);
    for class in r_classes.iter().chain(l_classes.iter()) {
        for w in class.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let (d_classes, d_of) = partition_by((0..n).map(|x| uf.find(x)).collect());

    let h_idempotent = h_classes.iter().map(|class| class.iter().copied().find(|&x| s.is_idempotent(x))).collect();

    GreenStructure { r_classes, l_classes, h_classes, d_classes, h_idempotent, r_of, l_of, h_of, d_of }
}

/// The maximal subgroup `H_e` as a standalone group, plus its embedding.
pub fn maximal_subgroup(s: &FiniteSemigroup, e: usize) -> Result<(FiniteSemigroup, Vec<usize>), SemigroupError> {
    s.check_element(e)?;
    if !s.is_idempotent(e) {
        return Err(SemigroupError::NotIdempotent(e));
    }
    let green = green_classes(s);
    let class: ElementSet = green.h_class_of(e).iter().copied().collect();
    let (group, embedding) = s.induced(&class)?;
    check_group(&group)?;
    Ok((group, embedding))
}

/// Exhaustive group axiom check: identity and two-sided inverses.
pub fn check_group(g: &FiniteSemigroup) -> Result<usize, SemigroupError> {
    let e = g.identity().ok_or_else(|| SemigroupError::NotAGroup("no identity".into()))?;
    for x in g.elements() {
        if !g.elements().any(|y| g.mul(x, y) == e && g.mul(y, x) == e) {
            return Err(SemigroupError::NotAGroup(format!("element {} has no inverse", g.name(x))));
        }
    }
    Ok(e)
}

/// `S¹xS¹`.
pub fn principal_two_sided_ideal(s: &FiniteSemigroup, x: usize) -> ElementSet {
    let s1 = monoid_completion(s);
    let n = s.order();
    let mut out = ElementSet::new();
    for a in s1.elements() {
        let ax = s1.mul(a, x);
        for b in s1.elements() {
            let y = s1.mul(ax, b);
            if y < n {
                out.insert(y);
            }
        }
    }
    out
}

/// Simple iff every principal two-sided ideal is the whole semigroup.
pub fn is_simple(s: &FiniteSemigroup) -> bool {
    s.elements().all(|x| principal_two_sided_ideal(s, x).len() == s.order())
}

/// For finite semigroups, simple already implies completely simple; the
/// idempotent check is kept as a sanity guard.
pub fn is_completely_simple(s: &FiniteSemigroup) -> bool {
    is_simple(s) && s.elements().any(|x| s.is_idempotent(x))
}

/// The minimal two-sided ideal (the kernel) of a finite semigroup.
pub fn minimal_ideal(s: &FiniteSemigroup) -> ElementSet {
    s.elements()
        .map(|x| principal_two_sided_ideal(s, x))
        .min_by_key(|ideal| ideal.len())
        .expect("semigroups are non-empty")
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::*;

    #[test]
    fn group_has_one_class_per_relation() {
        let g = green_classes(&cyclic_group(6));
        for classes in [&g.r_classes, &g.l_classes, &g.h_classes, &g.d_classes] {
            assert_eq!(classes.len(), 1);
        }
        assert_eq!(g.h_idempotent, vec![Some(0)]);
    }

    #[test]
    fn rectangular_band_rows_and_columns() {
        let g = green_classes(&rectangular_band(2, 3));
        assert_eq!(g.r_classes, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(g.l_classes, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(g.h_classes.len(), 6);
        assert_eq!(g.d_classes.len(), 1);
    }

    #[test]
    fn h_is_meet_of_r_and_l() {
        for s in
            [adjoin_identity(&rectangular_band(2, 3)), full_transformation_monoid(3), adjoin_zero(&cyclic_group(3))]
        {
            let g = green_classes(&s);
            for x in s.elements() {
                let expected: Vec<usize> =
                    g.r_class_of(x).iter().copied().filter(|y| g.l_class_of(x).contains(y)).collect();
                assert_eq!(g.h_class_of(x), expected.as_slice());
            }
            for (class, idem) in g.h_classes.iter().zip(&g.h_idempotent) {
                let count = class.iter().filter(|&&x| s.is_idempotent(x)).count();
                assert!(count <= 1);
                assert_eq!(idem.is_some(), count == 1);
            }
        }
    }

    #[test]
    fn transformation_monoid_classes_by_rank() {
        // D-classes of T3 are the maps of image size 1, 2, 3
        let g = green_classes(&full_transformation_monoid(3));
        let mut sizes: Vec<usize> = g.d_classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 6, 18]);
    }

    #[test]
    fn maximal_subgroups() {
        let z3 = cyclic_group(3);
        let (h, emb) = maximal_subgroup(&z3, 0).unwrap();
        assert_eq!(h.rows(), z3.rows());
        assert_eq!(emb, vec![0, 1, 2]);
        let (h, _) = maximal_subgroup(&rectangular_band(2, 2), 3).unwrap();
        assert_eq!(h.order(), 1);
        assert!(maximal_subgroup(&z3, 1).is_err());
    }

    #[test]
    fn simplicity() {
        for s in [cyclic_group(4), rectangular_band(2, 3), left_group(&cyclic_group(2), 2)] {
            assert!(is_simple(&s));
            assert!(is_completely_simple(&s));
        }
        let u1 = adjoin_identity(&rectangular_band(2, 2));
        assert!(!is_simple(&u1));
        // the principal ideal of any non-identity element is exactly U
        assert_eq!(principal_two_sided_ideal(&u1, 0), (0..4).collect());
        assert_eq!(minimal_ideal(&u1), (0..4).collect());
        assert_eq!(minimal_ideal(&adjoin_zero(&cyclic_group(2))), [2].into_iter().collect());
    }
}
