//! Finite semigroups given by complete multiplication tables.
//!
//! Elements are positional indices `0..order`; display names are cosmetic.
//! Every constructor re-validates associativity exhaustively, so a
//! [`FiniteSemigroup`] value is always a genuine semigroup.

mod builders;
mod cayley;
mod green;

pub use builders::*;
pub use cayley::{is_connected_undirected, right_cayley_graph, CayleyGraph};
pub use green::{
    check_group, green_classes, is_completely_simple, is_simple, maximal_subgroup, minimal_ideal,
    principal_two_sided_ideal, GreenStructure,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A set of element indices, always iterated in increasing order.
pub type ElementSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("associativity fails at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("element {0} is not a two-sided identity")]
    BadIdentity(usize),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("generating set is empty")]
    EmptyGeneratingSet,
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("subset is not closed under multiplication")]
    NotClosed,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("semigroup has no identity element")]
    NotAMonoid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    identity: Option<usize>,
    names: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Builds and validates a semigroup from a square table of 0-based indices.
    ///
    /// When `identity_hint` is `None` a two-sided identity is detected if one
    /// exists.
    pub fn from_table(rows: Vec<Vec<usize>>, identity_hint: Option<usize>) -> Result<Self, SemigroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(SemigroupError::EmptyTable);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != order {
                return Err(SemigroupError::NotSquare { row, len: entries.len(), expected: order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(SemigroupError::EntryOutOfRange { row, col, value, order });
                }
            }
            table.extend(entries);
        }
        Self::from_flat(order, table, identity_hint)
    }

    pub(crate) fn from_flat(
        order: usize,
        table: Vec<usize>,
        identity_hint: Option<usize>,
    ) -> Result<Self, SemigroupError> {
        debug_assert_eq!(table.len(), order * order);
        if let Some((i, j, k)) = first_non_associative(order, &table) {
            return Err(SemigroupError::NonAssociative(i, j, k));
        }
        let mut s = FiniteSemigroup { order, table, identity: None, names: None };
        match identity_hint {
            Some(e) => {
                if e >= order || !s.is_two_sided_identity(e) {
                    return Err(SemigroupError::BadIdentity(e));
                }
                s.identity = Some(e);
            }
            None => s.identity = (0..order).find(|&e| s.is_two_sided_identity(e)),
        }
        Ok(s)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, SemigroupError> {
        if names.len() != self.order {
            return Err(SemigroupError::NameCount { expected: self.order, got: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn require_identity(&self) -> Result<usize, SemigroupError> {
        self.identity.ok_or(SemigroupError::NotAMonoid)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of an element: its name, or its 1-based index.
    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => (x + 1).to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The table as nested rows of 0-based indices.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_two_sided_identity(&self, e: usize) -> bool {
        self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check_element(&self, x: usize) -> Result<(), SemigroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(SemigroupError::ElementOutOfRange(x))
        }
    }

    pub fn check_subset<'a>(&self, a: impl IntoIterator<Item = &'a usize>) -> Result<(), SemigroupError> {
        a.into_iter().try_for_each(|&x| self.check_element(x))
    }

    /// Product of a non-empty word, left to right.
    pub fn product(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }

    /// The same set with reversed multiplication, `a * b := b a`.
    pub fn opposite(&self) -> FiniteSemigroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.mul(b, a);
            }
        }
        FiniteSemigroup { order: n, table, identity: self.identity, names: self.names.clone() }
    }

    pub fn is_closed(&self, subset: &ElementSet) -> bool {
        subset.iter().all(|&a| subset.iter().all(|&b| subset.contains(&self.mul(a, b))))
    }

    /// The subsemigroup on `subset` with its own 0-based indexing, plus the
    /// embedding back into `self` (position `k` maps to the `k`-th smallest
    /// element of `subset`).
    pub fn induced(&self, subset: &ElementSet) -> Result<(FiniteSemigroup, Vec<usize>), SemigroupError> {
        if subset.is_empty() {
            return Err(SemigroupError::EmptyGeneratingSet);
        }
        self.check_subset(subset)?;
        let embedding: Vec<usize> = subset.iter().copied().collect();
        let mut position = vec![usize::MAX; self.order];
        for (k, &x) in embedding.iter().enumerate() {
            position[x] = k;
        }
        let m = embedding.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &embedding {
            for &b in &embedding {
                let p = position[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(SemigroupError::NotClosed);
                }
                table.push(p);
            }
        }
        let mut sub = FiniteSemigroup::from_flat(m, table, None)?;
        if let Some(names) = &self.names {
            sub.names = Some(embedding.iter().map(|&x| names[x].clone()).collect());
        }
        Ok((sub, embedding))
    }
}

fn first_non_associative(n: usize, t: &[usize]) -> Option<(usize, usize, usize)> {
    for i in 0..n {
        for j in 0..n {
            let ij = t[i * n + j];
            for k in 0..n {
                if t[ij * n + k] != t[i * n + t[j * n + k]] {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Validates a 0-based table; the entry point named by the toolkit's public
/// interface.
pub fn make_semigroup(table: Vec<Vec<usize>>, identity_hint: Option<usize>) -> Result<FiniteSemigroup, SemigroupError> {
    FiniteSemigroup::from_table(table, identity_hint)
}

/// `S¹`: always adjoins a fresh two-sided identity at index `|S|`, even when
/// `S` already has one.
pub fn adjoin_identity(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.order;
    let one = n;
    let m = n + 1;
    let mut table = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = if a == one {
                b
            } else if b == one {
                a
            } else {
                s.mul(a, b)
            };
        }
    }
    let names = s.names.as_ref().map(|names| {
        let mut names = names.clone();
        let fresh = if names.iter().any(|x| x == "1") { "1'".to_string() } else { "1".to_string() };
        names.push(fresh);
        names
    });
    FiniteSemigroup { order: m, table, identity: Some(one), names }
}

/// `S` itself if it has an identity, otherwise `S¹`. This is the completion
/// used for principal ideals `xS¹`.
pub fn monoid_completion(s: &FiniteSemigroup) -> FiniteSemigroup {
    if s.is_monoid() {
        s.clone()
    } else {
        adjoin_identity(s)
    }
}

/// Adjoins a fresh two-sided zero at index `|S|`.
pub fn adjoin_zero(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.order;
    let zero = n;
    let m = n + 1;
    let mut table = vec![zero; m * m];
    for a in 0..n {
        for b in 0..n {
            table[a * m + b] = s.mul(a, b);
        }
    }
    let names = s.names.as_ref().map(|names| {
        let mut names = names.clone();
        names.push("0".to_string());
        names
    });
    FiniteSemigroup { order: m, table, identity: s.identity, names }
}

pub fn idempotents(s: &FiniteSemigroup) -> ElementSet {
    s.elements().filter(|&x| s.is_idempotent(x)).collect()
}

/// `⟨A⟩`: the smallest multiplicatively closed subset containing `A`.
pub fn generated_subsemigroup(s: &FiniteSemigroup, a: &ElementSet) -> Result<ElementSet, SemigroupError> {
    if a.is_empty() {
        return Err(SemigroupError::EmptyGeneratingSet);
    }
    s.check_subset(a)?;
    let mut inside = vec![false; s.order];
    let mut queue: Vec<usize> = a.iter().copied().collect();
    for &x in &queue {
        inside[x] = true;
    }
    // every element of <A> is a word in A, so right multiplication by
    // generators reaches all of it
    while let Some(x) = queue.pop() {
        for &g in a {
            let y = s.mul(x, g);
            if !inside[y] {
                inside[y] = true;
                queue.push(y);
            }
        }
    }
    Ok(to_set(&inside))
}

/// `⟨A⟩_{r.u.}`: the smallest right unitary subsemigroup containing `A`.
///
/// Alternates product closure with the saturation `{s : st ∈ T for some t ∈ T}`
/// until neither adds anything.
pub fn right_unitary_closure(s: &FiniteSemigroup, a: &ElementSet) -> Result<ElementSet, SemigroupError> {
    if a.is_empty() {
        return Err(SemigroupError::EmptyGeneratingSet);
    }
    s.check_subset(a)?;
    let mut inside = vec![false; s.order];
    for &x in a {
        inside[x] = true;
    }
    loop {
        let mut current = to_set(&inside);
        current = generated_subsemigroup(s, &current)?;
        let mut grown = false;
        for &x in &current {
            if !inside[x] {
                inside[x] = true;
                grown = true;
            }
        }
        for x in s.elements() {
            if inside[x] {
                continue;
            }
            if current.iter().any(|&t| inside[s.mul(x, t)]) {
                inside[x] = true;
                grown = true;
            }
        }
        if !grown {
            return Ok(to_set(&inside));
        }
    }
}

/// Whether `t` is a right unitary subsemigroup: closed, and `st ∈ T`, `t ∈ T`
/// force `s ∈ T`.
pub fn is_right_unitary(s: &FiniteSemigroup, t: &ElementSet) -> bool {
    s.is_closed(t) && s.elements().filter(|x| !t.contains(x)).all(|x| t.iter().all(|&y| !t.contains(&s.mul(x, y))))
}

pub fn direct_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> FiniteSemigroup {
    let (n, m) = (s.order, t.order);
    let order = n * m;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let (a1, a2) = (a / m, a % m);
            let (b1, b2) = (b / m, b % m);
            table.push(s.mul(a1, b1) * m + t.mul(a2, b2));
        }
    }
    let identity = match (s.identity, t.identity) {
        (Some(e), Some(f)) => Some(e * m + f),
        _ => None,
    };
    let names = (0..order).map(|x| format!("({},{})", s.name(x / m), t.name(x % m))).collect();
    FiniteSemigroup { order, table, identity, names: Some(names) }
}

/// `eSe` with identity `e`, plus its embedding into `S`.
pub fn local_submonoid(s: &FiniteSemigroup, e: usize) -> Result<(FiniteSemigroup, Vec<usize>), SemigroupError> {
    s.check_element(e)?;
    if !s.is_idempotent(e) {
        return Err(SemigroupError::NotIdempotent(e));
    }
    let set: ElementSet = s.elements().map(|x| s.mul(s.mul(e, x), e)).collect();
    let (sub, embedding) = s.induced(&set)?;
    let local_e = embedding.iter().position(|&x| x == e).expect("e ∈ eSe");
    debug_assert_eq!(sub.identity, Some(local_e));
    Ok((sub, embedding))
}

/// Whether `t` is a two-sided ideal (`ST ∪ TS ⊆ T`).
pub fn is_two_sided_ideal(s: &FiniteSemigroup, t: &ElementSet) -> bool {
    t.iter().all(|&x| s.elements().all(|y| t.contains(&s.mul(x, y)) && t.contains(&s.mul(y, x))))
}

pub fn is_left_ideal(s: &FiniteSemigroup, t: &ElementSet) -> bool {
    t.iter().all(|&x| s.elements().all(|y| t.contains(&s.mul(y, x))))
}

pub fn is_right_ideal(s: &FiniteSemigroup, t: &ElementSet) -> bool {
    t.iter().all(|&x| s.elements().all(|y| t.contains(&s.mul(x, y))))
}

/// The identity of the subsemigroup `t`, if it has one.
pub fn two_sided_identity_of(s: &FiniteSemigroup, t: &ElementSet) -> Option<usize> {
    t.iter().copied().find(|&e| t.iter().all(|&x| s.mul(e, x) == x && s.mul(x, e) == x))
}

pub(crate) fn to_set(flags: &[bool]) -> ElementSet {
    flags.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}
