use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ModuleError;
use crate::semigroup::{two_sided_identity_of, ElementSet, FiniteSemigroup};

/// A finitely supported integer combination of monoid elements, keyed by
/// element index. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RingElement(BTreeMap<usize, BigInt>);

impl RingElement {
    pub fn zero() -> Self {
        RingElement(BTreeMap::new())
    }

    pub fn basis(x: usize) -> Self {
        Self::term(x, BigInt::one())
    }

    pub fn term(x: usize, c: BigInt) -> Self {
        let mut r = Self::zero();
        r.add_term(x, c);
        r
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut r = Self::zero();
        for (x, c) in terms {
            r.add_term(x, BigInt::from(c));
        }
        r
    }

    pub fn add_term(&mut self, x: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(x).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&x);
        }
    }

    pub fn coeff(&self, x: usize) -> BigInt {
        self.0.get(&x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.0.iter().map(|(&x, c)| (x, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut r = self.clone();
        for (x, c) in other.terms() {
            r.add_term(x, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        RingElement(self.0.iter().map(|(&x, c)| (x, -c)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        if k.is_zero() {
            return Self::zero();
        }
        RingElement(self.0.iter().map(|(&x, c)| (x, c * k)).collect())
    }

    /// Convolution through the multiplication table of `s`.
    pub fn mul_in(&self, s: &FiniteSemigroup, other: &RingElement) -> RingElement {
        let mut r = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                r.add_term(s.mul(a, b), ca * cb);
            }
        }
        r
    }

    /// The sum of all coefficients: the augmentation `ε`.
    pub fn augmentation(&self) -> BigInt {
        self.0.values().sum()
    }

    /// Renders as `2·a - b` using element names from `s`.
    pub fn render(&self, s: &FiniteSemigroup) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (x, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let mag = c.abs();
            if mag.is_one() {
                out.push_str(&s.name(x));
            } else {
                out.push_str(&format!("{mag}·{}", s.name(x)));
            }
        }
        out
    }
}

/// `ℤM` for a submonoid-like subset `M` of an ambient monoid, with local
/// identity `unit`.
///
/// This covers `ℤS` itself, `ℤT` for a submonoid `T`, and `ℤH` or `ℤ(eSe)`
/// whose identity is an idempotent `e` rather than the identity of `S`, all
/// sharing one multiplication table.
#[derive(Debug, Clone)]
pub struct MonoidRing {
    ambient: Arc<FiniteSemigroup>,
    members: Vec<usize>,
    position: Vec<Option<usize>>,
    unit: usize,
}

impl PartialEq for MonoidRing {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
            && self.members == other.members
            && self.unit == other.unit
    }
}

impl Eq for MonoidRing {}

impl MonoidRing {
    /// `ℤS` for a monoid `S`.
    pub fn full(s: Arc<FiniteSemigroup>) -> Result<Self, ModuleError> {
        let unit = s.identity().ok_or(ModuleError::NotAMonoid)?;
        let members: ElementSet = s.elements().collect();
        Self::sub(s, &members, unit)
    }

    /// `ℤM` for a multiplicatively closed `members` with two-sided identity
    /// `unit`.
    pub fn sub(ambient: Arc<FiniteSemigroup>, members: &ElementSet, unit: usize) -> Result<Self, ModuleError> {
        if members.iter().any(|&x| x >= ambient.order()) || !members.contains(&unit) {
            return Err(ModuleError::NotInRing(unit));
        }
        if !ambient.is_closed(members) {
            return Err(ModuleError::NotClosed);
        }
        if two_sided_identity_of(&ambient, members) != Some(unit) {
            return Err(ModuleError::BadUnit(unit));
        }
        let mut position = vec![None; ambient.order()];
        let members: Vec<usize> = members.iter().copied().collect();
        for (k, &x) in members.iter().enumerate() {
            position[x] = Some(k);
        }
        Ok(MonoidRing { ambient, members, position, unit })
    }

    pub fn ambient(&self) -> &Arc<FiniteSemigroup> {
        &self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn member_set(&self) -> ElementSet {
        self.members.iter().copied().collect()
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.position.len() && self.position[x].is_some()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    pub fn one(&self) -> RingElement {
        RingElement::basis(self.unit)
    }

    pub fn supports(&self, a: &RingElement) -> bool {
        a.support().all(|x| self.contains(x))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a.mul_in(&self.ambient, b)
    }

    /// Whether `self` is a subring of `other` over the same table.
    pub fn is_subring_of(&self, other: &MonoidRing) -> bool {
        (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
            && self.members.iter().all(|&x| other.contains(x))
    }
}

impl fmt::Display for MonoidRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.members.iter().map(|&x| self.ambient.name(x)).collect();
        write!(f, "Z{{{}}}", names.join(","))
    }
}

/// Product in `ring`, rejecting factors supported outside it.
pub fn ring_multiply(ring: &MonoidRing, a: &RingElement, b: &RingElement) -> Result<RingElement, ModuleError> {
    if !ring.supports(a) || !ring.supports(b) {
        return Err(ModuleError::RingMismatch);
    }
    Ok(ring.mul(a, b))
}
