//! Incremental row echelon insertion over `ℤ`.
//!
//! Rows live in machine integers until an operation overflows, at which point
//! the whole basis is promoted to `BigInt`. An insertion computes every
//! replacement row before committing any of them, so a failed machine-integer
//! attempt leaves the basis untouched and can be replayed after promotion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// `(g, x, y)` with `g = gcd(a, b) > 0` and `g = x·a + y·b`.
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)>;
    fn div_exact(&self, d: &Self) -> Self;
    /// Floor division, so that `self - q·d ∈ [0, d)` for `d > 0`.
    fn div_floor(&self, d: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coef for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        if *a == i64::MIN || *b == i64::MIN {
            return None;
        }
        let (mut r0, mut r1) = (*a, *b);
        let (mut x0, mut x1) = (1i64, 0i64);
        let (mut y0, mut y1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (x0, x1) = (x1, x0.checked_sub(q.checked_mul(x1)?)?);
            (y0, y1) = (y1, y0.checked_sub(q.checked_mul(y1)?)?);
        }
        if r0 < 0 {
            Some((-r0, -x0, -y0))
        } else {
            Some((r0, x0, y0))
        }
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn div_floor(&self, d: &Self) -> Option<Self> {
        Some(self.div_euclid(*d))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn ext_gcd(a: &Self, b: &Self) -> Option<(Self, Self, Self)> {
        let e = a.extended_gcd(b);
        if Signed::is_negative(&e.gcd) {
            Some((-e.gcd, -e.x, -e.y))
        } else {
            Some((e.gcd, e.x, e.y))
        }
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn div_floor(&self, d: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, d))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Echelon rows indexed by pivot column.
#[derive(Debug, Clone)]
pub(crate) struct Rows<C> {
    width: usize,
    by_pivot: Vec<Option<Vec<C>>>,
}

fn leading<C: Coef>(v: &[C], from: usize) -> Option<usize> {
    (from..v.len()).find(|&c| !v[c].is_zero())
}

/// `a·u + b·w`, failing on overflow.
fn combine<C: Coef>(a: &C, u: &[C], b: &C, w: &[C]) -> Option<Vec<C>> {
    u.iter().zip(w).map(|(x, y)| a.mul(x)?.add(&b.mul(y)?)).collect()
}

impl<C: Coef> Rows<C> {
    fn new(width: usize) -> Self {
        Rows { width, by_pivot: vec![None; width] }
    }

    fn rank(&self) -> usize {
        self.by_pivot.iter().flatten().count()
    }

    /// Inserts `v`; `None` signals overflow with the basis unchanged.
    fn try_insert(&self, mut v: Vec<C>) -> Option<Vec<(usize, Vec<C>)>> {
        let mut writes = Vec::new();
        let mut col = 0;
        while let Some(c) = leading(&v, col) {
            match &self.by_pivot[c] {
                None => {
                    if v[c].is_negative() {
                        v = v.iter().map(|x| x.neg()).collect::<Option<_>>()?;
                    }
                    writes.push((c, v));
                    return Some(writes);
                }
                Some(b) => {
                    let (p, a) = (&b[c], &v[c]);
                    let (g, x, y) = C::ext_gcd(p, a)?;
                    let pg = p.div_exact(&g);
                    let ag = a.div_exact(&g).neg()?;
                    let new_b = combine(&x, b, &y, &v)?;
                    let new_v = combine(&ag, b, &pg, &v)?;
                    debug_assert!(new_v[c].is_zero());
                    if new_b != *b {
                        writes.push((c, new_b));
                    }
                    v = new_v;
                    col = c + 1;
                }
            }
        }
        Some(writes)
    }

    fn commit(&mut self, writes: Vec<(usize, Vec<C>)>) {
        for (c, row) in writes {
            self.by_pivot[c] = Some(row);
        }
    }

    fn contains(&self, v: &[C]) -> Option<bool> {
        let mut v = v.to_vec();
        let mut col = 0;
        while let Some(c) = leading(&v, col) {
            let Some(b) = &self.by_pivot[c] else { return Some(false) };
            let p = &b[c];
            let q = v[c].div_floor(p)?;
            if !q.mul(p)?.sub(&v[c])?.is_zero() {
                return Some(false);
            }
            let minus_q = q.neg()?;
            v = v.iter().zip(b).map(|(x, y)| x.add(&minus_q.mul(y)?)).collect::<Option<_>>()?;
            col = c + 1;
        }
        Some(true)
    }

    /// Canonical reduced rows: positive pivots, entries above each pivot in
    /// `[0, pivot)`.
    fn canonical(&self) -> Option<Vec<(usize, Vec<C>)>> {
        let mut rows: Vec<(usize, Vec<C>)> =
            self.by_pivot.iter().enumerate().filter_map(|(c, r)| r.clone().map(|r| (c, r))).collect();
        for k in 0..rows.len() {
            let (pc, pivot_row) = rows[k].clone();
            let p = pivot_row[pc].clone();
            debug_assert!(!p.is_negative());
            for (_, row) in rows.iter_mut().take(k) {
                let q = row[pc].div_floor(&p)?;
                if !q.is_zero() {
                    let minus_q = q.neg()?;
                    *row = row.iter().zip(&pivot_row).map(|(x, y)| x.add(&minus_q.mul(y)?)).collect::<Option<_>>()?;
                }
            }
        }
        Some(rows)
    }

    fn to_big(&self) -> Rows<BigInt> {
        Rows {
            width: self.width,
            by_pivot: self.by_pivot.iter().map(|r| r.as_ref().map(|r| r.iter().map(Coef::to_big).collect())).collect(),
        }
    }
}

#[derive(Debug, Clone)]
enum Inner {
    Small(Rows<i64>),
    Big(Rows<BigInt>),
}

/// A growing integer row lattice in echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    inner: Inner,
}

fn small(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { inner: Inner::Small(Rows::new(width)) }
    }

    pub fn width(&self) -> usize {
        match &self.inner {
            Inner::Small(r) => r.width,
            Inner::Big(r) => r.width,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            Inner::Small(r) => r.rank(),
            Inner::Big(r) => r.rank(),
        }
    }

    fn promote(&mut self) -> &mut Rows<BigInt> {
        if let Inner::Small(r) = &self.inner {
            self.inner = Inner::Big(r.to_big());
        }
        match &mut self.inner {
            Inner::Big(r) => r,
            Inner::Small(_) => unreachable!(),
        }
    }

    pub fn insert(&mut self, v: &[BigInt]) {
        assert_eq!(v.len(), self.width(), "row width mismatch");
        if let Inner::Small(rows) = &mut self.inner {
            if let Some(writes) = small(v).and_then(|sv| rows.try_insert(sv)) {
                rows.commit(writes);
                return;
            }
        }
        let rows = self.promote();
        let writes = rows.try_insert(v.to_vec()).expect("big integers do not overflow");
        rows.commit(writes);
    }

    pub fn insert_i64(&mut self, v: &[i64]) {
        if let Inner::Small(rows) = &mut self.inner {
            if let Some(writes) = rows.try_insert(v.to_vec()) {
                rows.commit(writes);
                return;
            }
        }
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.insert(&big);
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.width(), "row width mismatch");
        match &self.inner {
            Inner::Small(rows) => {
                if let Some(answer) = small(v).and_then(|sv| rows.contains(&sv)) {
                    return answer;
                }
                rows.to_big().contains(v).expect("big integers do not overflow")
            }
            Inner::Big(rows) => rows.contains(v).expect("big integers do not overflow"),
        }
    }

    /// Canonical Hermite basis as `(pivot column, row)` pairs in pivot order.
    pub fn canonical_rows(&self) -> Vec<(usize, Vec<BigInt>)> {
        let big = match &self.inner {
            Inner::Small(rows) => match rows.canonical() {
                Some(c) => return c.into_iter().map(|(p, r)| (p, r.iter().map(Coef::to_big).collect())).collect(),
                None => rows.to_big(),
            },
            Inner::Big(rows) => rows.clone(),
        };
        big.canonical().expect("big integers do not overflow")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ext_gcd_signs() {
        for (a, b) in [(12i64, 18i64), (-4, 6), (0, -5), (7, 0), (-3, -9)] {
            let (g, x, y) = i64::ext_gcd(&a, &b).unwrap();
            assert!(g >= 0);
            assert_eq!(g, a.gcd(&b));
            assert_eq!(x * a + y * b, g);
            let (gb, xb, yb) = BigInt::ext_gcd(&BigInt::from(a), &BigInt::from(b)).unwrap();
            assert_eq!(gb, BigInt::from(g));
            assert_eq!(xb * a + yb * b, gb);
        }
    }

    #[test]
    fn overflow_promotes_without_losing_rows() {
        let mut e = Echelon::new(2);
        e.insert_i64(&[1, i64::MAX / 2]);
        e.insert_i64(&[3, i64::MAX / 3]);
        e.insert_i64(&[0, 7]);
        let mut reference = Echelon::new(2);
        reference.inner = Inner::Big(Rows::new(2));
        for v in [[1, i64::MAX / 2], [3, i64::MAX / 3], [0, 7]] {
            reference.insert(&big(&v));
        }
        assert_eq!(e.canonical_rows(), reference.canonical_rows());
        assert!(e.contains(&big(&[0, 7])));
    }
}
