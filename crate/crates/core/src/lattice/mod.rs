//! Exact integer linear algebra.
//!
//! Vectors are rows and matrices act on the right: the image of `v` under
//! `M` is `v·M`, and the lattice of a matrix is the span of its rows.

mod engine;
mod snf;

pub use engine::Echelon;
pub use snf::smith_normal_form;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r);
        }
        IntMatrix { rows: n, cols, entries }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `v·M`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = &self[(i, j)];
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Text grid with right-aligned columns.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// A sublattice of `ℤ^width` held by its canonical Hermite basis, so two
/// lattices are equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RowLattice {
    width: usize,
    pivots: Vec<usize>,
    basis: Vec<Vec<BigInt>>,
}

impl RowLattice {
    pub fn from_generators<'a>(width: usize, rows: impl IntoIterator<Item = &'a [BigInt]>) -> Self {
        let mut e = Echelon::new(width);
        for r in rows {
            e.insert(r);
        }
        Self::from_echelon(&e)
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        Self::from_generators(m.cols(), (0..m.rows()).map(|i| m.row(i)))
    }

    pub fn from_echelon(e: &Echelon) -> Self {
        let (pivots, basis) = e.canonical_rows().into_iter().unzip();
        RowLattice { width: e.width(), pivots, basis }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> IntMatrix {
        IntMatrix::from_rows(self.width, self.basis.clone())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let mut v = v.to_vec();
        for (&c, row) in self.pivots.iter().zip(&self.basis) {
            if let Some(first) = v.iter().position(|x| !x.is_zero()) {
                if first < c {
                    return false;
                }
            } else {
                return true;
            }
            if v[c].is_zero() {
                continue;
            }
            let p = &row[c];
            if !(&v[c] % p).is_zero() {
                return false;
            }
            let q = &v[c] / p;
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &RowLattice) -> bool {
        other.basis.iter().all(|r| self.contains(r))
    }
}

/// Row-style Hermite normal form `H = U·M` with `U` unimodular.
///
/// `H` has the shape of `M`; its nonzero rows come first and form the
/// canonical basis of the row lattice.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (n, c) = (m.rows(), m.cols());
    let rows = augmented_echelon(m);
    let mut h = IntMatrix::zeros(n, c);
    let mut u = IntMatrix::zeros(n, n);
    for (k, (_, row)) in rows.into_iter().enumerate() {
        for j in 0..c {
            h[(k, j)] = row[j].clone();
        }
        for j in 0..n {
            u[(k, j)] = row[c + j].clone();
        }
    }
    (h, u)
}

/// Canonical echelon rows of `[M | I]`; exactly `rows(M)` of them.
fn augmented_echelon(m: &IntMatrix) -> Vec<(usize, Vec<BigInt>)> {
    let (n, c) = (m.rows(), m.cols());
    let mut e = Echelon::new(c + n);
    for i in 0..n {
        let mut v = m.row(i).to_vec();
        v.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
        e.insert(&v);
    }
    let rows = e.canonical_rows();
    debug_assert_eq!(rows.len(), n);
    rows
}

/// A basis of the left kernel `{x : x·M = 0}`, in canonical Hermite form.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let c = m.cols();
    let rows: Vec<Vec<BigInt>> =
        augmented_echelon(m).into_iter().filter(|(p, _)| *p >= c).map(|(_, r)| r[c..].to_vec()).collect();
    IntMatrix::from_rows(m.rows(), rows)
}

/// Rank of the row lattice of `M`.
pub fn rank(m: &IntMatrix) -> usize {
    RowLattice::from_matrix(m).rank()
}

pub fn lattice_membership(v: &[BigInt], l: &RowLattice) -> bool {
    l.contains(v)
}

pub fn lattice_equal(a: &RowLattice, b: &RowLattice) -> bool {
    a == b
}

/// Whether `b ⊆ a`.
pub fn lattice_contains(a: &RowLattice, b: &RowLattice) -> bool {
    a.contains_lattice(b)
}

pub fn is_unimodular(u: &IntMatrix) -> bool {
    u.rows() == u.cols() && u.determinant().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn is_canonical_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|q| q >= p) || h[(i, p)] <= BigInt::zero() {
                        return false;
                    }
                    for k in 0..i {
                        if h[(k, p)] < BigInt::zero() || h[(k, p)] >= h[(i, p)] {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id), (id.clone(), id.clone()));
        let d = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(hermite_normal_form(&d).0, d);
        let (h, u) = hermite_normal_form(&m(&[vec![1, 1], vec![1, -1]]));
        assert_eq!(h, m(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(u.mul(&m(&[vec![1, 1], vec![1, -1]])), h);
        // oracle: each generating set lies in the other's lattice
        let a = RowLattice::from_matrix(&m(&[vec![1, 1], vec![1, -1]]));
        let b = RowLattice::from_generators(2, [v(&[1, 1]).as_slice(), v(&[0, 2]).as_slice()]);
        assert!(a.contains(&v(&[1, 1])) && a.contains(&v(&[0, 2])));
        assert!(b.contains(&v(&[1, 1])) && b.contains(&v(&[1, -1])));
        assert!(lattice_equal(&a, &b));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&m(&[vec![2, 1], vec![1, 1]])).rows(), 0);
        assert_eq!(kernel_basis(&IntMatrix::zeros(3, 2)), IntMatrix::identity(3));
        let k = kernel_basis(&m(&[vec![1], vec![1]]));
        assert_eq!(k.rows(), 1);
        // oracle: small coefficient search for kernel vectors of (1,1)ᵀ
        let lat = RowLattice::from_matrix(&k);
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                assert_eq!(lat.contains(&v(&[a, b])), a + b == 0);
            }
        }
        assert!(lat.contains(&v(&[1, -1])) && lat.contains(&v(&[-1, 1])));
    }

    #[test]
    fn membership_examples() {
        let l = RowLattice::from_matrix(&m(&[vec![2, 0], vec![0, 1]]));
        assert!(l.contains(&v(&[0, 0])));
        assert!(!l.contains(&v(&[1, 0])));
        assert!(l.contains(&v(&[2, 0])));
        let empty = RowLattice::from_matrix(&IntMatrix::zeros(0, 2));
        assert!(empty.contains(&v(&[0, 0])));
        assert!(lattice_contains(&l, &empty));
        assert!(!lattice_contains(&empty, &l));
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(m(&[vec![2, 1], vec![1, 1]]).determinant(), BigInt::from(1));
        assert_eq!(m(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).determinant(), BigInt::from(-2));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).determinant(), BigInt::from(0));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
    }

    proptest! {
        #[test]
        fn hnf_postconditions(rows in small_matrix()) {
            let a = m(&rows);
            let (h, u) = hermite_normal_form(&a);
            prop_assert!(is_unimodular(&u));
            prop_assert_eq!(u.mul(&a), h.clone());
            prop_assert!(is_canonical_hnf(&h));
            prop_assert_eq!(RowLattice::from_matrix(&h), RowLattice::from_matrix(&a));
        }

        #[test]
        fn kernel_postconditions(rows in small_matrix()) {
            let a = m(&rows);
            let k = kernel_basis(&a);
            prop_assert!(k.mul(&a).is_zero());
            prop_assert_eq!(k.rows() + rank(&a), a.rows());
            // saturation: any small integer vector killed by A is in the span
            let lat = RowLattice::from_matrix(&k);
            let n = a.rows();
            for code in 0..3usize.pow(n as u32) {
                let x: Vec<BigInt> = (0..n).map(|i| BigInt::from((code / 3usize.pow(i as u32)) % 3) - 1).collect();
                if a.apply(&x).iter().all(Zero::is_zero) {
                    prop_assert!(lat.contains(&x));
                }
            }
        }

        #[test]
        fn membership_of_combinations(rows in small_matrix(), coeffs in prop::collection::vec(-3i64..4, 4)) {
            let a = m(&rows);
            let lat = RowLattice::from_matrix(&a);
            let combo: Vec<BigInt> = (0..a.cols())
                .map(|j| (0..a.rows()).map(|i| &a[(i, j)] * BigInt::from(coeffs[i % coeffs.len()])).sum())
                .collect();
            prop_assert!(lat.contains(&combo));
        }
    }
}
