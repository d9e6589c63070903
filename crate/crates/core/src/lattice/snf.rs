use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

fn row_op(a: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..a.cols() {
        let delta = q * &a[(source, j)];
        a[(target, j)] -= delta;
    }
}

fn col_op(a: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for i in 0..a.rows() {
        let delta = q * &a[(i, source)];
        a[(i, target)] -= delta;
    }
}

fn swap_rows(a: &mut IntMatrix, i: usize, k: usize) {
    if i != k {
        for j in 0..a.cols() {
            let tmp = a[(i, j)].clone();
            a[(i, j)] = a[(k, j)].clone();
            a[(k, j)] = tmp;
        }
    }
}

fn swap_cols(a: &mut IntMatrix, j: usize, k: usize) {
    if j != k {
        for i in 0..a.rows() {
            let tmp = a[(i, j)].clone();
            a[(i, j)] = a[(i, k)].clone();
            a[(i, k)] = tmp;
        }
    }
}

/// Smith normal form `D = U·M·V` with `U`, `V` unimodular and the diagonal of
/// `D` non-negative with each entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (n, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(c);
    for t in 0..n.min(c) {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by_key(|&(i, j)| a[(i, j)].abs());
            let Some((pi, pj)) = pivot else {
                return (a, u, v);
            };
            swap_rows(&mut a, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..n {
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    row_op(&mut a, i, t, &q);
                    row_op(&mut u, i, t, &q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    col_op(&mut a, j, t, &q);
                    col_op(&mut v, j, t, &q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let d = a[(t, t)].clone();
            let bad_row = (t + 1..n).find(|&i| (t + 1..c).any(|j| !(&a[(i, j)] % &d).is_zero()));
            if let Some(i) = bad_row {
                let minus_one = BigInt::from(-1);
                row_op(&mut a, t, i, &minus_one);
                row_op(&mut u, t, i, &minus_one);
                continue;
            }
            if d.is_negative() {
                for j in 0..c {
                    a[(t, j)] = -&a[(t, j)];
                }
                for j in 0..n {
                    u[(t, j)] = -&u[(t, j)];
                }
            }
            break;
        }
    }
    (a, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::is_unimodular;
    use proptest::prelude::*;

    fn diag(d: &IntMatrix) -> Vec<BigInt> {
        (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect()
    }

    fn check(m: &IntMatrix) {
        let (d, u, v) = smith_normal_form(m);
        assert!(is_unimodular(&u) && is_unimodular(&v));
        assert_eq!(u.mul(m).mul(&v), d);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        let ds = diag(&d);
        assert!(ds.iter().all(|x| !x.is_negative()));
        for w in ds.windows(2) {
            assert!(if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
        }
    }

    #[test]
    fn diagonal_two_three() {
        let m = IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        let (d, _, _) = smith_normal_form(&m);
        assert_eq!(diag(&d), vec![BigInt::from(1), BigInt::from(6)]);
        // d1 is the gcd of the entries and d1·d2 = |det|
        assert_eq!(&diag(&d)[0] * &diag(&d)[1], m.determinant().abs());
        check(&m);
    }

    #[test]
    fn degenerate_inputs() {
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).0, z);
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).0, id);
        check(&IntMatrix::zeros(0, 2));
    }

    proptest! {
        #[test]
        fn snf_postconditions(rows in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-9i64..10, c), r)
        })) {
            check(&IntMatrix::from_i64(&rows));
        }
    }
}
