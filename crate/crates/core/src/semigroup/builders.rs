//! Standard families. Index conventions follow the Rees coordinates
//! `(i, g, ω) ↦ i·|G|·|Ω| + g·|Ω| + ω`, so a left group `(i, g)` sits at
//! `i·|G| + g` and a rectangular band `(i, ω)` at `i·n + ω`.

use super::{direct_product, FiniteSemigroup};

fn build(order: usize, f: impl Fn(usize, usize) -> usize, names: Vec<String>) -> FiniteSemigroup {
    let table = (0..order * order).map(|k| f(k / order, k % order)).collect();
    FiniteSemigroup::from_flat(order, table, None)
        .expect("standard family tables are associative")
        .with_names(names)
        .expect("one name per element")
}

pub fn trivial_monoid() -> FiniteSemigroup {
    build(1, |_, _| 0, vec!["1".into()])
}

/// `Z_n` with `g^a` at index `a`.
pub fn cyclic_group(n: usize) -> FiniteSemigroup {
    assert!(n > 0);
    let names = (0..n)
        .map(|a| match a {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{a}"),
        })
        .collect();
    build(n, |a, b| (a + b) % n, names)
}

/// `Z_2 × Z_2` as bit vectors under xor.
pub fn klein_four() -> FiniteSemigroup {
    build(4, |a, b| a ^ b, vec!["1".into(), "a".into(), "b".into(), "ab".into()])
}

/// `xy = x`.
pub fn left_zero(n: usize) -> FiniteSemigroup {
    build(n, |a, _| a, (1..=n).map(|i| format!("l{i}")).collect())
}

/// `xy = y`.
pub fn right_zero(n: usize) -> FiniteSemigroup {
    build(n, |_, b| b, (1..=n).map(|i| format!("r{i}")).collect())
}

/// `I × Ω` with `(i, ω)(j, μ) = (i, μ)`.
pub fn rectangular_band(m: usize, n: usize) -> FiniteSemigroup {
    let names = (0..m * n).map(|k| format!("({},{})", k / n + 1, k % n + 1)).collect();
    build(m * n, |a, b| (a / n) * n + b % n, names)
}

/// `LZ_k × G`: one L-class and `k` R-classes.
pub fn left_group(g: &FiniteSemigroup, k: usize) -> FiniteSemigroup {
    let mut p = direct_product(&left_zero(k), g);
    let names = (0..p.order()).map(|x| format!("({},{})", x / g.order() + 1, g.name(x % g.order()))).collect();
    p.names = Some(names);
    p
}

/// `G × RZ_k`: one R-class and `k` L-classes.
pub fn right_group(g: &FiniteSemigroup, k: usize) -> FiniteSemigroup {
    let mut p = direct_product(g, &right_zero(k));
    let names = (0..p.order()).map(|x| format!("({},{})", g.name(x / k), x % k + 1)).collect();
    p.names = Some(names);
    p
}

/// All maps `{0..n} → {0..n}` composed left to right, `x(fg) = (xf)g`.
/// The map `f` has index `Σ f(x)·n^x`.
pub fn full_transformation_monoid(n: usize) -> FiniteSemigroup {
    assert!((1..=4).contains(&n), "transformation monoids are only built for small degrees");
    let order = n.pow(n as u32);
    let decode = |code: usize| -> Vec<usize> { (0..n).map(|x| (code / n.pow(x as u32)) % n).collect() };
    let encode = |f: &[usize]| -> usize { f.iter().enumerate().map(|(x, &y)| y * n.pow(x as u32)).sum() };
    let maps: Vec<Vec<usize>> = (0..order).map(decode).collect();
    let names = maps.iter().map(|f| f.iter().map(|y| (y + 1).to_string()).collect::<String>()).collect();
    build(
        order,
        |a, b| {
            let composite: Vec<usize> = maps[a].iter().map(|&y| maps[b][y]).collect();
            encode(&composite)
        },
        names,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{green_classes, idempotents};

    #[test]
    fn left_groups() {
        let lz = left_group(&crate::semigroup::trivial_monoid(), 3);
        assert_eq!(lz.rows(), left_zero(3).rows());
        let l = left_group(&cyclic_group(2), 2);
        assert_eq!(l.order(), 4);
        assert_eq!(idempotents(&l).len(), 2);
        let green = green_classes(&l);
        assert_eq!(green.l_classes.len(), 1);
        assert_eq!(green.r_classes.len(), 2);
        let r = green_classes(&right_group(&cyclic_group(2), 2));
        assert_eq!((r.r_classes.len(), r.l_classes.len()), (1, 2));
    }

    #[test]
    fn rectangular_band_products() {
        let b = rectangular_band(2, 2);
        assert_eq!(idempotents(&b).len(), 4);
        for a in 0..4 {
            for c in 0..4 {
                assert_eq!(b.mul(a, c), (a / 2) * 2 + c % 2);
            }
        }
    }

    #[test]
    fn klein_four_has_no_generator() {
        let k = klein_four();
        assert_eq!(k.identity(), Some(0));
        assert!(k.elements().all(|x| k.mul(x, x) == 0));
    }
}
