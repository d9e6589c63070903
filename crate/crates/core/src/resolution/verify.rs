use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{z_matrix_of, MapTarget, ModuleElement, ModuleMap, MonoidRing, Resolution, RingElement};
use crate::lattice::{kernel_basis, Echelon, IntMatrix, RowLattice};

/// Per-degree exactness data. `exact` and `composite_zero` are `None` at the
/// top degree, where there is no incoming map to compare against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub rank: usize,
    pub generators: Option<usize>,
    pub kernel_rank: usize,
    pub image_rank: Option<usize>,
    pub composite_zero: Option<bool>,
    pub exact: Option<bool>,
}

impl DegreeCheck {
    pub fn passes(&self) -> bool {
        self.composite_zero != Some(false) && self.exact != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub surjective: bool,
    pub degrees: Vec<DegreeCheck>,
}

impl ExactnessReport {
    pub fn all_pass(&self) -> bool {
        self.surjective && self.degrees.iter().all(DegreeCheck::passes)
    }

    /// Degrees at which a check fails.
    pub fn failing_degrees(&self) -> Vec<usize> {
        self.degrees.iter().filter(|d| !d.passes()).map(|d| d.degree).collect()
    }
}

pub fn kernel_lattice(f: &ModuleMap) -> RowLattice {
    RowLattice::from_matrix(&kernel_basis(&z_matrix_of(f)))
}

pub fn image_lattice(f: &ModuleMap) -> RowLattice {
    RowLattice::from_matrix(&z_matrix_of(f))
}

/// The ℤ-span of `{t·y : t ∈ scalars, y ∈ gens}`, i.e. the submodule
/// generated over `ℤ[scalars]` as a lattice of width `dim`.
pub fn orbit_lattice(gens: &[ModuleElement], scalars: &MonoidRing, dim: usize) -> RowLattice {
    let mut span = Echelon::new(dim);
    for y in gens {
        for &t in scalars.members() {
            span.insert(&y.act(&RingElement::basis(t)).flatten());
        }
    }
    RowLattice::from_echelon(&span)
}

/// Checks `∂_j ∂_{j+1} = 0` and `im ∂_{j+1} = ker ∂_j` as lattices for every
/// `j < n`, and that `∂_0` is onto `ℤ`.
pub fn verify_exact(r: &Resolution) -> ExactnessReport {
    let matrices: Vec<IntMatrix> = r.maps().iter().map(z_matrix_of).collect();
    let one = [BigInt::one()];
    let surjective = RowLattice::from_matrix(&matrices[0]).contains(&one);
    let n = r.length();
    let degrees = (0..=n)
        .map(|j| {
            let kernel = RowLattice::from_matrix(&kernel_basis(&matrices[j]));
            let (image_rank, composite_zero, exact) = if j < n {
                let image = RowLattice::from_matrix(&matrices[j + 1]);
                let composite = matrices[j + 1].mul(&matrices[j]).is_zero();
                (Some(image.rank()), Some(composite), Some(composite && image == kernel))
            } else {
                (None, None, None)
            };
            DegreeCheck {
                degree: j,
                rank: r.module(j).rank(),
                generators: r.generators_at(j).map(<[_]>::len),
                kernel_rank: kernel.rank(),
                image_rank,
                composite_zero,
                exact,
            }
        })
        .collect();
    ExactnessReport { surjective, degrees }
}

/// A single boundary coefficient: the coefficient of `element` in the
/// `target`-th coordinate of `∂_degree[basis]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MutationSite {
    pub degree: usize,
    pub basis: usize,
    pub target: usize,
    pub element: usize,
}

/// Every nonzero boundary coefficient of `∂_degree` (`degree ≥ 1`).
pub fn mutation_sites(r: &Resolution, degree: usize) -> Vec<MutationSite> {
    let Some(images) = r.map(degree).images() else { return Vec::new() };
    let mut sites = Vec::new();
    for (basis, im) in images.iter().enumerate() {
        for (target, c) in im.coeffs().iter().enumerate() {
            for (element, _) in c.terms() {
                sites.push(MutationSite { degree, basis, target, element });
            }
        }
    }
    sites
}

/// Pushes the chosen coefficient one step away from zero.
pub fn apply_mutation(r: &Resolution, site: MutationSite) -> Resolution {
    let mut map = r.map(site.degree).clone();
    let images = map.images_mut().expect("mutations only touch module-valued maps");
    let im = &images[site.basis];
    let c = im.coeff(site.target).coeff(site.element);
    let step = if c.is_negative() { BigInt::from(-1) } else { BigInt::one() };
    let bump = ModuleElement::single(im.module(), site.target, RingElement::term(site.element, step));
    images[site.basis] = im.add(&bump).expect("same module");
    debug_assert!(matches!(map.target(), MapTarget::Module { .. }));
    let mut out = r.clone();
    out.replace_map(site.degree, map);
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::resolution::resolve;
    use crate::semigroup::*;

    #[test]
    fn length_zero_is_surjective() {
        for s in [trivial_monoid(), cyclic_group(3), adjoin_identity(&rectangular_band(2, 2))] {
            let ring = Arc::new(MonoidRing::full(Arc::new(s)).unwrap());
            let r = resolve(ring, 0, None).unwrap();
            let report = verify_exact(&r);
            assert!(report.surjective);
            assert!(report.all_pass());
            assert_eq!(report.degrees.len(), 1);
            assert_eq!(report.degrees[0].exact, None);
        }
    }

    #[test]
    fn mutations_are_detected_next_to_the_mutated_degree() {
        let ring = Arc::new(MonoidRing::full(Arc::new(adjoin_identity(&rectangular_band(2, 2)))).unwrap());
        let r = resolve(ring, 3, None).unwrap();
        assert!(verify_exact(&r).all_pass());
        for k in 1..=3 {
            for site in mutation_sites(&r, k).into_iter().take(6) {
                let failing = verify_exact(&apply_mutation(&r, site)).failing_degrees();
                assert!(!failing.is_empty(), "undetected mutation {site:?}");
                assert!(failing.iter().all(|&d| d + 1 == k || d == k), "{site:?} failed at {failing:?}");
            }
        }
    }
}
