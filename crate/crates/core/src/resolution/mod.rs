//! Integral monoid rings, free modules and partial free resolutions of the
//! trivial module `ℤ`.
//!
//! A free module of rank `r` over `ℤM` is flattened to `ℤ^{r·|M|}` with basis
//! `{s·[b]}`, and every exactness statement is checked on those flat lattices.

mod module;
mod ring;
mod verify;

pub use module::{
    augmentation, augmentation_of, is_zero_vec, max_coefficient, scalar_act, z_matrix_of, FreeModule, Label, MapTarget,
    MapValue, ModuleElement, ModuleMap,
};
pub use ring::{ring_multiply, MonoidRing, RingElement};
pub use verify::{
    apply_mutation, image_lattice, kernel_lattice, mutation_sites, orbit_lattice, verify_exact, DegreeCheck,
    ExactnessReport, MutationSite,
};

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{kernel_basis, Echelon, RowLattice};
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("semigroup has no identity element")]
    NotAMonoid,
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("operands live in different modules")]
    ModuleMismatch,
    #[error("element {0} is not in the ring")]
    NotInRing(usize),
    #[error("ring support is not closed under multiplication")]
    NotClosed,
    #[error("element {0} is not the identity of the ring support")]
    BadUnit(usize),
    #[error("duplicate basis label {0}")]
    DuplicateLabel(String),
    #[error("expected {expected} images, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("chosen kernel generators do not span the kernel")]
    KernelCertificateFailed,
    #[error("scalar ring is not contained in the module ring")]
    ScalarsNotContained,
    #[error("malformed resolution: {0}")]
    Malformed(String),
}

/// A partial free resolution `A_n → … → A_0 → ℤ → 0`.
///
/// `generators[j]` is a recorded generating set of `ker ∂_j`; for resolutions
/// built by [`extend_resolution`] it is exactly the image of the basis of
/// `A_{j+1}`. When `scalar_subring` is set, the generating sets generate over
/// that smaller ring.
#[derive(Debug, Clone)]
pub struct Resolution {
    ring: Arc<MonoidRing>,
    modules: Vec<Arc<FreeModule>>,
    maps: Vec<ModuleMap>,
    generators: Vec<Vec<ModuleElement>>,
    scalar_subring: Option<Arc<MonoidRing>>,
}

impl Resolution {
    /// The length-zero resolution `ℤM → ℤ`.
    pub fn start(ring: Arc<MonoidRing>) -> Self {
        let (a0, eps) = augmentation_of(&ring);
        Resolution { ring, modules: vec![a0], maps: vec![eps], generators: Vec::new(), scalar_subring: None }
    }

    /// Assembles a resolution from explicit data, checking shapes only.
    pub fn from_parts(
        ring: Arc<MonoidRing>,
        modules: Vec<Arc<FreeModule>>,
        maps: Vec<ModuleMap>,
        generators: Vec<Vec<ModuleElement>>,
        scalar_subring: Option<Arc<MonoidRing>>,
    ) -> Result<Self, ModuleError> {
        if modules.is_empty() || modules.len() != maps.len() {
            return Err(ModuleError::Malformed("need one map per module".into()));
        }
        if generators.len() > modules.len() {
            return Err(ModuleError::Malformed("more generating sets than degrees".into()));
        }
        if !matches!(maps[0].target(), MapTarget::Integers { .. }) {
            return Err(ModuleError::Malformed("degree-zero map must land in ℤ".into()));
        }
        for (j, (m, f)) in modules.iter().zip(&maps).enumerate() {
            if m.ring() != &ring || f.domain() != m {
                return Err(ModuleError::Malformed(format!("map {j} has the wrong domain")));
            }
            if j > 0 && f.codomain() != Some(&modules[j - 1]) {
                return Err(ModuleError::Malformed(format!("map {j} has the wrong codomain")));
            }
        }
        for (j, gens) in generators.iter().enumerate() {
            if gens.iter().any(|g| g.module() != &modules[j]) {
                return Err(ModuleError::Malformed(format!("generators {j} live in the wrong module")));
            }
        }
        Ok(Resolution { ring, modules, maps, generators, scalar_subring })
    }

    pub fn ring(&self) -> &Arc<MonoidRing> {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn modules(&self) -> &[Arc<FreeModule>] {
        &self.modules
    }

    pub fn module(&self, j: usize) -> &Arc<FreeModule> {
        &self.modules[j]
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    pub fn map(&self, j: usize) -> &ModuleMap {
        &self.maps[j]
    }

    pub fn generators(&self) -> &[Vec<ModuleElement>] {
        &self.generators
    }

    pub fn generators_at(&self, j: usize) -> Option<&[ModuleElement]> {
        self.generators.get(j).map(Vec::as_slice)
    }

    pub fn scalar_subring(&self) -> Option<&Arc<MonoidRing>> {
        self.scalar_subring.as_ref()
    }

    /// The ring over which the recorded generating sets generate.
    pub fn generating_ring(&self) -> &Arc<MonoidRing> {
        self.scalar_subring.as_ref().unwrap_or(&self.ring)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    pub(crate) fn replace_map(&mut self, j: usize, map: ModuleMap) {
        self.maps[j] = map;
    }
}

/// A generating set of `ker f` as a module over `scalars`.
///
/// Walks the rows of the Hermite basis of the integer kernel and keeps each
/// row that is not yet in the ℤ-span of the `scalars`-orbit of the kept ones.
/// The result is re-checked by lattice equality before it is returned.
pub fn kernel_module_generators(f: &ModuleMap, scalars: &MonoidRing) -> Result<Vec<ModuleElement>, ModuleError> {
    let domain = f.domain();
    if !scalars.is_subring_of(domain.ring()) {
        return Err(ModuleError::ScalarsNotContained);
    }
    let kernel = kernel_basis(&z_matrix_of(f));
    let mut span = Echelon::new(domain.flat_dim());
    let mut chosen = Vec::new();
    for k in 0..kernel.rows() {
        let row = kernel.row(k);
        if span.contains(row) {
            continue;
        }
        let y = ModuleElement::unflatten(domain, row);
        for &t in scalars.members() {
            span.insert(&y.act(&RingElement::basis(t)).flatten());
        }
        chosen.push(y);
    }
    if RowLattice::from_echelon(&span) != RowLattice::from_matrix(&kernel) {
        return Err(ModuleError::KernelCertificateFailed);
    }
    Ok(chosen)
}

/// `X ∪ FX`: turns a generating set over `ℤS` into one over `ℤT` when `S` is
/// covered by `T` and the classes `L_f` for `f ∈ F`.
pub fn zt_generators_from_zs(x: &[ModuleElement], f: &[usize]) -> Vec<ModuleElement> {
    let mut out = x.to_vec();
    for &idem in f {
        out.extend(x.iter().map(|g| g.act(&RingElement::basis(idem))));
    }
    out
}

/// How the next generating set is chosen while extending a resolution.
#[derive(Debug, Clone)]
pub enum GeneratorRule {
    /// Greedy generators over the resolution's generating ring.
    Greedy,
    /// Greedy generators over the full ring, then `X ∪ FX`.
    UpgradeWith(Vec<usize>),
}

/// Extends `r` to length `n` by appending `A_{j+1} = ⊕_{x ∈ X_j} ℤM[x]` with
/// `∂_{j+1}[x] = x`.
pub fn extend_resolution(r: &Resolution, n: usize) -> Result<Resolution, ModuleError> {
    extend_resolution_with(r, n, &GeneratorRule::Greedy)
}

pub fn extend_resolution_with(r: &Resolution, n: usize, rule: &GeneratorRule) -> Result<Resolution, ModuleError> {
    let mut r = r.clone();
    while r.length() < n {
        let j = r.length();
        let top = &r.maps[j];
        let gens = match r.generators.get(j) {
            Some(g) => g.clone(),
            None => {
                let g = match rule {
                    GeneratorRule::Greedy => kernel_module_generators(top, r.generating_ring())?,
                    GeneratorRule::UpgradeWith(f) => zt_generators_from_zs(&kernel_module_generators(top, &r.ring)?, f),
                };
                r.generators.push(g.clone());
                g
            }
        };
        let labels = (0..gens.len()).map(|index| Label::Gen { degree: j, index }).collect();
        let next = FreeModule::new(r.ring.clone(), labels)?;
        let map = ModuleMap::new(next.clone(), r.modules[j].clone(), gens)?;
        r.modules.push(next);
        r.maps.push(map);
    }
    Ok(r)
}

/// Resolves `ℤ` over `ring` to length `n`, with generating sets chosen over
/// `scalars` when given.
pub fn resolve(ring: Arc<MonoidRing>, n: usize, scalars: Option<Arc<MonoidRing>>) -> Result<Resolution, ModuleError> {
    if let Some(t) = &scalars {
        if !t.is_subring_of(&ring) {
            return Err(ModuleError::ScalarsNotContained);
        }
    }
    let mut r = Resolution::start(ring);
    r.scalar_subring = scalars;
    extend_resolution(&r, n)
}

/// Resolves `ℤ` over `ℤS` for a monoid `S`.
pub fn resolve_monoid(s: &Arc<FiniteSemigroup>, n: usize) -> Result<Resolution, ModuleError> {
    resolve(Arc::new(MonoidRing::full(s.clone())?), n, None)
}

/// Re-expresses `r` so that every recorded generating set generates over
/// `scalars`. Sets that already do are kept; the first one that does not is
/// replaced by `X ∪ FX`, which changes every later module, so the remaining
/// degrees are rebuilt with [`GeneratorRule::UpgradeWith`]. Returns whether
/// anything changed.
pub fn upgrade_generators(
    r: &Resolution,
    scalars: Arc<MonoidRing>,
    f: &[usize],
) -> Result<(Resolution, bool), ModuleError> {
    if !scalars.is_subring_of(&r.ring) {
        return Err(ModuleError::ScalarsNotContained);
    }
    let mut out = Resolution::start(r.ring.clone());
    out.scalar_subring = Some(scalars.clone());
    let mut changed = false;
    for j in 0..r.generators.len() {
        let gens = if changed {
            zt_generators_from_zs(&kernel_module_generators(&out.maps[j], &out.ring)?, f)
        } else {
            let x = &r.generators[j];
            let dim = r.modules[j].flat_dim();
            if orbit_lattice(x, &scalars, dim) == kernel_lattice(&r.maps[j]) {
                x.clone()
            } else {
                changed = true;
                zt_generators_from_zs(x, f)
            }
        };
        out.generators.push(gens);
        if j < r.length() {
            out = extend_resolution(&out, j + 1)?;
        }
    }
    let out = extend_resolution_with(&out, r.length(), &GeneratorRule::UpgradeWith(f.to_vec()))?;
    Ok((out, changed))
}

/// Records the kernel generating set of the top map, so that the resolution
/// can later be extended or transferred one degree further.
pub fn with_top_generators(r: &Resolution) -> Result<Resolution, ModuleError> {
    let mut r = r.clone();
    if r.generators.len() == r.length() {
        let g = kernel_module_generators(&r.maps[r.length()], r.generating_ring())?;
        r.generators.push(g);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{lattice_equal, IntMatrix};
    use crate::semigroup::*;

    fn full(s: FiniteSemigroup) -> Arc<MonoidRing> {
        Arc::new(MonoidRing::full(Arc::new(s)).unwrap())
    }

    #[test]
    fn trivial_monoid_resolution_collapses() {
        let r = resolve(full(trivial_monoid()), 3, None).unwrap();
        assert_eq!(r.ranks(), vec![1, 0, 0, 0]);
        assert!(verify_exact(&r).all_pass());
        let eps = r.map(0);
        assert!(kernel_module_generators(eps, r.ring()).unwrap().is_empty());
    }

    #[test]
    fn z2_kernel_of_augmentation() {
        let ring = full(cyclic_group(2));
        let r = Resolution::start(ring.clone());
        let gens = kernel_module_generators(r.map(0), &ring).unwrap();
        assert_eq!(gens.len(), 1);
        let expected = RowLattice::from_matrix(&IntMatrix::from_i64(&[vec![-1, 1]]));
        assert!(lattice_equal(&orbit_lattice(&gens, &ring, r.module(0).flat_dim()), &expected));
    }

    /// The classical periodic resolution of `ℤ` over `ℤC_2`: multiplication by
    /// `g - 1`, `g + 1`, `g - 1`.
    #[test]
    fn z2_matches_periodic_resolution() {
        let ring = full(cyclic_group(2));
        let r = resolve(ring.clone(), 3, None).unwrap();
        assert_eq!(r.ranks(), vec![1, 1, 1, 1]);
        assert!(verify_exact(&r).all_pass());
        let by_hand = [vec![vec![-1, 1], vec![1, -1]], vec![vec![1, 1], vec![1, 1]], vec![vec![-1, 1], vec![1, -1]]];
        for (j, m) in by_hand.iter().enumerate() {
            // same image lattice; both maps are rank one so a unimodular change of
            // basis on the domain relates them
            let ours = RowLattice::from_matrix(&z_matrix_of(r.map(j + 1)));
            assert!(lattice_equal(&ours, &RowLattice::from_matrix(&IntMatrix::from_i64(m))));
        }
    }

    #[test]
    fn band_with_identity_resolves_exactly() {
        let r = resolve(full(adjoin_identity(&rectangular_band(2, 2))), 2, None).unwrap();
        let report = verify_exact(&r);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn injective_map_has_no_kernel_generators() {
        let ring = full(cyclic_group(3));
        let a = FreeModule::new(ring.clone(), vec![Label::Gen { degree: 0, index: 0 }]).unwrap();
        let id = ModuleMap::new(a.clone(), a.clone(), vec![ModuleElement::basis(&a, 0)]).unwrap();
        assert!(kernel_module_generators(&id, &ring).unwrap().is_empty());
    }

    #[test]
    fn change_of_scalars_generating_sets() {
        // S = U¹ for the 2×2 band, T = L_e ∪ {1}, F = {(1,2)}
        let s = Arc::new(adjoin_identity(&rectangular_band(2, 2)));
        let ring = Arc::new(MonoidRing::full(s.clone()).unwrap());
        let t = Arc::new(MonoidRing::sub(s.clone(), &[0, 2, 4].into_iter().collect(), 4).unwrap());
        let r = Resolution::start(ring.clone());
        let x0 = kernel_module_generators(r.map(0), &ring).unwrap();
        assert!(zt_generators_from_zs(&x0, &[]) == x0);
        let upgraded = zt_generators_from_zs(&x0, &[1]);
        assert_eq!(upgraded.len(), 2 * x0.len());
        let dim = r.module(0).flat_dim();
        assert_eq!(orbit_lattice(&upgraded, &t, dim), orbit_lattice(&x0, &ring, dim));
        let single = zt_generators_from_zs(&x0[..1], &[1]);
        assert_eq!(single[1], x0[0].act(&RingElement::basis(1)));
    }

    #[test]
    fn resolving_over_a_subring_of_scalars() {
        let s = Arc::new(adjoin_identity(&rectangular_band(2, 2)));
        let ring = Arc::new(MonoidRing::full(s.clone()).unwrap());
        let t = Arc::new(MonoidRing::sub(s, &[0, 2, 4].into_iter().collect(), 4).unwrap());
        let r = resolve(ring, 2, Some(t.clone())).unwrap();
        assert!(verify_exact(&r).all_pass());
        for (j, gens) in r.generators().iter().enumerate() {
            let dim = r.module(j).flat_dim();
            assert_eq!(orbit_lattice(gens, &t, dim), kernel_lattice(r.map(j)));
        }
    }
}
