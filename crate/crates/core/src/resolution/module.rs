use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::ring::{MonoidRing, RingElement};
use super::ModuleError;
use crate::lattice::IntMatrix;

/// Basis symbols of free modules. The boundary formulas of the transfer
/// constructions dispatch on the kind of label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    /// The generator of the degree-zero module `ℤS`.
    Unit,
    /// `[x]` for the `index`-th element of a generating set `X_degree`.
    Gen { degree: usize, index: usize },
    /// `[f, x]` for an idempotent `f` and `x ∈ X_degree`.
    Pair { idem: usize, degree: usize, index: usize },
    /// A distinguished idempotent summand `[e]` or `[f]`.
    Idem(usize),
    /// `f[b]`: the basis of a restricted module indexed by `f` and an old label.
    Translate { by: usize, base: Box<Label> },
}

impl Label {
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        match self {
            Label::Unit => "[*]".into(),
            Label::Gen { degree, index } => format!("[x{degree}.{index}]"),
            Label::Pair { idem, degree, index } => format!("[{},x{degree}.{index}]", name(*idem)),
            Label::Idem(e) => format!("[{}]", name(*e)),
            Label::Translate { by, base } => format!("{}{}", name(*by), base.render(name)),
        }
    }
}

/// A finitely generated free left module over a [`MonoidRing`].
#[derive(Debug, Clone)]
pub struct FreeModule {
    ring: Arc<MonoidRing>,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl PartialEq for FreeModule {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.ring == other.ring
    }
}

impl Eq for FreeModule {}

impl FreeModule {
    pub fn new(ring: Arc<MonoidRing>, labels: Vec<Label>) -> Result<Arc<Self>, ModuleError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (k, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), k).is_some() {
                return Err(ModuleError::DuplicateLabel(format!("{l:?}")));
            }
        }
        Ok(Arc::new(FreeModule { ring, labels, index }))
    }

    pub fn ring(&self) -> &Arc<MonoidRing> {
        &self.ring
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Dimension of the underlying free abelian group, `rank · |M|`.
    pub fn flat_dim(&self) -> usize {
        self.rank() * self.ring.size()
    }

    /// Flat coordinate of the ℤ-basis element `s·[b]`.
    pub fn flat_index(&self, label: usize, s: usize) -> usize {
        label * self.ring.size() + self.ring.position(s).expect("scalar outside the ring")
    }

    /// The ℤ-basis element at a flat coordinate, as `(label, element)`.
    pub fn flat_basis(&self, k: usize) -> (usize, usize) {
        let m = self.ring.size();
        (k / m, self.ring.members()[k % m])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    module: Arc<FreeModule>,
    coeffs: Vec<RingElement>,
}

impl ModuleElement {
    pub fn zero(module: &Arc<FreeModule>) -> Self {
        ModuleElement { module: module.clone(), coeffs: vec![RingElement::zero(); module.rank()] }
    }

    /// `λ[b]` for the label at position `b`.
    pub fn single(module: &Arc<FreeModule>, b: usize, coeff: RingElement) -> Self {
        let mut m = Self::zero(module);
        m.coeffs[b] = coeff;
        m
    }

    /// `λ[label]`; panics if the label is absent.
    pub fn labelled(module: &Arc<FreeModule>, label: &Label, coeff: RingElement) -> Self {
        let b = module.label_index(label).unwrap_or_else(|| panic!("label {label:?} not in module"));
        Self::single(module, b, coeff)
    }

    pub fn basis(module: &Arc<FreeModule>, b: usize) -> Self {
        Self::single(module, b, module.ring().one())
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, b: usize) -> &RingElement {
        &self.coeffs[b]
    }

    pub fn coeff_of(&self, label: &Label) -> RingElement {
        self.module.label_index(label).map(|b| self.coeffs[b].clone()).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElement::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), ModuleError> {
        if Arc::ptr_eq(&self.module, &other.module) || self.module == other.module {
            Ok(())
        } else {
            Err(ModuleError::ModuleMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ModuleError> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(ModuleElement { module: self.module.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ModuleError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ModuleElement { module: self.module.clone(), coeffs: self.coeffs.iter().map(RingElement::neg).collect() }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        ModuleElement { module: self.module.clone(), coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect() }
    }

    /// Left action `λ·m`, unchecked.
    pub fn act(&self, lambda: &RingElement) -> Self {
        let s = self.module.ring().ambient();
        ModuleElement { module: self.module.clone(), coeffs: self.coeffs.iter().map(|c| lambda.mul_in(s, c)).collect() }
    }

    /// Coordinates in the flat ℤ-basis `{s·[b]}`.
    pub fn flatten(&self) -> Vec<BigInt> {
        let m = self.module.ring().size();
        let mut v = vec![BigInt::zero(); self.module.flat_dim()];
        for (b, c) in self.coeffs.iter().enumerate() {
            for (x, k) in c.terms() {
                let pos = self.module.ring().position(x).expect("coefficient outside the ring");
                v[b * m + pos] = k.clone();
            }
        }
        v
    }

    pub fn unflatten(module: &Arc<FreeModule>, v: &[BigInt]) -> Self {
        assert_eq!(v.len(), module.flat_dim(), "flat vector length mismatch");
        let mut out = Self::zero(module);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (b, s) = module.flat_basis(k);
                out.coeffs[b].add_term(s, c.clone());
            }
        }
        out
    }

    /// Text form such as `(2·a - b)[x0.0] + (1)[f,x0.0]`.
    pub fn render(&self) -> String {
        let s = self.module.ring().ambient().clone();
        let name = |x: usize| s.name(x);
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.module.labels())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("({}){}", c.render(&s), l.render(&name)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `λ·m`, rejecting scalars supported outside the module's ring.
pub fn scalar_act(lambda: &RingElement, m: &ModuleElement) -> Result<ModuleElement, ModuleError> {
    if !m.module().ring().supports(lambda) {
        return Err(ModuleError::RingMismatch);
    }
    Ok(m.act(lambda))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapTarget {
    Module {
        codomain: Arc<FreeModule>,
        images: Vec<ModuleElement>,
    },
    /// The trivial module `ℤ`, on which every monoid element acts as 1.
    Integers {
        images: Vec<BigInt>,
    },
}

/// A module homomorphism given by the images of the domain basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    domain: Arc<FreeModule>,
    target: MapTarget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapValue {
    Module(ModuleElement),
    Integer(BigInt),
}

impl ModuleMap {
    pub fn new(
        domain: Arc<FreeModule>,
        codomain: Arc<FreeModule>,
        images: Vec<ModuleElement>,
    ) -> Result<Self, ModuleError> {
        if images.len() != domain.rank() {
            return Err(ModuleError::ShapeMismatch { expected: domain.rank(), got: images.len() });
        }
        if domain.ring() != codomain.ring() {
            return Err(ModuleError::RingMismatch);
        }
        for im in &images {
            if !(Arc::ptr_eq(im.module(), &codomain) || **im.module() == *codomain) {
                return Err(ModuleError::ModuleMismatch);
            }
        }
        Ok(ModuleMap { domain, target: MapTarget::Module { codomain, images } })
    }

    pub fn to_integers(domain: Arc<FreeModule>, images: Vec<BigInt>) -> Result<Self, ModuleError> {
        if images.len() != domain.rank() {
            return Err(ModuleError::ShapeMismatch { expected: domain.rank(), got: images.len() });
        }
        Ok(ModuleMap { domain, target: MapTarget::Integers { images } })
    }

    pub fn domain(&self) -> &Arc<FreeModule> {
        &self.domain
    }

    pub fn target(&self) -> &MapTarget {
        &self.target
    }

    pub fn codomain(&self) -> Option<&Arc<FreeModule>> {
        match &self.target {
            MapTarget::Module { codomain, .. } => Some(codomain),
            MapTarget::Integers { .. } => None,
        }
    }

    pub fn images(&self) -> Option<&[ModuleElement]> {
        match &self.target {
            MapTarget::Module { images, .. } => Some(images),
            MapTarget::Integers { .. } => None,
        }
    }

    pub fn images_mut(&mut self) -> Option<&mut Vec<ModuleElement>> {
        match &mut self.target {
            MapTarget::Module { images, .. } => Some(images),
            MapTarget::Integers { .. } => None,
        }
    }

    /// Width of the target in flat coordinates (1 for `ℤ`).
    pub fn target_dim(&self) -> usize {
        match &self.target {
            MapTarget::Module { codomain, .. } => codomain.flat_dim(),
            MapTarget::Integers { .. } => 1,
        }
    }

    pub fn apply(&self, m: &ModuleElement) -> Result<MapValue, ModuleError> {
        if !(Arc::ptr_eq(m.module(), &self.domain) || **m.module() == *self.domain) {
            return Err(ModuleError::ModuleMismatch);
        }
        Ok(match &self.target {
            MapTarget::Module { codomain, images } => {
                let mut out = ModuleElement::zero(codomain);
                for (c, im) in m.coeffs().iter().zip(images) {
                    if !c.is_zero() {
                        out = out.add(&im.act(c))?;
                    }
                }
                MapValue::Module(out)
            }
            MapTarget::Integers { images } => {
                MapValue::Integer(m.coeffs().iter().zip(images).map(|(c, n)| c.augmentation() * n).sum())
            }
        })
    }

    /// Applies a map whose target is a module.
    pub fn apply_module(&self, m: &ModuleElement) -> Result<ModuleElement, ModuleError> {
        match self.apply(m)? {
            MapValue::Module(x) => Ok(x),
            MapValue::Integer(_) => Err(ModuleError::ModuleMismatch),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        let images = self.images().ok_or(ModuleError::ModuleMismatch)?;
        match &other.target {
            MapTarget::Module { codomain, .. } => {
                let new_images = images.iter().map(|im| other.apply_module(im)).collect::<Result<_, _>>()?;
                ModuleMap::new(self.domain.clone(), codomain.clone(), new_images)
            }
            MapTarget::Integers { .. } => {
                let new_images = images
                    .iter()
                    .map(|im| match other.apply(im)? {
                        MapValue::Integer(n) => Ok(n),
                        MapValue::Module(_) => Err(ModuleError::ModuleMismatch),
                    })
                    .collect::<Result<_, _>>()?;
                ModuleMap::to_integers(self.domain.clone(), new_images)
            }
        }
    }

    /// Flat value of the ℤ-basis element `s·[b]`.
    pub fn flat_image(&self, b: usize, s: usize) -> Vec<BigInt> {
        match &self.target {
            MapTarget::Module { images, .. } => images[b].act(&RingElement::basis(s)).flatten(),
            MapTarget::Integers { images } => vec![images[b].clone()],
        }
    }
}

/// The integer matrix of `f` in flat coordinates: row `(b, s)` is the image
/// of `s·[b]`, so `v ↦ v·Z` realises `f` and `Z(g∘f) = Z(f)·Z(g)`.
pub fn z_matrix_of(f: &ModuleMap) -> IntMatrix {
    let domain = f.domain();
    let rows = (0..domain.flat_dim())
        .map(|k| {
            let (b, s) = domain.flat_basis(k);
            f.flat_image(b, s)
        })
        .collect();
    IntMatrix::from_rows(f.target_dim(), rows)
}

/// The degree-zero module `ℤM` with its augmentation `ε: ℤM → ℤ`.
pub fn augmentation_of(ring: &Arc<MonoidRing>) -> (Arc<FreeModule>, ModuleMap) {
    let a0 = FreeModule::new(ring.clone(), vec![Label::Unit]).expect("single label");
    let eps = ModuleMap::to_integers(a0.clone(), vec![BigInt::from(1)]).expect("rank one");
    (a0, eps)
}

/// `ε_S: ℤS → ℤ` for a monoid `S`.
pub fn augmentation(s: &Arc<crate::semigroup::FiniteSemigroup>) -> Result<ModuleMap, ModuleError> {
    let ring = Arc::new(MonoidRing::full(s.clone())?);
    Ok(augmentation_of(&ring).1)
}

/// Whether a flat vector is zero.
pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Largest absolute coefficient in a module element; used to bound mutation
/// tests and reports.
pub fn max_coefficient(m: &ModuleElement) -> BigInt {
    m.coeffs().iter().flat_map(|c| c.terms().map(|(_, k)| k.abs())).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{adjoin_identity, cyclic_group, rectangular_band, trivial_monoid};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring_of(s: crate::semigroup::FiniteSemigroup) -> Arc<MonoidRing> {
        Arc::new(MonoidRing::full(Arc::new(s)).unwrap())
    }

    fn random_ring_element(rng: &mut ChaCha8Rng, ring: &MonoidRing) -> RingElement {
        let members = ring.members();
        RingElement::from_terms((0..3).map(|_| (members[rng.gen_range(0..members.len())], rng.gen_range(-3..4))))
    }

    fn random_element(rng: &mut ChaCha8Rng, module: &Arc<FreeModule>) -> ModuleElement {
        let mut m = ModuleElement::zero(module);
        for b in 0..module.rank() {
            m = m.add(&ModuleElement::single(module, b, random_ring_element(rng, module.ring()))).unwrap();
        }
        m
    }

    fn gens(ring: &Arc<MonoidRing>, k: usize, degree: usize) -> Arc<FreeModule> {
        FreeModule::new(ring.clone(), (0..k).map(|index| Label::Gen { degree, index }).collect()).unwrap()
    }

    #[test]
    fn augmentation_matrices() {
        let eps = augmentation(&Arc::new(trivial_monoid())).unwrap();
        assert_eq!(z_matrix_of(&eps), IntMatrix::from_i64(&[vec![1]]));
        let eps = augmentation(&Arc::new(cyclic_group(2))).unwrap();
        assert_eq!(z_matrix_of(&eps), IntMatrix::from_i64(&[vec![1], vec![1]]));
        assert!(matches!(augmentation(&Arc::new(rectangular_band(2, 2))), Err(ModuleError::NotAMonoid)));
    }

    #[test]
    fn identity_map_has_identity_matrix() {
        let ring = ring_of(adjoin_identity(&rectangular_band(2, 2)));
        let a = gens(&ring, 2, 0);
        let id = ModuleMap::new(a.clone(), a.clone(), (0..2).map(|b| ModuleElement::basis(&a, b)).collect()).unwrap();
        assert_eq!(z_matrix_of(&id), IntMatrix::identity(10));
    }

    #[test]
    fn unit_acts_trivially_and_mismatch_is_rejected() {
        let ring = ring_of(cyclic_group(3));
        let a = gens(&ring, 2, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_element(&mut rng, &a);
        assert_eq!(scalar_act(&ring.one(), &m).unwrap(), m);
        let outside = RingElement::basis(7);
        assert!(matches!(scalar_act(&outside, &m), Err(ModuleError::RingMismatch)));
        assert_eq!(ModuleElement::unflatten(&a, &m.flatten()), m);
    }

    #[test]
    fn maps_are_linear_and_flattening_composes() {
        let ring = ring_of(adjoin_identity(&rectangular_band(2, 2)));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (a, b, c) = (gens(&ring, 2, 0), gens(&ring, 3, 1), gens(&ring, 1, 2));
        let f = ModuleMap::new(a.clone(), b.clone(), (0..2).map(|_| random_element(&mut rng, &b)).collect()).unwrap();
        let g = ModuleMap::new(b.clone(), c.clone(), (0..3).map(|_| random_element(&mut rng, &c)).collect()).unwrap();
        let gf = f.then(&g).unwrap();
        assert_eq!(z_matrix_of(&gf), z_matrix_of(&f).mul(&z_matrix_of(&g)));
        for _ in 0..20 {
            let lambda = random_ring_element(&mut rng, &ring);
            let m = random_element(&mut rng, &a);
            let lhs = f.apply_module(&m.act(&lambda)).unwrap();
            let rhs = f.apply_module(&m).unwrap().act(&lambda);
            assert_eq!(lhs, rhs);
            // the flat matrix agrees with symbolic application
            assert_eq!(z_matrix_of(&f).apply(&m.flatten()), f.apply_module(&m).unwrap().flatten());
        }
        let (_, eps) = augmentation_of(&ring);
        let to_z =
            ModuleMap::new(c.clone(), eps.domain().clone(), vec![ModuleElement::basis(eps.domain(), 0)]).unwrap();
        let composite = g.then(&to_z).unwrap().then(&eps).unwrap();
        assert_eq!(composite.target_dim(), 1);
    }

    #[test]
    fn rendering() {
        let ring = ring_of(cyclic_group(2));
        let a = gens(&ring, 2, 0);
        let m = ModuleElement::single(&a, 0, RingElement::from_terms([(0, 2), (1, -1)]))
            .add(&ModuleElement::basis(&a, 1))
            .unwrap();
        assert_eq!(m.render(), "(2·1 - g)[x0.0] + (1)[x0.1]");
    }
}
