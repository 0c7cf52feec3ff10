use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{MackeyFunctor, Matrix};
use crate::burnside::{classifying, compose, hom_basis, HomBasis, Span};
use crate::error::{Error, Result};
use crate::group::{subgroups, FiniteGroup, Homomorphism, Limits, SubgroupLattice};
use crate::groupoid::FiniteGroupoid;
use crate::gset::GSet;
use crate::symmon::{iso_classes, norm_along, restrict_gobject, IsoClassMonoid, Permutative};

/// Memoizes a per-group computation, keyed by multiplication table.
struct PerGroup<T>(Mutex<HashMap<FiniteGroup, Arc<T>>>);

impl<T> PerGroup<T> {
    fn new() -> Self {
        PerGroup(Mutex::new(HashMap::new()))
    }

    fn get(&self, g: &Arc<FiniteGroup>, make: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        if let Some(v) = self.0.lock().expect("cache lock").get(&**g) {
            return Ok(v.clone());
        }
        let v = Arc::new(make()?);
        self.0.lock().expect("cache lock").insert((**g).clone(), v.clone());
        Ok(v)
    }
}

/// `θ: i(K) → K` for an injective `i: K → G`, with `i(K)` as a group in its own right.
fn image_inverse(incl: &Homomorphism) -> Result<(crate::group::Subgroup, Homomorphism)> {
    if !incl.is_injective() {
        return Err(Error::NotInjective);
    }
    let image = incl.image();
    let map = image
        .elements()
        .iter()
        .map(|&y| incl.map().iter().position(|&z| z == y).expect("image element has a preimage"))
        .collect();
    let theta = Homomorphism::new(image.as_group(incl.target()), incl.source().clone(), map)?;
    Ok((image, theta))
}

/// Transitive G-sets `G/L`, one per conjugacy class of subgroups.
pub struct BurnsideMackey {
    limits: Limits,
    lattices: PerGroup<SubgroupLattice>,
}

impl BurnsideMackey {
    pub fn new(limits: Limits) -> Self {
        BurnsideMackey { limits, lattices: PerGroup::new() }
    }

    fn lattice(&self, g: &Arc<FiniteGroup>) -> Result<Arc<SubgroupLattice>> {
        self.lattices.get(g, || subgroups(g, &self.limits))
    }
}

impl MackeyFunctor for BurnsideMackey {
    fn name(&self) -> String {
        "burnside".into()
    }

    fn basis(&self, group: &Arc<FiniteGroup>) -> Result<Vec<String>> {
        Ok(self.lattice(group)?.class_reps.iter().map(|l| format!("G/{:?}", l.elements())).collect())
    }

    fn restriction(&self, phi: &Homomorphism) -> Result<Matrix> {
        let (source, target) = (phi.source(), phi.target());
        let lattice = self.lattice(source)?;
        let columns = self
            .lattice(target)?
            .class_reps
            .iter()
            .map(|l| GSet::cosets(target, l).restrict(phi)?.decompose(&lattice))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(lattice.class_reps.len(), &columns)
    }

    fn transfer(&self, incl: &Homomorphism) -> Result<Matrix> {
        let (image, theta) = image_inverse(incl)?;
        let (source, target) = (incl.source(), incl.target());
        let lattice = self.lattice(target)?;
        let columns = self
            .lattice(source)?
            .class_reps
            .iter()
            .map(|l| {
                let transported = GSet::cosets(source, l).restrict(&theta)?;
                GSet::induce(target, &image, &transported)?.decompose(&lattice)
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(lattice.class_reps.len(), &columns)
    }
}

/// Isomorphism classes of G-objects in a permutative category, restricted along
/// homomorphisms and normed along inclusions.
pub struct SwanMackey<C: Permutative> {
    cat: C,
    limits: Limits,
    classes: PerGroup<IsoClassMonoid<C::Mor>>,
}

impl<C: Permutative> SwanMackey<C> {
    pub fn new(cat: C, limits: Limits) -> Self {
        SwanMackey { cat, limits, classes: PerGroup::new() }
    }

    pub fn category(&self) -> &C {
        &self.cat
    }

    pub fn classes(&self, g: &Arc<FiniteGroup>) -> Result<Arc<IsoClassMonoid<C::Mor>>> {
        self.classes.get(g, || iso_classes(g, &self.cat, &self.limits))
    }
}

impl<C: Permutative> MackeyFunctor for SwanMackey<C> {
    fn name(&self) -> String {
        format!("swan:{}", self.cat.name())
    }

    fn basis(&self, group: &Arc<FiniteGroup>) -> Result<Vec<String>> {
        Ok(self.classes(group)?.labels())
    }

    fn restriction(&self, phi: &Homomorphism) -> Result<Matrix> {
        let into = self.classes(phi.source())?;
        let columns = self
            .classes(phi.target())?
            .basis
            .iter()
            .map(|b| into.decompose(&self.cat, &restrict_gobject(phi, &b.object)?, &self.limits))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(into.rank(), &columns)
    }

    fn transfer(&self, incl: &Homomorphism) -> Result<Matrix> {
        let into = self.classes(incl.target())?;
        let columns = self
            .classes(incl.source())?
            .basis
            .iter()
            .map(|b| into.decompose(&self.cat, &norm_along(&self.cat, incl, &b.object)?, &self.limits))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(into.rank(), &columns)
    }
}

/// `G ↦ Hom(𝒳, BG)` in the span category, acting on classes by post-composition.
pub struct RepresentableMackey {
    source: Arc<FiniteGroupoid>,
    bound: Option<usize>,
    limits: Limits,
    bases: PerGroup<HomBasis>,
}

impl RepresentableMackey {
    pub fn new(source: Arc<FiniteGroupoid>, bound: Option<usize>, limits: Limits) -> Self {
        RepresentableMackey { source, bound, limits, bases: PerGroup::new() }
    }

    pub fn classes(&self, g: &Arc<FiniteGroup>) -> Result<Arc<HomBasis>> {
        self.bases.get(g, || hom_basis(&self.source, &classifying(g), self.bound, &self.limits))
    }

    /// Columns are the basis classes of `BG` pushed along `span: BG → BK`.
    fn act(&self, from: &Arc<FiniteGroup>, to: &Arc<FiniteGroup>, span: &Span) -> Result<Matrix> {
        let (from_basis, to_basis) = (self.classes(from)?, self.classes(to)?);
        let mut out = Matrix::zeros(to_basis.rank(), from_basis.rank());
        for (c, class) in from_basis.classes.iter().enumerate() {
            let realized = Span::of_class(&self.source, span.source(), class)?;
            let image = compose(span, &realized)?.class()?;
            for (r, &x) in to_basis.coordinates(&image)?.coeffs.iter().enumerate() {
                out.set(r, c, x);
            }
        }
        Ok(out)
    }
}

impl MackeyFunctor for RepresentableMackey {
    fn name(&self) -> String {
        "representable".into()
    }

    fn basis(&self, group: &Arc<FiniteGroup>) -> Result<Vec<String>> {
        Ok(self
            .classes(group)?
            .classes
            .iter()
            .map(|c| format!("i={};L={:?};phi={:?}", c.i, c.key.subgroup, c.key.map))
            .collect())
    }

    fn restriction(&self, phi: &Homomorphism) -> Result<Matrix> {
        self.act(phi.target(), phi.source(), &Span::restriction(phi))
    }

    fn transfer(&self, incl: &Homomorphism) -> Result<Matrix> {
        self.act(incl.source(), incl.target(), &Span::transfer(incl)?)
    }
}
