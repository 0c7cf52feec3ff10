//! Permutative categories, their G-objects, categorical restriction and the norm.

mod classes;
mod free;
mod table;

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;

pub use classes::{iso_classes, iso_classes_exhaustive, swan_k0, BasisElement, IsoClassMonoid, SwanK0};
pub use free::FreePermutative;
pub use table::{TableHoms, TablePermutative, TablePresentation, TableTensor};

use crate::error::{Error, Result};
use crate::group::{perm, transfer_embedding, CosetSystem, FiniteGroup, Homomorphism, Limits, PairKey, Subgroup};

/// A strictly associative symmetric monoidal category with finitely many objects `0..object_count()`.
///
/// Tensor products that leave the presented range fail with [`Error::OverflowPoisoned`], and
/// every operation built on them propagates the error.
pub trait Permutative: Send + Sync {
    type Mor: Clone + Debug + PartialEq + Eq + Hash + Serialize + Send + Sync;

    fn name(&self) -> String;
    fn object_count(&self) -> usize;
    fn unit(&self) -> usize;
    fn tensor_objects(&self, a: usize, b: usize) -> Result<usize>;
    fn identity(&self, a: usize) -> Self::Mor;
    fn source(&self, f: &Self::Mor) -> usize;
    fn target(&self, f: &Self::Mor) -> usize;
    fn contains(&self, f: &Self::Mor) -> bool;
    /// `g ∘ f`
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn tensor(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    /// `β_{a,b}: a ⊗ b → b ⊗ a`
    fn symmetry(&self, a: usize, b: usize) -> Result<Self::Mor>;
    /// Every isomorphism `a → b`.
    fn isomorphisms(&self, a: usize, b: usize, limits: &Limits) -> Result<Vec<Self::Mor>>;

    /// Preset-specific search for an equivariant isomorphism; `None` selects the exhaustive search.
    fn equivariant_iso_hint(&self, _x: &GObject<Self::Mor>, _y: &GObject<Self::Mor>) -> Option<Result<Option<Self::Mor>>> {
        None
    }

    /// Canonical pairs `(L ≤ G, ψ)` of the transitive pieces, when the preset has a structural decomposition.
    fn orbit_classes(&self, _x: &GObject<Self::Mor>) -> Option<Result<Vec<PairKey>>> {
        None
    }

    /// One transitive G-object per class that fits below the size bound, when the preset has a
    /// structural decomposition.
    fn transitive_objects(
        &self,
        _group: &Arc<FiniteGroup>,
        _limits: &Limits,
    ) -> Option<Result<Vec<(PairKey, GObject<Self::Mor>)>>> {
        None
    }
}

/// An object of the category with an action of a finite group by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GObject<M> {
    #[serde(skip)]
    group: Arc<FiniteGroup>,
    object: usize,
    action: Vec<M>,
}

impl<M: Clone + PartialEq> GObject<M> {
    pub fn new<C: Permutative<Mor = M>>(cat: &C, group: Arc<FiniteGroup>, object: usize, action: Vec<M>) -> Result<Self> {
        if object >= cat.object_count() {
            return Err(Error::InvalidGObject(format!("object {object} is not in {}", cat.name())));
        }
        if action.len() != group.order() {
            return Err(Error::InvalidGObject(format!("expected {} automorphisms, got {}", group.order(), action.len())));
        }
        for (g, f) in action.iter().enumerate() {
            if !cat.contains(f) || cat.source(f) != object || cat.target(f) != object {
                return Err(Error::InvalidGObject(format!("the action of {g} is not an automorphism of {object}")));
            }
        }
        if action[0] != cat.identity(object) {
            return Err(Error::InvalidGObject("the identity must act trivially".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                if cat.compose(&action[a], &action[b])? != action[group.mul(a, b)] {
                    return Err(Error::InvalidGObject(format!("action is not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(GObject { group, object, action })
    }

    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, object: usize, action: Vec<M>) -> Self {
        GObject { group, object, action }
    }

    /// `object` with every group element acting as the identity.
    pub fn trivial<C: Permutative<Mor = M>>(cat: &C, group: &Arc<FiniteGroup>, object: usize) -> Self {
        GObject { group: group.clone(), object, action: vec![cat.identity(object); group.order()] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn object(&self) -> usize {
        self.object
    }

    pub fn action(&self) -> &[M] {
        &self.action
    }

    pub fn act(&self, g: usize) -> &M {
        &self.action[g]
    }
}

/// Categorical restriction along `φ: H → G`: the same object with action `X ∘ φ`.
pub fn restrict_gobject<M: Clone>(phi: &Homomorphism, x: &GObject<M>) -> Result<GObject<M>> {
    if **phi.target() != *x.group {
        return Err(Error::InvalidHomomorphism("restriction along a map into another group".into()));
    }
    let action = phi.map().iter().map(|&g| x.action[g].clone()).collect();
    Ok(GObject { group: phi.source().clone(), object: x.object, action })
}

/// `X ⊗ Y` with the diagonal action.
pub fn tensor_gobjects<C: Permutative>(cat: &C, x: &GObject<C::Mor>, y: &GObject<C::Mor>) -> Result<GObject<C::Mor>> {
    if x.group != y.group {
        return Err(Error::InvalidGObject("tensor of G-objects over different groups".into()));
    }
    let object = cat.tensor_objects(x.object, y.object)?;
    let action = x.action.iter().zip(&y.action).map(|(f, g)| cat.tensor(f, g)).collect::<Result<_>>()?;
    Ok(GObject { group: x.group.clone(), object, action })
}

fn tensor_all<C: Permutative>(cat: &C, factors: &[C::Mor]) -> Result<C::Mor> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::InvalidCategory("empty tensor product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| cat.tensor(&acc, f))
}

/// The norm of an `H`-object: its `r`-fold tensor power with `G` acting through the transfer
/// embedding `G → Σ_r ≀ H` of the coset system.
///
/// `(σ; h_1, …, h_r)` acts as `P_σ ∘ (X(h_1) ⊗ ⋯ ⊗ X(h_r))`, where `P_σ` moves factor `i` to
/// position `σ(i)` and is composed from adjacent symmetries along the bubble-sort word of `σ`.
pub fn norm<C: Permutative>(
    cat: &C,
    group: &Arc<FiniteGroup>,
    h: &Subgroup,
    cs: &CosetSystem,
    x: &GObject<C::Mor>,
) -> Result<GObject<C::Mor>> {
    let emb = transfer_embedding(group, h, cs)?;
    if *emb.subgroup_group != *x.group {
        return Err(Error::SubgroupMismatch("the G-object is not over the given subgroup".into()));
    }
    let r = cs.index();
    let mut object = x.object;
    for _ in 1..r {
        object = cat.tensor_objects(object, x.object)?;
    }
    let id = cat.identity(x.object);
    let beta = if r > 1 { Some(cat.symmetry(x.object, x.object)?) } else { None };
    let swaps: Vec<C::Mor> = (0..r.saturating_sub(1))
        .map(|k| {
            let mut factors = vec![id.clone(); k];
            factors.push(beta.clone().expect("r > 1"));
            factors.extend(std::iter::repeat_n(id.clone(), r - k - 2));
            tensor_all(cat, &factors)
        })
        .collect::<Result<_>>()?;
    let mut action = Vec::with_capacity(group.order());
    for g in group.elements() {
        let image = emb.image(g);
        let labels: Vec<C::Mor> = image.labels.iter().map(|&k| x.action[k].clone()).collect();
        let mut f = tensor_all(cat, &labels)?;
        let mut p = cat.identity(object);
        for &k in &perm::adjacent_word(&image.perm) {
            p = cat.compose(&p, &swaps[k])?;
        }
        f = cat.compose(&p, &f)?;
        action.push(f);
    }
    Ok(GObject { group: group.clone(), object, action })
}

/// The norm along an injective `i: K → G`, through the canonical coset system of `i(K)`.
pub fn norm_along<C: Permutative>(cat: &C, incl: &Homomorphism, x: &GObject<C::Mor>) -> Result<GObject<C::Mor>> {
    if !incl.is_injective() {
        return Err(Error::NotInjective);
    }
    let group = incl.target();
    let image = incl.image();
    let image_group = image.as_group(group);
    // θ: i(K) → K
    let theta_map = image
        .elements()
        .iter()
        .map(|&y| incl.map().iter().position(|&z| z == y).expect("image element has a preimage"))
        .collect();
    let theta = Homomorphism::new(image_group, incl.source().clone(), theta_map)?;
    let transported = restrict_gobject(&theta, x)?;
    norm(cat, group, &image, &CosetSystem::canonical(group, &image), &transported)
}

/// An isomorphism `f: X.object → Y.object` with `f ∘ X(g) = Y(g) ∘ f` for all `g`.
pub fn find_gobject_iso<C: Permutative>(
    cat: &C,
    x: &GObject<C::Mor>,
    y: &GObject<C::Mor>,
    limits: &Limits,
) -> Result<Option<C::Mor>> {
    if x.group != y.group {
        return Err(Error::InvalidGObject("comparing G-objects over different groups".into()));
    }
    if let Some(found) = cat.equivariant_iso_hint(x, y) {
        return found;
    }
    let gens = x.group.generators();
    for f in cat.isomorphisms(x.object, y.object, limits)? {
        let mut ok = true;
        for &g in &gens {
            if cat.compose(&f, &x.action[g])? != cat.compose(&y.action[g], &f)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn gobject_iso<C: Permutative>(cat: &C, x: &GObject<C::Mor>, y: &GObject<C::Mor>, limits: &Limits) -> Result<bool> {
    Ok(find_gobject_iso(cat, x, y, limits)?.is_some())
}
