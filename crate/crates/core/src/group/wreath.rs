use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::perm::{self, Perm};
use super::{CosetSystem, FiniteGroup, Homomorphism, Limits, Subgroup};
use crate::error::{Error, Result};

/// Largest wreath product that [`WreathProduct::to_group`] will tabulate.
pub const MAX_TABLE_ORDER: usize = 4096;

/// An element `(σ; h_1, …, h_r)` of `Σ_r ≀ H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub perm: Perm,
    pub labels: Vec<usize>,
}

impl WreathElement {
    pub fn identity(degree: usize) -> Self {
        WreathElement { perm: perm::identity(degree), labels: vec![0; degree] }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        perm::is_identity(&self.perm) && self.labels.iter().all(|&h| h == 0)
    }
}

/// `Σ_r ≀ H`, acting on `{1..r} × H` by `(i, x) ↦ (σ(i), h_i x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathProduct {
    degree: usize,
    base: Arc<FiniteGroup>,
    order: usize,
}

pub fn wreath(degree: usize, base: &Arc<FiniteGroup>, limits: &Limits) -> Result<WreathProduct> {
    WreathProduct::new(degree, base.clone(), limits)
}

impl WreathProduct {
    pub fn new(degree: usize, base: Arc<FiniteGroup>, limits: &Limits) -> Result<Self> {
        let bound = limits.max_wreath_order;
        let mut order: usize = 1;
        for k in 1..=degree {
            order = order
                .checked_mul(k)
                .and_then(|o| o.checked_mul(base.order()))
                .filter(|&o| o <= bound)
                .ok_or(Error::OrderBoundExceeded { order: usize::MAX, bound })?;
        }
        Ok(WreathProduct { degree, base, order })
    }

    /// Arithmetic only; the order saturates instead of being checked against a bound.
    pub(crate) fn unbounded(degree: usize, base: Arc<FiniteGroup>) -> Self {
        let order = (1..=degree).try_fold(1usize, |o, k| o.checked_mul(k)?.checked_mul(base.order())).unwrap_or(usize::MAX);
        WreathProduct { degree, base, order }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement::identity(self.degree)
    }

    pub fn contains(&self, e: &WreathElement) -> bool {
        e.perm.len() == self.degree
            && e.labels.len() == self.degree
            && perm::is_permutation(&e.perm)
            && e.labels.iter().all(|&h| h < self.base.order())
    }

    /// `(σ; a)(τ; b) = (στ; a_{τ(i)} b_i)`
    pub fn mul(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        WreathElement {
            perm: perm::compose(&a.perm, &b.perm),
            labels: (0..self.degree).map(|i| self.base.mul(a.labels[b.perm[i]], b.labels[i])).collect(),
        }
    }

    pub fn inverse(&self, a: &WreathElement) -> WreathElement {
        let inv = perm::inverse(&a.perm);
        WreathElement {
            labels: (0..self.degree).map(|i| self.base.inv(a.labels[inv[i]])).collect(),
            perm: inv,
        }
    }

    /// Action on the point `(i, x)` of `{0..r} × H`.
    pub fn act(&self, e: &WreathElement, i: usize, x: usize) -> (usize, usize) {
        (e.perm[i], self.base.mul(e.labels[i], x))
    }

    /// Index of `e`; the identity encodes to 0.
    pub fn encode(&self, e: &WreathElement) -> usize {
        let h = self.base.order();
        let labels = e.labels.iter().rev().fold(0, |acc, &x| acc * h + x);
        perm::rank(&e.perm) * h.pow(self.degree as u32) + labels
    }

    pub fn decode(&self, mut index: usize) -> WreathElement {
        let h = self.base.order();
        let mut labels = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            labels.push(index % h);
            index /= h;
        }
        WreathElement { perm: perm::unrank(self.degree, index), labels }
    }

    /// The wreath product as a multiplication table indexed by [`WreathProduct::encode`].
    pub fn to_group(&self) -> Result<FiniteGroup> {
        if self.order > MAX_TABLE_ORDER {
            return Err(Error::OrderBoundExceeded { order: self.order, bound: MAX_TABLE_ORDER });
        }
        let elems: Vec<WreathElement> = (0..self.order).map(|k| self.decode(k)).collect();
        let mut mul = Vec::with_capacity(self.order * self.order);
        for a in &elems {
            for b in &elems {
                mul.push(self.encode(&self.mul(a, b)));
            }
        }
        Ok(FiniteGroup::from_table_unchecked(self.order, mul))
    }
}

/// The embedding `ι: G → Σ_r ≀ H` given by `g g_i = g_{σ(i)} h_i(g)`.
#[derive(Clone, Debug)]
pub struct TransferEmbedding {
    pub wreath: WreathProduct,
    /// `H` as a group; wreath labels index its elements.
    pub subgroup_group: Arc<FiniteGroup>,
    /// `ι(g)` for every `g ∈ G`.
    pub images: Vec<WreathElement>,
}

impl TransferEmbedding {
    pub fn image(&self, g: usize) -> &WreathElement {
        &self.images[g]
    }

    /// `ι` as a homomorphism into the tabulated wreath product.
    pub fn as_homomorphism(&self, group: &Arc<FiniteGroup>) -> Result<Homomorphism> {
        let target = Arc::new(self.wreath.to_group()?);
        let map = self.images.iter().map(|e| self.wreath.encode(e)).collect();
        Homomorphism::new(group.clone(), target, map)
    }
}

pub fn transfer_embedding(g: &FiniteGroup, h: &Subgroup, cs: &CosetSystem) -> Result<TransferEmbedding> {
    if cs.subgroup() != h || !h.is_subgroup_of(g) {
        return Err(Error::SubgroupMismatch("coset system does not belong to the subgroup".into()));
    }
    let hg = h.as_group(g);
    let r = cs.index();
    let wreath = WreathProduct::unbounded(r, hg.clone());
    let images: Vec<WreathElement> = g
        .elements()
        .map(|x| {
            let mut perm = vec![0; r];
            let mut labels = vec![0; r];
            for (i, &gi) in cs.reps().iter().enumerate() {
                let (j, hi) = cs.split(g, g.mul(x, gi));
                perm[i] = j;
                labels[i] = h.position(hi).expect("split lands in the subgroup");
            }
            WreathElement { perm, labels }
        })
        .collect();
    for x in g.elements() {
        for y in g.elements() {
            if wreath.mul(&images[x], &images[y]) != images[g.mul(x, y)] {
                return Err(Error::InternalCheckFailed(format!("ι is not multiplicative at ({x}, {y})")));
            }
        }
    }
    let distinct: HashSet<&WreathElement> = images.iter().collect();
    if distinct.len() != g.order() {
        return Err(Error::InternalCheckFailed("ι is not injective".into()));
    }
    Ok(TransferEmbedding { wreath, subgroup_group: hg, images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;

    #[test]
    fn wreath_orders_and_shapes() {
        let l = Limits::default();
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let one = Arc::new(FiniteGroup::trivial());
        let w1 = wreath(1, &c2, &l).unwrap();
        assert_eq!(w1.to_group().unwrap(), *c2);
        let w = Arc::new(wreath(2, &one, &l).unwrap().to_group().unwrap());
        assert_eq!(w.order(), 2);
        let w = Arc::new(wreath(2, &c2, &l).unwrap().to_group().unwrap());
        let d4 = Arc::new(FiniteGroup::dihedral(4).unwrap());
        assert!(find_isomorphism(&w, &d4).is_some());
        let small = Limits { max_wreath_order: 7, ..l };
        assert!(matches!(wreath(2, &c2, &small), Err(Error::OrderBoundExceeded { .. })));
    }

    #[test]
    fn encode_decode_roundtrip() {
        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let w = wreath(3, &c3, &Limits::default()).unwrap();
        assert_eq!(w.order(), 162);
        for k in 0..w.order() {
            assert_eq!(w.encode(&w.decode(k)), k);
        }
        assert_eq!(w.encode(&w.identity()), 0);
    }

    #[test]
    fn transfer_embedding_examples() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        // H = G: ι(g) = (id; g)
        let whole = Subgroup::whole(&g);
        let t = transfer_embedding(&g, &whole, &CosetSystem::canonical(&g, &whole)).unwrap();
        for x in g.elements() {
            assert_eq!(t.images[x], WreathElement { perm: vec![0], labels: vec![x] });
        }
        // H = 1: left regular representation
        let triv = Subgroup::trivial();
        let t = transfer_embedding(&g, &triv, &CosetSystem::canonical(&g, &triv)).unwrap();
        for x in g.elements() {
            let regular: Vec<usize> = g.elements().map(|y| g.mul(x, y)).collect();
            assert_eq!(t.images[x].perm, regular);
        }
        // S3 over ⟨(1 2)⟩ with reps e, (1 2 3), (1 3 2)
        let p = |s: &str| g.element_of_permutation(&perm::parse_cycles(s, 3).unwrap()).unwrap();
        let h = Subgroup::generated_by(&g, &[p("(1 2)")]);
        let cs = CosetSystem::new(&g, &h, &[0, p("(1 2 3)"), p("(1 3 2)")]).unwrap();
        let t = transfer_embedding(&g, &h, &cs).unwrap();
        assert_eq!(t.wreath.order(), 48);
        let hom = t.as_homomorphism(&g).unwrap();
        assert_eq!(hom.image().order(), 6);
    }
}
