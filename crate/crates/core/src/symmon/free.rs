use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::table::{TableHoms, TablePermutative, TablePresentation, TableTensor};
use super::{GObject, Permutative};
use crate::error::{Error, Result};
use crate::group::{
    all_homomorphisms, canonical_pair, perm, subgroups, transfer_embedding, CosetSystem, FiniteGroup, Homomorphism,
    Limits, PairKey, Subgroup, WreathElement, WreathProduct,
};
use crate::gset::{equivariant_bijection, GSet};

/// The free permutative category on `BH`, truncated at objects `0..=max_object`.
///
/// `Aut(n) = Σ_n ≀ H`, tensor is block sum and the symmetry swaps blocks. With `H` trivial
/// this is the groupoid of finite sets and bijections (`finset:N`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePermutative {
    coeff: Arc<FiniteGroup>,
    max_object: usize,
}

impl FreePermutative {
    pub fn new(coeff: Arc<FiniteGroup>, max_object: usize) -> Self {
        FreePermutative { coeff, max_object }
    }

    pub fn finset(max_object: usize) -> Self {
        FreePermutative::new(Arc::new(FiniteGroup::trivial()), max_object)
    }

    pub fn coefficients(&self) -> &Arc<FiniteGroup> {
        &self.coeff
    }

    pub fn max_object(&self) -> usize {
        self.max_object
    }

    pub fn is_finset(&self) -> bool {
        self.coeff.order() == 1
    }

    /// The `H`-object `1` with `h` acting by `(id; h)`.
    pub fn tautological(&self) -> Result<GObject<WreathElement>> {
        if self.max_object < 1 {
            return Err(Error::OverflowPoisoned { requested: 1, bound: self.max_object });
        }
        let action = self.coeff.elements().map(|h| WreathElement { perm: vec![0], labels: vec![h] }).collect();
        Ok(GObject::new_unchecked(self.coeff.clone(), 1, action))
    }

    /// The functor induced by `φ: H → H'` into the free category on `H'`, on one morphism.
    pub fn pushforward(&self, phi: &Homomorphism, target: &FreePermutative, f: &WreathElement) -> Result<WreathElement> {
        if **phi.source() != *self.coeff || **phi.target() != *target.coeff {
            return Err(Error::InvalidHomomorphism("pushforward along a map between other coefficient groups".into()));
        }
        if f.degree() > target.max_object {
            return Err(Error::OverflowPoisoned { requested: f.degree(), bound: target.max_object });
        }
        Ok(WreathElement { perm: f.perm.clone(), labels: f.labels.iter().map(|&h| phi.apply(h)).collect() })
    }

    pub fn pushforward_gobject(
        &self,
        phi: &Homomorphism,
        target: &FreePermutative,
        x: &GObject<WreathElement>,
    ) -> Result<GObject<WreathElement>> {
        let action = x.action().iter().map(|f| self.pushforward(phi, target, f)).collect::<Result<_>>()?;
        Ok(GObject::new_unchecked(x.group().clone(), x.object(), action))
    }

    /// A G-set as a G-object; only for trivial coefficients.
    pub fn from_gset(&self, x: &GSet) -> Result<GObject<WreathElement>> {
        if !self.is_finset() {
            return Err(Error::InvalidCategory("G-sets are objects of the finite-set preset only".into()));
        }
        let n = x.size();
        if n > self.max_object {
            return Err(Error::OverflowPoisoned { requested: n, bound: self.max_object });
        }
        let action = x.action().iter().map(|p| WreathElement { perm: p.clone(), labels: vec![0; n] }).collect();
        Ok(GObject::new_unchecked(x.group().clone(), n, action))
    }

    pub fn to_gset(&self, x: &GObject<WreathElement>) -> Result<GSet> {
        if !self.is_finset() {
            return Err(Error::InvalidCategory("G-sets are objects of the finite-set preset only".into()));
        }
        GSet::new(x.group().clone(), x.action().iter().map(|f| f.perm.clone()).collect())
    }

    /// The transitive G-object of the pair `(L ≤ G, ψ: L → H)`: `G/L` with labels `ψ` of the
    /// transfer embedding for the canonical coset system.
    pub fn transitive_object(&self, group: &Arc<FiniteGroup>, key: &PairKey) -> Result<GObject<WreathElement>> {
        key.validate(group, &self.coeff)?;
        let l = Subgroup::from_elements(group, &key.subgroup)?;
        let r = group.order() / l.order();
        if r > self.max_object {
            return Err(Error::OverflowPoisoned { requested: r, bound: self.max_object });
        }
        let emb = transfer_embedding(group, &l, &CosetSystem::canonical(group, &l))?;
        let action = emb
            .images
            .iter()
            .map(|e| WreathElement { perm: e.perm.clone(), labels: e.labels.iter().map(|&k| key.map[k]).collect() })
            .collect();
        Ok(GObject::new_unchecked(group.clone(), r, action))
    }

    /// Generators of `G × H` acting on the points `(i, x)` of `n × H`, encoded as `i·|H| + x`:
    /// `g` by its wreath element and `h` by right multiplication with `h⁻¹`.
    fn associated_action(&self, x: &GObject<WreathElement>) -> Vec<Vec<usize>> {
        let m = self.coeff.order();
        let n = x.object();
        let mut gens = Vec::new();
        for g in x.group().generators() {
            let f = x.act(g);
            gens.push((0..n * m).map(|p| f.perm[p / m] * m + self.coeff.mul(f.labels[p / m], p % m)).collect());
        }
        for h in self.coeff.generators() {
            let hinv = self.coeff.inv(h);
            gens.push((0..n * m).map(|p| (p / m) * m + self.coeff.mul(p % m, hinv)).collect());
        }
        gens
    }

    /// Every automorphism of `n`, in the order of [`WreathProduct::decode`].
    pub fn automorphisms(&self, n: usize, limits: &Limits) -> Result<Vec<WreathElement>> {
        let w = WreathProduct::new(n, self.coeff.clone(), limits)?;
        Ok((0..w.order()).map(|k| w.decode(k)).collect())
    }

    /// The same category as an explicit table presentation, with the morphism list.
    pub fn to_table(&self, limits: &Limits) -> Result<(TablePermutative, Vec<WreathElement>)> {
        let mut morphisms: Vec<WreathElement> = Vec::new();
        for n in 0..=self.max_object {
            morphisms.extend(self.automorphisms(n, limits)?);
        }
        let index: HashMap<&WreathElement, usize> = morphisms.iter().enumerate().map(|(k, f)| (f, k)).collect();
        let lookup = |r: Result<WreathElement>| r.ok().map(|f| index[&f]);
        let objects = self.max_object + 1;
        let presentation = TablePresentation {
            objects,
            unit: 0,
            homs: TableHoms {
                morphisms: morphisms.iter().map(|f| (f.degree(), f.degree())).collect(),
                compose: morphisms
                    .iter()
                    .map(|g| morphisms.iter().map(|f| lookup(self.compose(g, f))).collect())
                    .collect(),
                identities: (0..objects).map(|a| index[&self.identity(a)]).collect(),
            },
            tensor: TableTensor {
                objects: (0..objects).map(|a| (0..objects).map(|b| self.tensor_objects(a, b).ok()).collect()).collect(),
                morphisms: morphisms
                    .iter()
                    .map(|f| morphisms.iter().map(|g| lookup(self.tensor(f, g))).collect())
                    .collect(),
            },
            symmetry: (0..objects).map(|a| (0..objects).map(|b| lookup(self.symmetry(a, b))).collect()).collect(),
        };
        Ok((TablePermutative::new(presentation)?, morphisms))
    }

    /// Re-expresses a G-object through the morphism list returned by [`FreePermutative::to_table`].
    pub fn to_table_gobject(&self, morphisms: &[WreathElement], x: &GObject<WreathElement>) -> Result<GObject<usize>> {
        let action = x
            .action()
            .iter()
            .map(|f| morphisms.iter().position(|m| m == f).ok_or_else(|| Error::InvalidGObject("morphism not in the table".into())))
            .collect::<Result<_>>()?;
        Ok(GObject::new_unchecked(x.group().clone(), x.object(), action))
    }
}

impl Permutative for FreePermutative {
    type Mor = WreathElement;

    fn name(&self) -> String {
        if self.is_finset() {
            format!("finset:{}", self.max_object)
        } else {
            format!("free:{}:{}", self.coeff.order(), self.max_object)
        }
    }

    fn object_count(&self) -> usize {
        self.max_object + 1
    }

    fn unit(&self) -> usize {
        0
    }

    fn tensor_objects(&self, a: usize, b: usize) -> Result<usize> {
        let n = a + b;
        if n > self.max_object {
            return Err(Error::OverflowPoisoned { requested: n, bound: self.max_object });
        }
        Ok(n)
    }

    fn identity(&self, a: usize) -> WreathElement {
        WreathElement::identity(a)
    }

    fn source(&self, f: &WreathElement) -> usize {
        f.degree()
    }

    fn target(&self, f: &WreathElement) -> usize {
        f.degree()
    }

    fn contains(&self, f: &WreathElement) -> bool {
        f.degree() <= self.max_object
            && f.labels.len() == f.degree()
            && perm::is_permutation(&f.perm)
            && f.labels.iter().all(|&h| h < self.coeff.order())
    }

    fn compose(&self, g: &WreathElement, f: &WreathElement) -> Result<WreathElement> {
        if g.degree() != f.degree() {
            return Err(Error::InvalidCategory(format!("cannot compose {} → {} after {} → {}", g.degree(), g.degree(), f.degree(), f.degree())));
        }
        Ok(WreathProduct::unbounded(f.degree(), self.coeff.clone()).mul(g, f))
    }

    fn tensor(&self, f: &WreathElement, g: &WreathElement) -> Result<WreathElement> {
        self.tensor_objects(f.degree(), g.degree())?;
        Ok(WreathElement {
            perm: perm::block_sum(&f.perm, &g.perm),
            labels: f.labels.iter().chain(&g.labels).copied().collect(),
        })
    }

    fn symmetry(&self, a: usize, b: usize) -> Result<WreathElement> {
        let n = self.tensor_objects(a, b)?;
        Ok(WreathElement { perm: perm::block_swap(a, b), labels: vec![0; n] })
    }

    fn isomorphisms(&self, a: usize, b: usize, limits: &Limits) -> Result<Vec<WreathElement>> {
        if a != b {
            return Ok(Vec::new());
        }
        self.automorphisms(a, limits)
    }

    fn equivariant_iso_hint(&self, x: &GObject<WreathElement>, y: &GObject<WreathElement>) -> Option<Result<Option<WreathElement>>> {
        if x.object() != y.object() {
            return Some(Ok(None));
        }
        let m = self.coeff.order();
        let n = x.object();
        let found = equivariant_bijection(n * m, &self.associated_action(x), &self.associated_action(y)).map(|f| {
            // H-equivariance forces f(i, x) = f(i, e)·x, so the images of the points (i, e) determine f.
            WreathElement {
                perm: (0..n).map(|i| f[i * m] / m).collect(),
                labels: (0..n).map(|i| f[i * m] % m).collect(),
            }
        });
        Some(Ok(found))
    }

    fn orbit_classes(&self, x: &GObject<WreathElement>) -> Option<Result<Vec<PairKey>>> {
        let group = x.group();
        let n = x.object();
        let mut seen = vec![false; n];
        let mut keys = Vec::new();
        for i0 in 0..n {
            if seen[i0] {
                continue;
            }
            for f in x.action() {
                seen[f.perm[i0]] = true;
            }
            let stab: Vec<usize> = group.elements().filter(|&g| x.act(g).perm[i0] == i0).collect();
            let map = stab.iter().map(|&l| x.act(l).labels[i0]).collect();
            keys.push(canonical_pair(group, &self.coeff, &PairKey { subgroup: stab, map }));
        }
        Some(Ok(keys))
    }

    fn transitive_objects(
        &self,
        group: &Arc<FiniteGroup>,
        limits: &Limits,
    ) -> Option<Result<Vec<(PairKey, GObject<WreathElement>)>>> {
        let build = || -> Result<Vec<(PairKey, GObject<WreathElement>)>> {
            let mut keys = BTreeSet::new();
            for l in &subgroups(group, limits)?.all {
                if group.order() / l.order() > self.max_object {
                    continue;
                }
                for psi in all_homomorphisms(&l.as_group(group), &self.coeff) {
                    let key = PairKey { subgroup: l.elements().to_vec(), map: psi.map().to_vec() };
                    keys.insert(canonical_pair(group, &self.coeff, &key));
                }
            }
            keys.into_iter().map(|k| Ok((k.clone(), self.transitive_object(group, &k)?))).collect()
        };
        Some(build())
    }
}
