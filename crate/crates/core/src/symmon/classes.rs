use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{find_gobject_iso, gobject_iso, tensor_gobjects, GObject, Permutative};
use crate::burnside::FreeAbelianGroup;
use crate::error::{Error, Result};
use crate::group::{all_homomorphisms, FiniteGroup, Limits, PairKey, MAX_TABLE_ORDER};

#[derive(Clone, Debug, Serialize)]
pub struct BasisElement<M> {
    pub label: String,
    pub key: Option<PairKey>,
    pub object: GObject<M>,
}

/// Isomorphism classes of G-objects with their indecomposable basis.
#[derive(Clone, Debug, Serialize)]
pub struct IsoClassMonoid<M> {
    #[serde(skip)]
    pub group: Arc<FiniteGroup>,
    pub category: String,
    pub basis: Vec<BasisElement<M>>,
    /// Largest object the enumeration covers.
    pub bound: usize,
    /// Every class with its multiplicity vector over the basis, when enumerated exhaustively.
    #[serde(skip)]
    classes: Vec<(GObject<M>, Vec<usize>)>,
}

fn key_label(key: &PairKey) -> String {
    format!("L={:?};psi={:?}", key.subgroup, key.map)
}

impl<M: Clone + PartialEq> IsoClassMonoid<M> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|b| b.label.clone()).collect()
    }

    pub fn index_of_key(&self, key: &PairKey) -> Option<usize> {
        self.basis.iter().position(|b| b.key.as_ref() == Some(key))
    }

    /// Number of classes found by the exhaustive enumeration (zero for the structural route).
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Multiplicities of the basis elements in `x`.
    pub fn decompose<C: Permutative<Mor = M>>(&self, cat: &C, x: &GObject<M>, limits: &Limits) -> Result<Vec<usize>> {
        if x.group() != &self.group {
            return Err(Error::InvalidGObject("decomposing a G-object over another group".into()));
        }
        if self.basis.iter().all(|b| b.key.is_some()) {
            if let Some(keys) = cat.orbit_classes(x) {
                let mut counts = vec![0; self.rank()];
                for key in keys? {
                    let k = self.index_of_key(&key).ok_or_else(|| {
                        Error::DecompositionNotUnique(format!("orbit {} is not in the basis below {}", key_label(&key), self.bound))
                    })?;
                    counts[k] += 1;
                }
                return Ok(counts);
            }
        }
        for (y, counts) in &self.classes {
            if gobject_iso(cat, x, y, limits)? {
                return Ok(counts.clone());
            }
        }
        Err(Error::DecompositionNotUnique("no enumerated class is isomorphic to the G-object".into()))
    }
}

/// The indecomposable G-objects, through the preset's structural decomposition when it has one.
pub fn iso_classes<C: Permutative>(group: &Arc<FiniteGroup>, cat: &C, limits: &Limits) -> Result<IsoClassMonoid<C::Mor>> {
    let Some(objects) = cat.transitive_objects(group, limits) else {
        return iso_classes_exhaustive(group, cat, limits);
    };
    let mut basis: Vec<BasisElement<C::Mor>> = Vec::new();
    for (key, object) in objects? {
        let found = cat.orbit_classes(&object).transpose()?;
        if found.as_deref() != Some(std::slice::from_ref(&key)) {
            return Err(Error::InternalCheckFailed(format!("{} does not realize its class", key_label(&key))));
        }
        for other in &basis {
            if other.object.object() == object.object() && gobject_iso(cat, &other.object, &object, limits)? {
                return Err(Error::DecompositionNotUnique(format!("{} and {} are isomorphic", other.label, key_label(&key))));
            }
        }
        basis.push(BasisElement { label: key_label(&key), key: Some(key), object });
    }
    Ok(IsoClassMonoid {
        group: group.clone(),
        category: cat.name(),
        basis,
        bound: cat.object_count() - 1,
        classes: Vec::new(),
    })
}

/// Enumerates every G-object up to isomorphism, then finds the indecomposables and checks
/// that every class is a tensor product of them in exactly one way.
pub fn iso_classes_exhaustive<C: Permutative>(
    group: &Arc<FiniteGroup>,
    cat: &C,
    limits: &Limits,
) -> Result<IsoClassMonoid<C::Mor>> {
    let mut classes: Vec<GObject<C::Mor>> = Vec::new();
    for a in 0..cat.object_count() {
        let auts = cat.isomorphisms(a, a, limits)?;
        if auts.len() > MAX_TABLE_ORDER {
            return Err(Error::OrderBoundExceeded { order: auts.len(), bound: MAX_TABLE_ORDER });
        }
        let Some(aut) = automorphism_group(cat, a, &auts)? else { continue };
        for rho in all_homomorphisms(group, &aut.0) {
            let action = rho.map().iter().map(|&k| aut.1[k].clone()).collect();
            let x = GObject::new_unchecked(group.clone(), a, action);
            let mut known = false;
            for y in &classes {
                if gobject_iso(cat, &x, y, limits)? {
                    known = true;
                    break;
                }
            }
            if !known {
                classes.push(x);
            }
        }
    }
    let find = |x: &GObject<C::Mor>| -> Result<Option<usize>> {
        for (k, y) in classes.iter().enumerate() {
            if find_gobject_iso(cat, x, y, limits)?.is_some() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    };
    let unit = find(&GObject::trivial(cat, group, cat.unit()))?
        .ok_or_else(|| Error::InternalCheckFailed("the unit object is missing".into()))?;
    let count = classes.len();
    let mut products: Vec<Vec<Option<usize>>> = vec![vec![None; count]; count];
    for i in 0..count {
        for j in 0..count {
            products[i][j] = match tensor_gobjects(cat, &classes[i], &classes[j]) {
                Ok(z) => Some(find(&z)?.ok_or_else(|| Error::InternalCheckFailed("tensor product left the enumeration".into()))?),
                Err(Error::OverflowPoisoned { .. }) => None,
                Err(e) => return Err(e),
            };
        }
    }
    let decomposable: BTreeSet<usize> = (0..count)
        .filter(|&i| i != unit)
        .flat_map(|i| (0..count).filter(|&j| j != unit).filter_map(|j| products[i][j]).collect::<Vec<_>>())
        .collect();
    let indecomposable: Vec<usize> = (0..count).filter(|&i| i != unit && !decomposable.contains(&i)).collect();

    // Every sorted multiset of indecomposables whose tensor product stays in range.
    let mut decompositions: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    let mut frontier: Vec<(usize, Vec<usize>)> = vec![(unit, Vec::new())];
    while let Some((class, word)) = frontier.pop() {
        decompositions.entry(class).or_default().push(word.clone());
        let start = word.last().copied().unwrap_or(0);
        for (b, &ind) in indecomposable.iter().enumerate().skip(start) {
            if let Some(next) = products[class][ind] {
                let mut w = word.clone();
                w.push(b);
                frontier.push((next, w));
            }
        }
    }
    let mut with_counts = Vec::with_capacity(count);
    for (k, x) in classes.iter().enumerate() {
        let words = decompositions.get(&k).map_or(0, Vec::len);
        if words != 1 {
            return Err(Error::DecompositionNotUnique(format!("class {k} has {words} decompositions")));
        }
        let mut counts = vec![0; indecomposable.len()];
        for &b in &decompositions[&k][0] {
            counts[b] += 1;
        }
        with_counts.push((x.clone(), counts));
    }
    let basis = indecomposable
        .iter()
        .enumerate()
        .map(|(b, &k)| {
            let object = classes[k].clone();
            let key = match cat.orbit_classes(&object) {
                Some(Ok(keys)) if keys.len() == 1 => keys.into_iter().next(),
                _ => None,
            };
            let label = key.as_ref().map_or_else(|| format!("X{b}"), key_label);
            BasisElement { label, key, object }
        })
        .collect();
    Ok(IsoClassMonoid {
        group: group.clone(),
        category: cat.name(),
        basis,
        bound: cat.object_count() - 1,
        classes: with_counts,
    })
}

/// `Aut(a)` as a group table with the identity first, and the morphism of each element.
#[allow(clippy::type_complexity)]
fn automorphism_group<C: Permutative>(cat: &C, a: usize, auts: &[C::Mor]) -> Result<Option<(Arc<FiniteGroup>, Vec<C::Mor>)>> {
    let id = cat.identity(a);
    let mut elems: Vec<C::Mor> = vec![id.clone()];
    elems.extend(auts.iter().filter(|&f| *f != id).cloned());
    if elems.len() != auts.len() {
        return Ok(None);
    }
    let index: HashMap<&C::Mor, usize> = elems.iter().enumerate().map(|(k, f)| (f, k)).collect();
    let mut rows = Vec::with_capacity(elems.len());
    for g in &elems {
        let mut row = Vec::with_capacity(elems.len());
        for f in &elems {
            let gf = cat.compose(g, f)?;
            row.push(*index.get(&gf).ok_or_else(|| Error::InvalidCategory("automorphisms are not closed".into()))?);
        }
        rows.push(row);
    }
    Ok(Some((Arc::new(FiniteGroup::from_table(&rows)?), elems)))
}

/// `K₀` of G-objects: the group completion of the iso-class monoid.
#[derive(Clone, Debug, Serialize)]
pub struct SwanK0<M> {
    pub monoid: IsoClassMonoid<M>,
    #[serde(skip)]
    pub completion: FreeAbelianGroup,
}

impl<M: Clone + PartialEq> SwanK0<M> {
    pub fn rank(&self) -> usize {
        self.completion.rank
    }
}

pub fn swan_k0<C: Permutative>(group: &Arc<FiniteGroup>, cat: &C, limits: &Limits) -> Result<SwanK0<C::Mor>> {
    let monoid = iso_classes(group, cat, limits)?;
    let completion = FreeAbelianGroup { rank: monoid.rank() };
    Ok(SwanK0 { monoid, completion })
}
