use std::sync::Arc;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A group homomorphism stored as an element table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidHomomorphism(format!(
                "map has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidHomomorphism("image out of range".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidHomomorphism(format!("fails on the pair ({a}, {b})")));
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Self {
        Homomorphism { source, target, map }
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Homomorphism { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn trivial(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Self {
        Homomorphism { source: source.clone(), target: target.clone(), map: vec![0; source.order()] }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if *self.target != *next.source {
            return Err(Error::InvalidHomomorphism("composable maps must share the middle group".into()));
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn image(&self) -> Subgroup {
        let mut e = self.map.clone();
        e.sort_unstable();
        e.dedup();
        Subgroup::from_sorted_unchecked(e)
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.source.elements().filter(|&x| self.map[x] == 0).collect())
    }

    /// Restriction to a subgroup of the source, as a map out of [`Subgroup::as_group`].
    pub fn restrict(&self, sub: &Subgroup) -> Homomorphism {
        Homomorphism {
            source: sub.as_group(&self.source),
            target: self.target.clone(),
            map: sub.elements().iter().map(|&x| self.map[x]).collect(),
        }
    }
}

/// Inner automorphism `y ↦ x y x⁻¹`.
pub fn conjugation(g: &Arc<FiniteGroup>, x: usize) -> Homomorphism {
    Homomorphism::new_unchecked(g.clone(), g.clone(), g.elements().map(|y| g.conj(x, y)).collect())
}

/// Extends generator images to a homomorphism if the assignment is consistent.
fn extend(source: &FiniteGroup, target: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let img = target.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

/// Every homomorphism `source → target`, in lexicographic order of generator images.
pub fn all_homomorphisms(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Vec<Homomorphism> {
    let gens = source.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let k = source.element_order(s);
            target.elements().filter(|&t| k.is_multiple_of(target.element_order(t))).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, v)| v[c]).collect();
        if let Some(map) = extend(source, target, &gens, &images) {
            out.push(Homomorphism::new_unchecked(source.clone(), target.clone(), map));
        }
        let mut k = gens.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

pub fn find_isomorphism(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Option<Homomorphism> {
    if a.order() != b.order() {
        return None;
    }
    all_homomorphisms(a, b).into_iter().find(|h| h.is_injective())
}
