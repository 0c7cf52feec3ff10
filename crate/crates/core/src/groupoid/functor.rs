use std::sync::Arc;

use super::FiniteGroupoid;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Homomorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    source: Arc<FiniteGroupoid>,
    target: Arc<FiniteGroupoid>,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

impl GroupoidFunctor {
    /// Validates endpoints, identities and composition.
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        let bad = |msg: String| Error::InvalidFunctor(msg);
        if obj_map.len() != source.object_count() || mor_map.len() != source.morphism_count() {
            return Err(bad("map lengths do not match the source groupoid".into()));
        }
        if obj_map.iter().any(|&x| x >= target.object_count()) || mor_map.iter().any(|&x| x >= target.morphism_count()) {
            return Err(bad("image out of range".into()));
        }
        for f in 0..source.morphism_count() {
            let g = mor_map[f];
            if target.src(g) != obj_map[source.src(f)] || target.dst(g) != obj_map[source.dst(f)] {
                return Err(bad(format!("morphism {f} is sent to a morphism with the wrong endpoints")));
            }
        }
        for a in 0..source.object_count() {
            if mor_map[source.identity(a)] != target.identity(obj_map[a]) {
                return Err(bad(format!("identity of object {a} is not preserved")));
            }
        }
        let functor = GroupoidFunctor { source, target, obj_map, mor_map };
        // A map that is multiplicative on each base automorphism group and compatible
        // with the charts is multiplicative everywhere.
        let (s, t) = (&functor.source, &functor.target);
        for c in 0..s.component_count() {
            let base = s.component_base(c);
            let group = s.component_group(c);
            for x in group.elements() {
                for y in group.elements() {
                    let (fx, fy) = (s.from_chart(base, base, x), s.from_chart(base, base, y));
                    if functor.mor(s.compose(fx, fy)) != t.compose(functor.mor(fx), functor.mor(fy)) {
                        return Err(bad(format!("composition fails on automorphisms of object {base}")));
                    }
                }
            }
        }
        for f in 0..s.morphism_count() {
            let (a, b) = (s.src(f), s.dst(f));
            let base = s.component_base(s.component_of(a));
            let k = s.from_chart(base, base, s.chart(f));
            let expected = t.compose(
                functor.mor(s.transport(b)),
                t.compose(functor.mor(k), t.inverse(functor.mor(s.transport(a)))),
            );
            if functor.mor(f) != expected {
                return Err(bad(format!("composition fails through morphism {f}")));
            }
        }
        Ok(functor)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(obj_map.len(), source.object_count());
        debug_assert_eq!(mor_map.len(), source.morphism_count());
        GroupoidFunctor { source, target, obj_map, mor_map }
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        GroupoidFunctor {
            source: g.clone(),
            target: g.clone(),
            obj_map: (0..g.object_count()).collect(),
            mor_map: (0..g.morphism_count()).collect(),
        }
    }

    /// `Bφ: BH → BG`.
    pub fn classifying(phi: &Homomorphism) -> Self {
        GroupoidFunctor {
            source: Arc::new(FiniteGroupoid::classifying(phi.source())),
            target: Arc::new(FiniteGroupoid::classifying(phi.target())),
            obj_map: vec![0],
            mor_map: phi.map().to_vec(),
        }
    }

    /// The unique functor to `B1`.
    pub fn to_point(g: &Arc<FiniteGroupoid>) -> Self {
        GroupoidFunctor {
            source: g.clone(),
            target: Arc::new(FiniteGroupoid::classifying(&FiniteGroup::trivial())),
            obj_map: vec![0; g.object_count()],
            mor_map: vec![0; g.morphism_count()],
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        &self.target
    }

    pub fn obj(&self, a: usize) -> usize {
        self.obj_map[a]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor_map
    }

    /// `next ∘ self`
    pub fn then(&self, next: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if *self.target != *next.source {
            return Err(Error::InvalidFunctor("functors are not composable".into()));
        }
        Ok(GroupoidFunctor {
            source: self.source.clone(),
            target: next.target.clone(),
            obj_map: self.obj_map.iter().map(|&a| next.obj_map[a]).collect(),
            mor_map: self.mor_map.iter().map(|&f| next.mor_map[f]).collect(),
        })
    }

    /// The induced map from the base automorphism group of source component `c` to the
    /// group of the target component containing its image, in chart coordinates.
    pub fn component_homomorphism(&self, c: usize) -> Homomorphism {
        let (s, t) = (&self.source, &self.target);
        let base = s.component_base(c);
        let group = s.component_group(c);
        let tc = t.component_of(self.obj(base));
        let map = group.elements().map(|k| t.chart(self.mor(s.from_chart(base, base, k)))).collect();
        Homomorphism::new_unchecked(group.clone(), t.component_group(tc).clone(), map)
    }

    /// Injective on every hom set.
    pub fn is_faithful(&self) -> bool {
        (0..self.source.component_count()).all(|c| {
            let base = self.source.component_base(c);
            self.source.hom(base, base).iter().all(|&f| self.source.is_identity(f) || !self.target.is_identity(self.mor(f)))
        })
    }

    /// Surjective on every hom set.
    pub fn is_full(&self) -> bool {
        let mut hit = vec![false; self.target.component_count()];
        (0..self.source.component_count()).all(|c| {
            let tc = self.target.component_of(self.obj(self.source.component_base(c)));
            let onto = self.component_homomorphism(c).is_surjective();
            !std::mem::replace(&mut hit[tc], true) && onto
        })
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.component_count()];
        for &b in &self.obj_map {
            hit[self.target.component_of(b)] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_faithful() && self.is_full() && self.is_essentially_surjective()
    }

    /// Every morphism out of an image object lifts to a morphism with the given source.
    pub fn is_isofibration(&self) -> bool {
        let mut mark = vec![usize::MAX; self.target.morphism_count()];
        (0..self.source.object_count()).all(|x| {
            for &g in self.source.out(x) {
                mark[self.mor(g)] = x;
            }
            self.target.out(self.obj(x)).iter().all(|&h| mark[h] == x)
        })
    }

    /// Exhaustive check of functoriality on all composable pairs.
    pub fn verify(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        (0..s.morphism_count()).all(|f| {
            t.src(self.mor(f)) == self.obj(s.src(f))
                && t.dst(self.mor(f)) == self.obj(s.dst(f))
                && s.out(s.dst(f)).iter().all(|&g| self.mor(s.compose(g, f)) == t.compose(self.mor(g), self.mor(f)))
        }) && (0..s.object_count()).all(|a| self.mor(s.identity(a)) == t.identity(self.obj(a)))
    }
}

/// A natural isomorphism `η: F ⇒ G` with components `η_a: F(a) → G(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalIso {
    source: GroupoidFunctor,
    target: GroupoidFunctor,
    components: Vec<usize>,
}

impl NaturalIso {
    pub fn new(source: GroupoidFunctor, target: GroupoidFunctor, components: Vec<usize>) -> Result<Self> {
        if *source.source != *target.source || *source.target != *target.target {
            return Err(Error::InvalidFunctor("natural isomorphism between non-parallel functors".into()));
        }
        let iso = NaturalIso { source, target, components };
        if !iso.verify() {
            return Err(Error::InvalidFunctor("components are not natural".into()));
        }
        Ok(iso)
    }

    pub(crate) fn new_unchecked(source: GroupoidFunctor, target: GroupoidFunctor, components: Vec<usize>) -> Self {
        NaturalIso { source, target, components }
    }

    pub fn source(&self) -> &GroupoidFunctor {
        &self.source
    }

    pub fn target(&self) -> &GroupoidFunctor {
        &self.target
    }

    pub fn component(&self, a: usize) -> usize {
        self.components[a]
    }

    /// Endpoints of every component and every naturality square, exhaustively.
    pub fn verify(&self) -> bool {
        let d = &self.source.source;
        let t = &self.source.target;
        if self.components.len() != d.object_count() {
            return false;
        }
        let endpoints = (0..d.object_count()).all(|a| {
            let eta = self.components[a];
            eta < t.morphism_count() && t.src(eta) == self.source.obj(a) && t.dst(eta) == self.target.obj(a)
        });
        endpoints
            && (0..d.morphism_count()).all(|f| {
                let (a, b) = (d.src(f), d.dst(f));
                t.compose(self.target.mor(f), self.components[a]) == t.compose(self.components[b], self.source.mor(f))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{perm, Subgroup};
    use crate::groupoid::indiscrete;

    #[test]
    fn identity_functor_predicates() {
        let g = Arc::new(FiniteGroupoid::classifying(&FiniteGroup::symmetric(3).unwrap()));
        let id = GroupoidFunctor::identity(&g);
        assert!(id.is_faithful() && id.is_isofibration() && id.is_equivalence());
        assert!(id.verify());
    }

    #[test]
    fn subgroup_inclusion_predicates() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t = s3.element_of_permutation(&perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let (_, incl) = Subgroup::generated_by(&s3, &[t]).embed(&s3);
        let b = GroupoidFunctor::classifying(&incl);
        assert!(b.is_faithful());
        // A functor between one-object groupoids lifts every morphism only if it is onto.
        assert!(!b.is_isofibration());
        assert!(!b.is_equivalence());
        assert!(b.verify());
    }

    #[test]
    fn indiscrete_to_classifying() {
        let e = Arc::new(indiscrete(2));
        let bc2 = Arc::new(FiniteGroupoid::classifying(&FiniteGroup::cyclic(2).unwrap()));
        let f = GroupoidFunctor::new(e.clone(), bc2, vec![0, 0], vec![0; e.morphism_count()]).unwrap();
        assert!(f.is_faithful());
        assert!(!f.is_equivalence());
        assert!(GroupoidFunctor::to_point(&e).is_equivalence());
    }

    #[test]
    fn rejects_non_functors() {
        let bc3 = Arc::new(FiniteGroupoid::classifying(&FiniteGroup::cyclic(3).unwrap()));
        assert!(GroupoidFunctor::new(bc3.clone(), bc3.clone(), vec![0], vec![0, 1, 1]).is_err());
        assert!(GroupoidFunctor::new(bc3.clone(), bc3.clone(), vec![0], vec![1, 2, 0]).is_err());
        assert!(GroupoidFunctor::new(bc3.clone(), bc3.clone(), vec![0], vec![0, 2, 1]).is_ok());
    }

    #[test]
    fn natural_iso_by_conjugation() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let bg = Arc::new(FiniteGroupoid::classifying(&s3));
        let id = GroupoidFunctor::identity(&bg);
        for x in s3.elements() {
            let conj: Vec<usize> = s3.elements().map(|y| s3.conj(x, y)).collect();
            let c = GroupoidFunctor::new(bg.clone(), bg.clone(), vec![0], conj).unwrap();
            assert!(NaturalIso::new(id.clone(), c.clone(), vec![x]).is_ok());
            if !s3.elements().all(|y| s3.mul(x, y) == s3.mul(y, x)) {
                assert!(NaturalIso::new(id.clone(), c, vec![0]).is_err());
            }
        }
    }
}
