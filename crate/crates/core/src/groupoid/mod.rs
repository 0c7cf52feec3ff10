//! Finite groupoids, functors and natural isomorphisms.
//!
//! Every connected component is stored through a chart: its least object is the base
//! point, each object `a` carries a transport morphism `t_a: base → a` (the least
//! morphism id with that source and target, the identity at the base), and a morphism
//! `f: a → b` is recorded by `t_b⁻¹ ∘ f ∘ t_a` in the automorphism group of the base.
//! Composition is then a table lookup in that group.

mod functor;
mod limits;
mod skeleton;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
pub use functor::{GroupoidFunctor, NaturalIso};
pub use limits::{
    coproduct, indiscrete, iso_comma, product, strict_pullback, Coproduct, IsoComma, Product, StrictPullback,
};
pub use skeleton::{skeleton, Skeleton, SkeletonComponent};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Component {
    objects: Vec<usize>,
    group: Arc<FiniteGroup>,
    /// `(local(a) * n + local(b)) * |group| + k` ↦ morphism id.
    lookup: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    src: Vec<usize>,
    dst: Vec<usize>,
    identities: Vec<usize>,
    out: Vec<Vec<usize>>,
    pos_out: Vec<usize>,
    component_of: Vec<usize>,
    local: Vec<usize>,
    transport: Vec<usize>,
    chart: Vec<usize>,
    components: Vec<Component>,
}

/// Explicit presentation: `compose[g][f] = g ∘ f` when `dst(f) = src(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGroupoid {
    pub objects: usize,
    pub morphisms: Vec<(usize, usize)>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub identities: Vec<usize>,
}

impl FiniteGroupoid {
    /// Builds the charts of a groupoid given by its operations.
    ///
    /// With `validate` the automorphism tables are checked to be groups and every failure
    /// is reported as an error; without it the caller vouches for the input.
    pub(crate) fn assemble(
        objects: usize,
        src: Vec<usize>,
        dst: Vec<usize>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
        inverse: impl Fn(usize) -> usize,
        validate: bool,
    ) -> Result<FiniteGroupoid> {
        let m = src.len();
        let bad = |msg: String| Error::InvalidGroupoid(msg);
        let mut out = vec![Vec::new(); objects];
        for f in 0..m {
            out[src[f]].push(f);
        }
        for o in &mut out {
            o.sort_by_key(|&f| (dst[f], f));
        }
        let mut pos_out = vec![0; m];
        for o in &out {
            for (p, &f) in o.iter().enumerate() {
                pos_out[f] = p;
            }
        }

        let mut parent: Vec<usize> = (0..objects).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in 0..m {
            let (a, b) = (find(&mut parent, src[f]), find(&mut parent, dst[f]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut component_of = vec![usize::MAX; objects];
        let mut comp_of_root = vec![usize::MAX; objects];
        let mut comp_objects: Vec<Vec<usize>> = Vec::new();
        let mut local = vec![0; objects];
        for a in 0..objects {
            let r = find(&mut parent, a);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = comp_objects.len();
                comp_objects.push(Vec::new());
            }
            let c = comp_of_root[r];
            component_of[a] = c;
            local[a] = comp_objects[c].len();
            comp_objects[c].push(a);
        }

        let mut transport = vec![usize::MAX; objects];
        for objs in &comp_objects {
            transport[objs[0]] = identities[objs[0]];
        }
        for f in 0..m {
            let base = comp_objects[component_of[dst[f]]][0];
            if src[f] == base && transport[dst[f]] == usize::MAX {
                transport[dst[f]] = f;
            }
        }
        if let Some(a) = transport.iter().position(|&t| t == usize::MAX) {
            return Err(bad(format!("object {a} is not reachable from its component base")));
        }

        let mut aut_pos = vec![usize::MAX; m];
        let mut groups = Vec::with_capacity(comp_objects.len());
        for objs in &comp_objects {
            let base = objs[0];
            let id = identities[base];
            let mut aut = vec![id];
            aut.extend(out[base].iter().copied().filter(|&f| dst[f] == base && f != id));
            for (k, &f) in aut.iter().enumerate() {
                aut_pos[f] = k;
            }
            let n = aut.len();
            let mut table = Vec::with_capacity(n * n);
            for &x in &aut {
                for &y in &aut {
                    let p = aut_pos[compose(x, y)];
                    if p == usize::MAX {
                        return Err(bad(format!("automorphisms of object {base} are not closed")));
                    }
                    table.push(p);
                }
            }
            let group = if validate {
                let rows: Vec<Vec<usize>> = table.chunks(n).map(|r| r.to_vec()).collect();
                FiniteGroup::from_table(&rows)
                    .map_err(|e| bad(format!("automorphisms of object {base}: {e}")))?
            } else {
                FiniteGroup::from_table_unchecked(n, table)
            };
            groups.push(Arc::new(group));
        }

        let mut chart = vec![0; m];
        let mut lookups: Vec<Vec<usize>> = comp_objects
            .iter()
            .zip(&groups)
            .map(|(objs, g)| vec![usize::MAX; objs.len() * objs.len() * g.order()])
            .collect();
        for f in 0..m {
            let (a, b) = (src[f], dst[f]);
            let c = component_of[a];
            let k = aut_pos[compose(inverse(transport[b]), compose(f, transport[a]))];
            if k == usize::MAX {
                return Err(bad(format!("morphism {f} does not transport to an automorphism")));
            }
            chart[f] = k;
            let n = comp_objects[c].len();
            let slot = &mut lookups[c][(local[a] * n + local[b]) * groups[c].order() + k];
            if *slot != usize::MAX {
                return Err(bad(format!("morphisms {} and {f} coincide in the chart", *slot)));
            }
            *slot = f;
        }
        let components = comp_objects
            .into_iter()
            .zip(groups)
            .zip(lookups)
            .map(|((objects, group), lookup)| Component { objects, group, lookup })
            .collect::<Vec<_>>();
        if components.iter().any(|c| c.lookup.contains(&usize::MAX)) {
            return Err(bad("hom sets of isomorphic objects differ in size".into()));
        }
        Ok(FiniteGroupoid { src, dst, identities, out, pos_out, component_of, local, transport, chart, components })
    }

    /// Validates an explicit presentation exhaustively.
    pub fn from_explicit(presentation: &ExplicitGroupoid) -> Result<FiniteGroupoid> {
        let bad = |msg: String| Error::InvalidGroupoid(msg);
        let n = presentation.objects;
        let m = presentation.morphisms.len();
        if presentation.identities.len() != n {
            return Err(bad(format!("{} identities for {n} objects", presentation.identities.len())));
        }
        if presentation.morphisms.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(bad("morphism endpoint out of range".into()));
        }
        if presentation.compose.len() != m || presentation.compose.iter().any(|r| r.len() != m) {
            return Err(bad("composition table must be square in the morphism count".into()));
        }
        let (src, dst): (Vec<usize>, Vec<usize>) = presentation.morphisms.iter().copied().unzip();
        for (a, &id) in presentation.identities.iter().enumerate() {
            if id >= m || src[id] != a || dst[id] != a {
                return Err(bad(format!("identity of object {a} is not an endomorphism of it")));
            }
        }
        for g in 0..m {
            for f in 0..m {
                match (dst[f] == src[g], presentation.compose[g][f]) {
                    (true, Some(h)) if h < m && src[h] == src[f] && dst[h] == dst[g] => {}
                    (false, None) => {}
                    (true, _) => return Err(bad(format!("composite of {g} after {f} is missing or misplaced"))),
                    (false, Some(_)) => return Err(bad(format!("composite of non-composable {g} after {f}"))),
                }
            }
        }
        let comp = |g: usize, f: usize| presentation.compose[g][f].expect("checked composable");
        for f in 0..m {
            if comp(presentation.identities[dst[f]], f) != f || comp(f, presentation.identities[src[f]]) != f {
                return Err(bad(format!("unit law fails for morphism {f}")));
            }
        }
        let mut inv = vec![usize::MAX; m];
        for f in 0..m {
            inv[f] = (0..m)
                .find(|&u| {
                    src[u] == dst[f]
                        && dst[u] == src[f]
                        && comp(u, f) == presentation.identities[src[f]]
                        && comp(f, u) == presentation.identities[dst[f]]
                })
                .ok_or_else(|| bad(format!("morphism {f} is not invertible")))?;
        }
        let gpd = FiniteGroupoid::assemble(n, src.clone(), dst.clone(), presentation.identities.clone(), comp, |f| inv[f], true)?;
        for g in 0..m {
            for f in 0..m {
                if dst[f] == src[g] && gpd.compose(g, f) != comp(g, f) {
                    return Err(bad(format!("composition is not associative (witness {g} after {f})")));
                }
            }
        }
        Ok(gpd)
    }

    /// `BG`: one object whose morphisms are the elements of `G`, composed by multiplication.
    pub fn classifying(g: &FiniteGroup) -> FiniteGroupoid {
        let n = g.order();
        FiniteGroupoid::assemble(1, vec![0; n], vec![0; n], vec![0], |x, y| g.mul(x, y), |x| g.inv(x), false)
            .expect("classifying groupoid")
    }

    /// `n` objects with identities only.
    pub fn discrete(n: usize) -> FiniteGroupoid {
        let objs: Vec<usize> = (0..n).collect();
        FiniteGroupoid::assemble(n, objs.clone(), objs.clone(), objs, |g, _| g, |f| f, false).expect("discrete groupoid")
    }

    pub fn empty() -> FiniteGroupoid {
        FiniteGroupoid::discrete(0)
    }

    pub fn object_count(&self) -> usize {
        self.out.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn dst(&self, f: usize) -> usize {
        self.dst[f]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src[f]] == f
    }

    /// Morphism with the given endpoints and chart value.
    pub fn from_chart(&self, a: usize, b: usize, k: usize) -> usize {
        let c = &self.components[self.component_of[a]];
        debug_assert_eq!(self.component_of[a], self.component_of[b]);
        let n = c.objects.len();
        c.lookup[(self.local[a] * n + self.local[b]) * c.group.order() + k]
    }

    /// `g ∘ f`; the caller guarantees `dst(f) = src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        debug_assert_eq!(self.dst[f], self.src[g], "morphisms are not composable");
        let group = &self.components[self.component_of[self.src[f]]].group;
        self.from_chart(self.src[f], self.dst[g], group.mul(self.chart[g], self.chart[f]))
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        (self.dst[f] == self.src[g]).then(|| self.compose(g, f))
    }

    pub fn inverse(&self, f: usize) -> usize {
        let group = &self.components[self.component_of[self.src[f]]].group;
        self.from_chart(self.dst[f], self.src[f], group.inv(self.chart[f]))
    }

    /// Morphisms out of `a`, sorted by target and then id.
    pub fn out(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    /// Position of `f` in `out(src(f))`.
    pub fn position_out(&self, f: usize) -> usize {
        self.pos_out[f]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        let o = &self.out[a];
        let lo = o.partition_point(|&f| self.dst[f] < b);
        let hi = o.partition_point(|&f| self.dst[f] <= b);
        &o[lo..hi]
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, a: usize) -> usize {
        self.component_of[a]
    }

    /// The least object of component `c`.
    pub fn component_base(&self, c: usize) -> usize {
        self.components[c].objects[0]
    }

    pub fn component_objects(&self, c: usize) -> &[usize] {
        &self.components[c].objects
    }

    /// Automorphism group of the base object of component `c`, indexed by chart values.
    pub fn component_group(&self, c: usize) -> &Arc<FiniteGroup> {
        &self.components[c].group
    }

    /// `t_a: base → a`, the least morphism id from the component base to `a`.
    pub fn transport(&self, a: usize) -> usize {
        self.transport[a]
    }

    /// `t_b⁻¹ ∘ f ∘ t_a` as an element of the component group.
    pub fn chart(&self, f: usize) -> usize {
        self.chart[f]
    }

    pub fn is_skeletal(&self) -> bool {
        self.components.iter().all(|c| c.objects.len() == 1)
    }

    pub fn explicit(&self) -> ExplicitGroupoid {
        let m = self.morphism_count();
        ExplicitGroupoid {
            objects: self.object_count(),
            morphisms: (0..m).map(|f| (self.src[f], self.dst[f])).collect(),
            compose: (0..m).map(|g| (0..m).map(|f| self.try_compose(g, f)).collect()).collect(),
            identities: self.identities.clone(),
        }
    }

    /// Exhaustive check of the category axioms through the public operations.
    pub fn verify_axioms(&self) -> bool {
        let m = self.morphism_count();
        (0..m).all(|f| {
            let (a, b) = (self.src[f], self.dst[f]);
            self.compose(self.identities[b], f) == f
                && self.compose(f, self.identities[a]) == f
                && self.compose(self.inverse(f), f) == self.identities[a]
                && self.out[b].iter().all(|&g| {
                    self.out[self.dst[g]]
                        .iter()
                        .all(|&h| self.compose(h, self.compose(g, f)) == self.compose(self.compose(h, g), f))
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifying_groupoids() {
        let t = FiniteGroupoid::classifying(&FiniteGroup::trivial());
        assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
        let c2 = FiniteGroupoid::classifying(&FiniteGroup::cyclic(2).unwrap());
        assert_eq!((c2.object_count(), c2.morphism_count()), (1, 2));
        let s3 = FiniteGroupoid::classifying(&FiniteGroup::symmetric(3).unwrap());
        assert_eq!(s3.morphism_count(), 6);
        assert!(s3.verify_axioms());
        assert_eq!(**s3.component_group(0), FiniteGroup::symmetric(3).unwrap());
    }

    #[test]
    fn explicit_roundtrip() {
        let g = indiscrete(3);
        assert!(g.verify_axioms());
        let again = FiniteGroupoid::from_explicit(&g.explicit()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn explicit_rejects_broken_tables() {
        let mut p = FiniteGroupoid::classifying(&FiniteGroup::cyclic(3).unwrap()).explicit();
        p.compose[1][1] = Some(1);
        assert!(FiniteGroupoid::from_explicit(&p).is_err());
        let mut p = FiniteGroupoid::discrete(2).explicit();
        p.compose[0][1] = Some(0);
        assert!(FiniteGroupoid::from_explicit(&p).is_err());
        let p = ExplicitGroupoid { objects: 1, morphisms: vec![(0, 0)], compose: vec![vec![Some(0)]], identities: vec![1] };
        assert!(FiniteGroupoid::from_explicit(&p).is_err());
    }

    #[test]
    fn empty_groupoid() {
        let e = FiniteGroupoid::empty();
        assert_eq!((e.object_count(), e.morphism_count(), e.component_count()), (0, 0, 0));
        assert!(e.verify_axioms());
    }
}
