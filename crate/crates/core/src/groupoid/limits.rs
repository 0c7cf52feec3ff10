use std::collections::HashMap;
use std::sync::Arc;

use super::{FiniteGroupoid, GroupoidFunctor, NaturalIso};
use crate::error::{Error, Result};

/// `n` objects with exactly one morphism between any two; morphism `a * n + b` goes `a → b`.
pub fn indiscrete(n: usize) -> FiniteGroupoid {
    let src = (0..n * n).map(|f| f / n).collect();
    let dst = (0..n * n).map(|f| f % n).collect();
    let ids = (0..n).map(|a| a * n + a).collect();
    FiniteGroupoid::assemble(n, src, dst, ids, |g, f| (f / n) * n + g % n, |f| (f % n) * n + f / n, false)
        .expect("indiscrete groupoid")
}

#[derive(Clone, Debug)]
pub struct Coproduct {
    pub groupoid: Arc<FiniteGroupoid>,
    pub injections: Vec<GroupoidFunctor>,
}

/// Disjoint union; objects and morphisms of the parts are numbered consecutively.
pub fn coproduct(parts: &[Arc<FiniteGroupoid>]) -> Coproduct {
    let mut obj_off = vec![0];
    let mut mor_off = vec![0];
    for p in parts {
        obj_off.push(obj_off.last().unwrap() + p.object_count());
        mor_off.push(mor_off.last().unwrap() + p.morphism_count());
    }
    let m = *mor_off.last().unwrap();
    let mut part_of = Vec::with_capacity(m);
    let (mut src, mut dst, mut ids) = (Vec::with_capacity(m), Vec::with_capacity(m), Vec::new());
    for (i, p) in parts.iter().enumerate() {
        for f in 0..p.morphism_count() {
            part_of.push(i);
            src.push(p.src(f) + obj_off[i]);
            dst.push(p.dst(f) + obj_off[i]);
        }
        ids.extend((0..p.object_count()).map(|a| p.identity(a) + mor_off[i]));
    }
    let groupoid = Arc::new(
        FiniteGroupoid::assemble(
            *obj_off.last().unwrap(),
            src,
            dst,
            ids,
            |g, f| {
                let i = part_of[f];
                parts[i].compose(g - mor_off[i], f - mor_off[i]) + mor_off[i]
            },
            |f| {
                let i = part_of[f];
                parts[i].inverse(f - mor_off[i]) + mor_off[i]
            },
            false,
        )
        .expect("coproduct of groupoids"),
    );
    let injections = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            GroupoidFunctor::new_unchecked(
                p.clone(),
                groupoid.clone(),
                (0..p.object_count()).map(|a| a + obj_off[i]).collect(),
                (0..p.morphism_count()).map(|f| f + mor_off[i]).collect(),
            )
        })
        .collect();
    Coproduct { groupoid, injections }
}

#[derive(Clone, Debug)]
pub struct Product {
    pub groupoid: Arc<FiniteGroupoid>,
    pub left: GroupoidFunctor,
    pub right: GroupoidFunctor,
}

impl Product {
    /// Object `(a, b)` of the product.
    pub fn object(&self, a: usize, b: usize) -> usize {
        a * self.right.target().object_count() + b
    }

    /// `(F, G): X → A × B`.
    pub fn pair(&self, f: &GroupoidFunctor, g: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if *f.source() != *g.source() || *f.target() != *self.left.target() || *g.target() != *self.right.target() {
            return Err(Error::InvalidFunctor("pairing needs a common source and the product factors as targets".into()));
        }
        let (nb, mb) = (self.right.target().object_count(), self.right.target().morphism_count());
        let x = f.source();
        Ok(GroupoidFunctor::new_unchecked(
            x.clone(),
            self.groupoid.clone(),
            (0..x.object_count()).map(|a| f.obj(a) * nb + g.obj(a)).collect(),
            (0..x.morphism_count()).map(|m| f.mor(m) * mb + g.mor(m)).collect(),
        ))
    }
}

/// `A × B`; object `(a, b)` is `a·|B₀| + b` and morphism `(f, g)` is `f·|B₁| + g`.
pub fn product(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> Product {
    let (nb, mb) = (b.object_count(), b.morphism_count());
    let m = a.morphism_count() * mb;
    let src = (0..m).map(|f| a.src(f / mb) * nb + b.src(f % mb)).collect();
    let dst = (0..m).map(|f| a.dst(f / mb) * nb + b.dst(f % mb)).collect();
    let ids = (0..a.object_count() * nb).map(|o| a.identity(o / nb) * mb + b.identity(o % nb)).collect();
    let groupoid = Arc::new(
        FiniteGroupoid::assemble(
            a.object_count() * nb,
            src,
            dst,
            ids,
            |g, f| a.compose(g / mb, f / mb) * mb + b.compose(g % mb, f % mb),
            |f| a.inverse(f / mb) * mb + b.inverse(f % mb),
            false,
        )
        .expect("product of groupoids"),
    );
    let n = groupoid.object_count();
    let left = GroupoidFunctor::new_unchecked(
        groupoid.clone(),
        a.clone(),
        (0..n).map(|o| o / nb).collect(),
        (0..m).map(|f| f / mb).collect(),
    );
    let right = GroupoidFunctor::new_unchecked(
        groupoid.clone(),
        b.clone(),
        (0..n).map(|o| o % nb).collect(),
        (0..m).map(|f| f % mb).collect(),
    );
    Product { groupoid, left, right }
}

#[derive(Clone, Debug)]
pub struct StrictPullback {
    pub groupoid: Arc<FiniteGroupoid>,
    pub left: GroupoidFunctor,
    pub right: GroupoidFunctor,
    /// Objects as pairs `(a, c)`.
    pub objects: Vec<(usize, usize)>,
    /// Whether the right leg was an isofibration, i.e. whether this is also a homotopy pullback.
    pub right_is_isofibration: bool,
}

/// Objects `(a, c)` with `f(a) = g(c)`, morphisms `(α, γ)` with `f(α) = g(γ)`.
pub fn strict_pullback(f: &GroupoidFunctor, g: &GroupoidFunctor) -> Result<StrictPullback> {
    if *f.target() != *g.target() {
        return Err(Error::EndpointMismatch("pullback legs have different targets".into()));
    }
    let (ga, gc) = (f.source(), g.source());
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for a in 0..ga.object_count() {
        for c in 0..gc.object_count() {
            if f.obj(a) == g.obj(c) {
                obj_index.insert((a, c), objects.len());
                objects.push((a, c));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_index = HashMap::new();
    for &(a, c) in &objects {
        for &alpha in ga.out(a) {
            for &gamma in gc.out(c) {
                if f.mor(alpha) == g.mor(gamma) {
                    mor_index.insert((alpha, gamma), morphisms.len());
                    morphisms.push((alpha, gamma));
                }
            }
        }
    }
    let src = morphisms.iter().map(|&(x, y)| obj_index[&(ga.src(x), gc.src(y))]).collect();
    let dst = morphisms.iter().map(|&(x, y)| obj_index[&(ga.dst(x), gc.dst(y))]).collect();
    let ids = objects.iter().map(|&(a, c)| mor_index[&(ga.identity(a), gc.identity(c))]).collect();
    let groupoid = Arc::new(FiniteGroupoid::assemble(
        objects.len(),
        src,
        dst,
        ids,
        |q, p| {
            let ((x2, y2), (x1, y1)) = (morphisms[q], morphisms[p]);
            mor_index[&(ga.compose(x2, x1), gc.compose(y2, y1))]
        },
        |p| {
            let (x, y) = morphisms[p];
            mor_index[&(ga.inverse(x), gc.inverse(y))]
        },
        false,
    )?);
    let left = GroupoidFunctor::new_unchecked(
        groupoid.clone(),
        ga.clone(),
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    );
    let right = GroupoidFunctor::new_unchecked(
        groupoid.clone(),
        gc.clone(),
        objects.iter().map(|o| o.1).collect(),
        morphisms.iter().map(|m| m.1).collect(),
    );
    Ok(StrictPullback { groupoid, left, right, objects, right_is_isofibration: g.is_isofibration() })
}

#[derive(Clone, Debug)]
pub struct IsoComma {
    pub groupoid: Arc<FiniteGroupoid>,
    pub left: GroupoidFunctor,
    pub right: GroupoidFunctor,
    /// `δ: f ∘ left ⇒ g ∘ right`.
    pub iso: NaturalIso,
    /// Objects as triples `(a, c, δ: f(a) → g(c))`.
    pub objects: Vec<(usize, usize, usize)>,
}

/// Objects `(a, c, δ: f(a) → g(c))`; a morphism `(α, γ)` out of `(a, c, δ)` ends at
/// `(a', c', g(γ) ∘ δ ∘ f(α)⁻¹)`.
pub fn iso_comma(f: &GroupoidFunctor, g: &GroupoidFunctor) -> Result<IsoComma> {
    if *f.target() != *g.target() {
        return Err(Error::EndpointMismatch("iso-comma legs have different targets".into()));
    }
    let (ga, gc, d) = (f.source(), g.source(), f.target());
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for a in 0..ga.object_count() {
        for c in 0..gc.object_count() {
            for &delta in d.hom(f.obj(a), g.obj(c)) {
                obj_index.insert((a, c, delta), objects.len());
                objects.push((a, c, delta));
            }
        }
    }
    // Morphism ids: base[o] + pos(α)·|out(c)| + pos(γ).
    let mut base = Vec::with_capacity(objects.len() + 1);
    base.push(0);
    for &(a, c, _) in &objects {
        base.push(base.last().unwrap() + ga.out(a).len() * gc.out(c).len());
    }
    let m = *base.last().unwrap();
    let mut parts = Vec::with_capacity(m);
    let (mut src, mut dst) = (Vec::with_capacity(m), Vec::with_capacity(m));
    for (o, &(a, c, delta)) in objects.iter().enumerate() {
        for &alpha in ga.out(a) {
            for &gamma in gc.out(c) {
                let moved = d.compose(g.mor(gamma), d.compose(delta, d.inverse(f.mor(alpha))));
                parts.push((alpha, gamma));
                src.push(o);
                dst.push(obj_index[&(ga.dst(alpha), gc.dst(gamma), moved)]);
            }
        }
    }
    let id_of = |o: usize, alpha: usize, gamma: usize| {
        let c = objects[o].1;
        base[o] + ga.position_out(alpha) * gc.out(c).len() + gc.position_out(gamma)
    };
    let ids = objects.iter().enumerate().map(|(o, &(a, c, _))| id_of(o, ga.identity(a), gc.identity(c))).collect();
    let groupoid = Arc::new(FiniteGroupoid::assemble(
        objects.len(),
        src.clone(),
        dst.clone(),
        ids,
        |q, p| {
            let ((x2, y2), (x1, y1)) = (parts[q], parts[p]);
            id_of(src[p], ga.compose(x2, x1), gc.compose(y2, y1))
        },
        |p| {
            let (x, y) = parts[p];
            id_of(dst[p], ga.inverse(x), gc.inverse(y))
        },
        false,
    )?);
    let left = GroupoidFunctor::new_unchecked(
        groupoid.clone(),
        ga.clone(),
        objects.iter().map(|o| o.0).collect(),
        parts.iter().map(|p| p.0).collect(),
    );
    let right = GroupoidFunctor::new_unchecked(
        groupoid.clone(),
        gc.clone(),
        objects.iter().map(|o| o.1).collect(),
        parts.iter().map(|p| p.1).collect(),
    );
    let fl = left.then(f)?;
    let gr = right.then(g)?;
    let iso = NaturalIso::new_unchecked(fl, gr, objects.iter().map(|o| o.2).collect());
    Ok(IsoComma { groupoid, left, right, iso, objects })
}
