//! Spans of finite groupoids with a faithful leg, composed by iso-comma.
//!
//! A span from `𝒢` to `ℋ` is `𝒢 ← 𝒳 → ℋ` with the leg into `ℋ` faithful. Spans are
//! compared through their canonical [`BisetClass`].

use std::collections::BTreeSet;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::biset::{grothendieck, straighten, Biset, BisetClass, TransitiveClass};
use crate::error::{Error, Result};
use crate::group::{all_homomorphisms, canonical_pair, subgroups, FiniteGroup, Homomorphism, Limits, PairKey, Subgroup};
use crate::groupoid::{coproduct, iso_comma, skeleton, FiniteGroupoid, GroupoidFunctor};

#[derive(Clone, Debug)]
pub struct Span {
    apex: Arc<FiniteGroupoid>,
    free_leg: GroupoidFunctor,
    faithful_leg: GroupoidFunctor,
}

impl Span {
    /// `source ← apex → target`; the leg into the target must be faithful.
    pub fn new(free_leg: GroupoidFunctor, faithful_leg: GroupoidFunctor) -> Result<Self> {
        if *free_leg.source() != *faithful_leg.source() {
            return Err(Error::InvalidFunctor("span legs must share their source".into()));
        }
        if !faithful_leg.is_faithful() {
            return Err(Error::NotRightFaithful);
        }
        Ok(Span { apex: free_leg.source().clone(), free_leg, faithful_leg })
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        let id = GroupoidFunctor::identity(g);
        Span { apex: g.clone(), free_leg: id.clone(), faithful_leg: id }
    }

    /// Restriction along `φ: H → G`, a span `BG → BH` with apex `BH`.
    pub fn restriction(phi: &Homomorphism) -> Self {
        let free_leg = GroupoidFunctor::classifying(phi);
        let faithful_leg = GroupoidFunctor::identity(free_leg.source());
        Span { apex: free_leg.source().clone(), free_leg, faithful_leg }
    }

    /// Transfer along an injective `i: H → G`, a span `BH → BG` with apex `BH`.
    pub fn transfer(incl: &Homomorphism) -> Result<Self> {
        if !incl.is_injective() {
            return Err(Error::NotInjective);
        }
        let faithful_leg = GroupoidFunctor::classifying(incl);
        let free_leg = GroupoidFunctor::identity(faithful_leg.source());
        Ok(Span { apex: faithful_leg.source().clone(), free_leg, faithful_leg })
    }

    /// The span of a biset whose endpoints are the skeleta of `source` and `target`.
    pub fn from_biset(source: &Arc<FiniteGroupoid>, target: &Arc<FiniteGroupoid>, biset: &Biset) -> Result<Self> {
        let (sl, sr) = (skeleton(source), skeleton(target));
        if *sl.skeletal != **biset.left() || *sr.skeletal != **biset.right() {
            return Err(Error::EndpointMismatch("biset endpoints are not the skeleta of the span endpoints".into()));
        }
        let total = grothendieck(biset)?;
        let free_leg = total.to_left().then(&sl.inclusion)?;
        let faithful_leg = total.to_right().then(&sr.inclusion)?;
        Span::new(free_leg, faithful_leg)
    }

    /// Disjoint union of spans with common endpoints.
    pub fn sum(spans: &[Span]) -> Result<Self> {
        let first = spans.first().ok_or_else(|| Error::EndpointMismatch("empty sum of spans".into()))?;
        let (s, t) = (first.source().clone(), first.target().clone());
        if spans.iter().any(|x| **x.source() != *s || **x.target() != *t) {
            return Err(Error::EndpointMismatch("summands have different endpoints".into()));
        }
        let apexes: Vec<Arc<FiniteGroupoid>> = spans.iter().map(|x| x.apex.clone()).collect();
        let cp = coproduct(&apexes);
        let mut free_obj = Vec::new();
        let mut free_mor = Vec::new();
        let mut faith_obj = Vec::new();
        let mut faith_mor = Vec::new();
        for x in spans {
            free_obj.extend_from_slice(x.free_leg.obj_map());
            free_mor.extend_from_slice(x.free_leg.mor_map());
            faith_obj.extend_from_slice(x.faithful_leg.obj_map());
            faith_mor.extend_from_slice(x.faithful_leg.mor_map());
        }
        Span::new(
            GroupoidFunctor::new_unchecked(cp.groupoid.clone(), s, free_obj, free_mor),
            GroupoidFunctor::new_unchecked(cp.groupoid, t, faith_obj, faith_mor),
        )
    }

    pub fn apex(&self) -> &Arc<FiniteGroupoid> {
        &self.apex
    }

    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        self.free_leg.target()
    }

    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        self.faithful_leg.target()
    }

    pub fn free_leg(&self) -> &GroupoidFunctor {
        &self.free_leg
    }

    pub fn faithful_leg(&self) -> &GroupoidFunctor {
        &self.faithful_leg
    }

    /// `self ∘ first`: apex `iso_comma(self.free_leg, first.faithful_leg)`.
    pub fn after(&self, first: &Span) -> Result<Span> {
        compose(self, first)
    }

    /// The same span with its apex replaced by a skeleton.
    pub fn reduced(&self) -> Span {
        let sk = skeleton(&self.apex);
        Span {
            apex: sk.skeletal.clone(),
            free_leg: sk.inclusion.then(&self.free_leg).expect("composable"),
            faithful_leg: sk.inclusion.then(&self.faithful_leg).expect("composable"),
        }
    }

    /// The straightened biset over the skeleta of source and target.
    pub fn to_biset(&self) -> Result<Biset> {
        straighten(&self.free_leg, &self.faithful_leg)
    }

    /// Canonical form of the span.
    pub fn class(&self) -> Result<BisetClass> {
        self.to_biset()?.decompose()
    }

    /// The span with empty apex.
    pub fn zero(source: &Arc<FiniteGroupoid>, target: &Arc<FiniteGroupoid>) -> Self {
        let apex = Arc::new(FiniteGroupoid::empty());
        Span {
            free_leg: GroupoidFunctor::new_unchecked(apex.clone(), source.clone(), Vec::new(), Vec::new()),
            faithful_leg: GroupoidFunctor::new_unchecked(apex.clone(), target.clone(), Vec::new(), Vec::new()),
            apex,
        }
    }

    /// `source ← BL → target` for a class `(L ≤ H_j, φ: L → G_i)`, through the base objects.
    pub fn of_class(source: &Arc<FiniteGroupoid>, target: &Arc<FiniteGroupoid>, class: &TransitiveClass) -> Result<Self> {
        if class.i >= source.component_count() || class.j >= target.component_count() {
            return Err(Error::EndpointMismatch(format!("class ({}, {}) is out of range", class.i, class.j)));
        }
        let ambient = target.component_group(class.j);
        let codomain = source.component_group(class.i);
        class.key.validate(ambient, codomain)?;
        let sub = Subgroup::from_elements(ambient, &class.key.subgroup)?;
        let apex = Arc::new(FiniteGroupoid::classifying(&sub.as_group(ambient)));
        let (a, b) = (source.component_base(class.i), target.component_base(class.j));
        let free_mor = sub
            .elements()
            .iter()
            .map(|&x| source.from_chart(a, a, class.key.apply(x).expect("key covers its subgroup")))
            .collect();
        let faith_mor = sub.elements().iter().map(|&x| target.from_chart(b, b, x)).collect();
        Span::new(
            GroupoidFunctor::new(apex.clone(), source.clone(), vec![a], free_mor)?,
            GroupoidFunctor::new(apex, target.clone(), vec![b], faith_mor)?,
        )
    }

    /// A span realizing a whole [`BisetClass`], one apex component per orbit.
    pub fn of_biset_class(source: &Arc<FiniteGroupoid>, target: &Arc<FiniteGroupoid>, class: &BisetClass) -> Result<Self> {
        let mut parts = Vec::new();
        for (c, m) in class.iter() {
            let one = Span::of_class(source, target, c)?;
            parts.extend(std::iter::repeat_n(one, m));
        }
        if parts.is_empty() {
            return Ok(Span::zero(source, target));
        }
        Span::sum(&parts)
    }
}

/// A sum of between one and `max_terms` random transitive spans between two groupoids.
pub fn random_span<R: Rng + ?Sized>(
    rng: &mut R,
    source: &Arc<FiniteGroupoid>,
    target: &Arc<FiniteGroupoid>,
    max_terms: usize,
    limits: &Limits,
) -> Result<Span> {
    if source.component_count() == 0 || target.component_count() == 0 {
        return Ok(Span::zero(source, target));
    }
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut parts = Vec::with_capacity(terms);
    for _ in 0..terms {
        let i = rng.gen_range(0..source.component_count());
        let j = rng.gen_range(0..target.component_count());
        let ambient = target.component_group(j);
        let lattice = subgroups(ambient, limits)?;
        let sub = lattice.all.choose(rng).expect("the trivial subgroup exists");
        let homs = all_homomorphisms(&sub.as_group(ambient), source.component_group(i));
        let phi = homs.choose(rng).expect("the trivial homomorphism exists");
        let key = PairKey { subgroup: sub.elements().to_vec(), map: phi.map().to_vec() };
        parts.push(Span::of_class(source, target, &TransitiveClass { i, j, key })?);
    }
    Span::sum(&parts)
}

/// The classifying groupoid of a group, shared behind an `Arc`.
pub fn classifying(g: &FiniteGroup) -> Arc<FiniteGroupoid> {
    Arc::new(FiniteGroupoid::classifying(g))
}

/// `β ∘ α` for `α: 𝒢 → ℋ` and `β: ℋ → 𝒦`.
pub fn compose(beta: &Span, alpha: &Span) -> Result<Span> {
    if **alpha.target() != **beta.source() {
        return Err(Error::EndpointMismatch("the target of the first span is not the source of the second".into()));
    }
    let ic = iso_comma(&beta.free_leg, &alpha.faithful_leg)?;
    let faithful_leg = ic.left.then(&beta.faithful_leg)?;
    let free_leg = ic.right.then(&alpha.free_leg)?;
    debug_assert!(faithful_leg.is_faithful());
    Span::new(free_leg, faithful_leg)
}

pub fn span_to_class(span: &Span) -> Result<BisetClass> {
    span.class()
}

/// Orbit size `|G_i|·|H_j|/|L|` of a transitive class.
pub fn class_size(source: &FiniteGroupoid, target: &FiniteGroupoid, class: &TransitiveClass) -> usize {
    source.component_group(class.i).order() * target.component_group(class.j).order() / class.key.subgroup.len()
}

/// Canonical transitive classes between the skeleta of two groupoids.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Arc<FiniteGroupoid>,
    pub target: Arc<FiniteGroupoid>,
    pub classes: Vec<TransitiveClass>,
    pub bound: Option<usize>,
}

impl HomBasis {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, class: &TransitiveClass) -> Option<usize> {
        self.classes.binary_search(class).ok()
    }

    pub fn coordinates(&self, class: &BisetClass) -> Result<VirtualElement> {
        let mut coeffs = vec![0; self.rank()];
        for (c, m) in class.iter() {
            let k = self
                .index_of(c)
                .ok_or_else(|| Error::InternalCheckFailed(format!("class {c:?} is not in the basis")))?;
            coeffs[k] += m as i64;
        }
        Ok(VirtualElement { coeffs })
    }
}

/// All pairs `(L ≤ H_j, φ: L → G_i)` up to conjugacy with orbit size at most `bound`.
pub fn hom_basis(
    source: &Arc<FiniteGroupoid>,
    target: &Arc<FiniteGroupoid>,
    bound: Option<usize>,
    limits: &Limits,
) -> Result<HomBasis> {
    let (ss, st) = (skeleton(source).skeletal, skeleton(target).skeletal);
    let mut classes = BTreeSet::new();
    for i in 0..ss.object_count() {
        let g = ss.component_group(i);
        for j in 0..st.object_count() {
            let h = st.component_group(j);
            let lattice = subgroups(h, limits)?;
            for l in &lattice.all {
                if bound.is_some_and(|b| g.order() * h.order() / l.order() > b) {
                    continue;
                }
                let lg = Arc::new((*l.as_group(h)).clone());
                for phi in all_homomorphisms(&lg, g) {
                    let key = PairKey { subgroup: l.elements().to_vec(), map: phi.map().to_vec() };
                    classes.insert(TransitiveClass { i, j, key: canonical_pair(h, g, &key) });
                }
            }
        }
    }
    Ok(HomBasis { source: ss, target: st, classes: classes.into_iter().collect(), bound })
}

/// The Grothendieck group of a free commutative monoid on a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAbelianGroup {
    pub rank: usize,
}

impl FreeAbelianGroup {
    pub fn zero(&self) -> VirtualElement {
        VirtualElement { coeffs: vec![0; self.rank] }
    }

    pub fn generator(&self, k: usize) -> VirtualElement {
        let mut e = self.zero();
        e.coeffs[k] = 1;
        e
    }

    /// The monoid-to-group map: a multiplicity vector read as integer coefficients.
    pub fn from_monoid(&self, mults: &[usize]) -> VirtualElement {
        VirtualElement { coeffs: mults.iter().map(|&m| m as i64).collect() }
    }
}

pub fn group_complete(basis: &HomBasis) -> FreeAbelianGroup {
    FreeAbelianGroup { rank: basis.rank() }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VirtualElement {
    pub coeffs: Vec<i64>,
}

impl VirtualElement {
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

impl Add for &VirtualElement {
    type Output = VirtualElement;
    fn add(self, rhs: &VirtualElement) -> VirtualElement {
        VirtualElement { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &VirtualElement {
    type Output = VirtualElement;
    fn sub(self, rhs: &VirtualElement) -> VirtualElement {
        VirtualElement { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &VirtualElement {
    type Output = VirtualElement;
    fn neg(self) -> VirtualElement {
        VirtualElement { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{perm, FiniteGroup, Subgroup};

    fn bg(g: &FiniteGroup) -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::classifying(g))
    }

    fn key(l: &[usize], phi: &[usize]) -> PairKey {
        PairKey { subgroup: l.to_vec(), map: phi.to_vec() }
    }

    fn transposition_subgroup() -> (Arc<FiniteGroup>, Subgroup) {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t = s3.element_of_permutation(&perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let h = Subgroup::generated_by(&s3, &[t]);
        (s3, h)
    }

    #[test]
    fn hom_basis_examples() {
        let l = Limits::default();
        let one = bg(&FiniteGroup::trivial());
        let c2 = bg(&FiniteGroup::cyclic(2).unwrap());
        let s3 = bg(&FiniteGroup::symmetric(3).unwrap());
        assert_eq!(hom_basis(&one, &one, None, &l).unwrap().rank(), 1);
        assert_eq!(hom_basis(&s3, &one, None, &l).unwrap().rank(), 1);
        assert_eq!(hom_basis(&one, &s3, None, &l).unwrap().rank(), 4);
        let b = hom_basis(&c2, &c2, None, &l).unwrap();
        assert_eq!(b.rank(), 3);
        let keys: Vec<PairKey> = b.classes.iter().map(|c| c.key.clone()).collect();
        assert_eq!(keys, vec![key(&[0], &[0]), key(&[0, 1], &[0, 0]), key(&[0, 1], &[0, 1])]);
        assert_eq!(group_complete(&b).rank, 3);
        assert_eq!(hom_basis(&c2, &c2, Some(2), &l).unwrap().rank(), 2);
    }

    #[test]
    fn identity_spans() {
        let one = bg(&FiniteGroup::trivial());
        let c2 = bg(&FiniteGroup::cyclic(2).unwrap());
        let both = coproduct(&[c2.clone(), bg(&FiniteGroup::cyclic(3).unwrap())]).groupoid;
        for g in [one, c2.clone(), both] {
            let id = Span::identity(&g);
            let class = id.class().unwrap();
            assert_eq!(class.orbit_count(), g.component_count());
            let again = Span::from_biset(&g, &g, &id.to_biset().unwrap()).unwrap();
            assert_eq!(again.class().unwrap(), class);
        }
        let c = Span::identity(&c2).class().unwrap();
        assert_eq!(c.iter().next().unwrap().0.key, key(&[0, 1], &[0, 1]));
    }

    #[test]
    fn restriction_and_transfer() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let id = Homomorphism::identity(&s3);
        assert_eq!(Span::restriction(&id).class().unwrap(), Span::identity(&bg(&s3)).class().unwrap());
        assert_eq!(Span::transfer(&id).unwrap().class().unwrap(), Span::identity(&bg(&s3)).class().unwrap());
        let one = Arc::new(FiniteGroup::trivial());
        let triv = Homomorphism::trivial(&one, &s3);
        let c = Span::restriction(&triv).class().unwrap();
        assert_eq!(c.iter().map(|(c, m)| (c.key.clone(), m)).collect::<Vec<_>>(), vec![(key(&[0], &[0]), 1)]);
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        assert!(matches!(Span::transfer(&Homomorphism::trivial(&c2, &s3)), Err(Error::NotInjective)));

        // The transfer span of ⟨(1 2)⟩ ≤ S₃ is the class (⟨(1 2)⟩ ≤ S₃, inverse of the inclusion).
        let (s3, h) = transposition_subgroup();
        let (_, incl) = h.embed(&s3);
        let c = Span::transfer(&incl).unwrap().class().unwrap();
        let (tc, m) = c.iter().next().unwrap();
        assert_eq!((c.len(), m), (1, 1));
        assert_eq!(tc.key.subgroup.len(), 2);
        assert_eq!(tc.key.map, vec![0, 1]);
    }

    #[test]
    fn transfer_then_restriction_and_double_cosets() {
        let (s3, h) = transposition_subgroup();
        let (_, incl) = h.embed(&s3);
        let tr = Span::transfer(&incl).unwrap();
        let res = Span::restriction(&incl);
        // BG → BH → BG: a single class (H ≤ G, incl).
        let c = compose(&tr, &res).unwrap().class().unwrap();
        assert_eq!(c.orbit_count(), 1);
        let (tc, _) = c.iter().next().unwrap();
        assert_eq!(tc.key.subgroup.len(), 2);
        // BH → BG → BH: (C₂ ≤ C₂, id) + (1 ≤ C₂, triv).
        let c = compose(&res, &tr).unwrap().class().unwrap();
        let keys: Vec<(PairKey, usize)> = c.iter().map(|(c, m)| (c.key.clone(), m)).collect();
        assert_eq!(keys, vec![(key(&[0], &[0]), 1), (key(&[0, 1], &[0, 1]), 1)]);
    }

    #[test]
    fn coproduct_apex_is_additive() {
        let c2 = bg(&FiniteGroup::cyclic(2).unwrap());
        let id = Span::identity(&c2);
        let twice = Span::sum(&[id.clone(), id]).unwrap();
        let c = twice.class().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.iter().next().unwrap().1, 2);
    }

    #[test]
    fn quotient_span_gives_free_orbit() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let n = s3.order();
        let e = Arc::new(crate::groupoid::indiscrete(n));
        let q = GroupoidFunctor::new(e.clone(), bg(&s3), vec![0; n], (0..n * n).map(|f| s3.mul(s3.inv(f % n), f / n)).collect()).unwrap();
        // B1 ← EG → BG with the quotient as faithful leg.
        let span = Span::new(GroupoidFunctor::to_point(&e), q).unwrap();
        let c = span.class().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.iter().next().unwrap().0.key, key(&[0], &[0]));
    }

    #[test]
    fn endpoint_mismatch() {
        let c2 = bg(&FiniteGroup::cyclic(2).unwrap());
        let c3 = bg(&FiniteGroup::cyclic(3).unwrap());
        assert!(matches!(compose(&Span::identity(&c2), &Span::identity(&c3)), Err(Error::EndpointMismatch(_))));
    }
}
