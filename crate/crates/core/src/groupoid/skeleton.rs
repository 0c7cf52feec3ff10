use std::sync::Arc;

use super::{coproduct, FiniteGroupoid, GroupoidFunctor, NaturalIso};
use crate::group::FiniteGroup;

#[derive(Clone, Debug)]
pub struct SkeletonComponent {
    /// Least object of the isomorphism class.
    pub base: usize,
    pub group: Arc<FiniteGroup>,
}

/// A skeletal groupoid `∐ B Aut(base)` with an equivalence to the original.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub components: Vec<SkeletonComponent>,
    pub skeletal: Arc<FiniteGroupoid>,
    pub inclusion: GroupoidFunctor,
    pub retraction: GroupoidFunctor,
    /// `id ⇒ inclusion ∘ retraction`, with component at `a` the inverse of the transport `base → a`.
    pub unit: NaturalIso,
}

impl Skeleton {
    /// Morphism of the skeletal groupoid for element `k` of component `c`.
    pub fn morphism(&self, c: usize, k: usize) -> usize {
        self.inclusion_offsets()[c] + k
    }

    fn inclusion_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        for c in &self.components {
            off.push(acc);
            acc += c.group.order();
        }
        off
    }
}

pub fn skeleton(g: &Arc<FiniteGroupoid>) -> Skeleton {
    let components: Vec<SkeletonComponent> = (0..g.component_count())
        .map(|c| SkeletonComponent { base: g.component_base(c), group: g.component_group(c).clone() })
        .collect();
    let parts: Vec<Arc<FiniteGroupoid>> =
        components.iter().map(|c| Arc::new(FiniteGroupoid::classifying(&c.group))).collect();
    let skeletal = coproduct(&parts).groupoid;
    let mut offsets = Vec::with_capacity(components.len());
    let mut acc = 0;
    for c in &components {
        offsets.push(acc);
        acc += c.group.order();
    }
    let mut incl_mor = Vec::with_capacity(acc);
    for c in &components {
        incl_mor.extend(c.group.elements().map(|k| g.from_chart(c.base, c.base, k)));
    }
    let inclusion = GroupoidFunctor::new_unchecked(
        skeletal.clone(),
        g.clone(),
        components.iter().map(|c| c.base).collect(),
        incl_mor,
    );
    let retraction = GroupoidFunctor::new_unchecked(
        g.clone(),
        skeletal.clone(),
        (0..g.object_count()).map(|a| g.component_of(a)).collect(),
        (0..g.morphism_count()).map(|f| offsets[g.component_of(g.src(f))] + g.chart(f)).collect(),
    );
    let round_trip = retraction.then(&inclusion).expect("composable by construction");
    let unit = NaturalIso::new_unchecked(
        GroupoidFunctor::identity(g),
        round_trip,
        (0..g.object_count()).map(|a| g.inverse(g.transport(a))).collect(),
    );
    Skeleton { components, skeletal, inclusion, retraction, unit }
}
