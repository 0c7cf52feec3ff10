//! JSON documents for groups, groupoids, bisets, spans and categories.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::biset::{Biset, BisetClass, Cell, TransitiveClass};
use crate::burnside::{classifying, compose, Span};
use crate::error::{Error, Result};
use crate::group::perm::{self, Perm};
use crate::group::{FiniteGroup, Homomorphism, Limits, PairKey, WreathElement};
use crate::groupoid::{coproduct, ExplicitGroupoid, FiniteGroupoid, GroupoidFunctor};
use crate::symmon::{FreePermutative, GObject, Permutative, TablePermutative, TablePresentation};

fn invalid(e: impl std::fmt::Display) -> Error {
    Error::InvalidDocument(e.to_string())
}

/// Parses a JSON value into a document type, mapping failures to [`Error::InvalidDocument`].
pub fn from_value<T: DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_json::from_value(value).map_err(invalid)
}

pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(invalid)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    Preset { preset: String },
    Table { order: usize, mul: Vec<Vec<usize>> },
    Permutations { perm_gens: Vec<Perm> },
}

impl GroupDoc {
    pub fn build(&self, limits: &Limits) -> Result<Arc<FiniteGroup>> {
        let g = match self {
            GroupDoc::Preset { preset } => FiniteGroup::from_preset(preset)?,
            GroupDoc::Table { order, mul } => {
                if mul.len() != *order {
                    return Err(Error::InvalidGroup(format!("table has {} rows for order {order}", mul.len())));
                }
                FiniteGroup::from_table(mul)?
            }
            GroupDoc::Permutations { perm_gens } => {
                if let Some(bad) = perm_gens.iter().find(|p| !perm::is_permutation(p)) {
                    return Err(Error::InvalidGroup(format!("{bad:?} is not a permutation")));
                }
                FiniteGroup::from_perm_gens(perm_gens, limits.max_group_order)?
            }
        };
        limits.check_order(g.order())?;
        Ok(Arc::new(g))
    }

    pub fn of(g: &FiniteGroup) -> Self {
        GroupDoc::Table { order: g.order(), mul: g.table() }
    }
}

/// A group document, or a bare preset name such as `symmetric:3`.
pub fn parse_group(text: &str, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    let text = text.trim();
    if text.starts_with('{') {
        from_str::<GroupDoc>(text)?.build(limits)
    } else {
        GroupDoc::Preset { preset: text.to_string() }.build(limits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub id: usize,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupoidDoc {
    Explicit {
        objects: usize,
        morphisms: Vec<MorphismDoc>,
        compose: Vec<Vec<Option<usize>>>,
        identities: Vec<usize>,
    },
    Classifying { classifying: GroupDoc },
    Coproduct { coproduct: Vec<GroupoidDoc> },
    /// A bare group document stands for its classifying groupoid.
    Group(GroupDoc),
}

impl GroupoidDoc {
    pub fn build(&self, limits: &Limits) -> Result<Arc<FiniteGroupoid>> {
        Ok(match self {
            GroupoidDoc::Explicit { objects, morphisms, compose, identities } => {
                if let Some(m) = morphisms.iter().enumerate().find(|(k, m)| m.id != *k) {
                    return Err(Error::InvalidGroupoid(format!("morphism listed at position {} has id {}", m.0, m.1.id)));
                }
                let presentation = ExplicitGroupoid {
                    objects: *objects,
                    morphisms: morphisms.iter().map(|m| (m.src, m.dst)).collect(),
                    compose: compose.clone(),
                    identities: identities.clone(),
                };
                let g = FiniteGroupoid::from_explicit(&presentation)?;
                for c in 0..g.component_count() {
                    limits.check_order(g.component_group(c).order())?;
                }
                Arc::new(g)
            }
            GroupoidDoc::Classifying { classifying: g } | GroupoidDoc::Group(g) => {
                let g = g.build(limits)?;
                classifying(&g)
            }
            GroupoidDoc::Coproduct { coproduct: parts } => {
                let parts = parts.iter().map(|p| p.build(limits)).collect::<Result<Vec<_>>>()?;
                coproduct(&parts).groupoid
            }
        })
    }

    pub fn of(g: &FiniteGroupoid) -> Self {
        let e = g.explicit();
        GroupoidDoc::Explicit {
            objects: e.objects,
            morphisms: e.morphisms.iter().enumerate().map(|(id, &(src, dst))| MorphismDoc { id, src, dst }).collect(),
            compose: e.compose,
            identities: e.identities,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub source: GroupDoc,
    pub target: GroupDoc,
    pub map: Vec<usize>,
}

impl HomDoc {
    pub fn build(&self, limits: &Limits) -> Result<Homomorphism> {
        Homomorphism::new(self.source.build(limits)?, self.target.build(limits)?, self.map.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionsDoc {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub i: usize,
    pub j: usize,
    pub size: usize,
    pub actions: ActionsDoc,
}

/// Cells that are not listed are empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisetDoc {
    pub left: GroupoidDoc,
    pub right: GroupoidDoc,
    pub cells: Vec<CellDoc>,
}

impl BisetDoc {
    pub fn build(&self, limits: &Limits) -> Result<Biset> {
        let (left, right) = (self.left.build(limits)?, self.right.build(limits)?);
        let empty = Biset::empty(left.clone(), right.clone())?;
        let cols = right.component_count();
        let mut cells: Vec<Cell> = (0..left.component_count())
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| empty.cell(i, j).clone())
            .collect();
        for c in &self.cells {
            if c.i >= left.component_count() || c.j >= cols {
                return Err(Error::InvalidBiset(format!("cell ({}, {}) is out of range", c.i, c.j)));
            }
            cells[c.i * cols + c.j] = Cell { size: c.size, left: c.actions.left.clone(), right: c.actions.right.clone() };
        }
        Biset::new(left, right, cells)
    }
}

/// One entry of a canonical class list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    #[serde(default)]
    pub i: usize,
    #[serde(default)]
    pub j: usize,
    #[serde(rename = "L")]
    pub subgroup: Vec<usize>,
    pub phi: Vec<usize>,
    pub mult: usize,
}

pub fn class_entries(class: &BisetClass) -> Vec<ClassEntry> {
    class
        .iter()
        .map(|(c, mult)| ClassEntry { i: c.i, j: c.j, subgroup: c.key.subgroup.clone(), phi: c.key.map.clone(), mult })
        .collect()
}

pub fn class_from_entries(entries: &[ClassEntry]) -> BisetClass {
    let mut class = BisetClass::new();
    for e in entries {
        let key = PairKey { subgroup: e.subgroup.clone(), map: e.phi.clone() };
        class.add(TransitiveClass { i: e.i, j: e.j, key }, e.mult);
    }
    class
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpanDoc {
    Explicit { source: GroupoidDoc, target: GroupoidDoc, apex: GroupoidDoc, free_leg: FunctorDoc, faithful_leg: FunctorDoc },
    /// A sum of transitive spans, one per entry and multiplicity.
    Classes { source: GroupoidDoc, target: GroupoidDoc, classes: Vec<ClassEntry> },
    Identity { identity: GroupoidDoc },
    Restriction { restriction: HomDoc },
    Transfer { transfer: HomDoc },
    /// `[α_1, α_2, …]` composed with `α_1` applied first.
    Composite { compose: Vec<SpanDoc> },
}

impl SpanDoc {
    pub fn build(&self, limits: &Limits) -> Result<Span> {
        match self {
            SpanDoc::Explicit { source, target, apex, free_leg, faithful_leg } => {
                let apex = apex.build(limits)?;
                Span::new(
                    GroupoidFunctor::new(apex.clone(), source.build(limits)?, free_leg.objects.clone(), free_leg.morphisms.clone())?,
                    GroupoidFunctor::new(apex, target.build(limits)?, faithful_leg.objects.clone(), faithful_leg.morphisms.clone())?,
                )
            }
            SpanDoc::Classes { source, target, classes } => {
                Span::of_biset_class(&source.build(limits)?, &target.build(limits)?, &class_from_entries(classes))
            }
            SpanDoc::Identity { identity } => Ok(Span::identity(&identity.build(limits)?)),
            SpanDoc::Restriction { restriction } => Ok(Span::restriction(&restriction.build(limits)?)),
            SpanDoc::Transfer { transfer } => Span::transfer(&transfer.build(limits)?),
            SpanDoc::Composite { compose: parts } => compose_all(&parts.iter().map(|p| p.build(limits)).collect::<Result<Vec<_>>>()?),
        }
    }

    pub fn of(span: &Span) -> Self {
        let leg = |f: &GroupoidFunctor| FunctorDoc { objects: f.obj_map().to_vec(), morphisms: f.mor_map().to_vec() };
        SpanDoc::Explicit {
            source: GroupoidDoc::of(span.source()),
            target: GroupoidDoc::of(span.target()),
            apex: GroupoidDoc::of(span.apex()),
            free_leg: leg(span.free_leg()),
            faithful_leg: leg(span.faithful_leg()),
        }
    }
}

/// `α_n ∘ ⋯ ∘ α_1`.
pub fn compose_all(spans: &[Span]) -> Result<Span> {
    let (first, rest) = spans.split_first().ok_or_else(|| invalid("nothing to compose"))?;
    rest.iter().try_fold(first.clone(), |acc, next| compose(next, &acc))
}

/// A permutative category named by preset or given by tables.
#[derive(Clone, Debug)]
pub enum Category {
    Free(FreePermutative),
    Table(TablePermutative),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryDoc {
    Preset { preset: String },
    Table(TablePresentation),
}

impl CategoryDoc {
    /// `finset:N`, or `free:<group>:N` with the group a preset name or a group document.
    pub fn build(&self, limits: &Limits) -> Result<Category> {
        match self {
            CategoryDoc::Table(p) => Ok(Category::Table(TablePermutative::new(p.clone())?)),
            CategoryDoc::Preset { preset } => {
                let bad = || Error::InvalidCategory(format!("unknown category preset {preset:?}"));
                let (head, size) = preset.rsplit_once(':').ok_or_else(bad)?;
                let size: usize = size.trim().parse().map_err(|_| bad())?;
                if head == "finset" {
                    return Ok(Category::Free(FreePermutative::finset(size)));
                }
                let group = head.strip_prefix("free:").ok_or_else(bad)?;
                Ok(Category::Free(FreePermutative::new(parse_group(group, limits)?, size)))
            }
        }
    }
}

impl Category {
    pub fn name(&self) -> String {
        match self {
            Category::Free(c) => c.name(),
            Category::Table(c) => c.name(),
        }
    }
}

/// A morphism of a free category: either a wreath element or, with trivial coefficients, a
/// bare permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FreeMorphismDoc {
    Permutation(Perm),
    Wreath(WreathElement),
}

impl FreeMorphismDoc {
    fn into_element(self) -> WreathElement {
        match self {
            FreeMorphismDoc::Permutation(p) => WreathElement { labels: vec![0; p.len()], perm: p },
            FreeMorphismDoc::Wreath(w) => w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GObjectDoc<M> {
    pub object: usize,
    pub action: Vec<M>,
}

impl<M: Clone + PartialEq> GObjectDoc<M> {
    pub fn of(x: &GObject<M>) -> Self {
        GObjectDoc { object: x.object(), action: x.action().to_vec() }
    }
}

impl GObjectDoc<FreeMorphismDoc> {
    pub fn build_free(&self, cat: &FreePermutative, group: &Arc<FiniteGroup>) -> Result<GObject<WreathElement>> {
        let action = self.action.iter().cloned().map(FreeMorphismDoc::into_element).collect();
        GObject::new(cat, group.clone(), self.object, action)
    }
}

impl GObjectDoc<usize> {
    pub fn build_table(&self, cat: &TablePermutative, group: &Arc<FiniteGroup>) -> Result<GObject<usize>> {
        GObject::new(cat, group.clone(), self.object, self.action.clone())
    }
}
