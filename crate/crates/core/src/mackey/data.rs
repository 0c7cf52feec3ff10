use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{EvaluationReport, MackeyFunctor, Matrix};
use crate::error::{Error, Result};
use crate::group::{all_homomorphisms, conjugation, find_isomorphism, small_groups, subgroups, FiniteGroup, Homomorphism, Limits};
use crate::symmon::Permutative;

use super::functors::{BurnsideMackey, SwanMackey};

/// Catalogue name of a group of order at most 12, found up to isomorphism.
pub fn group_name(g: &Arc<FiniteGroup>) -> Option<&'static str> {
    small_groups(12)
        .into_iter()
        .filter(|n| n.group.order() == g.order())
        .find(|n| find_isomorphism(g, &n.group).is_some())
        .map(|n| n.name)
}

#[derive(Clone, Debug)]
pub struct FamilyGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct MapKey {
    source: usize,
    target: usize,
    map: Vec<usize>,
}

/// A Mackey functor tabulated on a family of groups closed under subgroups up to isomorphism.
///
/// Any group isomorphic to a listed one is served by transport along a fixed isomorphism.
#[derive(Debug)]
pub struct MackeyData {
    functor: String,
    family: Vec<FamilyGroup>,
    values: Vec<Vec<String>>,
    res: BTreeMap<MapKey, Matrix>,
    tr: BTreeMap<MapKey, Matrix>,
    resolved: Mutex<HashMap<FiniteGroup, (usize, Vec<usize>)>>,
}

/// JSON form of [`MackeyData`]. Maps are labelled `"A->B:[images]"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MackeyDocument {
    pub functor: String,
    pub groups: Vec<GroupEntry>,
    pub values: BTreeMap<String, Vec<String>>,
    pub res: BTreeMap<String, Matrix>,
    pub tr: BTreeMap<String, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub name: String,
    pub mul: Vec<Vec<usize>>,
}

/// Adds subgroups up to isomorphism, names every member and sorts by order then name.
fn close_family(groups: &[Arc<FiniteGroup>], limits: &Limits) -> Result<Vec<FamilyGroup>> {
    let mut members: Vec<Arc<FiniteGroup>> = Vec::new();
    let mut queue: Vec<Arc<FiniteGroup>> = groups.to_vec();
    while let Some(g) = queue.pop() {
        limits.check_order(g.order())?;
        if members.iter().any(|m| m.order() == g.order() && find_isomorphism(&g, m).is_some()) {
            continue;
        }
        for l in &subgroups(&g, limits)?.class_reps {
            queue.push(l.as_group(&g));
        }
        members.push(g);
    }
    let mut named: Vec<FamilyGroup> = Vec::new();
    for g in members {
        let base = group_name(&g).map_or_else(|| format!("order{}", g.order()), str::to_string);
        let mut name = base.clone();
        let mut k = 2;
        while named.iter().any(|f| f.name == name) {
            name = format!("{base}#{k}");
            k += 1;
        }
        named.push(FamilyGroup { name, group: g });
    }
    named.sort_by(|a, b| (a.group.order(), &a.name).cmp(&(b.group.order(), &b.name)));
    Ok(named)
}

/// Materializes every restriction and transfer matrix between groups of the closed family.
pub fn tabulate<F: MackeyFunctor + ?Sized>(functor: &F, groups: &[Arc<FiniteGroup>], limits: &Limits) -> Result<MackeyData> {
    let family = close_family(groups, limits)?;
    let values = family.par_iter().map(|f| functor.basis(&f.group)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..family.len()).flat_map(|a| (0..family.len()).map(move |b| (a, b))).collect();
    let entries = pairs
        .par_iter()
        .map(|&(a, b)| {
            all_homomorphisms(&family[a].group, &family[b].group)
                .into_iter()
                .map(|phi| {
                    let key = MapKey { source: a, target: b, map: phi.map().to_vec() };
                    let tr = if phi.is_injective() { Some(functor.transfer(&phi)?) } else { None };
                    Ok((key, functor.restriction(&phi)?, tr))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (key, r, t) in entries.into_iter().flatten() {
        if let Some(t) = t {
            tr.insert(key.clone(), t);
        }
        res.insert(key, r);
    }
    Ok(MackeyData { functor: functor.name(), family, values, res, tr, resolved: Mutex::new(HashMap::new()) })
}

pub fn burnside_mackey(groups: &[Arc<FiniteGroup>], limits: &Limits) -> Result<MackeyData> {
    tabulate(&BurnsideMackey::new(*limits), groups, limits)
}

pub fn swan_mackey<C: Permutative>(cat: C, groups: &[Arc<FiniteGroup>], limits: &Limits) -> Result<MackeyData> {
    tabulate(&SwanMackey::new(cat, *limits), groups, limits)
}

impl MackeyData {
    pub fn functor_name(&self) -> &str {
        &self.functor
    }

    pub fn family(&self) -> &[FamilyGroup] {
        &self.family
    }

    pub fn groups(&self) -> Vec<Arc<FiniteGroup>> {
        self.family.iter().map(|f| f.group.clone()).collect()
    }

    /// The listed group isomorphic to `g`, with the isomorphism as an element map.
    fn resolve(&self, g: &Arc<FiniteGroup>) -> Result<(usize, Vec<usize>)> {
        if let Some(k) = self.family.iter().position(|f| *f.group == **g) {
            return Ok((k, g.elements().collect()));
        }
        if let Some(hit) = self.resolved.lock().expect("cache lock").get(&**g) {
            return Ok(hit.clone());
        }
        let found = self
            .family
            .iter()
            .enumerate()
            .filter(|(_, f)| f.group.order() == g.order())
            .find_map(|(k, f)| find_isomorphism(g, &f.group).map(|iso| (k, iso.map().to_vec())))
            .ok_or_else(|| Error::GroupNotInFamily(format!("no listed group is isomorphic to this group of order {}", g.order())))?;
        self.resolved.lock().expect("cache lock").insert((**g).clone(), found.clone());
        Ok(found)
    }

    fn transported(&self, phi: &Homomorphism) -> Result<MapKey> {
        let (a, into_a) = self.resolve(phi.source())?;
        let (b, into_b) = self.resolve(phi.target())?;
        let mut from_a = vec![0; into_a.len()];
        for (x, &y) in into_a.iter().enumerate() {
            from_a[y] = x;
        }
        Ok(MapKey { source: a, target: b, map: from_a.iter().map(|&x| into_b[phi.apply(x)]).collect() })
    }

    fn label(&self, key: &MapKey) -> String {
        format!("{}->{}:{:?}", self.family[key.source].name, self.family[key.target].name, key.map)
    }

    pub fn to_document(&self) -> MackeyDocument {
        MackeyDocument {
            functor: self.functor.clone(),
            groups: self.family.iter().map(|f| GroupEntry { name: f.name.clone(), mul: f.group.table() }).collect(),
            values: self.family.iter().zip(&self.values).map(|(f, v)| (f.name.clone(), v.clone())).collect(),
            res: self.res.iter().map(|(k, m)| (self.label(k), m.clone())).collect(),
            tr: self.tr.iter().map(|(k, m)| (self.label(k), m.clone())).collect(),
        }
    }

    pub fn from_document(doc: &MackeyDocument) -> Result<Self> {
        let bad = |msg: String| Error::InvalidDocument(msg);
        let mut family = Vec::with_capacity(doc.groups.len());
        for entry in &doc.groups {
            family.push(FamilyGroup { name: entry.name.clone(), group: Arc::new(FiniteGroup::from_table(&entry.mul)?) });
        }
        let index = |name: &str| {
            family.iter().position(|f| f.name == name).ok_or_else(|| bad(format!("unknown group {name:?}")))
        };
        let mut values = vec![Vec::new(); family.len()];
        for (name, labels) in &doc.values {
            values[index(name)?] = labels.clone();
        }
        let parse = |label: &str| -> Result<MapKey> {
            let (ends, map) = label.split_once(':').ok_or_else(|| bad(format!("map label {label:?}")))?;
            let (a, b) = ends.split_once("->").ok_or_else(|| bad(format!("map label {label:?}")))?;
            let map: Vec<usize> = serde_json::from_str(map).map_err(|e| bad(format!("map label {label:?}: {e}")))?;
            Ok(MapKey { source: index(a)?, target: index(b)?, map })
        };
        let mut res = BTreeMap::new();
        for (label, m) in &doc.res {
            let key = parse(label)?;
            Homomorphism::new(family[key.source].group.clone(), family[key.target].group.clone(), key.map.clone())?;
            if (m.rows(), m.cols()) != (values[key.source].len(), values[key.target].len()) {
                return Err(bad(format!("restriction {label:?} has the wrong shape")));
            }
            res.insert(key, m.clone());
        }
        let mut tr = BTreeMap::new();
        for (label, m) in &doc.tr {
            let key = parse(label)?;
            let phi = Homomorphism::new(family[key.source].group.clone(), family[key.target].group.clone(), key.map.clone())?;
            if !phi.is_injective() {
                return Err(Error::NotInjective);
            }
            if (m.rows(), m.cols()) != (values[key.target].len(), values[key.source].len()) {
                return Err(bad(format!("transfer {label:?} has the wrong shape")));
            }
            tr.insert(key, m.clone());
        }
        Ok(MackeyData { functor: doc.functor.clone(), family, values, res, tr, resolved: Mutex::new(HashMap::new()) })
    }

    /// Identity, composition and inner-conjugation laws over all stored matrices.
    pub fn check_axioms(&self) -> EvaluationReport {
        const CHECK: &str = "mackey-axioms";
        let mut checked = 0;
        let fail = |checked, law: &str, keys: Vec<&MapKey>| {
            let labels: Vec<String> = keys.iter().map(|k| self.label(k)).collect();
            EvaluationReport::fail(CHECK, checked, json!({ "law": law, "maps": labels }))
        };
        for (a, f) in self.family.iter().enumerate() {
            let n = self.values[a].len();
            let id = MapKey { source: a, target: a, map: f.group.elements().collect() };
            checked += 2;
            if self.res.get(&id) != Some(&Matrix::identity(n)) || self.tr.get(&id) != Some(&Matrix::identity(n)) {
                return fail(checked, "identity", vec![&id]);
            }
            for g in f.group.elements() {
                let c = MapKey { source: a, target: a, map: conjugation(&f.group, g).map().to_vec() };
                checked += 1;
                if self.res.get(&c) != Some(&Matrix::identity(n)) {
                    return fail(checked, "inner conjugation", vec![&c]);
                }
            }
        }
        let mut by_source: BTreeMap<usize, Vec<&MapKey>> = BTreeMap::new();
        for key in self.res.keys() {
            by_source.entry(key.source).or_default().push(key);
        }
        for (first, r1) in &self.res {
            for second in by_source.get(&first.target).into_iter().flatten() {
                let composite = MapKey {
                    source: first.source,
                    target: second.target,
                    map: first.map.iter().map(|&x| second.map[x]).collect(),
                };
                checked += 1;
                if self.res.get(&composite).cloned() != r1.mul(&self.res[*second]).ok() {
                    return fail(checked, "restriction composition", vec![first, second]);
                }
                if let (Some(t1), Some(t2)) = (self.tr.get(first), self.tr.get(*second)) {
                    checked += 1;
                    if self.tr.get(&composite).cloned() != t2.mul(t1).ok() {
                        return fail(checked, "transfer composition", vec![first, second]);
                    }
                }
            }
        }
        EvaluationReport::pass(CHECK, checked)
    }
}

impl MackeyFunctor for MackeyData {
    fn name(&self) -> String {
        self.functor.clone()
    }

    fn basis(&self, group: &Arc<FiniteGroup>) -> Result<Vec<String>> {
        Ok(self.values[self.resolve(group)?.0].clone())
    }

    fn restriction(&self, phi: &Homomorphism) -> Result<Matrix> {
        let key = self.transported(phi)?;
        self.res.get(&key).cloned().ok_or_else(|| Error::GroupNotInFamily(format!("no restriction stored for {}", self.label(&key))))
    }

    fn transfer(&self, incl: &Homomorphism) -> Result<Matrix> {
        if !incl.is_injective() {
            return Err(Error::NotInjective);
        }
        let key = self.transported(incl)?;
        self.tr.get(&key).cloned().ok_or_else(|| Error::GroupNotInFamily(format!("no transfer stored for {}", self.label(&key))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_closure_and_document_round_trip() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let m = burnside_mackey(std::slice::from_ref(&s3), &Limits::default()).unwrap();
        let names: Vec<&str> = m.family().iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["1", "C2", "C3", "S3"]);
        let doc = m.to_document();
        assert_eq!(doc.values["S3"].len(), 4);
        let json = serde_json::to_string(&doc).unwrap();
        let back = MackeyData::from_document(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_document(), doc);
        assert!(back.check_axioms().passed());
    }

    #[test]
    fn transport_to_an_isomorphic_copy() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let m = burnside_mackey(&[c2], &Limits::default()).unwrap();
        // the subgroup of S3 generated by a transposition is a different table for C2
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let copy = crate::group::Subgroup::generated_by(&s3, &[1]).as_group(&s3);
        assert_eq!(m.rank(&copy).unwrap(), 2);
        assert_eq!(m.restriction(&Homomorphism::identity(&copy)).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn corrupted_matrix_fails_axioms() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let m = burnside_mackey(&[c2], &Limits::default()).unwrap();
        let mut doc = m.to_document();
        let key = doc.res.keys().find(|k| k.starts_with("C2->1:")).unwrap().clone();
        doc.res.insert(key, Matrix::try_from(vec![vec![1], vec![1]]).unwrap());
        let bad = MackeyData::from_document(&doc).unwrap();
        let report = bad.check_axioms();
        assert!(!report.passed());
        assert!(report.counterexample.is_some());
    }
}
