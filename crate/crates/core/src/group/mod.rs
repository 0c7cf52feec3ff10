//! Finite groups as explicit multiplication tables.
//!
//! Element `0` is always the identity. Everything downstream (groupoids,
//! bisets, Mackey data) indexes group elements by these table positions.

mod hom;
pub mod perm;
mod presets;
mod wreath;

use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use hom::{all_homomorphisms, conjugation, find_isomorphism, Homomorphism};
use perm::Perm;
pub use presets::{small_groups, NamedGroup};
pub use wreath::{transfer_embedding, wreath, TransferEmbedding, WreathElement, WreathProduct, MAX_TABLE_ORDER};

pub const DEFAULT_MAX_ORDER: usize = 48;
pub const DEFAULT_MAX_WREATH_ORDER: usize = 1_000_000;
pub const MAX_ORDER_ENV: &str = "BURNSIDE_MAX_ORDER";

/// Size caps for the exhaustive algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_group_order: usize,
    pub max_wreath_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_group_order: DEFAULT_MAX_ORDER, max_wreath_order: DEFAULT_MAX_WREATH_ORDER }
    }
}

impl Limits {
    /// Defaults, with the group-order cap taken from `BURNSIDE_MAX_ORDER` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_ORDER_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.max_group_order = n;
        }
        limits
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_group_order {
            return Err(Error::OrderBoundExceeded { order, bound: self.max_group_order });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    perms: Option<Vec<Perm>>,
}

// Two groups are the same group when their tables agree; permutation labels are cosmetic.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl Hash for FiniteGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mul.hash(state);
    }
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking the axioms exhaustively.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        let mul: Vec<usize> = rows.iter().flatten().copied().collect();
        for x in 0..n {
            if mul[x] != x || mul[x * n] != x {
                return Err(Error::InvalidGroup("element 0 must be the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a * n + b] == 0 && mul[b * n + a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        Ok(FiniteGroup { order: n, mul, inv, perms: None })
    }

    /// Trusted constructor for tables produced by this crate.
    pub(crate) fn from_table_unchecked(order: usize, mul: Vec<usize>) -> Self {
        let mut inv = vec![0; order];
        for a in 0..order {
            inv[a] = (0..order).find(|&b| mul[a * order + b] == 0).expect("group element without inverse");
        }
        FiniteGroup { order, mul, inv, perms: None }
    }

    /// The group generated by permutations of `0..degree`, elements sorted lexicographically.
    pub fn from_permutations(gens: &[Perm], degree: usize, bound: usize) -> Result<Self> {
        for g in gens {
            if g.len() != degree || !perm::is_permutation(g) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of degree {degree}")));
            }
        }
        let id = perm::identity(degree);
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(p) = queue.pop() {
            for g in gens {
                let q = perm::compose(g, &p);
                if seen.insert(q.clone()) {
                    if seen.len() > bound {
                        return Err(Error::OrderBoundExceeded { order: seen.len(), bound });
                    }
                    queue.push(q);
                }
            }
        }
        let perms: Vec<Perm> = seen.into_iter().collect();
        let index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = perms.len();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&perm::compose(&perms[a], &perms[b])];
            }
        }
        let inv = (0..n).map(|a| index[&perm::inverse(&perms[a])]).collect();
        Ok(FiniteGroup { order: n, mul, inv, perms: Some(perms) })
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                mul[x * n + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        let inv = (0..n).map(|x| a.inv(x / nb) * nb + b.inv(x % nb)).collect();
        let perms = match (&a.perms, &b.perms) {
            (Some(pa), Some(pb)) => {
                Some((0..n).map(|x| perm::block_sum(&pa[x / nb], &pb[x % nb])).collect())
            }
            _ => None,
        };
        FiniteGroup { order: n, mul, inv, perms }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn permutations(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn permutation_degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    pub fn element_of_permutation(&self, p: &[usize]) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q.as_slice() == p)
    }

    pub(crate) fn with_permutations(mut self, perms: Option<Vec<Perm>>) -> Self {
        self.perms = perms;
        self
    }

    /// Sorted closure of `gens` under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for x in 1..self.order {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
                if span.len() == self.order {
                    break;
                }
            }
        }
        gens
    }

    /// Label for human-readable output: cycle notation when available.
    pub fn element_label(&self, x: usize) -> String {
        match &self.perms {
            Some(p) => perm::to_cycles(&p[x]),
            None => x.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elements: g.elements().collect() }
    }

    pub fn generated_by(g: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup { elements: g.closure(gens) }
    }

    /// Validates that `elements` form a subgroup of `g`.
    pub fn from_elements(g: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let s = Subgroup { elements };
        if !s.is_subgroup_of(g) {
            return Err(Error::SubgroupMismatch(format!("{:?}", s.elements)));
        }
        Ok(s)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        Subgroup { elements }
    }

    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        let e = &self.elements;
        !e.is_empty()
            && e[0] == 0
            && e.iter().all(|&x| x < g.order())
            && e.windows(2).all(|w| w[0] < w[1])
            && e.iter().all(|&a| e.iter().all(|&b| e.binary_search(&g.mul(a, b)).is_ok()))
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of `x` in the sorted element list, i.e. its index in [`Subgroup::as_group`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// `x S x⁻¹`
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&s| g.conj(x, s)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    pub fn is_contained_in(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Lexicographically least conjugate.
    pub fn canonical_conjugate(&self, g: &FiniteGroup) -> Subgroup {
        g.elements().map(|x| self.conjugate(g, x)).min().expect("groups are non-empty")
    }

    /// The subgroup as a group in its own right; element `k` is `self.elements()[k]`.
    pub fn as_group(&self, g: &FiniteGroup) -> Arc<FiniteGroup> {
        let n = self.elements.len();
        let mut mul = vec![0; n * n];
        for (a, &x) in self.elements.iter().enumerate() {
            for (b, &y) in self.elements.iter().enumerate() {
                mul[a * n + b] = self.position(g.mul(x, y)).expect("subgroup is closed");
            }
        }
        let perms = g.perms.as_ref().map(|p| self.elements.iter().map(|&x| p[x].clone()).collect());
        Arc::new(FiniteGroup::from_table_unchecked(n, mul).with_permutations(perms))
    }

    /// The subgroup as a group together with its inclusion into `g`.
    pub fn embed(&self, g: &Arc<FiniteGroup>) -> (Arc<FiniteGroup>, Homomorphism) {
        let sub = self.as_group(g);
        let incl = Homomorphism::new_unchecked(sub.clone(), g.clone(), self.elements.clone());
        (sub, incl)
    }

    /// `inner ≤ self` re-expressed inside `self.as_group(..)`, i.e. by positions.
    pub fn relative(&self, inner: &Subgroup) -> Result<Subgroup> {
        let elements = inner
            .elements
            .iter()
            .map(|&x| self.position(x))
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::SubgroupMismatch(format!("{:?} is not contained in {:?}", inner.elements, self.elements)))?;
        Ok(Subgroup { elements })
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    /// Every subgroup, sorted by element list.
    pub all: Vec<Subgroup>,
    /// One subgroup per conjugacy class, the lexicographically least member.
    pub class_reps: Vec<Subgroup>,
    /// For each entry of `all`, the index of its class in `class_reps`.
    pub class_of: Vec<usize>,
}

impl SubgroupLattice {
    pub fn class_index(&self, s: &Subgroup) -> Option<usize> {
        self.all.binary_search(s).ok().map(|k| self.class_of[k])
    }
}

pub fn subgroups(g: &FiniteGroup, limits: &Limits) -> Result<SubgroupLattice> {
    limits.check_order(g.order())?;
    let cyclic: BTreeSet<Vec<usize>> = g.elements().map(|x| g.closure(&[x])).collect();
    let mut all: BTreeSet<Vec<usize>> = cyclic.clone();
    let mut frontier: Vec<Vec<usize>> = cyclic.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = s.clone();
                gens.extend_from_slice(c);
                let joined = g.closure(&gens);
                if all.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let all: Vec<Subgroup> = all.into_iter().map(Subgroup::from_sorted_unchecked).collect();
    let canon: Vec<Subgroup> = all.iter().map(|s| s.canonical_conjugate(g)).collect();
    let class_reps: Vec<Subgroup> = canon.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let class_of = canon.iter().map(|c| class_reps.binary_search(c).expect("rep present")).collect();
    Ok(SubgroupLattice { all, class_reps, class_of })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoset {
    /// Least element of `K rep H`.
    pub rep: usize,
    /// `K ∩ rep·H·rep⁻¹`
    pub intersection: Subgroup,
    pub size: usize,
}

/// Enumerates `K\G/H`, each double coset represented by its least element.
pub fn double_cosets(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<Vec<DoubleCoset>> {
    for s in [k, h] {
        if !s.is_subgroup_of(g) {
            return Err(Error::SubgroupMismatch(format!("{:?}", s.elements())));
        }
    }
    let mut covered = vec![false; g.order()];
    let mut out = Vec::new();
    for x in g.elements() {
        if covered[x] {
            continue;
        }
        let mut size = 0;
        for &a in k.elements() {
            let ax = g.mul(a, x);
            for &b in h.elements() {
                let y = g.mul(ax, b);
                if !covered[y] {
                    covered[y] = true;
                    size += 1;
                }
            }
        }
        out.push(DoubleCoset { rep: x, intersection: k.intersection(&h.conjugate(g, x)), size });
    }
    Ok(out)
}

/// Representatives `g_1, …, g_r` of the cosets `g_i H`, with `g_1` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSystem {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetSystem {
    /// Least element of each coset, cosets ordered by that element.
    pub fn canonical(g: &FiniteGroup, h: &Subgroup) -> Self {
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &s in h.elements() {
                coset_of[g.mul(x, s)] = reps.len();
            }
            reps.push(x);
        }
        CosetSystem { subgroup: h.clone(), reps, coset_of }
    }

    pub fn new(g: &FiniteGroup, h: &Subgroup, reps: &[usize]) -> Result<Self> {
        if !h.is_subgroup_of(g) {
            return Err(Error::SubgroupMismatch(format!("{:?}", h.elements())));
        }
        if reps.first() != Some(&0) {
            return Err(Error::InvalidDocument("the first coset representative must be the identity".into()));
        }
        let mut coset_of = vec![usize::MAX; g.order()];
        for (i, &x) in reps.iter().enumerate() {
            if x >= g.order() {
                return Err(Error::InvalidDocument(format!("representative {x} out of range")));
            }
            for &s in h.elements() {
                let y = g.mul(x, s);
                if coset_of[y] != usize::MAX {
                    return Err(Error::InvalidDocument(format!("representatives {x} and {} share a coset", reps[coset_of[y]])));
                }
                coset_of[y] = i;
            }
        }
        if coset_of.contains(&usize::MAX) {
            return Err(Error::InvalidDocument("representatives do not cover every coset".into()));
        }
        Ok(CosetSystem { subgroup: h.clone(), reps: reps.to_vec(), coset_of })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_index(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Writes `x = g_i · h` and returns `(i, h)`.
    pub fn split(&self, g: &FiniteGroup, x: usize) -> (usize, usize) {
        let i = self.coset_of[x];
        (i, g.mul(g.inv(self.reps[i]), x))
    }

    /// Every coset system with first representative the identity.
    pub fn all(g: &FiniteGroup, h: &Subgroup) -> Vec<CosetSystem> {
        let canonical = CosetSystem::canonical(g, h);
        let cosets: Vec<Vec<usize>> = canonical
            .reps
            .iter()
            .map(|&x| h.elements().iter().map(|&s| g.mul(x, s)).collect())
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; cosets.len()];
        loop {
            let reps: Vec<usize> = choice.iter().zip(&cosets).map(|(&c, coset)| coset[c]).collect();
            if reps[0] == 0 {
                out.push(CosetSystem::new(g, h, &reps).expect("valid by construction"));
            }
            let mut k = 1;
            loop {
                if k >= cosets.len() {
                    return out;
                }
                choice[k] += 1;
                if choice[k] < cosets[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
}

/// A pair `(L ≤ H, φ: L → G)` in encoded form: `map[k] = φ(subgroup[k])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairKey {
    pub subgroup: Vec<usize>,
    pub map: Vec<usize>,
}

impl PairKey {
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.subgroup.binary_search(&x).ok().map(|k| self.map[k])
    }

    /// Validates the encoding: `subgroup` a subgroup of `ambient`, `map` a homomorphism into `codomain`.
    pub fn validate(&self, ambient: &FiniteGroup, codomain: &FiniteGroup) -> Result<()> {
        let l = Subgroup::from_elements(ambient, &self.subgroup)?;
        if l.elements() != self.subgroup.as_slice() || self.map.len() != self.subgroup.len() {
            return Err(Error::InvalidHomomorphism("pair encoding is not sorted or has wrong length".into()));
        }
        for (a, &x) in self.subgroup.iter().enumerate() {
            for (b, &y) in self.subgroup.iter().enumerate() {
                let xy = ambient.mul(x, y);
                if self.map.get(a).is_none() || self.map[b] >= codomain.order() || self.apply(xy) != Some(codomain.mul(self.map[a], self.map[b])) {
                    return Err(Error::InvalidHomomorphism("pair map is not a homomorphism".into()));
                }
            }
        }
        Ok(())
    }

    /// The conjugate pair `(h L h⁻¹, c_g ∘ φ ∘ c_h⁻¹)`.
    pub fn conjugate(&self, ambient: &FiniteGroup, codomain: &FiniteGroup, g: usize, h: usize) -> PairKey {
        let mut subgroup: Vec<usize> = self.subgroup.iter().map(|&x| ambient.conj(h, x)).collect();
        subgroup.sort_unstable();
        let hinv = ambient.inv(h);
        let map = subgroup
            .iter()
            .map(|&y| codomain.conj(g, self.apply(ambient.conj(hinv, y)).expect("conjugate lies in L")))
            .collect();
        PairKey { subgroup, map }
    }
}

/// Least encoding in the `G × H`-conjugacy class of `(L ≤ H, φ: L → G)`.
pub fn canonical_pair(ambient: &FiniteGroup, codomain: &FiniteGroup, pair: &PairKey) -> PairKey {
    let mut best_l: Option<Vec<usize>> = None;
    let mut best_h = Vec::new();
    for h in ambient.elements() {
        let mut l: Vec<usize> = pair.subgroup.iter().map(|&x| ambient.conj(h, x)).collect();
        l.sort_unstable();
        match &best_l {
            Some(b) if l > *b => {}
            Some(b) if l == *b => best_h.push(h),
            _ => {
                best_l = Some(l);
                best_h = vec![h];
            }
        }
    }
    let mut best: Option<PairKey> = None;
    for &h in &best_h {
        for g in codomain.elements() {
            let cand = pair.conjugate(ambient, codomain, g, h);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("groups are non-empty")
}

/// Whether two pairs are conjugate under `G × H`.
pub fn pair_conjugate(ambient: &FiniteGroup, codomain: &FiniteGroup, p1: &PairKey, p2: &PairKey) -> bool {
    p1.subgroup.len() == p2.subgroup.len()
        && canonical_pair(ambient, codomain, p1) == canonical_pair(ambient, codomain, p2)
}
