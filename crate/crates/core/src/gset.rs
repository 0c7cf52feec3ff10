//! Finite G-sets given by explicit permutation actions.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{perm, CosetSystem, FiniteGroup, Homomorphism, Limits, Subgroup, SubgroupLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    /// `action[g][x] = g·x`
    action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidGObject(format!("expected {} permutations, got {}", group.order(), action.len())));
        }
        let n = action[0].len();
        if action.iter().any(|p| p.len() != n || !perm::is_permutation(p)) {
            return Err(Error::InvalidGObject("action entries must be permutations of one degree".into()));
        }
        if !perm::is_identity(&action[0]) {
            return Err(Error::InvalidGObject("the identity must act trivially".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                if perm::compose(&action[a], &action[b]) != action[group.mul(a, b)] {
                    return Err(Error::InvalidGObject(format!("action is not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(GSet { group, action })
    }

    pub fn trivial(group: &Arc<FiniteGroup>, size: usize) -> Self {
        GSet { group: group.clone(), action: vec![perm::identity(size); group.order()] }
    }

    /// Left cosets `G/H`, numbered by the canonical coset system.
    pub fn cosets(group: &Arc<FiniteGroup>, h: &Subgroup) -> Self {
        let cs = CosetSystem::canonical(group, h);
        let action = group
            .elements()
            .map(|x| cs.reps().iter().map(|&gi| cs.coset_index(group.mul(x, gi))).collect())
            .collect();
        GSet { group: group.clone(), action }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.action.first().map_or(0, Vec::len)
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// Orbits in order of their least point; each orbit is sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for x in 0..self.size() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.action.iter().map(|p| p[x]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let elems: Vec<usize> = self.group.elements().filter(|&g| self.action[g][x] == x).collect();
        Subgroup::from_sorted_unchecked(elems)
    }

    pub fn fixed_points(&self, h: &Subgroup) -> usize {
        (0..self.size()).filter(|&x| h.elements().iter().all(|&g| self.action[g][x] == x)).count()
    }

    /// The restriction along `φ: K → G`.
    pub fn restrict(&self, phi: &Homomorphism) -> Result<GSet> {
        if **phi.target() != *self.group {
            return Err(Error::InvalidHomomorphism("restriction along a map into another group".into()));
        }
        let action = phi.map().iter().map(|&g| self.action[g].clone()).collect();
        Ok(GSet { group: phi.source().clone(), action })
    }

    /// `G ×_H X` for `X` a set over `h.as_group(group)`, as pairs `(a, x)` modulo `(a s, x) ~ (a, s x)`.
    pub fn induce(group: &Arc<FiniteGroup>, h: &Subgroup, x: &GSet) -> Result<GSet> {
        if *h.as_group(group) != *x.group {
            return Err(Error::SubgroupMismatch("the set is not over the given subgroup".into()));
        }
        let n = x.size();
        let canon = |a: usize, p: usize| -> (usize, usize) {
            h.elements()
                .iter()
                .enumerate()
                .map(|(k, &s)| (group.mul(a, s), x.action[x.group.inv(k)][p]))
                .min()
                .expect("subgroups are non-empty")
        };
        let mut index = vec![usize::MAX; group.order() * n];
        let mut points = Vec::new();
        for a in group.elements() {
            for p in 0..n {
                let (b, q) = canon(a, p);
                if index[b * n + q] == usize::MAX {
                    index[b * n + q] = points.len();
                    points.push((b, q));
                }
            }
        }
        let action = group
            .elements()
            .map(|g| {
                points
                    .iter()
                    .map(|&(a, p)| {
                        let (b, q) = canon(group.mul(g, a), p);
                        index[b * n + q]
                    })
                    .collect()
            })
            .collect();
        Ok(GSet { group: group.clone(), action })
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        let action = self.action.iter().zip(&other.action).map(|(p, q)| perm::block_sum(p, q)).collect();
        Ok(GSet { group: self.group.clone(), action })
    }

    /// `X × Y` with the diagonal action; the point `(x, y)` is `x·|Y| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        self.same_group(other)?;
        let m = other.size();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(p, q)| (0..self.size() * m).map(|z| p[z / m] * m + q[z % m]).collect())
            .collect();
        Ok(GSet { group: self.group.clone(), action })
    }

    /// Multiplicity of each conjugacy class of `lattice` among the orbit stabilizers.
    pub fn decompose(&self, lattice: &SubgroupLattice) -> Result<Vec<usize>> {
        let mut counts = vec![0; lattice.class_reps.len()];
        for orbit in self.orbits() {
            let stab = self.stabilizer(orbit[0]);
            let c = lattice
                .class_index(&stab)
                .ok_or_else(|| Error::InternalCheckFailed("stabilizer missing from the lattice".into()))?;
            counts[c] += 1;
        }
        Ok(counts)
    }

    /// An equivariant bijection `self → other`, if one exists.
    pub fn find_isomorphism(&self, other: &GSet) -> Option<Vec<usize>> {
        if self.group != other.group || self.size() != other.size() {
            return None;
        }
        let gens = self.group.generators();
        let xs: Vec<Vec<usize>> = gens.iter().map(|&g| self.action[g].clone()).collect();
        let ys: Vec<Vec<usize>> = gens.iter().map(|&g| other.action[g].clone()).collect();
        equivariant_bijection(self.size(), &xs, &ys)
    }

    fn same_group(&self, other: &GSet) -> Result<()> {
        if self.group != other.group {
            return Err(Error::InvalidGObject("G-sets over different groups".into()));
        }
        Ok(())
    }
}

/// Searches for a bijection `f` with `f(s·x) = s·f(x)` for every generator `s`.
///
/// `xs[k]` and `ys[k]` are the actions of the `k`-th generator on the two sets. Orbits are
/// matched one at a time; for each orbit of the source every candidate image of its least
/// point is tried, and the map is propagated along generator edges. An orbit that is
/// isomorphic to several unused target orbits may go to any of them, so no backtracking
/// across orbits is needed.
pub fn equivariant_bijection(n: usize, xs: &[Vec<usize>], ys: &[Vec<usize>]) -> Option<Vec<usize>> {
    if xs.len() != ys.len() || ys.iter().any(|p| p.len() != n) || xs.iter().any(|p| p.len() != n) {
        return None;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for start in 0..n {
        if f[start] != usize::MAX {
            continue;
        }
        let mut matched = false;
        for target in 0..n {
            if used[target] {
                continue;
            }
            if let Some(assigned) = propagate(xs, ys, start, target, &used) {
                for &(x, y) in &assigned {
                    f[x] = y;
                    used[y] = true;
                }
                matched = true;
                break;
            }
        }
        if !matched {
            return None;
        }
    }
    Some(f)
}

fn propagate(xs: &[Vec<usize>], ys: &[Vec<usize>], start: usize, target: usize, used: &[bool]) -> Option<Vec<(usize, usize)>> {
    let n = used.len();
    let mut f = std::collections::HashMap::new();
    let mut taken = std::collections::HashSet::new();
    f.insert(start, target);
    taken.insert(target);
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        let y = f[&x];
        for (s, t) in xs.iter().zip(ys) {
            let (x2, y2) = (s[x], t[y]);
            match f.get(&x2) {
                Some(&existing) if existing != y2 => return None,
                Some(_) => {}
                None => {
                    if y2 >= n || used[y2] || !taken.insert(y2) {
                        return None;
                    }
                    f.insert(x2, y2);
                    queue.push(x2);
                }
            }
        }
    }
    Some(f.into_iter().collect())
}

/// The Burnside ring on the transitive G-sets `G/L`, one per conjugacy class of subgroups.
#[derive(Clone, Debug, Serialize)]
pub struct BurnsideRing {
    #[serde(skip)]
    pub lattice: SubgroupLattice,
    /// Class representatives as element lists.
    pub basis: Vec<Vec<usize>>,
    /// `marks[i][j] = |(G/L_i)^{L_j}|`
    pub marks: Vec<Vec<usize>>,
    /// `multiplication[i][j][k]`: multiplicity of `G/L_k` in `G/L_i × G/L_j`.
    pub multiplication: Vec<Vec<Vec<usize>>>,
}

impl BurnsideRing {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn burnside_ring(group: &Arc<FiniteGroup>, limits: &Limits) -> Result<BurnsideRing> {
    let lattice = crate::group::subgroups(group, limits)?;
    let orbits: Vec<GSet> = lattice.class_reps.iter().map(|l| GSet::cosets(group, l)).collect();
    let marks = orbits
        .iter()
        .map(|x| lattice.class_reps.iter().map(|l| x.fixed_points(l)).collect())
        .collect();
    let mut multiplication = Vec::new();
    for a in &orbits {
        let mut row = Vec::new();
        for b in &orbits {
            row.push(a.product(b)?.decompose(&lattice)?);
        }
        multiplication.push(row);
    }
    let basis = lattice.class_reps.iter().map(|l| l.elements().to_vec()).collect();
    Ok(BurnsideRing { lattice, basis, marks, multiplication })
}
