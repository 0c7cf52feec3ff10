//! Left-free bisets between skeletal groupoids and their orbit decomposition.
//!
//! A biset over `(𝒢, ℋ)` has one cell per pair of components `(i, j)`: a finite set
//! with commuting actions of `G_i` (the left factor, acting freely) and `H_j`. Both
//! actions are covariant. A transitive cell with stabilizer `{(φ(l), l) : l ∈ L}` is
//! recorded as the class `(L ≤ H_j, φ: L → G_i)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{canonical_pair, FiniteGroup, PairKey};
use crate::groupoid::{product, skeleton, FiniteGroupoid, GroupoidFunctor, Product};

/// One orbit type `(L ≤ H_j, φ: L → G_i)`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransitiveClass {
    pub i: usize,
    pub j: usize,
    pub key: PairKey,
}

/// A multiset of transitive classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BisetClass {
    classes: BTreeMap<TransitiveClass, usize>,
}

impl BisetClass {
    pub fn new() -> Self {
        BisetClass::default()
    }

    pub fn single(class: TransitiveClass) -> Self {
        let mut b = BisetClass::new();
        b.add(class, 1);
        b
    }

    pub fn add(&mut self, class: TransitiveClass, mult: usize) {
        if mult > 0 {
            *self.classes.entry(class).or_insert(0) += mult;
        }
    }

    pub fn extend(&mut self, other: &BisetClass) {
        for (c, &m) in &other.classes {
            self.add(c.clone(), m);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TransitiveClass, usize)> {
        self.classes.iter().map(|(c, &m)| (c, m))
    }

    pub fn multiplicity(&self, class: &TransitiveClass) -> usize {
        self.classes.get(class).copied().unwrap_or(0)
    }

    /// Number of distinct classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of orbits counted with multiplicity.
    pub fn orbit_count(&self) -> usize {
        self.classes.values().sum()
    }
}

impl FromIterator<(TransitiveClass, usize)> for BisetClass {
    fn from_iter<I: IntoIterator<Item = (TransitiveClass, usize)>>(iter: I) -> Self {
        let mut b = BisetClass::new();
        for (c, m) in iter {
            b.add(c, m);
        }
        b
    }
}

/// The `G_i × H_j`-set of one cell; `left[g][x]` and `right[h][x]` are the two actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub size: usize,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

impl Cell {
    fn empty(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        Cell { size: 0, left: vec![Vec::new(); g.order()], right: vec![Vec::new(); h.order()] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biset {
    left: Arc<FiniteGroupoid>,
    right: Arc<FiniteGroupoid>,
    cells: Vec<Cell>,
}

fn check_action(group: &FiniteGroup, act: &[Vec<usize>], size: usize, what: &str) -> Result<()> {
    let bad = |msg: String| Error::InvalidBiset(msg);
    if act.len() != group.order() || act.iter().any(|p| p.len() != size) {
        return Err(bad(format!("{what} action table has the wrong shape")));
    }
    for p in act {
        if !crate::group::perm::is_permutation(p) {
            return Err(bad(format!("{what} action is not by permutations")));
        }
    }
    if act[0].iter().enumerate().any(|(x, &y)| x != y) {
        return Err(bad(format!("{what} identity does not act trivially")));
    }
    for a in group.elements() {
        for b in group.elements() {
            let ab = group.mul(a, b);
            if (0..size).any(|x| act[ab][x] != act[a][act[b][x]]) {
                return Err(bad(format!("{what} action is not compatible with multiplication at ({a}, {b})")));
            }
        }
    }
    Ok(())
}

impl Biset {
    /// Validates actions and left freeness. Cells are indexed `i * right_components + j`.
    pub fn new(left: Arc<FiniteGroupoid>, right: Arc<FiniteGroupoid>, cells: Vec<Cell>) -> Result<Self> {
        if !left.is_skeletal() || !right.is_skeletal() {
            return Err(Error::InvalidBiset("biset endpoints must be skeletal".into()));
        }
        if cells.len() != left.object_count() * right.object_count() {
            return Err(Error::InvalidBiset("one cell per pair of components is required".into()));
        }
        let b = Biset { left, right, cells };
        for i in 0..b.left.object_count() {
            for j in 0..b.right.object_count() {
                let (g, h) = (b.left_group(i), b.right_group(j));
                let cell = b.cell(i, j);
                check_action(g, &cell.left, cell.size, "left")?;
                check_action(h, &cell.right, cell.size, "right")?;
                for x in 0..cell.size {
                    for a in g.elements() {
                        for c in h.elements() {
                            if cell.left[a][cell.right[c][x]] != cell.right[c][cell.left[a][x]] {
                                return Err(Error::InvalidBiset(format!("actions do not commute in cell ({i}, {j})")));
                            }
                        }
                    }
                }
            }
        }
        b.check_free()?;
        Ok(b)
    }

    fn check_free(&self) -> Result<()> {
        for i in 0..self.left.object_count() {
            for j in 0..self.right.object_count() {
                let cell = self.cell(i, j);
                for a in 1..self.left_group(i).order() {
                    if let Some(x) = (0..cell.size).find(|&x| cell.left[a][x] == x) {
                        return Err(Error::FreenessViolated(format!("element {a} fixes point {x} of cell ({i}, {j})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The empty biset.
    pub fn empty(left: Arc<FiniteGroupoid>, right: Arc<FiniteGroupoid>) -> Result<Self> {
        let cells = (0..left.object_count())
            .flat_map(|i| (0..right.object_count()).map(move |j| (i, j)))
            .map(|(i, j)| Cell::empty(left.component_group(i), right.component_group(j)))
            .collect();
        Biset::new(left, right, cells)
    }

    /// The transitive biset `(G_i × H_j)/Γ_{L,φ}` for a (not necessarily canonical) class.
    pub fn transitive(left: Arc<FiniteGroupoid>, right: Arc<FiniteGroupoid>, class: &TransitiveClass) -> Result<Self> {
        let b = Biset::from_class(left, right, &BisetClass::single(class.clone()))?;
        Ok(b)
    }

    /// Disjoint union of transitive bisets.
    pub fn from_class(left: Arc<FiniteGroupoid>, right: Arc<FiniteGroupoid>, class: &BisetClass) -> Result<Self> {
        if !left.is_skeletal() || !right.is_skeletal() {
            return Err(Error::InvalidBiset("biset endpoints must be skeletal".into()));
        }
        let nr = right.object_count();
        let mut cells: Vec<Cell> = (0..left.object_count())
            .flat_map(|i| (0..nr).map(move |j| (i, j)))
            .map(|(i, j)| Cell::empty(left.component_group(i), right.component_group(j)))
            .collect();
        for (tc, mult) in class.iter() {
            if tc.i >= left.object_count() || tc.j >= nr {
                return Err(Error::InvalidBiset(format!("class refers to missing cell ({}, {})", tc.i, tc.j)));
            }
            let (g, h) = (left.component_group(tc.i), right.component_group(tc.j));
            tc.key.validate(h, g)?;
            let cell = &mut cells[tc.i * nr + tc.j];
            for _ in 0..mult {
                append_orbit(cell, g, h, &tc.key);
            }
        }
        Biset::new(left, right, cells)
    }

    /// `𝒢 ≅ 𝒢 ⊗ …`: the identity biset with cells `(G_i × G_i)/ΔG_i`.
    pub fn identity(g: Arc<FiniteGroupoid>) -> Result<Self> {
        let class = (0..g.object_count())
            .map(|i| {
                let all: Vec<usize> = g.component_group(i).elements().collect();
                (TransitiveClass { i, j: i, key: PairKey { subgroup: all.clone(), map: all } }, 1)
            })
            .collect();
        Biset::from_class(g.clone(), g, &class)
    }

    pub fn left(&self) -> &Arc<FiniteGroupoid> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteGroupoid> {
        &self.right
    }

    pub fn left_group(&self, i: usize) -> &Arc<FiniteGroup> {
        self.left.component_group(i)
    }

    pub fn right_group(&self, j: usize) -> &Arc<FiniteGroup> {
        self.right.component_group(j)
    }

    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[i * self.right.object_count() + j]
    }

    pub fn size(&self) -> usize {
        self.cells.iter().map(|c| c.size).sum()
    }

    /// Orbits of every cell, each recorded by its canonical stabilizer class.
    pub fn decompose(&self) -> Result<BisetClass> {
        let mut out = BisetClass::new();
        for i in 0..self.left.object_count() {
            for j in 0..self.right.object_count() {
                let (g, h) = (self.left_group(i), self.right_group(j));
                let cell = self.cell(i, j);
                let mut seen = vec![false; cell.size];
                for x in 0..cell.size {
                    if seen[x] {
                        continue;
                    }
                    let mut subgroup = Vec::new();
                    let mut map = Vec::new();
                    for c in h.elements() {
                        let y = cell.right[c][x];
                        for a in g.elements() {
                            let z = cell.left[a][y];
                            seen[z] = true;
                            if z == x {
                                if subgroup.last() == Some(&c) {
                                    return Err(Error::FreenessViolated(format!(
                                        "stabilizer of a point in cell ({i}, {j}) is not a graph"
                                    )));
                                }
                                subgroup.push(c);
                                map.push(a);
                            }
                        }
                    }
                    let key = canonical_pair(h, g, &PairKey { subgroup, map });
                    out.add(TransitiveClass { i, j, key }, 1);
                }
            }
        }
        Ok(out)
    }
}

/// Appends one copy of `(G × H)/Γ_{L,φ}` to `cell`; points are cosets `(g, h)Γ`.
fn append_orbit(cell: &mut Cell, g: &FiniteGroup, h: &FiniteGroup, key: &PairKey) {
    let nh = h.order();
    let offset = cell.size;
    // Coset of (a, c): {(a φ(l), c l)}; label each coset by its least encoding a·|H| + c.
    let mut label = vec![usize::MAX; g.order() * nh];
    let mut reps = Vec::new();
    for code in 0..g.order() * nh {
        if label[code] != usize::MAX {
            continue;
        }
        let (a, c) = (code / nh, code % nh);
        for (&l, &pl) in key.subgroup.iter().zip(&key.map) {
            label[g.mul(a, pl) * nh + h.mul(c, l)] = reps.len();
        }
        reps.push((a, c));
    }
    let n = reps.len();
    for x in g.elements() {
        let row = reps.iter().map(|&(a, c)| offset + label[g.mul(x, a) * nh + c]);
        cell.left[x].extend(row);
    }
    for y in h.elements() {
        let row = reps.iter().map(|&(a, c)| offset + label[a * nh + h.mul(y, c)]);
        cell.right[y].extend(row);
    }
    cell.size += n;
}

/// The total groupoid of a biset with its projection to `𝒢 × ℋ`.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub groupoid: Arc<FiniteGroupoid>,
    pub product: Product,
    pub projection: GroupoidFunctor,
    /// Objects as `(i, j, x)`.
    pub objects: Vec<(usize, usize, usize)>,
}

impl Grothendieck {
    pub fn to_left(&self) -> GroupoidFunctor {
        self.projection.then(&self.product.left).expect("composable")
    }

    pub fn to_right(&self) -> GroupoidFunctor {
        self.projection.then(&self.product.right).expect("composable")
    }
}

/// Objects `(i, j, x)`, morphisms `(g, h): (i, j, x) → (i, j, (g, h)·x)`.
pub fn grothendieck(x: &Biset) -> Result<Grothendieck> {
    x.check_free()?;
    let nr = x.right.object_count();
    let mut objects = Vec::new();
    let mut first = vec![0; x.cells.len()];
    for (idx, cell) in x.cells.iter().enumerate() {
        first[idx] = objects.len();
        objects.extend((0..cell.size).map(|p| (idx / nr, idx % nr, p)));
    }
    let orders = |o: usize| {
        let (i, j, _) = objects[o];
        (x.left_group(i).order(), x.right_group(j).order())
    };
    let mut base = Vec::with_capacity(objects.len() + 1);
    base.push(0);
    for o in 0..objects.len() {
        let (a, b) = orders(o);
        base.push(base[o] + a * b);
    }
    let m = *base.last().unwrap();
    let mut src = Vec::with_capacity(m);
    let mut dst = Vec::with_capacity(m);
    let mut label = Vec::with_capacity(m);
    for (o, &(i, j, p)) in objects.iter().enumerate() {
        let cell = x.cell(i, j);
        let nh = x.right_group(j).order();
        for a in x.left_group(i).elements() {
            for c in 0..nh {
                src.push(o);
                dst.push(first[i * nr + j] + cell.left[a][cell.right[c][p]]);
                label.push((a, c));
            }
        }
    }
    let ids = base[..objects.len()].to_vec();
    let mor = |o: usize, a: usize, c: usize| base[o] + a * orders(o).1 + c;
    let groupoid = Arc::new(FiniteGroupoid::assemble(
        objects.len(),
        src.clone(),
        dst,
        ids,
        |q, p| {
            let (i, j, _) = objects[src[p]];
            let ((a2, c2), (a1, c1)) = (label[q], label[p]);
            mor(src[p], x.left_group(i).mul(a2, a1), x.right_group(j).mul(c2, c1))
        },
        |p| {
            let (i, j, _) = objects[src[p]];
            let (a, c) = label[p];
            let target = first[i * nr + j] + x.cell(i, j).left[a][x.cell(i, j).right[c][objects[src[p]].2]];
            mor(target, x.left_group(i).inv(a), x.right_group(j).inv(c))
        },
        false,
    )?);
    let prod = product(&x.left, &x.right);
    let mr = x.right.morphism_count();
    let projection = GroupoidFunctor::new_unchecked(
        groupoid.clone(),
        prod.groupoid.clone(),
        objects.iter().map(|&(i, j, _)| prod.object(i, j)).collect(),
        (0..m)
            .map(|p| {
                let (i, j, _) = objects[src[p]];
                let (a, c) = label[p];
                x.left.from_chart(i, i, a) * mr + x.right.from_chart(j, j, c)
            })
            .collect(),
    );
    Ok(Grothendieck { groupoid, product: prod, projection, objects })
}

/// The biset of a groupoid over `𝒢 × ℋ`: cell `(i, j)` is `π₀` of the homotopy fiber.
///
/// Endpoints are skeletonized first, so the result lives over the skeleta of the
/// targets of `to_left` and `to_right`. The functor to `ℋ` must be faithful.
pub fn straighten(to_left: &GroupoidFunctor, to_right: &GroupoidFunctor) -> Result<Biset> {
    if *to_left.source() != *to_right.source() {
        return Err(Error::InvalidFunctor("straightening needs two functors out of the same groupoid".into()));
    }
    if !to_right.is_faithful() {
        return Err(Error::NotRightFaithful);
    }
    let sl = skeleton(to_left.target());
    let sr = skeleton(to_right.target());
    let rho_l = to_left.then(&sl.retraction)?;
    let rho_r = to_right.then(&sr.retraction)?;
    let (left, right) = (sl.skeletal, sr.skeletal);
    let apex = to_left.source();
    let nr = right.object_count();

    // Points (x, g, h) of the fiber over (i, j), glued along (x, g, h) ~ (y, g·ρ_L(χ)⁻¹, h·ρ_R(χ)⁻¹).
    let mut offset = vec![0; apex.object_count() + 1];
    for x in 0..apex.object_count() {
        let (i, j) = (rho_l.obj(x), rho_r.obj(x));
        offset[x + 1] = offset[x] + left.component_group(i).order() * right.component_group(j).order();
    }
    let point = |x: usize, a: usize, c: usize| offset[x] + a * right.component_group(rho_r.obj(x)).order() + c;
    let mut parent: Vec<usize> = (0..offset[apex.object_count()]).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for chi in 0..apex.morphism_count() {
        let (x, y) = (apex.src(chi), apex.dst(chi));
        let (i, j) = (rho_l.obj(x), rho_r.obj(x));
        let (g, h) = (left.component_group(i), right.component_group(j));
        let gl = g.inv(left.chart(rho_l.mor(chi)));
        let hr = h.inv(right.chart(rho_r.mor(chi)));
        for a in g.elements() {
            for c in h.elements() {
                let (p, q) = (find(&mut parent, point(x, a, c)), find(&mut parent, point(y, g.mul(a, gl), h.mul(c, hr))));
                if p != q {
                    parent[p.max(q)] = p.min(q);
                }
            }
        }
    }

    let mut cells: Vec<Cell> = (0..left.object_count())
        .flat_map(|i| (0..nr).map(move |j| (i, j)))
        .map(|(i, j)| Cell::empty(left.component_group(i), right.component_group(j)))
        .collect();
    let mut class_of: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); cells.len()];
    for x in 0..apex.object_count() {
        let (i, j) = (rho_l.obj(x), rho_r.obj(x));
        let (g, h) = (left.component_group(i), right.component_group(j));
        for a in g.elements() {
            for c in h.elements() {
                let root = find(&mut parent, point(x, a, c));
                if let std::collections::hash_map::Entry::Vacant(e) = class_of.entry(root) {
                    e.insert(reps[i * nr + j].len());
                    reps[i * nr + j].push((x, a, c));
                }
            }
        }
    }
    for i in 0..left.object_count() {
        for j in 0..nr {
            let (g, h) = (left.component_group(i), right.component_group(j));
            let cell = &mut cells[i * nr + j];
            let rs = &reps[i * nr + j];
            cell.size = rs.len();
            for a2 in g.elements() {
                cell.left[a2] = rs.iter().map(|&(x, a, c)| class_of[&find(&mut parent, point(x, g.mul(a2, a), c))]).collect();
            }
            for c2 in h.elements() {
                cell.right[c2] = rs.iter().map(|&(x, a, c)| class_of[&find(&mut parent, point(x, a, h.mul(c2, c)))]).collect();
            }
        }
    }
    Biset::new(left, right, cells)
}

/// `X ⊗_ℋ Y`: cell `(i, k)` is `⨆_j (X(i, j) × Y(j, k))/H_j`, with `H_j` acting on both factors.
pub fn tensor(x: &Biset, y: &Biset) -> Result<Biset> {
    if *x.right != *y.left {
        return Err(Error::MiddleMismatch);
    }
    let (ni, nj, nk) = (x.left.object_count(), x.right.object_count(), y.right.object_count());
    let mut cells = Vec::with_capacity(ni * nk);
    for i in 0..ni {
        for k in 0..nk {
            let (g, kk) = (x.left_group(i), y.right_group(k));
            let mut cell = Cell::empty(g, kk);
            for j in 0..nj {
                let h = x.right_group(j);
                let (cx, cy) = (x.cell(i, j), y.cell(j, k));
                let ny = cy.size;
                let mut orbit = vec![usize::MAX; cx.size * ny];
                let mut reps = Vec::new();
                for code in 0..cx.size * ny {
                    if orbit[code] != usize::MAX {
                        continue;
                    }
                    let (p, q) = (code / ny, code % ny);
                    for c in h.elements() {
                        orbit[cx.right[c][p] * ny + cy.left[c][q]] = cell.size + reps.len();
                    }
                    reps.push((p, q));
                }
                for a in g.elements() {
                    cell.left[a].extend(reps.iter().map(|&(p, q)| orbit[cx.left[a][p] * ny + q]));
                }
                for b in kk.elements() {
                    cell.right[b].extend(reps.iter().map(|&(p, q)| orbit[p * ny + cy.right[b][q]]));
                }
                cell.size += reps.len();
            }
            cells.push(cell);
        }
    }
    Biset::new(x.left.clone(), y.right.clone(), cells)
}

/// Equality of iso classes: same endpoints and the same orbit decomposition.
pub fn biset_iso(x: &Biset, y: &Biset) -> Result<bool> {
    Ok(*x.left == *y.left && *x.right == *y.right && x.decompose()? == y.decompose()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{perm, Subgroup};
    use crate::groupoid::{indiscrete, coproduct};

    fn bg(g: FiniteGroup) -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::classifying(&g))
    }

    fn c2() -> Arc<FiniteGroupoid> {
        bg(FiniteGroup::cyclic(2).unwrap())
    }

    fn class(l: &[usize], phi: &[usize]) -> TransitiveClass {
        TransitiveClass { i: 0, j: 0, key: PairKey { subgroup: l.to_vec(), map: phi.to_vec() } }
    }

    #[test]
    fn graph_orbit_and_free_orbit() {
        let diag = Biset::transitive(c2(), c2(), &class(&[0, 1], &[0, 1])).unwrap();
        assert_eq!(diag.size(), 2);
        let regular = Biset::transitive(c2(), c2(), &class(&[0], &[0])).unwrap();
        assert_eq!(regular.size(), 4);
        let both = Biset::from_class(c2(), c2(), &diag.decompose().unwrap().iter().chain(regular.decompose().unwrap().iter()).map(|(c, m)| (c.clone(), m)).collect()).unwrap();
        let d = both.decompose().unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.multiplicity(&class(&[0, 1], &[0, 1])), 1);
        assert_eq!(d.multiplicity(&class(&[0], &[0])), 1);
        assert!(Biset::empty(c2(), c2()).unwrap().decompose().unwrap().is_empty());
    }

    #[test]
    fn non_free_biset_is_rejected() {
        // C2 × C2 acting on one point: the left factor fixes it.
        let cell = Cell { size: 1, left: vec![vec![0], vec![0]], right: vec![vec![0], vec![0]] };
        assert!(matches!(Biset::new(c2(), c2(), vec![cell]), Err(Error::FreenessViolated(_))));
    }

    #[test]
    fn grothendieck_roundtrip() {
        let diag = Biset::transitive(c2(), c2(), &class(&[0, 1], &[0, 1])).unwrap();
        let total = grothendieck(&diag).unwrap();
        assert!(total.groupoid.verify_axioms());
        assert!(total.projection.verify());
        assert_eq!(total.groupoid.component_count(), 1);
        assert!(total.to_right().is_faithful());
        let back = straighten(&total.to_left(), &total.to_right()).unwrap();
        assert!(biset_iso(&back, &diag).unwrap());

        let regular = Biset::transitive(c2(), c2(), &class(&[0], &[0])).unwrap();
        let total = grothendieck(&regular).unwrap();
        assert_eq!(total.groupoid.component_group(0).order(), 1);
    }

    #[test]
    fn straighten_examples() {
        let one = bg(FiniteGroup::trivial());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        // (unique, id): ℋ → B1 × ℋ gives one point per cell.
        let h = bg(s3.clone());
        let b = straighten(&GroupoidFunctor::to_point(&h), &GroupoidFunctor::identity(&h)).unwrap();
        assert_eq!(b.size(), 1);
        // EG → BG × B1 gives the regular G-set.
        let n = s3.order();
        let e = Arc::new(indiscrete(n));
        let q = GroupoidFunctor::new(e.clone(), h.clone(), vec![0; n], (0..n * n).map(|f| s3.mul(s3.inv(f % n), f / n)).collect()).unwrap();
        let b = straighten(&q, &GroupoidFunctor::to_point(&e)).unwrap();
        assert_eq!(b.size(), 6);
        assert_eq!(b.decompose().unwrap().orbit_count(), 1);
        // BH → B1 × BG gives G/H; the other orientation is not faithful on the right.
        let s3a = Arc::new(s3.clone());
        let t = s3.element_of_permutation(&perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let (_, incl) = Subgroup::generated_by(&s3, &[t]).embed(&s3a);
        let bi = GroupoidFunctor::classifying(&incl);
        let b = straighten(&GroupoidFunctor::to_point(bi.source()), &bi).unwrap();
        assert_eq!(b.size(), 3);
        assert_eq!(**b.left(), *one);
        assert!(matches!(straighten(&bi, &GroupoidFunctor::to_point(bi.source())), Err(Error::NotRightFaithful)));
        // The functor to the right factor must be faithful.
        assert!(matches!(straighten(&GroupoidFunctor::identity(&h), &GroupoidFunctor::to_point(&h)), Err(Error::NotRightFaithful)));
    }

    #[test]
    fn tensor_with_identity() {
        let d4 = bg(FiniteGroup::dihedral(4).unwrap());
        let sk = coproduct(&[c2(), bg(FiniteGroup::cyclic(3).unwrap())]).groupoid;
        let x = Biset::from_class(d4.clone(), sk.clone(), &[
            (TransitiveClass { i: 0, j: 0, key: PairKey { subgroup: vec![0, 1], map: vec![0, 4] } }, 2),
            (TransitiveClass { i: 0, j: 1, key: PairKey { subgroup: vec![0], map: vec![0] } }, 1),
        ].into_iter().collect()).unwrap();
        let left = tensor(&Biset::identity(d4).unwrap(), &x).unwrap();
        assert!(biset_iso(&left, &x).unwrap());
        let right = tensor(&x, &Biset::identity(sk).unwrap()).unwrap();
        assert!(biset_iso(&right, &x).unwrap());
        assert!(matches!(tensor(&x, &x), Err(Error::MiddleMismatch)));
    }

    #[test]
    fn conjugate_pairs_give_isomorphic_bisets() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let p = |s: &str| s3.element_of_permutation(&perm::parse_cycles(s, 3).unwrap()).unwrap();
        let g = bg(s3.clone());
        let a = Subgroup::generated_by(&s3, &[p("(1 2)")]);
        let b = Subgroup::generated_by(&s3, &[p("(1 3)")]);
        let xa = Biset::transitive(g.clone(), g.clone(), &class(a.elements(), a.elements())).unwrap();
        let xb = Biset::transitive(g.clone(), g.clone(), &class(b.elements(), b.elements())).unwrap();
        assert!(biset_iso(&xa, &xb).unwrap());
        let regular = Biset::transitive(g.clone(), g.clone(), &class(&[0], &[0])).unwrap();
        assert!(!biset_iso(&xa, &regular).unwrap());
    }
}
