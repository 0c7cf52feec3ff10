use serde::{Deserialize, Serialize};

use super::Permutative;
use crate::error::{Error, Result};
use crate::group::Limits;

/// Morphisms `(source, target)`, the composition table `compose[g][f] = g ∘ f` and identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableHoms {
    pub morphisms: Vec<(usize, usize)>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub identities: Vec<usize>,
}

/// Tensor products; `None` marks an object or morphism outside the presented range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableTensor {
    pub objects: Vec<Vec<Option<usize>>>,
    pub morphisms: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablePresentation {
    pub objects: usize,
    pub homs: TableHoms,
    pub tensor: TableTensor,
    /// `symmetry[a][b] = β_{a,b}`, defined whenever `a ⊗ b` is.
    pub symmetry: Vec<Vec<Option<usize>>>,
    pub unit: usize,
}

/// A permutative category given by finite tables, with every axiom checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TablePermutative {
    p: TablePresentation,
    inverse: Vec<Option<usize>>,
}

impl TablePermutative {
    pub fn new(p: TablePresentation) -> Result<Self> {
        let bad = |msg: String| Error::InvalidCategory(msg);
        let n = p.objects;
        let m = p.homs.morphisms.len();
        let square = |t: &Vec<Vec<Option<usize>>>, k: usize| t.len() == k && t.iter().all(|r| r.len() == k);
        if p.unit >= n || p.homs.identities.len() != n {
            return Err(bad("unit or identities out of range".into()));
        }
        if !square(&p.homs.compose, m) || !square(&p.tensor.morphisms, m) || !square(&p.tensor.objects, n) || !square(&p.symmetry, n) {
            return Err(bad("tables have the wrong shape".into()));
        }
        let in_range = |t: &Vec<Vec<Option<usize>>>, k: usize| t.iter().flatten().flatten().all(|&x| x < k);
        if p.homs.morphisms.iter().any(|&(a, b)| a >= n || b >= n)
            || p.homs.identities.iter().any(|&f| f >= m)
            || !in_range(&p.homs.compose, m)
            || !in_range(&p.tensor.morphisms, m)
            || !in_range(&p.tensor.objects, n)
            || !in_range(&p.symmetry, m)
        {
            return Err(bad("table entry out of range".into()));
        }
        let src = |f: usize| p.homs.morphisms[f].0;
        let dst = |f: usize| p.homs.morphisms[f].1;
        let comp = |g: usize, f: usize| p.homs.compose[g][f];
        let id = |a: usize| p.homs.identities[a];
        let tobj = |a: usize, b: usize| p.tensor.objects[a][b];
        let tmor = |f: usize, g: usize| p.tensor.morphisms[f][g];

        // Category axioms.
        for a in 0..n {
            if p.homs.morphisms[id(a)] != (a, a) {
                return Err(bad(format!("identity of {a} has wrong endpoints")));
            }
        }
        for g in 0..m {
            for f in 0..m {
                match (dst(f) == src(g), comp(g, f)) {
                    (true, Some(h)) if p.homs.morphisms[h] == (src(f), dst(g)) => {}
                    (false, None) => {}
                    _ => return Err(bad(format!("composition {g} ∘ {f} is wrongly defined"))),
                }
            }
        }
        for f in 0..m {
            if comp(id(dst(f)), f) != Some(f) || comp(f, id(src(f))) != Some(f) {
                return Err(bad(format!("identities are not neutral for {f}")));
            }
        }
        for f in 0..m {
            for g in (0..m).filter(|&g| src(g) == dst(f)) {
                let gf = comp(g, f).expect("checked");
                for h in (0..m).filter(|&h| src(h) == dst(g)) {
                    if comp(h, gf) != comp(comp(h, g).expect("checked"), f) {
                        return Err(bad(format!("composition is not associative at ({h}, {g}, {f})")));
                    }
                }
            }
        }

        // Tensor on objects.
        for a in 0..n {
            if tobj(p.unit, a) != Some(a) || tobj(a, p.unit) != Some(a) {
                return Err(bad(format!("the unit is not neutral for {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    let left = tobj(a, b).and_then(|ab| tobj(ab, c));
                    let right = tobj(b, c).and_then(|bc| tobj(a, bc));
                    if left != right {
                        return Err(bad(format!("tensor is not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }

        // Tensor on morphisms.
        for f in 0..m {
            for g in 0..m {
                let expected = tobj(src(f), src(g)).zip(tobj(dst(f), dst(g)));
                match (expected, tmor(f, g)) {
                    (Some(ends), Some(fg)) if p.homs.morphisms[fg] == ends => {}
                    (None, None) => {}
                    _ => return Err(bad(format!("tensor {f} ⊗ {g} is wrongly defined"))),
                }
            }
            if tmor(id(p.unit), f) != Some(f) || tmor(f, id(p.unit)) != Some(f) {
                return Err(bad(format!("the unit is not neutral for morphism {f}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if let Some(ab) = tobj(a, b) {
                    if tmor(id(a), id(b)) != Some(id(ab)) {
                        return Err(bad(format!("id ⊗ id is not an identity at ({a}, {b})")));
                    }
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(fg) = tmor(f, g) else { continue };
                for f2 in (0..m).filter(|&x| src(x) == dst(f)) {
                    for g2 in (0..m).filter(|&x| src(x) == dst(g)) {
                        let Some(f2g2) = tmor(f2, g2) else { continue };
                        let lhs = comp(f2g2, fg);
                        let rhs = tmor(comp(f2, f).expect("composable"), comp(g2, g).expect("composable"));
                        if lhs != rhs {
                            return Err(bad(format!("tensor is not functorial at ({f2}, {g2}, {f}, {g})")));
                        }
                    }
                }
                for h in 0..m {
                    let left = tmor(fg, h);
                    let right = tmor(g, h).and_then(|gh| tmor(f, gh));
                    if left != right {
                        return Err(bad(format!("tensor of morphisms is not associative at ({f}, {g}, {h})")));
                    }
                }
            }
        }

        // Symmetry.
        for a in 0..n {
            for b in 0..n {
                let ab = tobj(a, b);
                let beta = p.symmetry[a][b];
                match (ab, beta) {
                    (None, None) => continue,
                    (Some(ab), Some(beta)) => {
                        let ba = tobj(b, a).ok_or_else(|| bad(format!("{b} ⊗ {a} is undefined but {a} ⊗ {b} is not")))?;
                        if p.homs.morphisms[beta] != (ab, ba) {
                            return Err(bad(format!("β({a}, {b}) has wrong endpoints")));
                        }
                        let back = p.symmetry[b][a].ok_or_else(|| bad(format!("β({b}, {a}) is missing")))?;
                        if comp(back, beta) != Some(id(ab)) {
                            return Err(bad(format!("β({b}, {a}) ∘ β({a}, {b}) is not the identity")));
                        }
                    }
                    _ => return Err(bad(format!("β({a}, {b}) is defined exactly when {a} ⊗ {b} is"))),
                }
            }
            if p.symmetry[a][p.unit] != Some(id(a)) {
                return Err(bad(format!("β({a}, unit) is not the identity")));
            }
        }
        for f in 0..m {
            for g in 0..m {
                let (Some(fg), Some(gf)) = (tmor(f, g), tmor(g, f)) else { continue };
                let before = p.symmetry[src(f)][src(g)].expect("defined with the tensor");
                let after = p.symmetry[dst(f)][dst(g)].expect("defined with the tensor");
                if comp(after, fg) != comp(gf, before) {
                    return Err(bad(format!("β is not natural at ({f}, {g})")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let Some(bc) = tobj(b, c) else { continue };
                    let Some(whole) = p.symmetry[a][bc] else { continue };
                    let first = tmor(p.symmetry[a][b].expect("defined"), id(c));
                    let second = p.symmetry[a][c].and_then(|beta| tmor(id(b), beta));
                    if first.zip(second).and_then(|(x, y)| comp(y, x)) != Some(whole) {
                        return Err(bad(format!("hexagon fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }

        let inverse = (0..m)
            .map(|f| (0..m).find(|&g| comp(g, f) == Some(id(src(f))) && comp(f, g) == Some(id(dst(f)))))
            .collect();
        Ok(TablePermutative { p, inverse })
    }

    pub fn presentation(&self) -> &TablePresentation {
        &self.p
    }

    pub fn morphism_count(&self) -> usize {
        self.p.homs.morphisms.len()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }
}

impl Permutative for TablePermutative {
    type Mor = usize;

    fn name(&self) -> String {
        format!("table:{}:{}", self.p.objects, self.morphism_count())
    }

    fn object_count(&self) -> usize {
        self.p.objects
    }

    fn unit(&self) -> usize {
        self.p.unit
    }

    fn tensor_objects(&self, a: usize, b: usize) -> Result<usize> {
        self.p.tensor.objects[a][b].ok_or(Error::OverflowPoisoned { requested: self.p.objects, bound: self.p.objects - 1 })
    }

    fn identity(&self, a: usize) -> usize {
        self.p.homs.identities[a]
    }

    fn source(&self, f: &usize) -> usize {
        self.p.homs.morphisms[*f].0
    }

    fn target(&self, f: &usize) -> usize {
        self.p.homs.morphisms[*f].1
    }

    fn contains(&self, f: &usize) -> bool {
        *f < self.morphism_count()
    }

    fn compose(&self, g: &usize, f: &usize) -> Result<usize> {
        self.p.homs.compose[*g][*f].ok_or_else(|| Error::InvalidCategory(format!("{g} and {f} are not composable")))
    }

    fn tensor(&self, f: &usize, g: &usize) -> Result<usize> {
        self.p.tensor.morphisms[*f][*g].ok_or(Error::OverflowPoisoned { requested: self.p.objects, bound: self.p.objects - 1 })
    }

    fn symmetry(&self, a: usize, b: usize) -> Result<usize> {
        self.p.symmetry[a][b].ok_or(Error::OverflowPoisoned { requested: self.p.objects, bound: self.p.objects - 1 })
    }

    fn isomorphisms(&self, a: usize, b: usize, _limits: &Limits) -> Result<Vec<usize>> {
        Ok((0..self.morphism_count())
            .filter(|&f| self.p.homs.morphisms[f] == (a, b) && self.inverse[f].is_some())
            .collect())
    }
}
