use std::sync::Arc;

use super::perm::{self, Perm};
use super::FiniteGroup;
use crate::error::{Error, Result};

// Preset groups are tiny, so the ambient cap does not apply to their construction.
const PRESET_BOUND: usize = 1 << 20;

fn cycle_perm(degree: usize, points: &[usize]) -> Perm {
    let mut p = perm::identity(degree);
    for (k, &x) in points.iter().enumerate() {
        p[x] = points[(k + 1) % points.len()];
    }
    p
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup::from_permutations(&[], 1, 1).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic:0 is not a group".into()));
        }
        let gen: Perm = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::from_permutations(&[gen], n, PRESET_BOUND)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("symmetric:0 is not supported".into()));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(perm::adjacent_transposition(n, 0));
        }
        if n >= 3 {
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteGroup::from_permutations(&gens, n, PRESET_BOUND)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("alternating:0 is not supported".into()));
        }
        let gens: Vec<Perm> = (2..n).map(|k| cycle_perm(n, &[0, 1, k])).collect();
        FiniteGroup::from_permutations(&gens, n, PRESET_BOUND)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidGroup("dihedral:0 is not supported".into())),
            1 => FiniteGroup::cyclic(2),
            2 => Ok(FiniteGroup::klein4()),
            _ => {
                let rotation: Perm = (0..n).map(|i| (i + 1) % n).collect();
                let reflection: Perm = (0..n).map(|i| (n - i) % n).collect();
                FiniteGroup::from_permutations(&[rotation, reflection], n, PRESET_BOUND)
            }
        }
    }

    pub fn klein4() -> Self {
        let a = vec![1, 0, 3, 2];
        let b = vec![2, 3, 0, 1];
        FiniteGroup::from_permutations(&[a, b], 4, 4).expect("Klein four-group")
    }

    pub fn quaternion8() -> Self {
        // Points 4s + u stand for ±1, ±i, ±j, ±k (u = 0..3, s the sign); the generators
        // are left multiplication by i and by j.
        let unit_mul = |a: usize, b: usize| -> (usize, usize) {
            const TABLE: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            TABLE[a][b]
        };
        let left = |u: usize| -> Perm {
            (0..8)
                .map(|p| {
                    let (s, v) = (p / 4, p % 4);
                    let (s2, w) = unit_mul(u, v);
                    ((s + s2) % 2) * 4 + w
                })
                .collect()
        };
        FiniteGroup::from_permutations(&[left(1), left(2)], 8, 8).expect("quaternion group")
    }

    pub fn from_perm_gens(gens: &[Perm], bound: usize) -> Result<Self> {
        let degree = gens.iter().map(|g| g.len()).max().unwrap_or(1).max(1);
        let padded: Vec<Perm> = gens
            .iter()
            .map(|g| g.iter().copied().chain(g.len()..degree).collect())
            .collect();
        FiniteGroup::from_permutations(&padded, degree, bound)
    }

    /// Parses `trivial`, `cyclic:n`, `symmetric:n`, `alternating:n`, `dihedral:n`,
    /// `klein4` and `quaternion8`.
    pub fn from_preset(name: &str) -> Result<Self> {
        let name = name.trim();
        let (kind, arg) = match name.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (name, None),
        };
        let n = || -> Result<usize> {
            arg.and_then(|a| a.trim().parse().ok())
                .ok_or_else(|| Error::InvalidDocument(format!("preset {name:?} needs a numeric parameter")))
        };
        match (kind, arg) {
            ("trivial", None) => Ok(FiniteGroup::trivial()),
            ("klein4", None) => Ok(FiniteGroup::klein4()),
            ("quaternion8", None) => Ok(FiniteGroup::quaternion8()),
            ("cyclic", Some(_)) => FiniteGroup::cyclic(n()?),
            ("symmetric", Some(_)) => FiniteGroup::symmetric(n()?),
            ("alternating", Some(_)) => FiniteGroup::alternating(n()?),
            ("dihedral", Some(_)) => FiniteGroup::dihedral(n()?),
            _ => Err(Error::InvalidDocument(format!("unknown group preset {name:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
}

/// One representative of every isomorphism type of group of order at most `max_order` (≤ 12).
pub fn small_groups(max_order: usize) -> Vec<NamedGroup> {
    let c = |s: &str, d: usize| perm::parse_cycles(s, d).expect("catalogue cycle");
    let from = |gens: &[&str], d: usize| {
        let gens: Vec<Perm> = gens.iter().map(|s| c(s, d)).collect();
        FiniteGroup::from_permutations(&gens, d, PRESET_BOUND).expect("catalogue group")
    };
    let entries: Vec<(&'static str, FiniteGroup)> = vec![
        ("1", FiniteGroup::trivial()),
        ("C2", FiniteGroup::cyclic(2).unwrap()),
        ("C3", FiniteGroup::cyclic(3).unwrap()),
        ("C4", FiniteGroup::cyclic(4).unwrap()),
        ("K4", FiniteGroup::klein4()),
        ("C5", FiniteGroup::cyclic(5).unwrap()),
        ("C6", FiniteGroup::cyclic(6).unwrap()),
        ("S3", FiniteGroup::symmetric(3).unwrap()),
        ("C7", FiniteGroup::cyclic(7).unwrap()),
        ("C8", FiniteGroup::cyclic(8).unwrap()),
        ("C4xC2", from(&["(1 2 3 4)", "(5 6)"], 6)),
        ("C2xC2xC2", from(&["(1 2)", "(3 4)", "(5 6)"], 6)),
        ("D4", FiniteGroup::dihedral(4).unwrap()),
        ("Q8", FiniteGroup::quaternion8()),
        ("C9", FiniteGroup::cyclic(9).unwrap()),
        ("C3xC3", from(&["(1 2 3)", "(4 5 6)"], 6)),
        ("C10", FiniteGroup::cyclic(10).unwrap()),
        ("D5", FiniteGroup::dihedral(5).unwrap()),
        ("C11", FiniteGroup::cyclic(11).unwrap()),
        ("C12", FiniteGroup::cyclic(12).unwrap()),
        ("C6xC2", from(&["(1 2 3)(4 5)", "(6 7)"], 7)),
        ("A4", FiniteGroup::alternating(4).unwrap()),
        ("D6", FiniteGroup::dihedral(6).unwrap()),
        ("Dic3", from(&["(1 2 3)", "(4 5 6 7)(2 3)"], 7)),
    ];
    entries
        .into_iter()
        .filter(|(_, g)| g.order() <= max_order)
        .map(|(name, g)| NamedGroup { name, group: Arc::new(g) })
        .collect()
}
