//! Permutations in one-line notation on `0..n`.
//!
//! Composition is right-to-left: `compose(p, q)` applies `q` first.

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    debug_assert_eq!(p.len(), q.len());
    q.iter().map(|&x| p[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Block sum `p ⊕ q`: `p` on the first block, `q` shifted onto the second.
pub fn block_sum(p: &[usize], q: &[usize]) -> Perm {
    let offset = p.len();
    p.iter().copied().chain(q.iter().map(|&x| x + offset)).collect()
}

/// The permutation moving the first block of size `a` behind the second block of size `b`.
pub fn block_swap(a: usize, b: usize) -> Perm {
    (0..a + b).map(|i| if i < a { i + b } else { i - a }).collect()
}

/// The adjacent transposition `s_k` swapping `k` and `k + 1` in degree `n`.
pub fn adjacent_transposition(n: usize, k: usize) -> Perm {
    let mut p = identity(n);
    p.swap(k, k + 1);
    p
}

/// Bubble-sort word `[k_1, …, k_m]` with `p = s_{k_1} ∘ ⋯ ∘ s_{k_m}`.
///
/// Always removes the leftmost descent first, so the word is a fixed function of `p`.
pub fn adjacent_word(p: &[usize]) -> Vec<usize> {
    let mut w = p.to_vec();
    let mut word = Vec::new();
    while let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
        w.swap(k, k + 1);
        word.push(k);
    }
    word.reverse();
    word
}

/// Lexicographic rank of `p` among all permutations of its degree.
pub fn rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

pub fn unrank(n: usize, mut r: usize) -> Perm {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of degree `n` in lexicographic order (identity first).
pub fn all_permutations(n: usize) -> Vec<Perm> {
    (0..factorial(n)).map(|r| unrank(n, r)).collect()
}

/// Parses cycle notation with 1-based points, e.g. `(1 2)(3 4)` or `(1,2,3)`.
/// The empty string and `()` denote the identity.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
    let mut p = identity(degree);
    let s = s.trim();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::InvalidDocument(format!("expected '(' in cycle string {s:?}")))?;
        if !rest[..open].trim().is_empty() {
            return Err(Error::InvalidDocument(format!("unexpected text in cycle string {s:?}")));
        }
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| Error::InvalidDocument(format!("unbalanced cycle string {s:?}")))?
            + open;
        let points = rest[open + 1..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&x| x >= 1 && x <= degree)
                    .map(|x| x - 1)
                    .ok_or_else(|| Error::InvalidDocument(format!("bad point {t:?} for degree {degree}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut seen = std::collections::HashSet::new();
        if !points.iter().all(|x| seen.insert(*x)) {
            return Err(Error::InvalidDocument(format!("repeated point in cycle {s:?}")));
        }
        if points.len() > 1 {
            let mut cycle = identity(degree);
            for (k, &x) in points.iter().enumerate() {
                cycle[x] = points[(k + 1) % points.len()];
            }
            p = compose(&p, &cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(p)
}

/// Cycle notation with 1-based points; `()` for the identity.
pub fn to_cycles(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
