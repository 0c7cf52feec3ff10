//! Mackey functors on the span category, evaluated at the level of bases and matrices.
//!
//! A Mackey functor assigns to each finite group a free abelian group with a named basis and
//! to each homomorphism a restriction matrix (and to each injective one a transfer matrix).
//! Matrices act on column vectors: `res(φ: K → G)` is `rank K × rank G`, `tr(i: K → G)` is
//! `rank G × rank K`. A span `BG → BH` acts as the sum over its transitive classes
//! `(L ≤ H, φ: L → G)` of `tr(L → H) · res(φ)`.

mod data;
mod functors;
mod matrix;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::burnside::{classifying, compose, random_span, Span};
use crate::error::{Error, Result};
use crate::group::{all_homomorphisms, double_cosets, subgroups, FiniteGroup, Homomorphism, Limits, Subgroup};
use crate::symmon::FreePermutative;

pub use data::{burnside_mackey, group_name, swan_mackey, tabulate, FamilyGroup, MackeyData, MackeyDocument};
pub use functors::{BurnsideMackey, RepresentableMackey, SwanMackey};
pub use matrix::Matrix;

pub trait MackeyFunctor: Send + Sync {
    fn name(&self) -> String;

    fn basis(&self, group: &Arc<FiniteGroup>) -> Result<Vec<String>>;

    fn rank(&self, group: &Arc<FiniteGroup>) -> Result<usize> {
        Ok(self.basis(group)?.len())
    }

    /// Restriction along `φ: K → G`, a `rank K × rank G` matrix.
    fn restriction(&self, phi: &Homomorphism) -> Result<Matrix>;

    /// Transfer along an injective `i: K → G`, a `rank G × rank K` matrix.
    fn transfer(&self, incl: &Homomorphism) -> Result<Matrix>;
}

/// The matrix of a span between groupoids. The value of a groupoid is the direct sum of the
/// values of its component groups, in component order.
pub fn evaluate_span<M: MackeyFunctor + ?Sized>(m: &M, span: &Span) -> Result<Matrix> {
    let (source, target) = (span.source(), span.target());
    let offsets = |g: &crate::groupoid::FiniteGroupoid| -> Result<Vec<usize>> {
        let mut off = vec![0];
        for c in 0..g.component_count() {
            off.push(off[c] + m.rank(g.component_group(c))?);
        }
        Ok(off)
    };
    let (src_off, tgt_off) = (offsets(source)?, offsets(target)?);
    let mut out = Matrix::zeros(tgt_off[target.component_count()], src_off[source.component_count()]);
    for (class, mult) in span.class()?.iter() {
        let ambient = target.component_group(class.j);
        let sub = Subgroup::from_elements(ambient, &class.key.subgroup)?;
        let (sub_group, incl) = sub.embed(ambient);
        let phi = Homomorphism::new(sub_group, source.component_group(class.i).clone(), class.key.map.clone())?;
        let block = m.transfer(&incl)?.mul(&m.restriction(&phi)?)?;
        out.add_block(tgt_off[class.j], src_off[class.i], &block, mult as i64);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of a verification sweep. A failure always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub check: String,
    pub status: Status,
    /// Number of identities compared.
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub counterexample: Option<Value>,
}

impl EvaluationReport {
    pub fn pass(check: &str, checked: usize) -> Self {
        EvaluationReport { check: check.into(), status: Status::Pass, checked, seed: None, counterexample: None }
    }

    pub fn fail(check: &str, checked: usize, witness: Value) -> Self {
        EvaluationReport { check: check.into(), status: Status::Fail, checked, seed: None, counterexample: Some(witness) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Sums the counts; the first failing report in the given order supplies the witness.
    pub fn merge(check: &str, reports: impl IntoIterator<Item = EvaluationReport>) -> Self {
        let mut out = EvaluationReport::pass(check, 0);
        for r in reports {
            out.checked += r.checked;
            if !r.passed() && out.passed() {
                out.status = Status::Fail;
                out.counterexample = r.counterexample;
            }
        }
        out
    }

    fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

fn first_differing_column(a: &Matrix, b: &Matrix) -> Option<usize> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Some(0);
    }
    (0..a.cols()).find(|&c| (0..a.rows()).any(|r| a.get(r, c) != b.get(r, c)))
}

/// `res_K ∘ tr^H` computed as a composite span, against the double coset expansion
/// `Σ_{[g] ∈ K\G/H} tr(K ∩ gHg⁻¹ → K) · res(x ↦ g⁻¹xg)`.
pub fn check_double_coset<M: MackeyFunctor + ?Sized>(
    m: &M,
    group: &Arc<FiniteGroup>,
    k: &Subgroup,
    h: &Subgroup,
) -> Result<EvaluationReport> {
    let (k_group, incl_k) = k.embed(group);
    let (h_group, incl_h) = h.embed(group);
    let span = compose(&Span::restriction(&incl_k), &Span::transfer(&incl_h)?)?;
    let engine = evaluate_span(m, &span)?;
    let mut oracle = Matrix::zeros(m.rank(&k_group)?, m.rank(&h_group)?);
    for dc in double_cosets(group, k, h)? {
        let (meet_group, _) = dc.intersection.embed(group);
        let into_k = dc.intersection.elements().iter().map(|&y| k.position(y).expect("intersection lies in K")).collect();
        let rep_inv = group.inv(dc.rep);
        let into_h = dc
            .intersection
            .elements()
            .iter()
            .map(|&y| h.position(group.mul(group.mul(rep_inv, y), dc.rep)).expect("conjugate lies in H"))
            .collect();
        let into_k = Homomorphism::new(meet_group.clone(), k_group.clone(), into_k)?;
        let into_h = Homomorphism::new(meet_group, h_group.clone(), into_h)?;
        oracle.add_block(0, 0, &m.transfer(&into_k)?.mul(&m.restriction(&into_h)?)?, 1);
    }
    const CHECK: &str = "double-coset";
    Ok(match first_differing_column(&engine, &oracle) {
        None => EvaluationReport::pass(CHECK, 1),
        Some(col) => EvaluationReport::fail(
            CHECK,
            1,
            json!({
                "functor": m.name(),
                "group": group.table(),
                "K": k.elements(),
                "H": h.elements(),
                "engine": engine,
                "oracle": oracle,
                "basis_vector": col,
            }),
        ),
    })
}

/// [`check_double_coset`] for every pair of subgroups of every listed group of order at most
/// `max_order`.
pub fn double_coset_sweep(m: &MackeyData, max_order: usize, limits: &Limits) -> Result<EvaluationReport> {
    let mut jobs = Vec::new();
    for member in m.family() {
        if member.group.order() > max_order {
            continue;
        }
        let lattice = subgroups(&member.group, limits)?;
        for k in &lattice.all {
            for h in &lattice.all {
                jobs.push((member.group.clone(), k.clone(), h.clone()));
            }
        }
    }
    let reports = jobs
        .par_iter()
        .map(|(g, k, h)| check_double_coset(m, g, k, h))
        .collect::<Result<Vec<_>>>()?;
    Ok(EvaluationReport::merge("double-coset", reports))
}

/// Compares `M(β ∘ α)` with `M(β)·M(α)` on random composable spans between classifying
/// groupoids of the family.
pub fn check_functoriality(m: &MackeyData, samples: usize, seed: u64, limits: &Limits) -> Result<EvaluationReport> {
    const CHECK: &str = "functoriality";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = m.family();
    let mut pairs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let picks: Vec<&FamilyGroup> = (0..3).map(|_| family.choose(&mut rng).expect("family is non-empty")).collect();
        let [a, b, c] = [0, 1, 2].map(|k| classifying(&picks[k].group));
        let alpha = random_span(&mut rng, &a, &b, 2, limits)?;
        let beta = random_span(&mut rng, &b, &c, 2, limits)?;
        pairs.push((picks.iter().map(|f| f.name.clone()).collect::<Vec<_>>(), alpha, beta));
    }
    let reports = pairs
        .par_iter()
        .enumerate()
        .map(|(sample, (names, alpha, beta))| {
            let composite = compose(beta, alpha)?;
            let lhs = evaluate_span(m, &composite)?;
            let rhs = evaluate_span(m, beta)?.mul(&evaluate_span(m, alpha)?)?;
            Ok(match first_differing_column(&lhs, &rhs) {
                None => EvaluationReport::pass(CHECK, 1),
                Some(col) => EvaluationReport::fail(
                    CHECK,
                    1,
                    json!({
                        "sample": sample,
                        "groups": names,
                        "alpha": alpha.class()?,
                        "beta": beta.class()?,
                        "composite": composite.class()?,
                        "evaluated_composite": lhs,
                        "product": rhs,
                        "basis_vector": col,
                    }),
                ),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvaluationReport::merge(CHECK, reports).with_seed(seed))
}

/// For each listed `G`, matches the iso-class basis of G-objects in `free:H:N` with the span
/// classes `BH → BG` of orbit size at most `N·|H|`, then compares the restriction and norm
/// matrices with the action of restriction and transfer spans by post-composition.
pub fn compare_main_theorem(
    coefficients: &Arc<FiniteGroup>,
    groups: &[Arc<FiniteGroup>],
    max_object: usize,
    limits: &Limits,
) -> Result<EvaluationReport> {
    const CHECK: &str = "main-theorem";
    let cat = FreePermutative::new(coefficients.clone(), max_object);
    let swan = SwanMackey::new(cat, *limits);
    let bound = max_object
        .checked_mul(coefficients.order())
        .ok_or(Error::OrderBoundExceeded { order: usize::MAX, bound: limits.max_group_order })?;
    let spans = RepresentableMackey::new(classifying(coefficients), Some(bound), *limits);

    // positions[g][k]: index in the span basis of the k-th G-object basis element
    let mut positions = Vec::with_capacity(groups.len());
    let mut checked = 0;
    for g in groups {
        let objects: Vec<_> = swan.classes(g)?.basis.iter().map(|b| b.key.clone()).collect();
        let classes: Vec<_> = spans.classes(g)?.classes.iter().map(|c| c.key.clone()).collect();
        let map: Option<Vec<usize>> = objects
            .iter()
            .map(|key| key.as_ref().and_then(|key| classes.iter().position(|c| c == key)))
            .collect();
        checked += 1;
        match map {
            Some(map) if objects.len() == classes.len() => positions.push(map),
            _ => {
                let missing: Vec<_> = classes.iter().filter(|c| !objects.contains(&Some((*c).clone()))).collect();
                return Ok(EvaluationReport::fail(
                    CHECK,
                    checked,
                    json!({
                        "group": g.table(),
                        "gobject_basis": objects,
                        "span_basis": classes,
                        "unmatched_span_classes": missing,
                    }),
                ));
            }
        }
    }

    let mut jobs = Vec::new();
    for (a, source) in groups.iter().enumerate() {
        for (b, target) in groups.iter().enumerate() {
            for phi in all_homomorphisms(source, target) {
                jobs.push((a, b, phi));
            }
        }
    }
    let reports = jobs
        .par_iter()
        .map(|(a, b, phi)| {
            let mut done = 1;
            let res = swan.restriction(phi)?.permuted(&positions[*a], &positions[*b]);
            let res_span = spans.restriction(phi)?;
            let mut mismatch = (res != res_span).then_some(("restriction", res, res_span));
            if mismatch.is_none() && phi.is_injective() {
                done += 1;
                let tr = swan.transfer(phi)?.permuted(&positions[*b], &positions[*a]);
                let tr_span = spans.transfer(phi)?;
                mismatch = (tr != tr_span).then_some(("transfer", tr, tr_span));
            }
            Ok(match mismatch {
                None => EvaluationReport::pass(CHECK, done),
                Some((kind, gobjects, span_side)) => EvaluationReport::fail(
                    CHECK,
                    done,
                    json!({
                        "kind": kind,
                        "source": groups[*a].table(),
                        "target": groups[*b].table(),
                        "hom": phi.map(),
                        "gobjects": gobjects,
                        "spans": span_side,
                        "basis_vector": first_differing_column(&gobjects, &span_side),
                    }),
                ),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = EvaluationReport::merge(CHECK, reports);
    out.checked += checked;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{perm, FiniteGroup};
    use crate::symmon::FreePermutative;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    fn two_cycle_in_s3() -> (Arc<FiniteGroup>, Subgroup) {
        let s3 = arc(FiniteGroup::symmetric(3).unwrap());
        let t = s3.element_of_permutation(&perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let h = Subgroup::generated_by(&s3, &[t]);
        (s3, h)
    }

    #[test]
    fn burnside_values_and_restriction_to_trivial() {
        let c2 = arc(FiniteGroup::cyclic(2).unwrap());
        let one = arc(FiniteGroup::trivial());
        let m = burnside_mackey(&[one.clone(), c2.clone()], &Limits::default()).unwrap();
        assert_eq!(m.rank(&one).unwrap(), 1);
        assert_eq!(m.rank(&c2).unwrap(), 2);
        // basis of C2: [C2/1], [C2/C2]
        let incl = Homomorphism::new(one.clone(), c2.clone(), vec![0]).unwrap();
        let res = evaluate_span(&m, &Span::restriction(&incl)).unwrap();
        assert_eq!(res.to_rows(), vec![vec![2, 1]]);
        let tr = evaluate_span(&m, &Span::transfer(&incl).unwrap()).unwrap();
        assert_eq!(tr.to_rows(), vec![vec![1], vec![0]]);
        let id = evaluate_span(&m, &Span::identity(&classifying(&c2))).unwrap();
        assert_eq!(id, Matrix::identity(2));
    }

    #[test]
    fn double_coset_in_s3() {
        let (s3, h) = two_cycle_in_s3();
        let m = burnside_mackey(std::slice::from_ref(&s3), &Limits::default()).unwrap();
        assert_eq!(m.rank(&s3).unwrap(), 4);
        assert_eq!(double_cosets(&s3, &h, &h).unwrap().len(), 2);
        let report = check_double_coset(&m, &s3, &h, &h).unwrap();
        assert!(report.passed(), "{report:?}");
        let whole = Subgroup::whole(&s3);
        assert!(check_double_coset(&m, &s3, &whole, &h).unwrap().passed());
        assert!(check_double_coset(&m, &s3, &h, &whole).unwrap().passed());
    }

    #[test]
    fn s3_transfer_of_point_from_two_cycle() {
        let (s3, h) = two_cycle_in_s3();
        let (c2, incl) = h.embed(&s3);
        let swan = swan_mackey(FreePermutative::finset(8), std::slice::from_ref(&s3), &Limits::default()).unwrap();
        let burnside = burnside_mackey(std::slice::from_ref(&s3), &Limits::default()).unwrap();
        let tr_swan = swan.transfer(&incl).unwrap();
        let tr_burnside = burnside.transfer(&incl).unwrap();
        // [pt] is the last C2 basis element in both bases; its image is the single orbit S3/C2
        let pt = tr_swan.cols() - 1;
        let column = |m: &Matrix, c: usize| (0..m.rows()).map(|r| m.get(r, c)).collect::<Vec<_>>();
        assert_eq!(column(&tr_swan, pt).iter().sum::<i64>(), 1);
        assert_eq!(column(&tr_burnside, burnside.rank(&c2).unwrap() - 1).iter().sum::<i64>(), 1);
        let labels = burnside.basis(&s3).unwrap();
        let image = column(&tr_burnside, 1).iter().position(|&x| x == 1).unwrap();
        assert_eq!(labels[image], format!("G/{:?}", h.canonical_conjugate(&s3).elements()));
    }

    #[test]
    fn functoriality_and_axioms_on_small_family() {
        let groups: Vec<_> = ["trivial", "cyclic:2", "cyclic:3", "symmetric:3"]
            .iter()
            .map(|p| arc(FiniteGroup::from_preset(p).unwrap()))
            .collect();
        let m = burnside_mackey(&groups, &Limits::default()).unwrap();
        let report = check_functoriality(&m, 40, 7, &Limits::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!((report.checked, report.seed), (40, Some(7)));
        assert!(m.check_axioms().passed());
        assert!(double_coset_sweep(&m, 24, &Limits::default()).unwrap().passed());
    }

    #[test]
    fn swan_finset_matches_burnside() {
        let groups = [arc(FiniteGroup::trivial()), arc(FiniteGroup::cyclic(2).unwrap())];
        let swan = swan_mackey(FreePermutative::finset(8), &groups, &Limits::default()).unwrap();
        let burnside = burnside_mackey(&groups, &Limits::default()).unwrap();
        // both bases list C2/1 before C2/C2
        for g in &groups {
            assert_eq!(swan.rank(g).unwrap(), burnside.rank(g).unwrap());
        }
        let incl = Homomorphism::new(groups[0].clone(), groups[1].clone(), vec![0]).unwrap();
        assert_eq!(swan.restriction(&incl).unwrap(), burnside.restriction(&incl).unwrap());
        assert_eq!(swan.transfer(&incl).unwrap(), burnside.transfer(&incl).unwrap());
    }

    #[test]
    fn main_theorem_for_c2_coefficients() {
        let c2 = arc(FiniteGroup::cyclic(2).unwrap());
        let groups = [arc(FiniteGroup::trivial()), c2.clone()];
        let swan = swan_mackey(FreePermutative::new(c2.clone(), 2), &groups, &Limits::default()).unwrap();
        assert_eq!(swan.rank(&c2).unwrap(), 3);
        let report = compare_main_theorem(&c2, &groups, 2, &Limits::default()).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn group_outside_family_is_reported() {
        let m = burnside_mackey(&[arc(FiniteGroup::cyclic(2).unwrap())], &Limits::default()).unwrap();
        let c3 = arc(FiniteGroup::cyclic(3).unwrap());
        assert!(matches!(m.basis(&c3), Err(Error::GroupNotInFamily(_))));
    }

    #[test]
    fn report_serializes_status() {
        let r = EvaluationReport::fail("x", 3, json!({"a": 1})).with_seed(5);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(serde_json::from_value::<EvaluationReport>(v).unwrap(), r);
    }
}
