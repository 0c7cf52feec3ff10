//! Acceptance sweep. Each criterion prints one PASS/FAIL line with its timing; the process
//! exits non-zero if any criterion fails or runs over its time budget.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use burnside_core::biset::{straighten, tensor, BisetClass};
use burnside_core::burnside::{classifying, compose, hom_basis, random_span, Span};
use burnside_core::group::{
    all_homomorphisms, small_groups, subgroups, CosetSystem, FiniteGroup, Limits, Subgroup,
};
use burnside_core::groupoid::{indiscrete, product, FiniteGroupoid, GroupoidFunctor};
use burnside_core::gset::{burnside_ring, GSet};
use burnside_core::mackey::{burnside_mackey, check_double_coset, compare_main_theorem};
use burnside_core::symmon::{
    gobject_iso, iso_classes, norm, restrict_gobject, FreePermutative, GObject, Permutative,
};
use burnside_core::Result;

type Outcome = std::result::Result<String, String>;

fn named(name: &str) -> Arc<FiniteGroup> {
    small_groups(12).into_iter().find(|g| g.name == name).expect("catalogue group").group
}

fn family(names: &[&str]) -> Vec<Arc<FiniteGroup>> {
    names.iter().map(|n| named(n)).collect()
}

fn lift(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Err(format!("engine error: {e}")))
}

/// Every functor `E_k × BA → BG` as `(ρ: A → G, transports τ)` with `F(i→j, a) = τ_j ρ(a) τ_i⁻¹`.
fn functors_into(
    apex: &Arc<FiniteGroupoid>,
    k: usize,
    a: &Arc<FiniteGroup>,
    g: &Arc<FiniteGroup>,
    faithful: bool,
) -> Result<Vec<GroupoidFunctor>> {
    let target = classifying(g);
    let mut out = Vec::new();
    for rho in all_homomorphisms(a, g) {
        if faithful && !rho.is_injective() {
            continue;
        }
        let mut transports = vec![0usize; k];
        loop {
            let mut mor = Vec::with_capacity(apex.morphism_count());
            for i in 0..k {
                for j in 0..k {
                    for x in a.elements() {
                        let tail = g.inv(transports[i]);
                        mor.push(g.mul(g.mul(transports[j], rho.apply(x)), tail));
                    }
                }
            }
            out.push(GroupoidFunctor::new(apex.clone(), target.clone(), vec![0; k], mor)?);
            // next transport tuple, with τ_0 fixed to the identity
            let mut pos = 1;
            while pos < k {
                transports[pos] += 1;
                if transports[pos] < g.order() {
                    break;
                }
                transports[pos] = 0;
                pos += 1;
            }
            if pos >= k {
                break;
            }
        }
    }
    Ok(out)
}

fn hom_basis_consistency() -> Result<Outcome> {
    let limits = Limits::default();
    let groups = family(&["1", "C2", "C3", "C4", "K4", "S3"]);
    let mut apexes = Vec::new();
    for k in 1..=3usize {
        for a in small_groups(12) {
            if k * k * a.group.order() <= 12 {
                let apex = product(&Arc::new(indiscrete(k)), &classifying(&a.group)).groupoid;
                apexes.push((k, a.group.clone(), apex));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..groups.len()).flat_map(|s| (0..groups.len()).map(move |t| (s, t))).collect();
    let results = pairs
        .par_iter()
        .map(|&(s, t)| -> Result<std::result::Result<usize, String>> {
            let (source, target) = (&groups[s], &groups[t]);
            let basis = hom_basis(&classifying(source), &classifying(target), None, &limits)?;
            let mut realized = BTreeSet::new();
            let mut spans = 0;
            for (k, a, apex) in &apexes {
                if a.order() > target.order() {
                    continue;
                }
                let free = functors_into(apex, *k, a, source, false)?;
                let faithful = functors_into(apex, *k, a, target, true)?;
                for f in &free {
                    for g in &faithful {
                        let class = straighten(f, g)?.decompose()?;
                        spans += 1;
                        let pieces: Vec<_> = class.iter().collect();
                        if pieces.len() != 1 || pieces[0].1 != 1 {
                            return Ok(Err(format!("connected apex gave {} orbits", class.orbit_count())));
                        }
                        if basis.index_of(pieces[0].0).is_none() {
                            return Ok(Err(format!("span class {:?} is not in the basis", pieces[0].0)));
                        }
                        realized.insert(pieces[0].0.clone());
                    }
                }
            }
            if realized.len() != basis.rank() {
                return Ok(Err(format!("pair ({s}, {t}): {} of {} basis classes realized", realized.len(), basis.rank())));
            }
            Ok(Ok(spans))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = 0;
    for r in results {
        match r {
            Ok(n) => total += n,
            Err(msg) => return Ok(Err(msg)),
        }
    }
    Ok(Ok(format!("{} ordered pairs, {total} spans over {} apexes", pairs.len(), apexes.len())))
}

fn double_coset_formula() -> Result<Outcome> {
    let limits = Limits::default();
    let mut checked = 0;
    for name in ["S3", "D4", "Q8", "A4"] {
        let g = named(name);
        let m = burnside_mackey(std::slice::from_ref(&g), &limits)?;
        let lattice = subgroups(&g, &limits)?;
        let jobs: Vec<(&Subgroup, &Subgroup)> = lattice.all.iter().flat_map(|k| lattice.all.iter().map(move |h| (k, h))).collect();
        let reports = jobs.par_iter().map(|(k, h)| check_double_coset(&m, &g, k, h)).collect::<Result<Vec<_>>>()?;
        if let Some(bad) = reports.iter().find(|r| !r.passed()) {
            return Ok(Err(format!("{name}: {}", serde_json::to_string(&bad.counterexample).unwrap_or_default())));
        }
        checked += reports.len();
    }
    Ok(Ok(format!("{checked} subgroup pairs in S3, D4, Q8, A4")))
}

fn span_category_laws() -> Result<Outcome> {
    const SAMPLES: usize = 200;
    const SEED: u64 = 2024;
    let limits = Limits::default();
    let groups: Vec<Arc<FiniteGroup>> = small_groups(8).into_iter().map(|g| g.group).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut triples = Vec::with_capacity(SAMPLES);
    for _ in 0..SAMPLES {
        let ends: Vec<Arc<FiniteGroupoid>> =
            (0..4).map(|_| classifying(groups.choose(&mut rng).expect("non-empty"))).collect();
        let alpha = random_span(&mut rng, &ends[0], &ends[1], 2, &limits)?;
        let beta = random_span(&mut rng, &ends[1], &ends[2], 2, &limits)?;
        let gamma = random_span(&mut rng, &ends[2], &ends[3], 2, &limits)?;
        triples.push((alpha, beta, gamma));
    }
    let failures = triples
        .par_iter()
        .enumerate()
        .map(|(n, (alpha, beta, gamma))| -> Result<Option<String>> {
            let left = compose(gamma, &compose(beta, alpha)?)?.class()?;
            let right = compose(&compose(gamma, beta)?, alpha)?.class()?;
            if left != right {
                return Ok(Some(format!("sample {n}: associativity")));
            }
            let a = alpha.class()?;
            let id_after = compose(&Span::identity(alpha.target()), alpha)?.class()?;
            let id_before = compose(alpha, &Span::identity(alpha.source()))?.class()?;
            if id_after != a || id_before != a {
                return Ok(Some(format!("sample {n}: unit law")));
            }
            for (second, first) in [(beta, alpha), (gamma, beta)] {
                let by_comma = compose(second, first)?.class()?;
                let by_tensor: BisetClass = tensor(&first.to_biset()?, &second.to_biset()?)?.decompose()?;
                if by_comma != by_tensor {
                    return Ok(Some(format!("sample {n}: iso-comma and tensor routes differ")));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match failures.into_iter().flatten().next() {
        Some(msg) => Err(msg),
        None => Ok(format!("{SAMPLES} triples, seed {SEED}")),
    })
}

/// Every H-set with at most `max_size` points, as sums of transitive pieces.
fn small_gsets(group: &Arc<FiniteGroup>, max_size: usize, limits: &Limits) -> Result<Vec<GSet>> {
    let orbits: Vec<GSet> = subgroups(group, limits)?.class_reps.iter().map(|l| GSet::cosets(group, l)).collect();
    let mut out = vec![GSet::trivial(group, 0)];
    let mut frontier = vec![(GSet::trivial(group, 0), 0usize)];
    while let Some((x, first)) = frontier.pop() {
        for (k, orbit) in orbits.iter().enumerate().skip(first) {
            if x.size() + orbit.size() <= max_size {
                let y = x.disjoint_union(orbit)?;
                out.push(y.clone());
                frontier.push((y, k));
            }
        }
    }
    Ok(out)
}

fn norm_is_induction() -> Result<Outcome> {
    let limits = Limits::default();
    let mut jobs = Vec::new();
    for g in small_groups(12) {
        for h in subgroups(&g.group, &limits)?.all {
            jobs.push((g.group.clone(), h));
        }
    }
    let counts = jobs
        .par_iter()
        .map(|(g, h)| -> Result<std::result::Result<usize, String>> {
            let hg = h.as_group(g);
            let cat = FreePermutative::finset(4 * g.order() / h.order());
            let mut n = 0;
            for x in small_gsets(&hg, 4, &limits)? {
                let normed = norm(&cat, g, h, &CosetSystem::canonical(g, h), &cat.from_gset(&x)?)?;
                let induced = cat.from_gset(&GSet::induce(g, h, &x)?)?;
                if !gobject_iso(&cat, &normed, &induced, &limits)? {
                    return Ok(Err(format!("order {} group, subgroup {:?}, H-set of size {}", g.order(), h.elements(), x.size())));
                }
                n += 1;
            }
            Ok(Ok(n))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = 0;
    for c in counts {
        match c {
            Ok(n) => total += n,
            Err(msg) => return Ok(Err(msg)),
        }
    }
    Ok(Ok(format!("{} subgroup inclusions, {total} H-sets", jobs.len())))
}

fn norm_transitivity_for<C: Permutative>(cat: &C, limits: &Limits) -> Result<std::result::Result<usize, String>> {
    let mut checked = 0;
    for g in small_groups(8) {
        let g = g.group;
        let lattice = subgroups(&g, limits)?;
        for k in &lattice.all {
            let kg = k.as_group(&g);
            let basis = iso_classes(&kg, cat, limits)?;
            let canonical_k = CosetSystem::canonical(&g, k);
            for b in &basis.basis {
                let direct = norm(cat, &g, k, &canonical_k, &b.object)?;
                for cs in CosetSystem::all(&g, k) {
                    checked += 1;
                    if !gobject_iso(cat, &norm(cat, &g, k, &cs, &b.object)?, &direct, limits)? {
                        return Ok(Err(format!("coset systems of {:?} in an order-{} group disagree on {}", k.elements(), g.order(), b.label)));
                    }
                }
                for h in lattice.all.iter().filter(|h| k.is_contained_in(h)) {
                    let hg = h.as_group(&g);
                    let k_in_h = h.relative(k)?;
                    let inner = norm(cat, &hg, &k_in_h, &CosetSystem::canonical(&hg, &k_in_h), &b.object)?;
                    let outer = norm(cat, &g, h, &CosetSystem::canonical(&g, h), &inner)?;
                    checked += 1;
                    if !gobject_iso(cat, &outer, &direct, limits)? {
                        return Ok(Err(format!("chain {:?} ≤ {:?} in an order-{} group fails on {}", k.elements(), h.elements(), g.order(), b.label)));
                    }
                }
            }
        }
    }
    Ok(Ok(checked))
}

fn norm_transitivity() -> Result<Outcome> {
    let limits = Limits::default();
    let finset = FreePermutative::finset(8);
    let free_c2 = FreePermutative::new(named("C2"), 8);
    let (a, b) = rayon::join(|| norm_transitivity_for(&finset, &limits), || norm_transitivity_for(&free_c2, &limits));
    Ok(match (a?, b?) {
        (Ok(x), Ok(y)) => Ok(format!("{x} identities in finset:8, {y} in free:C2:8")),
        (Err(msg), _) => Err(format!("finset:8: {msg}")),
        (_, Err(msg)) => Err(format!("free:C2:8: {msg}")),
    })
}

fn main_theorem_shadow() -> Result<Outcome> {
    let limits = Limits::default();
    let groups = family(&["1", "C2", "C3", "C4", "K4", "S3"]);
    let max_object = groups.iter().map(|g| g.order()).max().unwrap_or(1);
    let mut checked = 0;
    for coeff in ["1", "C2", "C3"] {
        let report = compare_main_theorem(&named(coeff), &groups, max_object, &limits)?;
        if !report.passed() {
            return Ok(Err(format!("H = {coeff}: {}", serde_json::to_string(&report.counterexample).unwrap_or_default())));
        }
        checked += report.checked;
    }
    Ok(Ok(format!("H in 1, C2, C3 at N = {max_object}: {checked} identities")))
}

fn computation_propositions() -> Result<Outcome> {
    let limits = Limits::default();
    let mut jobs = Vec::new();
    for g in small_groups(12) {
        for h in subgroups(&g.group, &limits)?.all {
            jobs.push((g.group.clone(), h));
        }
    }
    let failures = jobs
        .par_iter()
        .map(|(g, h)| -> Result<Option<String>> {
            let (hg, incl) = h.embed(g);
            let free_g = FreePermutative::new(g.clone(), 1);
            let free_h = FreePermutative::new(hg.clone(), 1);
            let restricted = restrict_gobject(&incl, &free_g.tautological()?)?;
            let pushed = free_h.pushforward_gobject(&incl, &free_g, &free_h.tautological()?)?;
            if restricted != pushed {
                return Ok(Some(format!("restriction of the tautological object to {:?}", h.elements())));
            }
            let cs = CosetSystem::canonical(g, h);
            let r = cs.index();
            let cat = FreePermutative::new(hg.clone(), r);
            let normed = norm(&cat, g, h, &cs, &cat.tautological()?)?;
            let emb = burnside_core::group::transfer_embedding(g, h, &cs)?;
            let expected = GObject::new(&cat, g.clone(), r, emb.images.clone())?;
            if !gobject_iso(&cat, &normed, &expected, &limits)? {
                return Ok(Some(format!("norm of the tautological object from {:?}", h.elements())));
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match failures.into_iter().flatten().next() {
        Some(msg) => Err(msg),
        None => Ok(format!("{} subgroup inclusions", jobs.len())),
    })
}

/// Conjugacy classes of subgroups by brute force over subsets closed under multiplication.
fn subgroup_classes_by_subsets(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut subs = BTreeSet::new();
    // the identity is element 0 and lies in every subgroup
    for mask in 0u32..(1 << (n - 1)) {
        let members: Vec<usize> = std::iter::once(0).chain((1..n).filter(|&x| mask & (1 << (x - 1)) != 0)).collect();
        let closed = members.iter().all(|&a| members.iter().all(|&b| members.contains(&g.mul(a, b))));
        if closed {
            subs.insert(members);
        }
    }
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for s in &subs {
        if seen.contains(s) {
            continue;
        }
        classes += 1;
        for x in g.elements() {
            let mut conj: Vec<usize> = s.iter().map(|&y| g.mul(g.mul(x, y), g.inv(x))).collect();
            conj.sort_unstable();
            seen.insert(conj);
        }
    }
    classes
}

fn burnside_ring_ranks() -> Result<Outcome> {
    let limits = Limits::default();
    let mut found = Vec::new();
    for (name, expected) in [("S3", 4), ("C4", 3), ("K4", 5), ("D4", 8), ("Q8", 6), ("A4", 5)] {
        let g = named(name);
        let rank = burnside_ring(&g, &limits)?.rank();
        let oracle = subgroup_classes_by_subsets(&g);
        if rank != expected || oracle != expected {
            return Ok(Err(format!("{name}: ring rank {rank}, subset oracle {oracle}, expected {expected}")));
        }
        found.push(format!("{name}={rank}"));
    }
    Ok(Ok(found.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>, u64); 8] = [
        ("hom-basis consistency", hom_basis_consistency, 60),
        ("double coset formula", double_coset_formula, 60),
        ("span-category laws", span_category_laws, 120),
        ("norm equals induction", norm_is_induction, 60),
        ("norm transitivity and coset-system independence", norm_transitivity, 60),
        ("main-theorem shadow", main_theorem_shadow, 300),
        ("computation propositions", computation_propositions, 30),
        ("burnside ring ranks", burnside_ring_ranks, 10),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = lift(run());
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{}] {name}: {detail} ({:.2} s, budget {budget} s)", k + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
