use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use burnside_core::biset::{biset_iso, grothendieck, straighten, tensor, Biset};
use burnside_core::burnside::{classifying, compose, random_span, Span};
use burnside_core::group::{
    all_homomorphisms, canonical_pair, double_cosets, pair_conjugate, small_groups, subgroups, transfer_embedding,
    CosetSystem, FiniteGroup, Limits, PairKey, WreathElement,
};
use burnside_core::groupoid::{coproduct, indiscrete, iso_comma, product, skeleton, FiniteGroupoid, GroupoidFunctor};
use burnside_core::gset::GSet;
use burnside_core::mackey::{burnside_mackey, evaluate_span, BurnsideMackey, MackeyFunctor, Matrix};
use burnside_core::symmon::{
    gobject_iso, iso_classes, norm, restrict_gobject, tensor_gobjects, FreePermutative, GObject, Permutative,
};

fn catalogue(max_order: usize) -> Vec<Arc<FiniteGroup>> {
    small_groups(max_order).into_iter().map(|g| g.group).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A coproduct of one or two classifying groupoids, optionally thickened by an indiscrete factor.
fn groupoid(picks: &[usize], thick: usize) -> Arc<FiniteGroupoid> {
    let groups = catalogue(8);
    let parts: Vec<Arc<FiniteGroupoid>> = picks.iter().map(|&k| classifying(&groups[k % groups.len()])).collect();
    let base = coproduct(&parts).groupoid;
    if thick > 1 {
        product(&Arc::new(indiscrete(thick)), &base).groupoid
    } else {
        base
    }
}

fn groupoid_strategy() -> impl Strategy<Value = Arc<FiniteGroupoid>> {
    (prop::collection::vec(0usize..14, 1..=2), 1usize..=2).prop_map(|(picks, thick)| groupoid(&picks, thick))
}

fn small_group_strategy() -> impl Strategy<Value = Arc<FiniteGroup>> {
    let groups = catalogue(12);
    (0..groups.len()).prop_map(move |k| groups[k].clone())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn generated_groups_satisfy_the_axioms(gens in prop::collection::vec(Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), 1..=2)) {
        let g = FiniteGroup::from_perm_gens(&gens, 120).unwrap();
        let n = g.order();
        prop_assert!(120 % n == 0);
        for a in 0..n {
            prop_assert_eq!(g.mul(0, a), a);
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..n {
                for c in 0..n {
                    prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn transfer_embedding_is_an_injective_homomorphism(g in small_group_strategy(), pick in any::<prop::sample::Index>(), cs_pick in any::<prop::sample::Index>()) {
        let lattice = subgroups(&g, &Limits::default()).unwrap();
        let h = pick.get(&lattice.all);
        let systems = CosetSystem::all(&g, h);
        let emb = transfer_embedding(&g, h, cs_pick.get(&systems)).unwrap();
        let canonical = transfer_embedding(&g, h, &CosetSystem::canonical(&g, h)).unwrap();
        let w = &emb.wreath;
        for x in g.elements() {
            for y in g.elements() {
                prop_assert_eq!(&w.mul(emb.image(x), emb.image(y)), emb.image(g.mul(x, y)));
            }
            prop_assert!(x == 0 || !emb.image(x).is_identity());
        }
        // the two systems differ by coset-wise factors c_i, so the embeddings differ by conjugation
        // with (id; c_i) in one of the two orders
        let cs = cs_pick.get(&systems);
        let hg = h.as_group(&g);
        let factors: Vec<usize> = cs.reps().iter().map(|&r| {
            let (i, c) = CosetSystem::canonical(&g, h).split(&g, r);
            assert_eq!(i, cs.coset_index(r));
            h.position(c).unwrap()
        }).collect();
        let mut labels = vec![0; factors.len()];
        for (k, &r) in cs.reps().iter().enumerate() {
            labels[CosetSystem::canonical(&g, h).coset_index(r)] = factors[k];
        }
        let c = WreathElement { perm: (0..labels.len()).collect(), labels: labels.clone() };
        let c_inv = WreathElement { perm: (0..labels.len()).collect(), labels: labels.iter().map(|&l| hg.inv(l)).collect() };
        let conj_a = g.elements().all(|x| w.mul(&w.mul(&c_inv, canonical.image(x)), &c) == *emb.image(x));
        let conj_b = g.elements().all(|x| w.mul(&w.mul(&c, canonical.image(x)), &c_inv) == *emb.image(x));
        prop_assert!(conj_a || conj_b);
    }

    #[test]
    fn double_coset_sizes_sum_to_the_group(g in small_group_strategy(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let lattice = subgroups(&g, &Limits::default()).unwrap();
        let (k, h) = (a.get(&lattice.all), b.get(&lattice.all));
        let cosets = double_cosets(&g, k, h).unwrap();
        let total: usize = cosets.iter().map(|d| k.order() * h.order() / d.intersection.order()).sum();
        prop_assert_eq!(total, g.order());
        prop_assert_eq!(cosets.iter().map(|d| d.size).sum::<usize>(), g.order());
    }

    #[test]
    fn pair_conjugacy_matches_brute_force(seed in any::<u64>(), g in small_group_strategy(), h in small_group_strategy()) {
        use rand::seq::SliceRandom;
        let mut r = rng(seed);
        let lattice = subgroups(&g, &Limits::default()).unwrap();
        let mut pairs = Vec::new();
        for _ in 0..3 {
            let l = lattice.all.choose(&mut r).unwrap();
            let phi = all_homomorphisms(&l.as_group(&g), &h).choose(&mut r).unwrap().clone();
            pairs.push(PairKey { subgroup: l.elements().to_vec(), map: phi.map().to_vec() });
        }
        let brute = |p: &PairKey, q: &PairKey| g.elements().any(|x| h.elements().any(|y| p.conjugate(&g, &h, y, x) == *q));
        for p in &pairs {
            prop_assert!(pair_conjugate(&g, &h, p, p));
            for q in &pairs {
                prop_assert_eq!(pair_conjugate(&g, &h, p, q), brute(p, q));
                prop_assert_eq!(pair_conjugate(&g, &h, p, q), pair_conjugate(&g, &h, q, p));
                for s in &pairs {
                    if pair_conjugate(&g, &h, p, q) && pair_conjugate(&g, &h, q, s) {
                        prop_assert!(pair_conjugate(&g, &h, p, s));
                    }
                }
            }
            prop_assert!(brute(p, &canonical_pair(&g, &h, p)));
        }
    }

    #[test]
    fn iso_comma_of_subgroup_inclusions_counts_double_cosets(g in small_group_strategy(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let lattice = subgroups(&g, &Limits::default()).unwrap();
        let (k, h) = (a.get(&lattice.all), b.get(&lattice.all));
        let (_, incl_k) = k.embed(&g);
        let (_, incl_h) = h.embed(&g);
        let ic = iso_comma(&GroupoidFunctor::classifying(&incl_k), &GroupoidFunctor::classifying(&incl_h)).unwrap();
        prop_assert_eq!(ic.groupoid.component_count(), double_cosets(&g, k, h).unwrap().len());
        prop_assert!(ic.left.is_faithful());
        prop_assert!(ic.iso.verify());
    }

    #[test]
    fn pullbacks_of_faithful_functors_are_faithful(seed in any::<u64>(), a in groupoid_strategy(), b in groupoid_strategy(), c in groupoid_strategy()) {
        let mut r = rng(seed);
        let limits = Limits::default();
        // legs of random spans give arbitrary functors into b and faithful functors into b
        let free = random_span(&mut r, &b, &a, 2, &limits).unwrap();
        let faithful = random_span(&mut r, &c, &b, 2, &limits).unwrap();
        let ic = iso_comma(free.free_leg(), faithful.faithful_leg()).unwrap();
        prop_assert!(ic.left.is_faithful());
        prop_assert!(ic.iso.verify());
    }

    #[test]
    fn skeleton_is_an_equivalence(x in groupoid_strategy()) {
        let sk = skeleton(&x);
        prop_assert!(sk.unit.verify());
        prop_assert_eq!(sk.inclusion.then(&sk.retraction).unwrap(), GroupoidFunctor::identity(&sk.skeletal));
        prop_assert!(sk.inclusion.is_equivalence());
    }

    #[test]
    fn coproduct_injections(parts in prop::collection::vec(groupoid_strategy(), 1..=3)) {
        let cp = coproduct(&parts);
        let mut hit = vec![false; cp.groupoid.object_count()];
        for inj in &cp.injections {
            prop_assert!(inj.is_faithful() && inj.is_full());
            for &o in inj.obj_map() {
                hit[o] = true;
            }
        }
        prop_assert!(hit.into_iter().all(|h| h));
    }

    #[test]
    fn grothendieck_round_trip(seed in any::<u64>(), a in groupoid_strategy(), b in groupoid_strategy()) {
        let span = random_span(&mut rng(seed), &a, &b, 3, &Limits::default()).unwrap();
        let x = span.to_biset().unwrap();
        let total = grothendieck(&x).unwrap();
        prop_assert!(total.to_right().is_faithful());
        let back = straighten(&total.to_left(), &total.to_right()).unwrap();
        prop_assert_eq!(back.decompose().unwrap(), x.decompose().unwrap());
        prop_assert!(biset_iso(&back, &x).unwrap());
    }

    #[test]
    fn straighten_rejects_non_faithful_legs(g in small_group_strategy()) {
        let point = classifying(&FiniteGroup::trivial());
        let bg = classifying(&g);
        let to_point = GroupoidFunctor::to_point(&bg);
        let id = GroupoidFunctor::identity(&bg);
        prop_assert_eq!(straighten(&id, &to_point).is_ok(), g.order() == 1);
        prop_assert!(straighten(&to_point, &id).is_ok());
        prop_assert!(point.object_count() == 1);
    }

    #[test]
    fn transitive_bisets_have_one_class(seed in any::<u64>(), g in small_group_strategy(), h in small_group_strategy()) {
        let (bg, bh) = (classifying(&g), classifying(&h));
        let span = random_span(&mut rng(seed), &bg, &bh, 1, &Limits::default()).unwrap();
        let class = span.class().unwrap();
        prop_assert_eq!(class.len(), 1);
        let (c, m) = class.iter().next().unwrap();
        prop_assert_eq!(m, 1);
        let x = Biset::transitive(bg.clone(), bh.clone(), c).unwrap();
        prop_assert_eq!(x.size(), g.order() * h.order() / c.key.subgroup.len());
    }

    #[test]
    fn tensor_is_associative_and_unital(seed in any::<u64>(), ends in prop::collection::vec(0usize..14, 4)) {
        let limits = Limits::default();
        let mut r = rng(seed);
        let g: Vec<_> = ends.iter().map(|&k| groupoid(&[k], 1)).collect();
        let x = random_span(&mut r, &g[0], &g[1], 2, &limits).unwrap().to_biset().unwrap();
        let y = random_span(&mut r, &g[1], &g[2], 2, &limits).unwrap().to_biset().unwrap();
        let z = random_span(&mut r, &g[2], &g[3], 2, &limits).unwrap().to_biset().unwrap();
        let left = tensor(&tensor(&x, &y).unwrap(), &z).unwrap();
        let right = tensor(&x, &tensor(&y, &z).unwrap()).unwrap();
        prop_assert!(biset_iso(&left, &right).unwrap());
        let unit = Biset::identity(g[1].clone()).unwrap();
        prop_assert!(biset_iso(&tensor(&x, &unit).unwrap(), &x).unwrap());
    }

    #[test]
    fn span_sums_are_additive(seed in any::<u64>(), a in groupoid_strategy(), b in groupoid_strategy()) {
        let limits = Limits::default();
        let mut r = rng(seed);
        let s = random_span(&mut r, &a, &b, 2, &limits).unwrap();
        let t = random_span(&mut r, &a, &b, 2, &limits).unwrap();
        let mut expected = s.class().unwrap();
        expected.extend(&t.class().unwrap());
        let sum = Span::sum(&[s.clone(), t.clone()]).unwrap();
        prop_assert_eq!(sum.class().unwrap(), expected);
    }

    #[test]
    fn restriction_spans_compose_like_homomorphisms(k in small_group_strategy(), h in small_group_strategy(), g in small_group_strategy(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let phi = i.get(&all_homomorphisms(&k, &h)).clone();
        let psi = j.get(&all_homomorphisms(&h, &g)).clone();
        let composite = Span::restriction(&phi.then(&psi).unwrap());
        let stepwise = compose(&Span::restriction(&phi), &Span::restriction(&psi)).unwrap();
        prop_assert_eq!(composite.class().unwrap(), stepwise.class().unwrap());
    }

    #[test]
    fn gobject_restriction_is_strict(k in small_group_strategy(), h in small_group_strategy(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), pick in any::<prop::sample::Index>()) {
        let g = catalogue(12).into_iter().find(|g| g.order() == 6 && !g.is_abelian()).unwrap();
        let limits = Limits::default();
        let cat = FreePermutative::new(catalogue(2)[1].clone(), 6);
        let basis = iso_classes(&g, &cat, &limits).unwrap();
        let x = &pick.get(&basis.basis).object;
        let y = &basis.basis[0].object;
        let psi = i.get(&all_homomorphisms(&h, &g)).clone();
        let phi = j.get(&all_homomorphisms(&k, &h)).clone();
        let composite = restrict_gobject(&phi.then(&psi).unwrap(), x).unwrap();
        let stepwise = restrict_gobject(&phi, &restrict_gobject(&psi, x).unwrap()).unwrap();
        prop_assert_eq!(composite, stepwise);
        if let Ok(xy) = tensor_gobjects(&cat, x, y) {
            let left = restrict_gobject(&psi, &xy).unwrap();
            let right = tensor_gobjects(&cat, &restrict_gobject(&psi, x).unwrap(), &restrict_gobject(&psi, y).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn norm_respects_isomorphism(g in small_group_strategy(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), twist in any::<prop::sample::Index>()) {
        let limits = Limits::default();
        let lattice = subgroups(&g, &limits).unwrap();
        let h = a.get(&lattice.all);
        let hg = h.as_group(&g);
        let cat = FreePermutative::new(catalogue(2)[1].clone(), 2 * g.order() / h.order());
        let basis = iso_classes(&hg, &cat, &limits).unwrap();
        let small: Vec<_> = basis.basis.iter().filter(|c| c.object.object() <= 2).collect();
        let x = &b.get(&small).object;
        // conjugate the action by an arbitrary automorphism of the underlying object
        let autos = cat.automorphisms(x.object(), &limits).unwrap();
        let f = twist.get(&autos);
        let f_inv = autos.iter().find(|u| cat.compose(u, f).unwrap() == cat.identity(x.object())).unwrap();
        let action = x.action().iter().map(|m| cat.compose(f, &cat.compose(m, f_inv).unwrap()).unwrap()).collect();
        let twisted = GObject::new(&cat, hg.clone(), x.object(), action).unwrap();
        prop_assert!(gobject_iso(&cat, x, &twisted, &limits).unwrap());
        let cs = CosetSystem::canonical(&g, h);
        let left = norm(&cat, &g, h, &cs, x).unwrap();
        let right = norm(&cat, &g, h, &cs, &twisted).unwrap();
        prop_assert!(gobject_iso(&cat, &left, &right, &limits).unwrap());
    }

    #[test]
    fn evaluation_is_additive_and_depends_only_on_the_class(seed in any::<u64>(), ends in prop::collection::vec(0usize..6, 2)) {
        let limits = Limits::default();
        let groups = catalogue(6);
        let m = burnside_mackey(&groups, &limits).unwrap();
        let (a, b) = (classifying(&groups[ends[0]]), classifying(&groups[ends[1]]));
        let mut r = rng(seed);
        let s = random_span(&mut r, &a, &b, 2, &limits).unwrap();
        let t = random_span(&mut r, &a, &b, 2, &limits).unwrap();
        let (es, et) = (evaluate_span(&m, &s).unwrap(), evaluate_span(&m, &t).unwrap());
        let mut sum = es.clone();
        sum.add_block(0, 0, &et, 1);
        prop_assert_eq!(evaluate_span(&m, &Span::sum(&[s.clone(), t]).unwrap()).unwrap(), sum);
        let other = Span::of_biset_class(&a, &b, &s.class().unwrap()).unwrap();
        prop_assert_eq!(evaluate_span(&m, &other).unwrap(), es.clone());
        prop_assert_eq!(evaluate_span(&m, &s.reduced()).unwrap(), es);
    }

    #[test]
    fn transfer_then_restriction_multiplies_by_the_coset_space(g in small_group_strategy(), pick in any::<prop::sample::Index>()) {
        let limits = Limits::default();
        let lattice = subgroups(&g, &limits).unwrap();
        let h = pick.get(&lattice.all);
        let (_, incl) = h.embed(&g);
        let functor = BurnsideMackey::new(limits);
        let span = compose(&Span::transfer(&incl).unwrap(), &Span::restriction(&incl)).unwrap();
        let engine = evaluate_span(&functor, &span).unwrap();
        // oracle: [G/H] · [G/L] decomposed through the product of G-sets
        let columns: Vec<Vec<usize>> = lattice
            .class_reps
            .iter()
            .map(|l| GSet::cosets(&g, h).product(&GSet::cosets(&g, l)).unwrap().decompose(&lattice).unwrap())
            .collect();
        prop_assert_eq!(engine, Matrix::from_columns(lattice.class_reps.len(), &columns).unwrap());
        prop_assert_eq!(functor.rank(&g).unwrap(), lattice.class_reps.len());
    }
}

#[test]
fn mackey_data_satisfy_the_double_coset_formula_up_to_order_24() {
    let limits = Limits::default();
    let s4 = Arc::new(FiniteGroup::symmetric(4).unwrap());
    let burnside = burnside_mackey(std::slice::from_ref(&s4), &limits).unwrap();
    assert!(burnside.check_axioms().passed());
    let report = burnside_core::mackey::double_coset_sweep(&burnside, 24, &limits).unwrap();
    assert!(report.passed(), "{report:?}");
    let groups = [Arc::new(FiniteGroup::symmetric(3).unwrap()), Arc::new(FiniteGroup::dihedral(4).unwrap())];
    let c2 = catalogue(2)[1].clone();
    let swan = burnside_core::mackey::swan_mackey(FreePermutative::new(c2, 8), &groups, &limits).unwrap();
    assert!(swan.check_axioms().passed());
    assert!(burnside_core::mackey::double_coset_sweep(&swan, 24, &limits).unwrap().passed());
}

#[test]
fn homomorphism_classifying_functors_are_functors() {
    for g in catalogue(6) {
        for h in catalogue(6) {
            for phi in all_homomorphisms(&g, &h) {
                assert!(GroupoidFunctor::classifying(&phi).verify());
                assert_eq!(GroupoidFunctor::classifying(&phi).is_faithful(), phi.is_injective());
            }
        }
    }
}
