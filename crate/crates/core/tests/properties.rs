mod common;

use std::collections::{BTreeSet, HashMap};

use common::{random_hive, random_top_pair, random_weight, w};
use hivering::excavation::{
    assemble_top, audit_rhombi, excavate, excavate_in_order, excavate_labels, fill, layer_order, ExcavationOrder,
    TropicalRule,
};
use hivering::hive::{
    boundary_of, count_hives, enumerate_hives, tri_points, validate_hive, BoundarySpec, Hive, TriPoint,
};
use hivering::honeycomb::{boundary_coordinates, hive_to_honeycomb, validate_honeycomb};
use hivering::laurent::{symbolic_excavate, LaurentPolynomial, Variables};
use hivering::oracle::{lr_coef_oracle, schur_product_expansion};
use hivering::ring::{det_shift, pieri_expand, product_expand, RingElement};
use hivering::weight::Weight;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every lattice parallelogram of `tri_n` with sides along two edge
/// directions: corners `q`, `q + a u`, `q + b v`, `q + a u + b v` where `u`
/// and `v` both raise the same coordinate. The corners `q + a u` and
/// `q + b v` are the obtuse ones.
fn parallelogram_violations(h: &Hive) -> usize {
    let n = h.n() as i64;
    let mut bad = 0;
    let get = |c: [i64; 3]| -> Option<i64> {
        if c.iter().all(|&v| v >= 0) && c.iter().sum::<i64>() == n {
            Some(h.get(TriPoint::new(c[0] as usize, c[1] as usize, c[2] as usize)))
        } else {
            None
        }
    };
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let mut u = [0i64; 3];
        u[k] = 1;
        u[j] = -1;
        let mut v = [0i64; 3];
        v[k] = 1;
        v[i] = -1;
        for q in tri_points(h.n()) {
            let q = [q.x as i64, q.y as i64, q.z as i64];
            for a in 1..=n {
                for b in 1..=n {
                    let at = |s: i64, t: i64| [0, 1, 2].map(|m| q[m] + s * u[m] + t * v[m]);
                    if let (Some(p0), Some(p1), Some(p2), Some(p3)) = (get(at(0, 0)), get(at(a, 0)), get(at(0, b)), get(at(a, b))) {
                        if p1 + p2 < p0 + p3 {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    bad
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumerated_hives_satisfy_every_property(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let h = random_hive(&mut r, n, -2, 3);
        let b = boundary_of(&h).unwrap();
        let hives = enumerate_hives(&b).unwrap();
        prop_assert!(hives.contains(&h));
        prop_assert_eq!(hives.len() as u64, count_hives(&b).unwrap());
        for g in &hives {
            prop_assert!(validate_hive(g).is_valid());
            prop_assert_eq!(&boundary_of(g).unwrap(), &b);
            prop_assert_eq!(parallelogram_violations(g), 0);
        }
    }

    #[test]
    fn adding_a_linear_function_keeps_hives_valid(seed in any::<u64>(), n in 2usize..=4, cy in -5i64..5, cz in -5i64..5) {
        let h = random_hive(&mut rng(seed), n, -1, 3);
        let shifted = Hive::from_fn(n, |p| h.get(p) + cy * p.y as i64 + cz * p.z as i64);
        prop_assert!(validate_hive(&shifted).is_valid());
    }

    #[test]
    fn counts_are_invariant_under_determinant_shifts(seed in any::<u64>(), n in 1usize..=3, k in -3i64..=3) {
        let mut r = rng(seed);
        let lambda = random_weight(&mut r, n, -2, 3);
        let mu = random_weight(&mut r, n, -2, 3);
        let support = product_expand(&lambda, &mu).unwrap();
        for (nu, c) in support.terms() {
            let shifted = BoundarySpec::new(det_shift(&lambda, k), mu.clone(), det_shift(nu, k));
            prop_assert_eq!(count_hives(&shifted).unwrap(), c as u64);
        }
    }

    #[test]
    fn products_agree_with_the_schur_oracle(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let lambda = random_weight(&mut r, n, -2, 3);
        let mu = random_weight(&mut r, n, -2, 3);
        let ours = product_expand(&lambda, &mu).unwrap();
        let theirs = schur_product_expansion(&lambda, &mu).unwrap();
        let theirs = RingElement::from_terms(theirs.into_iter().map(|(w, c)| (w, c as i64))).unwrap();
        prop_assert_eq!(&ours, &theirs);
        for (nu, _) in ours.terms() {
            prop_assert!(nu.entries()[0] <= lambda.entries()[0] + mu.entries()[0]);
            prop_assert_eq!(nu.sum(), lambda.sum() + mu.sum());
        }
        prop_assert_eq!(&ours, &product_expand(&mu, &lambda).unwrap());
    }

    #[test]
    fn pieri_and_det_inverse(seed in any::<u64>(), n in 1usize..=4) {
        let lambda = random_weight(&mut rng(seed), n, -3, 5);
        for i in 0..=n {
            let omega = Weight::fundamental(n, i).unwrap();
            prop_assert_eq!(product_expand(&lambda, &omega).unwrap(), pieri_expand(&lambda, i).unwrap());
        }
        let det = product_expand(&lambda, &Weight::constant(n, -1)).unwrap();
        prop_assert_eq!(det, RingElement::basis(det_shift(&lambda, -1)));
        let one = product_expand(&Weight::constant(n, 1), &Weight::constant(n, -1)).unwrap();
        prop_assert_eq!(one, RingElement::basis(Weight::zero(n)));
    }

    #[test]
    fn excavation_round_trips_and_orders_agree(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let (h1, h2) = random_top_pair(&mut r, n, 0, 3);
        let t = assemble_top(&h1, &h2).unwrap();
        let full = excavate_labels(&t, &layer_order(n), &TropicalRule, None).unwrap();
        prop_assert!(audit_rhombi(&full).is_empty());
        let bottom = excavate(&t).unwrap();
        prop_assert!(validate_hive(&bottom.left).is_valid());
        prop_assert!(validate_hive(&bottom.right).is_valid());
        let other = excavate_in_order(&t, ExcavationOrder::Random(seed), None).unwrap();
        prop_assert_eq!(&other, &bottom);
        let back = fill(&bottom).unwrap();
        prop_assert_eq!((back.left, back.right), (h1, h2));
    }

    #[test]
    fn honeycombs_of_random_hives(seed in any::<u64>(), n in 1usize..=4) {
        let h = random_hive(&mut rng(seed), n, -2, 4);
        let hc = hive_to_honeycomb(&h).unwrap();
        let v = validate_honeycomb(&hc);
        prop_assert!(v.is_valid());
        prop_assert_eq!(v.ray_counts, [n as u32; 3]);
        let (l, m, nu) = boundary_coordinates(&hc).weights().unwrap();
        let b = boundary_of(&h).unwrap();
        prop_assert_eq!((l, m, nu), (b.lambda, b.mu, b.nu));
    }

    #[test]
    fn oracle_is_symmetric(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let (l, m, nu) = (random_weight(&mut r, n, 0, 3), random_weight(&mut r, n, 0, 3), random_weight(&mut r, n, 0, 5));
        prop_assert_eq!(lr_coef_oracle(&l, &m, &nu).unwrap(), lr_coef_oracle(&m, &l, &nu).unwrap());
    }

    #[test]
    fn laurent_division_inverts_multiplication(seed in any::<u64>()) {
        use rand::Rng;
        let mut r = rng(seed);
        let vars = Variables::new((0..3).map(|i| format!("x{i}")).collect());
        let random_poly = |r: &mut ChaCha8Rng| {
            let mut p = LaurentPolynomial::zero(&vars);
            for _ in 0..r.gen_range(1..4) {
                let e: Vec<i32> = (0..3).map(|_| r.gen_range(-2..3)).collect();
                p = p.add(&LaurentPolynomial::monomial(&vars, e, r.gen_range(1..4)));
            }
            p
        };
        let p = random_poly(&mut r);
        let q = random_poly(&mut r);
        prop_assert_eq!(p.mul(&q).exact_divide(&q).unwrap(), p);
    }
}

#[test]
fn tropical_labels_match_integer_excavation() {
    let mut r = rng(5);
    for n in 1..=3 {
        let s = symbolic_excavate(n, false).unwrap();
        for _ in 0..30 {
            use rand::Rng;
            let values: Vec<i64> = s.top.iter().map(|_| r.gen_range(-20..20)).collect();
            let mut t = hivering::excavation::TetLabeling::new(n);
            for (p, v) in s.top.iter().zip(&values) {
                t.set(*p, *v).unwrap();
            }
            let full = excavate_labels(&t, &layer_order(n), &TropicalRule, None).unwrap();
            for (p, v) in s.tropical_values(&values).unwrap() {
                assert_eq!(Some(&v), full.get(p));
            }
        }
    }
}

/// Brute force over a box around the boundary labels gives the same hives
/// as the backtracking search.
#[test]
fn enumeration_is_exhaustive() {
    let weights = common::all_weights(3, 0, 2);
    let mut checked = 0;
    for lambda in &weights {
        for mu in &weights {
            for nu in &weights {
                let b = BoundarySpec::new(lambda.clone(), mu.clone(), nu.clone());
                if !b.sums_match() {
                    continue;
                }
                let found: BTreeSet<Hive> = enumerate_hives(&b).unwrap().into_iter().collect();
                let mut brute = BTreeSet::new();
                let boundary: HashMap<TriPoint, i64> = {
                    let lam = lambda.partial_sums(0);
                    let m = mu.partial_sums(lambda.sum());
                    let s = nu.partial_sums(0);
                    let mut map = HashMap::new();
                    for i in 0..=3 {
                        map.insert(TriPoint::new(3 - i, i, 0), lam[i]);
                        map.insert(TriPoint::new(0, 3 - i, i), m[i]);
                        map.insert(TriPoint::new(3 - i, 0, i), s[i]);
                    }
                    map
                };
                let lo = boundary.values().min().unwrap() - 6;
                let hi = boundary.values().max().unwrap() + 6;
                for v in lo..=hi {
                    let mut map = boundary.clone();
                    map.insert(TriPoint::new(1, 1, 1), v);
                    let h = Hive::from_map(3, &map).unwrap();
                    if validate_hive(&h).is_valid() {
                        brute.insert(h);
                    }
                }
                assert_eq!(found, brute);
                checked += 1;
            }
        }
    }
    assert!(checked > 50);

    let weights = common::all_weights(4, 0, 1);
    let interior = [TriPoint::new(2, 1, 1), TriPoint::new(1, 2, 1), TriPoint::new(1, 1, 2)];
    for lambda in &weights {
        for mu in &weights {
            for nu in common::all_weights(4, 0, 2) {
                let b = BoundarySpec::new(lambda.clone(), mu.clone(), nu.clone());
                if !b.sums_match() {
                    continue;
                }
                let found: BTreeSet<Hive> = enumerate_hives(&b).unwrap().into_iter().collect();
                let template = found.iter().next().cloned().unwrap_or_else(|| {
                    // any labeling with the right boundary
                    let lam = lambda.partial_sums(0);
                    let m = mu.partial_sums(lambda.sum());
                    let s = nu.partial_sums(0);
                    Hive::from_fn(4, |p| {
                        if p.z == 0 {
                            lam[p.y]
                        } else if p.x == 0 {
                            m[p.z]
                        } else if p.y == 0 {
                            s[p.z]
                        } else {
                            0
                        }
                    })
                });
                let (lo, hi) = (-4, lambda.sum() + mu.sum() + 4);
                let mut brute = BTreeSet::new();
                for a in lo..=hi {
                    for bb in lo..=hi {
                        for c in lo..=hi {
                            let h = Hive::from_fn(4, |p| match interior.iter().position(|q| *q == p) {
                                Some(0) => a,
                                Some(1) => bb,
                                Some(2) => c,
                                _ => template.get(p),
                            });
                            if validate_hive(&h).is_valid() {
                                brute.insert(h);
                            }
                        }
                    }
                }
                assert_eq!(found, brute, "{lambda} {mu} {nu}");
            }
        }
    }
}

#[test]
fn shared_helpers_behave() {
    assert_eq!(common::all_weights(3, 0, 3).len(), 20);
    assert_eq!(w("1,0").len(), 2);
}
