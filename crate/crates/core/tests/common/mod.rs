#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use hivering::excavation::TetPoint;
use hivering::hive::{enumerate_hives, BoundarySpec, Hive};
use hivering::laurent::TropicalForm;
use hivering::ring::product_expand;
use hivering::weight::Weight;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

pub fn random_weight(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> Weight {
    let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Weight::new(v).unwrap()
}

/// Every weakly decreasing `n`-tuple with entries in `lo..=hi`.
pub fn all_weights(n: usize, lo: i64, hi: i64) -> Vec<Weight> {
    fn go(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if cur.len() == n {
            out.push(Weight::new(cur.clone()).unwrap());
            return;
        }
        let top = cur.last().copied().unwrap_or(hi);
        for v in (lo..=top).rev() {
            cur.push(v);
            go(n, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, lo, hi, &mut Vec::new(), &mut out);
    out
}

fn pick_summand(rng: &mut impl Rng, a: &Weight, b: &Weight) -> Weight {
    let support: Vec<Weight> = product_expand(a, b).unwrap().terms().map(|(w, _)| w.clone()).collect();
    support.choose(rng).unwrap().clone()
}

/// A random pair of top hives `(h1, h2)` with `h1` in `HIVE_{lambda mu}^sigma`
/// and `h2` in `HIVE_{sigma nu}^pi`, weights with entries in `lo..=hi`.
pub fn random_top_pair(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> (Hive, Hive) {
    let lambda = random_weight(rng, n, lo, hi);
    let mu = random_weight(rng, n, lo, hi);
    let nu = random_weight(rng, n, lo, hi);
    let sigma = pick_summand(rng, &lambda, &mu);
    let pi = pick_summand(rng, &sigma, &nu);
    let h1 = enumerate_hives(&BoundarySpec::new(lambda, mu, sigma.clone())).unwrap();
    let h2 = enumerate_hives(&BoundarySpec::new(sigma, nu, pi)).unwrap();
    (h1.choose(rng).unwrap().clone(), h2.choose(rng).unwrap().clone())
}

/// A random hive with boundary weights of length `n` and entries in `lo..=hi`.
pub fn random_hive(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> Hive {
    random_top_pair(rng, n, lo, hi).0
}

/// Letters used for the size-4 top surface entries in the worked example.
pub fn letters() -> HashMap<&'static str, TetPoint> {
    [
        ("F", [2, 1, 0, 1]),
        ("T", [3, 1, 0, 0]),
        ("E", [2, 2, 0, 0]),
        ("Λ", [3, 0, 1, 0]),
        ("G", [3, 0, 0, 1]),
        ("Γ", [2, 1, 1, 0]),
        ("D", [1, 2, 0, 1]),
        ("Φ", [1, 2, 1, 0]),
        ("L", [1, 1, 0, 2]),
        ("Q", [2, 0, 0, 2]),
    ]
    .into_iter()
    .map(|(k, c)| (k, TetPoint::from(c)))
    .collect()
}

/// Renders a tropical form with letters in place of coordinates, as a set of
/// sorted signed-letter lists.
pub fn lettered(forms: &TropicalForm) -> BTreeSet<Vec<String>> {
    let names = letters();
    let by_coord: HashMap<String, &str> = names.iter().map(|(k, p)| (p.to_string(), *k)).collect();
    forms
        .forms()
        .map(|f| {
            let mut terms: Vec<String> = forms
                .vars()
                .names()
                .iter()
                .zip(&f.coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(n, &c)| {
                    let letter = by_coord.get(n.as_str()).copied().unwrap_or(n.as_str());
                    assert!(c == 1 || c == -1, "unexpected coefficient {c}");
                    format!("{}{}", if c < 0 { "-" } else { "+" }, letter)
                })
                .collect();
            terms.sort();
            terms
        })
        .collect()
}

pub fn expected(forms: &[&[&str]]) -> BTreeSet<Vec<String>> {
    forms
        .iter()
        .map(|f| {
            let mut v: Vec<String> = f.iter().map(|s| s.to_string()).collect();
            v.sort();
            v
        })
        .collect()
}
