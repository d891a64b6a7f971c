//! The hive ring: formal integer combinations of basis elements indexed by
//! dominant weights, multiplied by counting hives.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hive::{count_hives, BoundarySpec, Hive, HiveSearch, TriPoint};
use crate::weight::Weight;

/// A finite integer combination of basis elements. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    terms: BTreeMap<Weight, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn basis(w: Weight) -> Self {
        let mut e = RingElement::zero();
        e.add_term(w, 1);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        let mut e = RingElement::zero();
        for (w, c) in terms {
            if let Some((first, _)) = e.terms.iter().next() {
                if first.len() != w.len() {
                    return Err(Error::LengthMismatch(format!("weights {first} and {w} in one ring element")));
                }
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms with weights in lexicographically descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().rev().map(|(w, &c)| (w, c))
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> RingElement {
        let mut out = RingElement::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// Bilinear extension of [`product_expand`].
    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                for (w, c) in product_expand(a, b)?.terms() {
                    out.add_term(w.clone(), ca * cb * c);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for RingElement {
    /// One `weight: coeff` line per term, weights descending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, c) in self.terms() {
            writeln!(f, "{w}: {c}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    weight: Weight,
    coeff: i64,
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<TermJson> = self.terms().map(|(w, c)| TermJson { weight: w.clone(), coeff: c }).collect();
        list.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<TermJson>::deserialize(d)?;
        RingElement::from_terms(list.into_iter().map(|t| (t.weight, t.coeff))).map_err(serde::de::Error::custom)
    }
}

/// `(1,...,1,0,...,0)` with `i` ones and length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FundamentalWeight {
    pub n: usize,
    pub i: usize,
}

impl FundamentalWeight {
    pub fn new(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Precondition(format!("fundamental weight index {i} exceeds size {n}")));
        }
        Ok(FundamentalWeight { n, i })
    }

    pub fn weight(&self) -> Weight {
        Weight::fundamental(self.n, self.i).expect("index checked at construction")
    }
}

/// `(-pi_n, ..., -pi_1)`.
pub fn dual_weight(pi: &Weight) -> Weight {
    pi.dual()
}

/// `lambda + k(1,...,1)`.
pub fn det_shift(lambda: &Weight, k: i64) -> Weight {
    lambda.shifted(k)
}

/// Coefficient of `nu` in the product of `lambda` and `mu`: the number of
/// hives with that boundary.
pub fn structure_constant(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
    count_hives(&BoundarySpec::new(lambda.clone(), mu.clone(), nu.clone()))
}

/// The full product of two basis elements. Enumerates hives with the two
/// upper sides fixed and the South side free, then groups them by their
/// South differences.
pub fn product_expand(lambda: &Weight, mu: &Weight) -> Result<RingElement> {
    let search = HiveSearch::with_free_south(lambda, mu, 0)?;
    let n = lambda.len();
    let counts = search.fold(
        BTreeMap::<Vec<i64>, i64>::new,
        |acc, labels| {
            let nu: Vec<i64> = (1..=n)
                .map(|i| {
                    let at = |x, z| labels[crate::hive::tri_index(n, TriPoint::new(x, 0, z))];
                    at(n - i, i) - at(n - i + 1, i - 1)
                })
                .collect();
            *acc.entry(nu).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let mut out = RingElement::zero();
    for (nu, c) in counts {
        out.add_term(Weight::new(nu)?, c);
    }
    Ok(out)
}

/// Product with the `i`-th fundamental weight from the 0,1-vector formula:
/// one term `lambda + pi` for each 0,1-vector `pi` with `i` ones keeping the
/// sum dominant.
pub fn pieri_expand(lambda: &Weight, i: usize) -> Result<RingElement> {
    let n = lambda.len();
    if i > n {
        return Err(Error::Precondition(format!("fundamental weight index {i} exceeds size {n}")));
    }
    let mut out = RingElement::zero();
    let mut pi = vec![0i64; n];
    choose(&mut pi, 0, i, &mut |pi| {
        let sum: Vec<i64> = lambda.entries().iter().zip(pi).map(|(a, b)| a + b).collect();
        if sum.windows(2).all(|p| p[0] >= p[1]) {
            out.add_term(Weight::new(sum).expect("checked dominant"), 1);
        }
    });
    Ok(out)
}

fn choose(pi: &mut [i64], from: usize, left: usize, f: &mut impl FnMut(&[i64])) {
    if left == 0 {
        f(pi);
        return;
    }
    for j in from..pi.len() {
        if pi.len() - j < left {
            break;
        }
        pi[j] = 1;
        choose(pi, j + 1, left - 1, f);
        pi[j] = 0;
    }
}

/// Removes the Northeast strip (the points with `x = 0`) of a hive whose
/// Northeast differences are a fundamental weight `omega_i`. The remaining
/// hive of size `n-1` has Northeast differences `omega_i` (bit 0) or
/// `omega_{i-1}` (bit 1).
pub fn peel_strip(h: &Hive) -> Result<(Hive, u8)> {
    let n = h.n();
    if n == 0 {
        return Err(Error::Precondition("a size-0 hive has no strip to remove".into()));
    }
    let ne = Weight::new(h.ne_differences())
        .map_err(|_| Error::Precondition("Northeast differences are not weakly decreasing".into()))?;
    let i = ne
        .fundamental_index()
        .ok_or_else(|| Error::Precondition(format!("Northeast differences {ne} are not a fundamental weight")))?;
    let sub = Hive::from_fn(n - 1, |p| h.get(TriPoint::new(p.x + 1, p.y, p.z)));
    let sub_ne = sub.ne_differences();
    let is = |j: usize| j < n && Weight::fundamental(n - 1, j).map(|w| w.entries() == sub_ne.as_slice()).unwrap_or(false);
    if is(i) {
        Ok((sub, 0))
    } else if i >= 1 && is(i - 1) {
        Ok((sub, 1))
    } else {
        Err(Error::Precondition(format!(
            "remaining Northeast differences {} are neither omega_{i} nor omega_{}",
            crate::weight::format_entries(&sub_ne),
            i as i64 - 1
        )))
    }
}

/// Peels strips until nothing is left, returning the bits from the largest
/// size down.
pub fn peel_all(h: &Hive) -> Result<Vec<u8>> {
    let mut bits = Vec::with_capacity(h.n());
    let mut cur = h.clone();
    while cur.n() > 0 {
        let (next, bit) = peel_strip(&cur)?;
        bits.push(bit);
        cur = next;
    }
    Ok(bits)
}
