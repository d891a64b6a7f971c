use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dominant weight of GL(n): a weakly decreasing tuple of integers.
///
/// Ordering is lexicographic on the entries, which is the order used for
/// every sorted listing in this crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(format_entries(&entries)));
        }
        Ok(Weight(entries))
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// `(k, k, ..., k)`.
    pub fn constant(n: usize, k: i64) -> Self {
        Weight(vec![k; n])
    }

    /// The fundamental weight with `i` ones followed by `n - i` zeros.
    pub fn fundamental(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Precondition(format!("fundamental index {i} exceeds {n}")));
        }
        Ok(Weight((0..n).map(|k| i64::from(k < i)).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Cumulative sums `base, base + w_1, ..., base + |w|`, length `n + 1`.
    pub fn partial_sums(&self, base: i64) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut acc = base;
        out.push(acc);
        for &e in &self.0 {
            acc += e;
            out.push(acc);
        }
        out
    }

    /// Highest weight of the contragredient: `(-w_n, ..., -w_1)`.
    pub fn dual(&self) -> Weight {
        Weight(self.0.iter().rev().map(|&e| -e).collect())
    }

    pub fn shifted(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&e| e + k).collect())
    }

    /// Returns `i` if this weight is the fundamental weight with `i` ones.
    pub fn fundamental_index(&self) -> Option<usize> {
        let ones = self.0.iter().take_while(|&&e| e == 1).count();
        self.0[ones..].iter().all(|&e| e == 0).then_some(ones)
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl TryFrom<Vec<i64>> for Weight {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Weight::new(v)
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Self {
        w.0
    }
}

pub(crate) fn format_entries(entries: &[i64]) -> String {
    entries.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_entries(&self.0))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated integers without spaces, e.g. `2,1,0`.
    /// The empty string is the weight of length zero.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        let entries = s
            .split(',')
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("bad weight entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Weight::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Weight = "2,1,0".parse().unwrap();
        assert_eq!(w.entries(), &[2, 1, 0]);
        assert_eq!(w.to_string(), "2,1,0");
        let neg: Weight = "-1,-1,-3".parse().unwrap();
        assert_eq!(neg.sum(), -5);
        assert!("1,2".parse::<Weight>().is_err());
        assert!("1, 0".parse::<Weight>().is_err());
        assert!("".parse::<Weight>().unwrap().is_empty());
    }

    #[test]
    fn dual_and_fundamental() {
        let w = Weight::new(vec![3, 2, 1]).unwrap();
        assert_eq!(w.dual().entries(), &[-1, -2, -3]);
        assert_eq!(w.dual().dual(), w);
        let om = Weight::fundamental(4, 2).unwrap();
        assert_eq!(om.entries(), &[1, 1, 0, 0]);
        assert_eq!(om.fundamental_index(), Some(2));
        assert_eq!(Weight::zero(3).fundamental_index(), Some(0));
        assert_eq!(w.fundamental_index(), None);
        assert_eq!(w.partial_sums(10), vec![10, 13, 15, 16]);
    }

    #[test]
    fn serde_rejects_non_dominant() {
        assert!(serde_json::from_str::<Weight>("[0,1]").is_err());
        let w: Weight = serde_json::from_str("[1,1,0]").unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "[1,1,0]");
    }
}
