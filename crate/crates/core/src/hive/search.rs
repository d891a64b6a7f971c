//! Backtracking enumeration of integer hives with prescribed labels.
//!
//! Free points are assigned in [`tri_points`] order. Every rhombus is attached
//! to whichever of its vertices is assigned last; when that vertex is reached,
//! the rhombus contributes a lower bound (vertex on the short diagonal) or an
//! upper bound (vertex on the long diagonal) from labels already in place.

use rayon::prelude::*;

use super::{rhombus_list, tri_index, tri_len, tri_points, BoundarySpec, Hive, TriPoint};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
enum Bound {
    /// `v >= labels[a] + labels[b] - labels[c]`
    Lower(usize, usize, usize),
    /// `v <= labels[a] + labels[b] - labels[c]`
    Upper(usize, usize, usize),
}

/// Levels of the search tree that are split across the rayon pool.
const PARALLEL_DEPTH: usize = 2;

/// A prepared search over all hives of size `n` agreeing with some fixed
/// labels. Free points must each be bounded above and below by rhombi whose
/// other vertices come earlier; [`HiveSearch::new`] rejects setups where that
/// fails.
#[derive(Clone, Debug)]
pub struct HiveSearch {
    n: usize,
    initial: Vec<i64>,
    free: Vec<usize>,
    bounds: Vec<Vec<Bound>>,
    consistent: bool,
}

impl HiveSearch {
    /// `fixed` is indexed in [`tri_points`] order; `None` marks a free point.
    pub fn new(n: usize, fixed: &[Option<i64>]) -> Result<Self> {
        if fixed.len() != tri_len(n) {
            return Err(Error::Malformed(format!(
                "size {n} needs {} entries, got {}",
                tri_len(n),
                fixed.len()
            )));
        }
        let free: Vec<usize> = (0..fixed.len()).filter(|&i| fixed[i].is_none()).collect();
        let mut slot = vec![usize::MAX; fixed.len()];
        for (k, &i) in free.iter().enumerate() {
            slot[i] = k;
        }
        let initial: Vec<i64> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
        let mut bounds = vec![Vec::new(); free.len()];
        let mut consistent = true;
        let idx = |p: TriPoint| tri_index(n, p);
        for r in rhombus_list(n) {
            let o = [idx(r.obtuse[0]), idx(r.obtuse[1])];
            let a = [idx(r.acute[0]), idx(r.acute[1])];
            let last = o.iter().chain(a.iter()).copied().filter(|&i| slot[i] != usize::MAX).max_by_key(|&i| slot[i]);
            match last {
                None => {
                    if initial[o[0]] + initial[o[1]] < initial[a[0]] + initial[a[1]] {
                        consistent = false;
                    }
                }
                Some(v) => {
                    let b = if v == o[0] || v == o[1] {
                        let other = if v == o[0] { o[1] } else { o[0] };
                        Bound::Lower(a[0], a[1], other)
                    } else {
                        let other = if v == a[0] { a[1] } else { a[0] };
                        Bound::Upper(o[0], o[1], other)
                    };
                    bounds[slot[v]].push(b);
                }
            }
        }
        let pts = tri_points(n);
        for (k, b) in bounds.iter().enumerate() {
            let has_lower = b.iter().any(|x| matches!(x, Bound::Lower(..)));
            let has_upper = b.iter().any(|x| matches!(x, Bound::Upper(..)));
            if !(has_lower && has_upper) {
                return Err(Error::Precondition(format!(
                    "free point {} is not bounded on both sides by earlier labels",
                    pts[free[k]]
                )));
            }
        }
        Ok(HiveSearch { n, initial, free, bounds, consistent })
    }

    /// All hives with the boundary given by `b` (lower-left label `b.base`).
    pub fn for_boundary(b: &BoundarySpec) -> Result<Option<Self>> {
        b.check_lengths()?;
        if !b.sums_match() {
            return Ok(None);
        }
        let n = b.n();
        let mut fixed = vec![None; tri_len(n)];
        let lam = b.lambda.partial_sums(b.base);
        let mu = b.mu.partial_sums(b.base + b.lambda.sum());
        let nu = b.nu.partial_sums(b.base);
        for i in 0..=n {
            fixed[tri_index(n, TriPoint::new(n - i, i, 0))] = Some(lam[i]);
            fixed[tri_index(n, TriPoint::new(0, n - i, i))] = Some(mu[i]);
            fixed[tri_index(n, TriPoint::new(n - i, 0, i))] = Some(nu[i]);
        }
        Self::new(n, &fixed).map(Some)
    }

    /// All hives with NW side `lambda` and NE side `mu` from lower-left label
    /// `base`; the South side is left free. Grouping the results by South
    /// differences gives the product expansion.
    pub fn with_free_south(lambda: &crate::weight::Weight, mu: &crate::weight::Weight, base: i64) -> Result<Self> {
        let n = lambda.len();
        if mu.len() != n {
            return Err(Error::LengthMismatch(format!("lambda has length {n}, mu has length {}", mu.len())));
        }
        let mut fixed = vec![None; tri_len(n)];
        let lam = lambda.partial_sums(base);
        let m = mu.partial_sums(base + lambda.sum());
        for i in 0..=n {
            fixed[tri_index(n, TriPoint::new(n - i, i, 0))] = Some(lam[i]);
            fixed[tri_index(n, TriPoint::new(0, n - i, i))] = Some(m[i]);
        }
        Self::new(n, &fixed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn range(&self, k: usize, labels: &[i64]) -> (i64, i64) {
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for b in &self.bounds[k] {
            match *b {
                Bound::Lower(a, c, d) => lo = lo.max(labels[a] + labels[c] - labels[d]),
                Bound::Upper(a, c, d) => hi = hi.min(labels[a] + labels[c] - labels[d]),
            }
        }
        (lo, hi)
    }

    fn walk<A>(&self, k: usize, labels: &mut [i64], acc: &mut A, visit: &(impl Fn(&mut A, &[i64]) + Sync)) {
        if k == self.free.len() {
            visit(acc, labels);
            return;
        }
        let (lo, hi) = self.range(k, labels);
        let i = self.free[k];
        for v in lo..=hi {
            labels[i] = v;
            self.walk(k + 1, labels, acc, visit);
        }
    }

    fn par_walk<A: Send>(
        &self,
        k: usize,
        labels: &[i64],
        identity: &(impl Fn() -> A + Sync),
        visit: &(impl Fn(&mut A, &[i64]) + Sync),
        merge: &(impl Fn(A, A) -> A + Sync),
    ) -> A {
        if k == self.free.len() || k >= PARALLEL_DEPTH {
            let mut acc = identity();
            let mut labels = labels.to_vec();
            self.walk(k, &mut labels, &mut acc, visit);
            return acc;
        }
        let (lo, hi) = self.range(k, labels);
        if lo > hi {
            return identity();
        }
        let i = self.free[k];
        (lo..=hi)
            .into_par_iter()
            .map(|v| {
                let mut next = labels.to_vec();
                next[i] = v;
                self.par_walk(k + 1, &next, identity, visit, merge)
            })
            .reduce(identity, merge)
    }

    /// Folds over every solution's labels (in [`tri_points`] order). Results
    /// from subtrees are merged in search order, so an order-preserving
    /// `merge` gives a deterministic result.
    pub fn fold<A: Send>(
        &self,
        identity: impl Fn() -> A + Sync,
        visit: impl Fn(&mut A, &[i64]) + Sync,
        merge: impl Fn(A, A) -> A + Sync,
    ) -> A {
        if !self.consistent {
            return identity();
        }
        self.par_walk(0, &self.initial, &identity, &visit, &merge)
    }

    pub fn hives(&self) -> Vec<Hive> {
        let n = self.n;
        self.fold(
            Vec::new,
            |acc: &mut Vec<Hive>, labels| acc.push(Hive { n, labels: labels.to_vec() }),
            |mut a, b| {
                a.extend(b);
                a
            },
        )
    }

    /// Number of solutions. The last free point is counted by interval
    /// length instead of being enumerated.
    pub fn count(&self) -> u64 {
        if !self.consistent {
            return 0;
        }
        if self.free.is_empty() {
            return 1;
        }
        let last = self.free.len() - 1;
        self.count_from(0, &self.initial, last)
    }

    fn count_from(&self, k: usize, labels: &[i64], last: usize) -> u64 {
        let (lo, hi) = self.range(k, labels);
        if lo > hi {
            return 0;
        }
        if k == last {
            return (hi - lo + 1) as u64;
        }
        let i = self.free[k];
        if k < PARALLEL_DEPTH {
            (lo..=hi)
                .into_par_iter()
                .map(|v| {
                    let mut next = labels.to_vec();
                    next[i] = v;
                    self.count_from(k + 1, &next, last)
                })
                .sum()
        } else {
            let mut next = labels.to_vec();
            let mut total = 0;
            for v in lo..=hi {
                next[i] = v;
                total += self.count_from(k + 1, &next, last);
            }
            total
        }
    }
}

/// Every hive with the given boundary. Empty when the sums do not match.
pub fn enumerate_hives(b: &BoundarySpec) -> Result<Vec<Hive>> {
    Ok(HiveSearch::for_boundary(b)?.map(|s| s.hives()).unwrap_or_default())
}

/// Number of hives with the given boundary, without materializing them.
pub fn count_hives(b: &BoundarySpec) -> Result<u64> {
    Ok(HiveSearch::for_boundary(b)?.map(|s| s.count()).unwrap_or(0))
}
