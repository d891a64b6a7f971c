//! Checks the associativity identity
//! `sum_sigma h_{lambda mu}^sigma h_{sigma nu}^pi = sum_tau h_{mu nu}^tau h_{lambda tau}^pi`
//! and that excavation is a bijection between the two sides.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{assemble_top, excavate, fill, HivePair};
use crate::error::{Error, Result};
use crate::hive::{enumerate_hives, BoundarySpec};
use crate::ring::product_expand;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub lhs: u64,
    pub rhs: u64,
    pub bijection_ok: bool,
}

/// All pairs `(first, second)` with `first` in `HIVE_{a b}^s` and `second`
/// in `HIVE_{s c}^pi` (or the other bracketing) over every intermediate `s`.
fn pairs(
    intermediates: &[Weight],
    first: impl Fn(&Weight) -> BoundarySpec,
    second: impl Fn(&Weight) -> BoundarySpec,
) -> Result<Vec<HivePair>> {
    let mut out = Vec::new();
    for s in intermediates {
        let seconds = enumerate_hives(&second(s))?;
        if seconds.is_empty() {
            continue;
        }
        for f in enumerate_hives(&first(s))? {
            for g in &seconds {
                out.push(HivePair { left: f.clone(), right: g.clone(), shared: s.clone() });
            }
        }
    }
    Ok(out)
}

pub fn verify_star(lambda: &Weight, mu: &Weight, nu: &Weight, pi: &Weight) -> Result<StarReport> {
    let n = lambda.len();
    if [mu, nu, pi].iter().any(|w| w.len() != n) {
        return Err(Error::LengthMismatch("lambda, mu, nu, pi must have equal lengths".into()));
    }
    let sigmas: Vec<Weight> = product_expand(lambda, mu)?.terms().map(|(w, _)| w.clone()).collect();
    let taus: Vec<Weight> = product_expand(mu, nu)?.terms().map(|(w, _)| w.clone()).collect();
    let top = pairs(
        &sigmas,
        |s| BoundarySpec::new(lambda.clone(), mu.clone(), s.clone()),
        |s| BoundarySpec::new(s.clone(), nu.clone(), pi.clone()),
    )?;
    let bottom = pairs(
        &taus,
        |t| BoundarySpec::new(mu.clone(), nu.clone(), t.clone()),
        |t| BoundarySpec::new(lambda.clone(), t.clone(), pi.clone()),
    )?;
    let bottom_set: HashSet<HivePair> = bottom.iter().cloned().collect();

    let images = top
        .par_iter()
        .map(|pair| -> Result<Option<HivePair>> {
            let t = assemble_top(&pair.left, &pair.right)?;
            let image = excavate(&t)?.normalized();
            let back = fill(&image)?;
            let ok = back.left == pair.left && back.right == pair.right && bottom_set.contains(&image);
            Ok(ok.then_some(image))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_inverted = images.iter().all(Option::is_some);
    let distinct: HashSet<&HivePair> = images.iter().flatten().collect();
    let bijection_ok = all_inverted && distinct.len() == top.len() && distinct.len() == bottom.len();
    Ok(StarReport { lhs: top.len() as u64, rhs: bottom.len() as u64, bijection_ok })
}
