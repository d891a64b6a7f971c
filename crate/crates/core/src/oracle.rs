//! Littlewood-Richardson coefficients from Schur polynomials, for testing.
//!
//! Schur polynomials are built from semistandard tableaux, multiplied as
//! ordinary polynomials, and the product is split back into Schur
//! polynomials by repeatedly removing the one indexed by the
//! lexicographically greatest remaining exponent. Nothing here touches hives.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coeff: i64,
}

type Poly = BTreeMap<Vec<u32>, i64>;

/// Multiplicities of the irreducible summands, indexed by weight.
pub type SchurExpansion = BTreeMap<Weight, u64>;

fn schur_map(shape: &[i64], n: usize) -> Result<Poly> {
    if shape.iter().any(|&v| v < 0) {
        return Err(Error::Precondition("Schur polynomials need nonnegative shapes; shift first".into()));
    }
    if shape.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::NotDominant(crate::weight::format_entries(shape)));
    }
    let rows: Vec<usize> = shape.iter().map(|&v| v as usize).filter(|&v| v > 0).collect();
    if rows.len() > n {
        return Ok(Poly::new());
    }
    let cells: Vec<(usize, usize)> = rows.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<u32>> = rows.iter().map(|&len| vec![0; len]).collect();
    let mut content = vec![0u32; n];
    let mut out = Poly::new();
    fill_tableau(&cells, 0, n as u32, &mut grid, &mut content, &mut out);
    Ok(out)
}

fn fill_tableau(
    cells: &[(usize, usize)],
    k: usize,
    n: u32,
    grid: &mut [Vec<u32>],
    content: &mut [u32],
    out: &mut Poly,
) {
    if k == cells.len() {
        *out.entry(content.to_vec()).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[k];
    let mut lo = 1;
    if c > 0 {
        lo = lo.max(grid[r][c - 1]);
    }
    if r > 0 {
        lo = lo.max(grid[r - 1][c] + 1);
    }
    for v in lo..=n {
        grid[r][c] = v;
        content[v as usize - 1] += 1;
        fill_tableau(cells, k + 1, n, grid, content, out);
        content[v as usize - 1] -= 1;
    }
}

/// Sum over semistandard tableaux of shape `lambda` with entries in `1..=n`
/// of their content monomials, in descending exponent order.
pub fn schur_polynomial(lambda: &Weight, n: usize) -> Result<Vec<Monomial>> {
    Ok(schur_map(lambda.entries(), n)?
        .into_iter()
        .rev()
        .map(|(exponents, coeff)| Monomial { exponents, coeff })
        .collect())
}

/// Shifts `lambda` by the least `k >= 0` and `mu` by the least `j >= 0`
/// making both nonnegative, and `nu` by `k + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub lambda: Weight,
    pub mu: Weight,
    pub nu: Weight,
    pub k: i64,
    pub j: i64,
}

pub fn det_reduce(lambda: &Weight, mu: &Weight, nu: &Weight) -> Reduced {
    let last = |w: &Weight| w.entries().last().copied().unwrap_or(0);
    let k = (-last(lambda)).max(0);
    let j = (-last(mu)).max(0);
    Reduced { lambda: lambda.shifted(k), mu: mu.shifted(j), nu: nu.shifted(k + j), k, j }
}

/// The full decomposition of the product of the Schur polynomials of
/// `lambda` and `mu`.
pub fn schur_product_expansion(lambda: &Weight, mu: &Weight) -> Result<SchurExpansion> {
    let n = lambda.len();
    if mu.len() != n {
        return Err(Error::LengthMismatch(format!("lengths {} and {}", n, mu.len())));
    }
    let r = det_reduce(lambda, mu, &Weight::zero(n));
    let a = schur_map(r.lambda.entries(), n)?;
    let b = schur_map(r.mu.entries(), n)?;
    let mut prod = Poly::new();
    for (ea, ca) in &a {
        for (eb, cb) in &b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *prod.entry(e).or_insert(0) += ca * cb;
        }
    }
    prod.retain(|_, c| *c != 0);
    let mut out = SchurExpansion::new();
    while let Some((top, &c)) = prod.iter().next_back() {
        let top = top.clone();
        if c < 0 {
            return Err(Error::Oracle(format!("negative coefficient {c} while peeling")));
        }
        if top.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Oracle("leading exponent is not a partition".into()));
        }
        let shape: Vec<i64> = top.iter().map(|&v| v as i64).collect();
        for (e, cs) in schur_map(&shape, n)? {
            let slot = prod.entry(e.clone()).or_insert(0);
            *slot -= c * cs;
            if *slot == 0 {
                prod.remove(&e);
            }
        }
        let w = Weight::new(shape.iter().map(|v| v - r.k - r.j).collect())?;
        out.insert(w, c as u64);
    }
    Ok(out)
}

/// Multiplicity of `nu` in the product of `lambda` and `mu`.
pub fn lr_coef_oracle(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
    if nu.len() != lambda.len() {
        return Err(Error::LengthMismatch(format!("lengths {} and {}", lambda.len(), nu.len())));
    }
    if lambda.sum() + mu.sum() != nu.sum() {
        return Ok(0);
    }
    Ok(schur_product_expansion(lambda, mu)?.get(nu).copied().unwrap_or(0))
}

/// Number of monomials (with multiplicity) in the Schur polynomial, i.e. the
/// dimension of the representation.
pub fn dimension(lambda: &Weight) -> Result<i64> {
    let n = lambda.len();
    let shift = (-lambda.entries().last().copied().unwrap_or(0)).max(0);
    Ok(schur_map(lambda.shifted(shift).entries(), n)?.values().sum())
}
