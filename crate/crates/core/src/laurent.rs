//! Exact multivariate Laurent polynomials over the integers, the rational
//! octahedron recurrence `E' = (AC + BD) / E`, and tropicalization.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::excavation::{
    bottom_surface, excavate_labels, layer_order, top_surface, OctahedronRule, TetLabeling, TetPoint,
};

/// Default largest size accepted by [`symbolic_excavate`].
pub const SYMBOLIC_SIZE_LIMIT: usize = 6;

/// An ordered list of variable names shared by polynomials that may be
/// combined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variables(Arc<Vec<String>>);

impl Variables {
    pub fn new(names: Vec<String>) -> Self {
        Variables(Arc::new(names))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    fn same(&self, other: &Variables) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    vars: Variables,
    terms: BTreeMap<Vec<i32>, i64>,
}

impl LaurentPolynomial {
    pub fn zero(vars: &Variables) -> Self {
        LaurentPolynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Variables, c: i64) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn monomial(vars: &Variables, exponents: Vec<i32>, coeff: i64) -> Self {
        assert_eq!(exponents.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if coeff != 0 {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn variable(vars: &Variables, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
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

    /// Terms with exponent vectors in lexicographically descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], i64)> {
        self.terms.iter().rev().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.values().copied()
    }

    fn check(&self, other: &Self) {
        assert!(self.vars.same(&other.vars), "polynomials over different variable sets");
    }

    fn add_term(&mut self, e: Vec<i32>, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(&self.vars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn shift(&self, by: &[i32]) -> Self {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c))
                .collect(),
        }
    }

    fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.vars.len()];
        for e in self.terms.keys() {
            for (slot, &v) in m.iter_mut().zip(e) {
                *slot = (*slot).min(v);
            }
        }
        m
    }

    /// The quotient `self / q` in the Laurent ring. Both sides are shifted to
    /// polynomials with no monomial factor and divided by lexicographic
    /// leading terms; any remainder is an error.
    pub fn exact_divide(&self, q: &Self) -> Result<Self> {
        self.check(q);
        if q.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mp = self.min_exponents();
        let mq = q.min_exponents();
        let neg = |m: &[i32]| m.iter().map(|v| -v).collect::<Vec<_>>();
        let mut rem = self.shift(&neg(&mp));
        let q0 = q.shift(&neg(&mq));
        let (lq, cq) = q0.terms.iter().next_back().map(|(e, &c)| (e.clone(), c)).expect("nonzero");
        let mut quot = Self::zero(&self.vars);
        while let Some((lr, cr)) = rem.terms.iter().next_back().map(|(e, &c)| (e.clone(), c)) {
            let e: Vec<i32> = lr.iter().zip(&lq).map(|(a, b)| a - b).collect();
            if e.iter().any(|&v| v < 0) || cr % cq != 0 {
                return Err(Error::InexactDivision);
            }
            let t = Self::monomial(&self.vars, e, cr / cq);
            rem = rem.sub(&t.mul(&q0));
            quot = quot.add(&t);
        }
        let back: Vec<i32> = mp.iter().zip(&mq).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&back))
    }

    /// One linear form per monomial, its exponents becoming coefficients.
    pub fn tropicalize(&self) -> Result<TropicalForm> {
        let mut forms = BTreeSet::new();
        for (e, &c) in &self.terms {
            if c <= 0 {
                return Err(Error::Tropicalization(c));
            }
            forms.insert(LinearForm { coeffs: e.clone(), constant: 0 });
        }
        Ok(TropicalForm { vars: self.vars.clone(), forms })
    }

    /// `[{"exp": {"var": k, ...}, "coeff": c}, ...]` with terms in
    /// descending exponent order and zero exponents omitted.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            exp: BTreeMap<String, i32>,
            coeff: i64,
        }
        let list: Vec<Term> = self
            .terms()
            .map(|(e, c)| Term { exp: named_exponents(&self.vars, e), coeff: c })
            .collect();
        serde_json::to_value(list).expect("plain data serializes")
    }
}

fn named_exponents(vars: &Variables, e: &[i32]) -> BTreeMap<String, i32> {
    vars.names().iter().zip(e).filter(|(_, &v)| v != 0).map(|(n, &v)| (n.clone(), v)).collect()
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &Variables, e: &[i32], c: i64) -> fmt::Result {
    let factors: Vec<String> = vars
        .names()
        .iter()
        .zip(e)
        .filter(|(_, &v)| v != 0)
        .map(|(n, &v)| if v == 1 { n.clone() } else { format!("{n}^{v}") })
        .collect();
    match (c, factors.is_empty()) {
        (_, true) => write!(f, "{c}"),
        (1, false) => write!(f, "{}", factors.join("*")),
        (-1, false) => write!(f, "-{}", factors.join("*")),
        _ => write!(f, "{c}*{}", factors.join("*")),
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_monomial(f, &self.vars, e, c)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub coeffs: Vec<i32>,
    pub constant: i64,
}

impl LinearForm {
    fn eval(&self, values: &[i64]) -> i64 {
        self.constant + self.coeffs.iter().zip(values).map(|(&c, &v)| c as i64 * v).sum::<i64>()
    }
}

/// The maximum of finitely many linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalForm {
    vars: Variables,
    forms: BTreeSet<LinearForm>,
}

impl TropicalForm {
    pub fn new(vars: &Variables, forms: impl IntoIterator<Item = LinearForm>) -> Self {
        TropicalForm { vars: vars.clone(), forms: forms.into_iter().collect() }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn forms(&self) -> impl Iterator<Item = &LinearForm> {
        self.forms.iter()
    }

    /// Value at `values`, given in variable order.
    pub fn eval(&self, values: &[i64]) -> Result<i64> {
        if values.len() != self.vars.len() {
            return Err(Error::Malformed(format!("{} values for {} variables", values.len(), self.vars.len())));
        }
        self.forms
            .iter()
            .map(|f| f.eval(values))
            .max()
            .ok_or_else(|| Error::Precondition("maximum over no linear forms".into()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Form {
            coeffs: BTreeMap<String, i32>,
            constant: i64,
        }
        let list: Vec<Form> = self
            .forms
            .iter()
            .rev()
            .map(|f| Form { coeffs: named_exponents(&self.vars, &f.coeffs), constant: f.constant })
            .collect();
        serde_json::to_value(list).expect("plain data serializes")
    }
}

/// Evaluates `f` at a named assignment; every variable of `f` with a nonzero
/// coefficient must be assigned.
pub fn eval_tropical(f: &TropicalForm, assignment: &HashMap<String, i64>) -> Result<i64> {
    let used: BTreeSet<usize> =
        f.forms.iter().flat_map(|l| l.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)).collect();
    let mut values = vec![0; f.vars.len()];
    for i in used {
        let name = &f.vars.names()[i];
        values[i] = *assignment.get(name).ok_or_else(|| Error::MissingVariable(name.clone()))?;
    }
    f.eval(&values)
}

impl fmt::Display for TropicalForm {
    /// `max{a + b - c, ...}` over the forms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .forms
            .iter()
            .rev()
            .map(|l| {
                let mut s = String::new();
                for (name, &c) in self.vars.names().iter().zip(&l.coeffs) {
                    if c == 0 {
                        continue;
                    }
                    let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
                    let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
                    s.push_str(&format!("{sign}{mag}{name}"));
                }
                if l.constant != 0 || s.is_empty() {
                    if s.is_empty() {
                        s = l.constant.to_string();
                    } else {
                        s.push_str(&format!("{:+}", l.constant));
                    }
                }
                s
            })
            .collect();
        write!(f, "max{{{}}}", parts.join(", "))
    }
}

/// `E' = (AC + BD) / E`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalRule;

impl OctahedronRule<LaurentPolynomial> for RationalRule {
    fn apply(
        &self,
        e: &LaurentPolynomial,
        a: &LaurentPolynomial,
        b: &LaurentPolynomial,
        c: &LaurentPolynomial,
        d: &LaurentPolynomial,
    ) -> Result<LaurentPolynomial> {
        a.mul(c).add(&b.mul(d)).exact_divide(e)
    }
}

/// One variable per top-surface point, in lexicographic order, named by its
/// coordinates as `[x,y,z,w]`.
pub fn surface_variables(n: usize) -> Variables {
    Variables::new(top_surface(n).iter().map(|p| p.to_string()).collect())
}

/// Bottom-face labels of the tetrahedron when the top faces carry
/// independent variables and octahedra are removed by the rational rule.
#[derive(Clone, Debug)]
pub struct SymbolicExcavation {
    pub n: usize,
    pub vars: Variables,
    pub top: Vec<TetPoint>,
    pub bottom: BTreeMap<TetPoint, LaurentPolynomial>,
}

impl SymbolicExcavation {
    /// Plugs integer values (in variable order) into the tropicalized labels.
    pub fn tropical_values(&self, values: &[i64]) -> Result<BTreeMap<TetPoint, i64>> {
        self.bottom.iter().map(|(p, poly)| Ok((*p, poly.tropicalize()?.eval(values)?))).collect()
    }
}

/// Runs the rational recurrence. Sizes above [`SYMBOLIC_SIZE_LIMIT`] are
/// refused unless `allow_large` is set.
pub fn symbolic_excavate(n: usize, allow_large: bool) -> Result<SymbolicExcavation> {
    if n == 0 {
        return Err(Error::Precondition("symbolic excavation needs size at least 1".into()));
    }
    if n > SYMBOLIC_SIZE_LIMIT && !allow_large {
        return Err(Error::TooLarge { n, limit: SYMBOLIC_SIZE_LIMIT });
    }
    let vars = surface_variables(n);
    let top = top_surface(n);
    let mut t = TetLabeling::new(n);
    for (i, p) in top.iter().enumerate() {
        t.set(*p, LaurentPolynomial::variable(&vars, i))?;
    }
    let full = excavate_labels(&t, &layer_order(n), &RationalRule, None)?;
    let bottom = bottom_surface(n)
        .into_iter()
        .map(|p| (p, full.get(p).cloned().expect("every point is labeled after excavation")))
        .collect();
    Ok(SymbolicExcavation { n, vars, top, bottom })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcde() -> (Variables, Vec<LaurentPolynomial>) {
        let vars = Variables::new(["A", "B", "C", "D", "E"].iter().map(|s| s.to_string()).collect());
        let v = (0..5).map(|i| LaurentPolynomial::variable(&vars, i)).collect();
        (vars, v)
    }

    #[test]
    fn arithmetic() {
        let (vars, v) = abcde();
        let (a, b) = (&v[0], &v[1]);
        let lhs = a.add(b).mul(&a.sub(b));
        let rhs = a.mul(a).sub(&b.mul(b));
        assert_eq!(lhs, rhs);
        let ac_bd = v[0].mul(&v[2]).add(&v[1].mul(&v[3]));
        assert!(matches!(ac_bd.exact_divide(&v[4]).unwrap().terms().count(), 2));
        // not divisible as polynomials, but fine in the Laurent ring
        let sum = a.add(b);
        assert!(matches!(ac_bd.exact_divide(&sum), Err(Error::InexactDivision)));
        assert_eq!(ac_bd.mul(&v[4]).exact_divide(&v[4]).unwrap(), ac_bd);
        let big = ac_bd.mul(&sum).mul(&sum).mul(&v[2]);
        assert_eq!(big.exact_divide(&sum.mul(&v[2])).unwrap(), ac_bd.mul(&sum));
        let two = LaurentPolynomial::constant(&vars, 2);
        assert!(matches!(a.exact_divide(&two), Err(Error::InexactDivision)));
        assert_eq!(a.mul(&two).exact_divide(&two).unwrap(), *a);
        assert_eq!(rhs.to_string(), "A^2 + -B^2");
    }

    #[test]
    fn tropical_examples() {
        let (_, v) = abcde();
        let e_prime = RationalRule.apply(&v[4], &v[0], &v[1], &v[2], &v[3]).unwrap();
        let trop = e_prime.tropicalize().unwrap();
        assert_eq!(trop.to_string(), "max{A+C-E, B+D-E}");
        let at: HashMap<String, i64> = [("A", 1), ("B", 1), ("C", 1), ("D", 1), ("E", 0)]
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect();
        assert_eq!(eval_tropical(&trop, &at).unwrap(), 2);
        let mut partial = at.clone();
        partial.remove("C");
        assert!(matches!(eval_tropical(&trop, &partial), Err(Error::MissingVariable(n)) if n == "C"));

        let xy = Variables::new(vec!["X".into(), "Y".into()]);
        let m = LaurentPolynomial::monomial(&xy, vec![2, -1], 1).tropicalize().unwrap();
        assert_eq!(m.to_string(), "max{2X-Y}");
        assert_eq!(m.eval(&[3, 1]).unwrap(), 5);
        let neg = LaurentPolynomial::monomial(&xy, vec![1, 0], -1);
        assert!(matches!(neg.tropicalize(), Err(Error::Tropicalization(-1))));
    }

    #[test]
    fn symbolic_small_sizes() {
        let s1 = symbolic_excavate(1, false).unwrap();
        for (p, poly) in &s1.bottom {
            assert_eq!(*poly, LaurentPolynomial::variable(&s1.vars, s1.vars.index(&p.to_string()).unwrap()));
        }
        let s2 = symbolic_excavate(2, false).unwrap();
        let inner = &s2.bottom[&TetPoint::new(0, 0, 1, 1)];
        let var = |name: &str| LaurentPolynomial::variable(&s2.vars, s2.vars.index(name).unwrap());
        let expect = RationalRule
            .apply(&var("[1,1,0,0]"), &var("[1,0,1,0]"), &var("[1,0,0,1]"), &var("[0,1,0,1]"), &var("[0,1,1,0]"))
            .unwrap();
        assert_eq!(*inner, expect);
        assert_eq!(inner.len(), 2);
        let trop = inner.tropicalize().unwrap().to_string();
        assert_eq!(trop, "max{[0,1,0,1]+[1,0,1,0]-[1,1,0,0], [0,1,1,0]+[1,0,0,1]-[1,1,0,0]}");
        assert!(matches!(symbolic_excavate(7, false), Err(Error::TooLarge { n: 7, limit: 6 })));
    }

    #[test]
    fn json_form() {
        let (_, v) = abcde();
        let p = v[0].mul(&v[0]).exact_divide(&v[4]).unwrap().add(&v[1]);
        let j = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(j, r#"[{"coeff":1,"exp":{"A":2,"E":-1}},{"coeff":1,"exp":{"B":1}}]"#);
    }
}
