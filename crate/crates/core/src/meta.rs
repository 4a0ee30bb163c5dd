//! Metamonomials and metapolynomials.
//!
//! A metavariable `c_mu` stands for the coefficient of `x^mu` in a
//! homogeneous polynomial of degree `d` in `k` variables. A metapolynomial
//! of format `(delta, d, k)` is a homogeneous polynomial of degree `delta`
//! in these metavariables.
//!
//! [`MetaExpr`] is the inhomogeneous version over a fixed metavariable space
//! `(d, k)`; circuits use it for intermediate gate values, and
//! [`MetaPolynomial`] wraps it with the meta-degree invariant.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{compositions, MultiIndex};
use crate::poly::Polynomial;
use crate::rep::Weight;
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u32, usize)", into = "(u32, u32, usize)")]
pub struct Format {
    pub delta: u32,
    pub d: u32,
    pub k: usize,
}

impl Format {
    pub fn new(delta: u32, d: u32, k: usize) -> Self {
        Format { delta, d, k }
    }

    /// `delta * d`, the common coordinate sum of all weights.
    pub fn weight_total(&self) -> u32 {
        self.delta * self.d
    }

    /// Metavariables of the space, ordered like the canonical monomial order.
    pub fn metavariables(&self) -> Vec<MultiIndex> {
        let mut vars = compositions(self.d, self.k);
        vars.sort();
        vars
    }

    /// All metamonomials of this format in canonical order.
    pub fn metamonomials(&self) -> Vec<MetaMonomial> {
        let vars = self.metavariables();
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::with_capacity(self.delta as usize);
        fn go(
            vars: &[MultiIndex],
            start: usize,
            left: u32,
            stack: &mut Vec<usize>,
            out: &mut Vec<MetaMonomial>,
        ) {
            if left == 0 {
                out.push(MetaMonomial(stack.iter().map(|&i| vars[i].clone()).collect()));
                return;
            }
            for i in start..vars.len() {
                stack.push(i);
                go(vars, i, left - 1, stack, out);
                stack.pop();
            }
        }
        go(&vars, 0, self.delta, &mut stack, &mut out);
        out.sort();
        out
    }
}

impl From<(u32, u32, usize)> for Format {
    fn from((delta, d, k): (u32, u32, usize)) -> Self {
        Format { delta, d, k }
    }
}

impl From<Format> for (u32, u32, usize) {
    fn from(f: Format) -> Self {
        (f.delta, f.d, f.k)
    }
}

impl fmt::Debug for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.delta, self.d, self.k)
    }
}

/// Product of metavariables, kept as a sorted factor list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetaMonomial(Vec<MultiIndex>);

impl MetaMonomial {
    pub fn new(mut factors: Vec<MultiIndex>) -> Self {
        factors.sort();
        MetaMonomial(factors)
    }

    pub fn one() -> Self {
        MetaMonomial(Vec::new())
    }

    pub fn factors(&self) -> &[MultiIndex] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Componentwise sum of the factor indices.
    pub fn weight(&self, k: usize) -> Weight {
        let mut w = vec![0i64; k];
        for mu in &self.0 {
            for (slot, &e) in w.iter_mut().zip(mu.as_slice()) {
                *slot += i64::from(e);
            }
        }
        Weight::new(w)
    }

    pub fn mul(&self, other: &MetaMonomial) -> MetaMonomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x <= y {
                        out.push(a.next().unwrap().clone());
                    } else {
                        out.push(b.next().unwrap().clone());
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        MetaMonomial(out)
    }

    /// Distinct factors with their multiplicities.
    pub fn grouped(&self) -> Vec<(&MultiIndex, u32)> {
        let mut out: Vec<(&MultiIndex, u32)> = Vec::new();
        for mu in &self.0 {
            match out.last_mut() {
                Some((last, n)) if *last == mu => *n += 1,
                _ => out.push((mu, 1)),
            }
        }
        out
    }

    /// Replace one occurrence of `from` by `to`.
    pub(crate) fn replace_one(&self, from: &MultiIndex, to: MultiIndex) -> MetaMonomial {
        let mut v = self.0.clone();
        let pos = v.iter().position(|m| m == from).expect("factor present");
        v.remove(pos);
        let at = v.partition_point(|m| *m < to);
        v.insert(at, to);
        MetaMonomial(v)
    }
}

impl fmt::Debug for MetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (mu, e)) in self.grouped().into_iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "c{mu}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse, possibly inhomogeneous metapolynomial over the metavariables of
/// degree `d` in `k` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct MetaExpr {
    d: u32,
    k: usize,
    terms: BTreeMap<MetaMonomial, Scalar>,
}

impl MetaExpr {
    pub fn zero(d: u32, k: usize) -> Self {
        MetaExpr {
            d,
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: u32, k: usize, c: Scalar) -> Self {
        let mut e = MetaExpr::zero(d, k);
        e.add_term(MetaMonomial::one(), c);
        e
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
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

    pub fn terms(&self) -> impl Iterator<Item = (&MetaMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<MetaMonomial, Scalar> {
        self.terms
    }

    pub fn coefficient(&self, m: &MetaMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: MetaMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &MetaExpr, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let unit = s.is_one();
        for (m, c) in &other.terms {
            let v = if unit { c.clone() } else { c * s };
            self.add_term(m.clone(), v);
        }
    }

    pub fn scale(&self, s: &Scalar) -> MetaExpr {
        let mut out = MetaExpr::zero(self.d, self.k);
        out.add_scaled(self, s);
        out
    }

    pub fn mul(&self, other: &MetaExpr) -> MetaExpr {
        let mut out = MetaExpr::zero(self.d, self.k);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// Meta-degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(MetaMonomial::degree).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Substitute the coefficients of `f` for the metavariables.
    pub fn evaluate(&self, f: &Polynomial) -> Result<Scalar> {
        if f.k() != self.k || f.degree() != self.d {
            return Err(Error::FormatMismatch {
                expected: Format::new(0, self.d, self.k),
                found: Format::new(0, f.degree(), f.k()),
            });
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for mu in m.factors() {
                let x = f.coefficient(mu);
                if x.is_zero() {
                    v = Scalar::zero();
                    break;
                }
                v *= x;
            }
            total += v;
        }
        Ok(total)
    }

    /// Restrict to a homogeneous piece of the given meta-degree.
    pub fn into_homogeneous(self, delta: u32) -> Result<MetaPolynomial> {
        if let Some(m) = self.terms.keys().find(|m| m.degree() != delta as usize) {
            return Err(Error::Inhomogeneous(format!(
                "term {m} has meta-degree {} but format requires {delta}",
                m.degree()
            )));
        }
        Ok(MetaPolynomial {
            format: Format::new(delta, self.d, self.k),
            expr: self,
        })
    }
}

impl fmt::Debug for MetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_terms(f, self.terms.iter())
    }
}

/// Weight information for a metapolynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightClass {
    /// The zero metapolynomial has every weight.
    Any,
    Pure(Weight),
    Mixed,
}

/// Homogeneous metapolynomial of a fixed format `(delta, d, k)`.
#[derive(Clone, PartialEq, Eq)]
pub struct MetaPolynomial {
    format: Format,
    expr: MetaExpr,
}

impl MetaPolynomial {
    pub fn zero(format: Format) -> Self {
        MetaPolynomial {
            format,
            expr: MetaExpr::zero(format.d, format.k),
        }
    }

    /// Builds from `(coefficient, factor list)` pairs, validating every
    /// factor against the format.
    pub fn from_terms(
        format: Format,
        terms: impl IntoIterator<Item = (Scalar, Vec<MultiIndex>)>,
    ) -> Result<Self> {
        let mut p = MetaPolynomial::zero(format);
        for (c, factors) in terms {
            if factors.len() != format.delta as usize {
                return Err(Error::Inhomogeneous(format!(
                    "term with {} factors in format {format}",
                    factors.len()
                )));
            }
            for mu in &factors {
                if mu.len() != format.k || mu.degree() != format.d {
                    return Err(Error::FormatMismatch {
                        expected: format,
                        found: Format::new(format.delta, mu.degree(), mu.len()),
                    });
                }
            }
            p.expr.add_term(MetaMonomial::new(factors), c);
        }
        Ok(p)
    }

    /// A single metamonomial with coefficient one.
    pub fn monomial(format: Format, factors: Vec<MultiIndex>) -> Result<Self> {
        MetaPolynomial::from_terms(format, [(scalar::one(), factors)])
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn expr(&self) -> &MetaExpr {
        &self.expr
    }

    pub fn into_expr(self) -> MetaExpr {
        self.expr
    }

    pub fn is_zero(&self) -> bool {
        self.expr.is_zero()
    }

    pub fn len(&self) -> usize {
        self.expr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.expr.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MetaMonomial, &Scalar)> {
        self.expr.terms()
    }

    pub fn coefficient(&self, m: &MetaMonomial) -> Scalar {
        self.expr.coefficient(m)
    }

    fn check_format(&self, other: &MetaPolynomial) -> Result<()> {
        if self.format != other.format {
            return Err(Error::FormatMismatch {
                expected: self.format,
                found: other.format,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MetaPolynomial) -> Result<MetaPolynomial> {
        self.check_format(other)?;
        let mut out = self.clone();
        out.expr.add_scaled(&other.expr, &scalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &MetaPolynomial) -> Result<MetaPolynomial> {
        self.check_format(other)?;
        let mut out = self.clone();
        out.expr.add_scaled(&other.expr, &scalar::int(-1));
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> MetaPolynomial {
        MetaPolynomial {
            format: self.format,
            expr: self.expr.scale(s),
        }
    }

    pub(crate) fn add_term_unchecked(&mut self, m: MetaMonomial, c: Scalar) {
        self.expr.add_term(m, c);
    }

    pub fn mul(&self, other: &MetaPolynomial) -> Result<MetaPolynomial> {
        if self.format.d != other.format.d || self.format.k != other.format.k {
            return Err(Error::FormatMismatch {
                expected: self.format,
                found: other.format,
            });
        }
        Ok(MetaPolynomial {
            format: Format::new(
                self.format.delta + other.format.delta,
                self.format.d,
                self.format.k,
            ),
            expr: self.expr.mul(&other.expr),
        })
    }

    pub fn evaluate(&self, f: &Polynomial) -> Result<Scalar> {
        self.expr.evaluate(f)
    }

    pub fn weight_class(&self) -> WeightClass {
        let mut weights = self.expr.terms().map(|(m, _)| m.weight(self.format.k));
        match weights.next() {
            None => WeightClass::Any,
            Some(first) => {
                if weights.all(|w| w == first) {
                    WeightClass::Pure(first)
                } else {
                    WeightClass::Mixed
                }
            }
        }
    }

    /// Coordinates in the metamonomial basis `basis`.
    pub fn to_vector(&self, basis: &[MetaMonomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn from_vector(format: Format, basis: &[MetaMonomial], v: &[Scalar]) -> MetaPolynomial {
        let mut p = MetaPolynomial::zero(format);
        for (m, c) in basis.iter().zip(v) {
            p.expr.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Multiplies by the least positive rational making all coefficients
    /// coprime integers with a positive leading (first canonical) term.
    pub fn primitive(&self) -> MetaPolynomial {
        use num_integer::Integer;
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for (_, c) in self.terms() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return self.clone();
        }
        let mut s = Scalar::new(den, num);
        if let Some((_, c)) = self.terms().next() {
            if (c * &s) < Scalar::zero() {
                s = -s;
            }
        }
        self.scale(&s)
    }
}

impl fmt::Debug for MetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {self}", self.format)
    }
}

impl fmt::Display for MetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_terms(f, self.expr.terms())
    }
}
