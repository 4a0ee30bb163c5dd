use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::{compositions, MultiIndex};
use crate::scalar::Scalar;

/// Homogeneous polynomial of degree `d` in `k` variables with exact
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    k: usize,
    d: u32,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Polynomial {
    pub fn zero(k: usize, d: u32) -> Self {
        Polynomial {
            k,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        k: usize,
        d: u32,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(k, d);
        for (mu, c) in terms {
            if mu.len() != k {
                return Err(Error::VariableCountMismatch {
                    expected: k,
                    found: mu.len(),
                });
            }
            if mu.degree() != d {
                return Err(Error::Inhomogeneous(format!(
                    "monomial {mu} has degree {} in a degree {d} polynomial",
                    mu.degree()
                )));
            }
            p.add_term(mu, c);
        }
        Ok(p)
    }

    /// The monomial `x^mu` with coefficient one.
    pub fn monomial(mu: MultiIndex) -> Self {
        let k = mu.len();
        let d = mu.degree();
        let mut p = Polynomial::zero(k, d);
        p.terms.insert(mu, crate::scalar::one());
        p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mu: &MultiIndex) -> Scalar {
        self.terms.get(mu).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, mu: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.k, self.d);
        }
        Polynomial {
            k: self.k,
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.k != other.k {
            return Err(Error::VariableCountMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        let mut out = Polynomial::zero(self.k, self.d + other.d);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// `f(g x)`, where `(g x)_r = sum_s g[r][s] x_s`.
    pub fn substitute_linear(&self, g: &[Vec<Scalar>]) -> Result<Polynomial> {
        if g.len() != self.k || g.iter().any(|row| row.len() != self.k) {
            return Err(Error::VariableCountMismatch {
                expected: self.k,
                found: g.len(),
            });
        }
        let images: Vec<Polynomial> = g
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    self.k,
                    1,
                    row.iter()
                        .enumerate()
                        .map(|(s, c)| (MultiIndex::unit(self.k, s), c.clone())),
                )
            })
            .collect::<Result<_>>()?;
        let mut out = Polynomial::zero(self.k, self.d);
        for (nu, c) in &self.terms {
            let mut acc = Polynomial::monomial(MultiIndex::zero(self.k)).scale(c);
            for (r, &e) in nu.as_slice().iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&images[r])?;
                }
            }
            for (mu, cc) in acc.terms {
                out.add_term(mu, cc);
            }
        }
        Ok(out)
    }

    /// Basis of monomials of this degree, descending lexicographic.
    pub fn monomial_basis(k: usize, d: u32) -> Vec<MultiIndex> {
        compositions(d, k)
    }

    fn check_same_space(&self, other: &Polynomial) -> Result<()> {
        if self.k != other.k {
            return Err(Error::VariableCountMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        if self.d != other.d {
            return Err(Error::Inhomogeneous(format!(
                "degrees {} and {} differ",
                self.d, other.d
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (mu, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*x{mu}")?;
        }
        Ok(())
    }
}
