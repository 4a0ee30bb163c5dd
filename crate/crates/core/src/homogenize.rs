//! Homogenization of mixed-degree polynomials and metapolynomials.
//!
//! A polynomial `f` of degree at most `d` in `x_1..x_k` becomes
//! `f#(x_0, x) = sum_i f_i x_0^(d - |i|) x^i`, and a metapolynomial in the
//! mixed-degree metavariables `c_i` becomes one in `c_{(d - |i|, i)}`, so
//! that `Delta#(f#) = Delta(f)`. The new variable is coordinate 0.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::meta::{Format, MetaMonomial, MetaPolynomial};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::text::{parse_raw, RawTerm};

/// Polynomial in `k` variables with terms of any degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedPolynomial {
    k: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl MixedPolynomial {
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (mu, c) in terms {
            if mu.len() != k {
                return Err(Error::VariableCountMismatch {
                    expected: k,
                    found: mu.len(),
                });
            }
            if !c.is_zero() {
                *out.entry(mu).or_insert_with(Scalar::zero) += c;
            }
        }
        out.retain(|_, c: &mut Scalar| !c.is_zero());
        Ok(MixedPolynomial { k, terms: out })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, mu: &MultiIndex) -> Scalar {
        self.terms.get(mu).cloned().unwrap_or_else(Scalar::zero)
    }
}

impl From<&Polynomial> for MixedPolynomial {
    fn from(f: &Polynomial) -> Self {
        MixedPolynomial {
            k: f.k(),
            terms: f.terms().map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }
}

/// Metapolynomial whose metavariables may have different inner degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMeta {
    k: usize,
    terms: BTreeMap<MetaMonomial, Scalar>,
}

impl MixedMeta {
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = RawTerm>) -> Result<Self> {
        let mut out: BTreeMap<MetaMonomial, Scalar> = BTreeMap::new();
        for (c, factors) in terms {
            if let Some(bad) = factors.iter().find(|mu| mu.len() != k) {
                return Err(Error::VariableCountMismatch {
                    expected: k,
                    found: bad.len(),
                });
            }
            *out.entry(MetaMonomial::new(factors)).or_insert_with(Scalar::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(MixedMeta { k, terms: out })
    }

    /// Parses the metapolynomial text grammar; `k` is taken from the first
    /// metavariable.
    pub fn parse(text: &str) -> Result<Self> {
        let terms = parse_raw(text)?;
        let k = terms
            .iter()
            .flat_map(|(_, f)| f.first())
            .map(MultiIndex::len)
            .next()
            .ok_or_else(|| Error::parse(0, "no metavariable to infer k from"))?;
        MixedMeta::from_terms(k, terms)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest `|i|` over all occurring metavariables.
    pub fn max_index_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(MultiIndex::degree))
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, f: &MixedPolynomial) -> Result<Scalar> {
        if f.k != self.k {
            return Err(Error::VariableCountMismatch {
                expected: self.k,
                found: f.k,
            });
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for mu in m.factors() {
                v *= f.coefficient(mu);
            }
            total += v;
        }
        Ok(total)
    }
}

impl From<&MetaPolynomial> for MixedMeta {
    fn from(m: &MetaPolynomial) -> Self {
        MixedMeta {
            k: m.format().k,
            terms: m.terms().map(|(a, c)| (a.clone(), c.clone())).collect(),
        }
    }
}

pub fn homogenize_poly(f: &MixedPolynomial, d_target: u32) -> Result<Polynomial> {
    if f.max_degree() > d_target {
        return Err(Error::HomogenizeDegree {
            target: d_target,
            found: f.max_degree(),
        });
    }
    Polynomial::from_terms(
        f.k + 1,
        d_target,
        f.terms
            .iter()
            .map(|(mu, c)| (mu.prepend(d_target - mu.degree()), c.clone())),
    )
}

pub fn homogenize_meta(m: &MixedMeta, d_target: u32) -> Result<MetaPolynomial> {
    let found = m.max_index_degree();
    if found > d_target {
        return Err(Error::HomogenizeDegree {
            target: d_target,
            found,
        });
    }
    let mut degrees = m.terms.keys().map(MetaMonomial::degree);
    let delta = degrees.next().unwrap_or(0);
    if degrees.any(|x| x != delta) {
        return Err(Error::Inhomogeneous("terms of different meta-degree".into()));
    }
    let format = Format::new(delta as u32, d_target, m.k + 1);
    MetaPolynomial::from_terms(
        format,
        m.terms.iter().map(|(mono, c)| {
            let factors = mono
                .factors()
                .iter()
                .map(|mu| mu.prepend(d_target - mu.degree()))
                .collect();
            (c.clone(), factors)
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::text::parse_meta;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn univariate_discriminant() {
        // f = a x^2 + b x + c: c[2] = a, c[1] = b, c[0] = c.
        let m = MixedMeta::parse("c[1]^2 - 4*c[2]*c[0]").unwrap();
        let h = homogenize_meta(&m, 2).unwrap();
        assert_eq!(h, parse_meta("c[1,1]^2 - 4*c[2,0]*c[0,2]", None).unwrap());
    }

    #[test]
    fn homogeneous_input_only_gains_a_zero_coordinate() {
        let delta = parse_meta("c[1,1]^2 - 4*c[2,0]*c[0,2]", None).unwrap();
        let h = homogenize_meta(&MixedMeta::from(&delta), 2).unwrap();
        assert_eq!(h.format(), Format::new(2, 2, 3));
        assert_eq!(
            h,
            parse_meta("c[0,1,1]^2 - 4*c[0,2,0]*c[0,0,2]", None).unwrap()
        );
    }

    #[test]
    fn degree_errors() {
        let m = MixedMeta::parse("c[3]*c[0]").unwrap();
        assert!(matches!(
            homogenize_meta(&m, 2),
            Err(Error::HomogenizeDegree { target: 2, found: 3 })
        ));
        let mixed = MixedMeta::parse("c[1]^2 + c[0]").unwrap();
        assert!(homogenize_meta(&mixed, 2).is_err());
    }

    #[test]
    fn identity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let k = rng.gen_range(1..=2);
            let d = rng.gen_range(1..=3u32);
            let delta = rng.gen_range(1..=3usize);
            let vars: Vec<MultiIndex> = (0..=d).flat_map(|n| crate::index::compositions(n, k)).collect();
            let terms: Vec<RawTerm> = (0..rng.gen_range(1..=4))
                .map(|_| {
                    let f = (0..delta)
                        .map(|_| vars[rng.gen_range(0..vars.len())].clone())
                        .collect();
                    (int(rng.gen_range(-5..=5)), f)
                })
                .collect();
            let m = MixedMeta::from_terms(k, terms).unwrap();
            let f = MixedPolynomial::from_terms(
                k,
                vars.iter().map(|mu| (mu.clone(), int(rng.gen_range(-4..=4)))),
            )
            .unwrap();
            let lhs = homogenize_meta(&m, d)
                .unwrap()
                .evaluate(&homogenize_poly(&f, d).unwrap())
                .unwrap();
            assert_eq!(lhs, m.evaluate(&f).unwrap());
        }
    }
}
