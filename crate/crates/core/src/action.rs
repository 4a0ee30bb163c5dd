//! The `gl_k` action on polynomials and metapolynomials, and the `GL_k`
//! substitution action.
//!
//! Conventions: `E_ij . f = -x_j df/dx_i` on polynomials, and on
//! metavariables `E_ij . c_mu = (mu_i + 1) c_{mu + e_i - e_j}` for `i != j`,
//! `E_ii . c_mu = mu_i c_mu`, extended as a derivation. The two are tied by
//! `(E . Delta)(f) = -Delta(E . f)` to first order in each factor.
//! Groups act by `(g . Delta)(f) = Delta(g^-1 . f)` with
//! `(g^-1 . f)(x) = f(g x)`.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::linalg::{self, Matrix};
use crate::meta::{MetaExpr, MetaMonomial, MetaPolynomial};
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

/// Matrix unit `E_ij`. Indices are stored 0-based; text and JSON forms are
/// 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct BasisElement {
    pub i: usize,
    pub j: usize,
}

impl BasisElement {
    /// From 0-based indices.
    pub const fn new(i: usize, j: usize) -> Self {
        BasisElement { i, j }
    }

    /// From 1-based indices.
    pub fn one_based(i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::IndexOutOfRange(format!("E[{i},{j}] is 1-based")));
        }
        Ok(BasisElement { i: i - 1, j: j - 1 })
    }

    pub fn is_raising(&self) -> bool {
        self.i < self.j
    }

    pub fn is_lowering(&self) -> bool {
        self.i > self.j
    }

    pub fn is_cartan(&self) -> bool {
        self.i == self.j
    }

    pub fn check(&self, k: usize) -> Result<()> {
        if self.i >= k || self.j >= k {
            return Err(Error::IndexOutOfRange(format!("{self} with k = {k}")));
        }
        Ok(())
    }

    /// `[E_ij, E_kl] = delta_jk E_il - delta_li E_kj`.
    pub fn bracket(&self, other: &BasisElement) -> Vec<(i64, BasisElement)> {
        let mut out = Vec::with_capacity(2);
        if self.j == other.i {
            out.push((1, BasisElement::new(self.i, other.j)));
        }
        if other.j == self.i {
            out.push((-1, BasisElement::new(other.i, self.j)));
        }
        if out.len() == 2 && out[0].1 == out[1].1 {
            out.clear();
        }
        out
    }

    /// All `k^2` basis elements, lexicographic in `(i, j)`.
    pub fn all(k: usize) -> Vec<BasisElement> {
        (0..k)
            .flat_map(|i| (0..k).map(move |j| BasisElement::new(i, j)))
            .collect()
    }
}

impl TryFrom<(usize, usize)> for BasisElement {
    type Error = Error;

    fn try_from((i, j): (usize, usize)) -> Result<Self> {
        BasisElement::one_based(i, j)
    }
}

impl From<BasisElement> for (usize, usize) {
    fn from(e: BasisElement) -> Self {
        (e.i + 1, e.j + 1)
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{},{}]", self.i + 1, self.j + 1)
    }
}

pub fn act_on_poly(e: BasisElement, f: &Polynomial) -> Result<Polynomial> {
    e.check(f.k())?;
    let mut out = Polynomial::zero(f.k(), f.degree());
    for (nu, c) in f.terms() {
        let ni = nu.get(e.i);
        if ni == 0 {
            continue;
        }
        // x_j * d/dx_i x^nu = nu_i x^{nu - e_i + e_j}
        let target = nu.shifted(e.j, e.i).expect("nu_i > 0");
        out.add_term(target, -(c * scalar::int(i64::from(ni))));
    }
    Ok(out)
}

/// Image of a single metavariable: `Some((coefficient, index))`, or `None`
/// when the image vanishes.
pub fn act_on_metavariable(e: BasisElement, mu: &MultiIndex) -> Option<(u32, MultiIndex)> {
    if e.is_cartan() {
        let m = mu.get(e.i);
        return (m > 0).then(|| (m, mu.clone()));
    }
    mu.shifted(e.i, e.j).map(|nu| (mu.get(e.i) + 1, nu))
}

pub(crate) fn act_on_monomial(e: BasisElement, m: &MetaMonomial, c: &Scalar, out: &mut MetaExpr) {
    let k = out.k();
    if e.is_cartan() {
        let w = m.weight(k).coords()[e.i];
        if w != 0 {
            out.add_term(m.clone(), c * scalar::int(w));
        }
        return;
    }
    for (mu, mult) in m.grouped() {
        if let Some((coef, nu)) = act_on_metavariable(e, mu) {
            let s = c * scalar::int(i64::from(coef) * i64::from(mult));
            out.add_term(m.replace_one(mu, nu), s);
        }
    }
}

pub fn act_on_expr(e: BasisElement, m: &MetaExpr) -> Result<MetaExpr> {
    e.check(m.k())?;
    let mut out = MetaExpr::zero(m.d(), m.k());
    for (mono, c) in m.terms() {
        act_on_monomial(e, mono, c, &mut out);
    }
    Ok(out)
}

pub fn act_on_meta(e: BasisElement, m: &MetaPolynomial) -> Result<MetaPolynomial> {
    let delta = m.format().delta;
    act_on_expr(e, m.expr())?.into_homogeneous(delta)
}

/// Invertible `k x k` rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    rows: Matrix,
}

impl GroupElement {
    pub fn new(rows: Matrix) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::VariableCountMismatch {
                expected: k,
                found: rows.iter().map(Vec::len).find(|&l| l != k).unwrap_or(0),
            });
        }
        if linalg::determinant(&rows).is_zero() {
            return Err(Error::Singular);
        }
        Ok(GroupElement { rows })
    }

    pub fn identity(k: usize) -> Self {
        GroupElement {
            rows: linalg::identity(k),
        }
    }

    pub fn diagonal(t: &[Scalar]) -> Result<Self> {
        let mut rows = linalg::identity(t.len());
        for (i, x) in t.iter().enumerate() {
            rows[i][i] = x.clone();
        }
        GroupElement::new(rows)
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            rows: linalg::inverse(&self.rows).expect("checked invertible"),
        }
    }
}

/// `(g . f)(x) = f(g^-1 x)`.
pub fn act_group_on_poly(g: &GroupElement, f: &Polynomial) -> Result<Polynomial> {
    f.substitute_linear(g.inverse().rows())
}

/// `(g . Delta)(f) = Delta(f(g x))`: each `c_mu` becomes the coefficient of
/// `x^mu` in `sum_nu c_nu (g x)^nu`.
pub fn act_group_on_meta(g: &GroupElement, m: &MetaPolynomial) -> Result<MetaPolynomial> {
    let fmt = m.format();
    if g.k() != fmt.k {
        return Err(Error::VariableCountMismatch {
            expected: fmt.k,
            found: g.k(),
        });
    }
    let vars = fmt.metavariables();
    let mut images: std::collections::BTreeMap<MultiIndex, MetaExpr> = vars
        .iter()
        .map(|mu| (mu.clone(), MetaExpr::zero(fmt.d, fmt.k)))
        .collect();
    for nu in &vars {
        let expanded = Polynomial::monomial(nu.clone()).substitute_linear(g.rows())?;
        let c_nu = MetaMonomial::new(vec![nu.clone()]);
        for (mu, a) in expanded.terms() {
            images
                .get_mut(mu)
                .expect("same degree")
                .add_term(c_nu.clone(), a.clone());
        }
    }
    let mut out = MetaExpr::zero(fmt.d, fmt.k);
    for (mono, c) in m.terms() {
        let mut acc = MetaExpr::constant(fmt.d, fmt.k, c.clone());
        for mu in mono.factors() {
            acc = acc.mul(&images[mu]);
        }
        out.add_scaled(&acc, &Scalar::one());
    }
    out.into_homogeneous(fmt.delta)
}

/// Seeded random invertible integer matrix with entries in `[-bound, bound]`.
pub fn random_basis_change(k: usize, seed: u64, bound: i64) -> GroupElement {
    let bound = bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Matrix = (0..k)
            .map(|_| {
                (0..k)
                    .map(|_| scalar::int(rng.gen_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        if let Ok(g) = GroupElement::new(rows) {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meta::Format;
    use crate::scalar::{int, ratio};
    use crate::testutil::{random_meta, random_poly};
    use crate::text::parse_meta;
    use rand::Rng;

    fn p(s: &str) -> MetaPolynomial {
        parse_meta(s, None).unwrap()
    }

    fn e(i: usize, j: usize) -> BasisElement {
        BasisElement::one_based(i, j).unwrap()
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn poly_action_examples() {
        let x1sq = Polynomial::monomial(mi(&[2, 0, 0]));
        assert_eq!(
            act_on_poly(e(1, 1), &x1sq).unwrap(),
            x1sq.scale(&int(-2))
        );
        let x2sq = Polynomial::monomial(mi(&[0, 2]));
        assert!(act_on_poly(e(1, 2), &x2sq).unwrap().is_zero());
        assert_eq!(
            act_on_poly(e(2, 1), &x2sq).unwrap(),
            Polynomial::monomial(mi(&[1, 1])).scale(&int(-2))
        );
        let one = Polynomial::monomial(mi(&[0, 0]));
        assert!(act_on_poly(e(1, 2), &one).unwrap().is_zero());
    }

    #[test]
    fn meta_action_examples() {
        assert_eq!(
            act_on_meta(e(2, 1), &p("c[1,1]^2 + 2*c[0,2]*c[2,0]")).unwrap(),
            p("6*c[0,2]*c[1,1]")
        );
        assert_eq!(act_on_meta(e(1, 1), &p("c[3,0]^2")).unwrap(), p("6*c[3,0]^2"));
        let gamma = p("-c[1,1]^2 + 4*c[0,2]*c[2,0]");
        assert!(act_on_meta(e(1, 2), &gamma).unwrap().is_zero());
        assert!(act_on_meta(e(2, 1), &gamma).unwrap().is_zero());
        assert!(act_on_meta(e(3, 1), &gamma).is_err());
    }

    #[test]
    fn brackets() {
        assert_eq!(
            e(1, 2).bracket(&e(2, 1)),
            vec![(1, e(1, 1)), (-1, e(2, 2))]
        );
        assert!(e(1, 1).bracket(&e(1, 1)).is_empty());
        assert!(e(1, 2).bracket(&e(1, 2)).is_empty());
        assert_eq!(e(1, 1).bracket(&e(1, 2)), vec![(1, e(1, 2))]);
        assert_eq!(e(1, 2).bracket(&e(1, 1)), vec![(-1, e(1, 2))]);
    }

    #[test]
    fn bracket_relation_on_metapolynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let formats = [
            Format::new(2, 2, 2),
            Format::new(3, 2, 3),
            Format::new(2, 3, 2),
            Format::new(3, 3, 3),
            Format::new(2, 1, 3),
        ];
        for n in 0..50 {
            let fmt = formats[n % formats.len()];
            let m = random_meta(&mut rng, fmt);
            for a in BasisElement::all(fmt.k) {
                for b in BasisElement::all(fmt.k) {
                    let ab = act_on_meta(a, &act_on_meta(b, &m).unwrap()).unwrap();
                    let ba = act_on_meta(b, &act_on_meta(a, &m).unwrap()).unwrap();
                    let mut rhs = MetaPolynomial::zero(fmt);
                    for (s, c) in a.bracket(&b) {
                        rhs = rhs.add(&act_on_meta(c, &m).unwrap().scale(&int(s))).unwrap();
                    }
                    assert_eq!(ab.sub(&ba).unwrap(), rhs, "{a} {b} on {m}");
                }
            }
        }
    }

    #[test]
    fn weight_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fmt = Format::new(2, 2, 3);
        for mono in fmt.metamonomials() {
            let m = MetaPolynomial::monomial(fmt, mono.factors().to_vec()).unwrap();
            let w = mono.weight(3);
            let a = BasisElement::new(rng.gen_range(0..3), rng.gen_range(0..3));
            let out = act_on_meta(a, &m).unwrap();
            let mut shifted = w.coords().to_vec();
            shifted[a.i] += 1;
            shifted[a.j] -= 1;
            for (t, _) in out.terms() {
                assert_eq!(t.weight(3).coords(), &shifted[..]);
            }
        }
    }

    #[test]
    fn duality_with_polynomial_action() {
        // E.c_mu(f) = -c_mu(E.f) on linear metapolynomials, which pins the
        // relative sign of the two actions.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for fmt in [Format::new(1, 2, 2), Format::new(1, 3, 3), Format::new(1, 2, 3)] {
            for _ in 0..10 {
                let delta = random_meta(&mut rng, fmt);
                let f = random_poly(&mut rng, fmt.k, fmt.d);
                for a in BasisElement::all(fmt.k) {
                    let lhs = act_on_meta(a, &delta).unwrap().evaluate(&f).unwrap();
                    let rhs = -delta.evaluate(&act_on_poly(a, &f).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn derivation_duality_at_higher_meta_degree() {
        // Linear in the derivative: d/ds Delta(f - s E.f) at s = 0 equals
        // (E.Delta)(f). Exact check via a quadratic-in-s expansion.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let fmt = Format::new(2, 2, 2);
        for _ in 0..10 {
            let delta = random_meta(&mut rng, fmt);
            let f = random_poly(&mut rng, 2, 2);
            for a in BasisElement::all(2) {
                let ef = act_on_poly(a, &f).unwrap();
                let at = |s: i64| delta.evaluate(&f.add(&ef.scale(&int(-s))).unwrap()).unwrap();
                // Delta has meta-degree 2, so s -> at(s) is quadratic.
                let derivative = (at(1) - at(-1)) / int(2);
                assert_eq!(act_on_meta(a, &delta).unwrap().evaluate(&f).unwrap(), derivative);
            }
        }
    }

    #[test]
    fn group_action_identity_and_swap() {
        let disc = p("c[1,1]^2 - 4*c[2,0]*c[0,2]");
        assert_eq!(act_group_on_meta(&GroupElement::identity(2), &disc).unwrap(), disc);
        let swap = GroupElement::new(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(act_group_on_meta(&swap, &disc).unwrap(), disc);
    }

    #[test]
    fn diagonal_scales_by_weight() {
        let fmt = Format::new(2, 2, 3);
        let t = [int(2), ratio(1, 3), int(-5)];
        let g = GroupElement::diagonal(&t).unwrap();
        for mono in fmt.metamonomials() {
            let m = MetaPolynomial::monomial(fmt, mono.factors().to_vec()).unwrap();
            let mut factor = int(1);
            for (x, &w) in t.iter().zip(mono.weight(3).coords()) {
                for _ in 0..w {
                    factor *= x;
                }
            }
            assert_eq!(act_group_on_meta(&g, &m).unwrap(), m.scale(&factor));
        }
    }

    #[test]
    fn group_action_defining_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for fmt in [Format::new(2, 2, 2), Format::new(2, 2, 3), Format::new(3, 1, 3)] {
            for seed in 0..4 {
                let g = random_basis_change(fmt.k, seed, 2);
                let m = random_meta(&mut rng, fmt);
                let f = random_poly(&mut rng, fmt.k, fmt.d);
                let lhs = act_group_on_meta(&g, &m).unwrap().evaluate(&f).unwrap();
                let rhs = m
                    .evaluate(&act_group_on_poly(&g.inverse(), &f).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn group_and_algebra_agree_to_first_order() {
        // g(s) = I + s E_ij. For each metamonomial the image is a polynomial
        // in s of degree at most delta*d; its s-linear part is E_ij . m.
        let fmt = Format::new(2, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = random_meta(&mut rng, fmt);
        let n = (fmt.delta * fmt.d) as i64;
        for a in BasisElement::all(2) {
            // Sample s = 1..=n+1 and extract the linear coefficient by
            // Lagrange interpolation of the polynomial in s.
            let samples: Vec<(Scalar, MetaPolynomial)> = (1..=n + 1)
                .map(|s| {
                    let mut rows = linalg::identity(2);
                    rows[a.i][a.j] += int(s);
                    let g = GroupElement::new(rows).unwrap();
                    (int(s), act_group_on_meta(&g, &m).unwrap())
                })
                .collect();
            let mut linear = MetaPolynomial::zero(fmt);
            for (idx, (si, vi)) in samples.iter().enumerate() {
                // Coefficient of s^1 in the Lagrange basis polynomial L_idx.
                let others: Vec<&Scalar> = samples
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != idx)
                    .map(|(_, (s, _))| s)
                    .collect();
                let mut denom = int(1);
                for s in &others {
                    denom *= si - *s;
                }
                let mut prod_all = int(1);
                for s in &others {
                    prod_all *= -(*s).clone();
                }
                let mut lin = int(0);
                for s in &others {
                    lin += &prod_all / (-(*s).clone());
                }
                linear = linear.add(&vi.scale(&(lin / denom))).unwrap();
            }
            assert_eq!(linear, act_on_meta(a, &m).unwrap(), "{a}");
        }
    }

    #[test]
    fn random_basis_change_is_seeded() {
        let g1 = random_basis_change(3, 42, 2);
        let g2 = random_basis_change(3, 42, 2);
        assert_eq!(g1, g2);
        assert!(g1.rows().iter().flatten().all(|x| x.numer().magnitude() <= &2u32.into()));
        let one = random_basis_change(1, 7, 1);
        assert!(!one.rows()[0][0].is_zero());
    }

    #[test]
    fn singular_group_element_rejected() {
        assert!(GroupElement::new(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).is_err());
    }
}
