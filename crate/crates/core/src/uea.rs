//! Universal enveloping algebra of `gl_k`: noncommutative polynomials in the
//! matrix units, PBW normal forms, Casimir elements and central characters.
//!
//! A word `Y_1 Y_2 ... Y_m` acts as `Y_1.(Y_2.(...(Y_m . Delta)))`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::action::{act_on_expr, BasisElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::meta::{MetaExpr, MetaPolynomial};
use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<BasisElement>);

impl Word {
    pub fn new(letters: Vec<BasisElement>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[BasisElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, e) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Total order on the `k^2` basis elements used for PBW normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisOrder {
    k: usize,
    /// `sequence[r]` is the basis element at position `r`.
    sequence: Vec<BasisElement>,
    /// Position of `E_ij` at index `i * k + j`.
    position: Vec<u16>,
}

impl BasisOrder {
    /// Lexicographic in `(i, j)`.
    pub fn lex(k: usize) -> Self {
        BasisOrder::from_sequence(k, BasisElement::all(k)).expect("lex is a permutation")
    }

    pub fn from_sequence(k: usize, sequence: Vec<BasisElement>) -> Result<Self> {
        if sequence.len() != k * k {
            return Err(Error::OutOfRange(format!(
                "basis order lists {} elements, expected {}",
                sequence.len(),
                k * k
            )));
        }
        let mut position = vec![u16::MAX; k * k];
        for (r, e) in sequence.iter().enumerate() {
            e.check(k)?;
            let slot = &mut position[e.i * k + e.j];
            if *slot != u16::MAX {
                return Err(Error::OutOfRange(format!("{e} repeated in basis order")));
            }
            *slot = r as u16;
        }
        Ok(BasisOrder {
            k,
            sequence,
            position,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn position(&self, e: BasisElement) -> usize {
        self.position[e.i * self.k + e.j] as usize
    }

    pub fn element(&self, r: usize) -> BasisElement {
        self.sequence[r]
    }

    pub fn sequence(&self) -> &[BasisElement] {
        &self.sequence
    }

    pub fn is_ordered(&self, w: &Word) -> bool {
        w.0.windows(2)
            .all(|p| self.position(p[0]) <= self.position(p[1]))
    }
}

/// Exponents `i_1..i_K` of an ordered monomial `X_1^i_1 ... X_K^i_K` in a
/// fixed basis order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentTuple(Vec<u32>);

impl ExponentTuple {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentTuple(exponents)
    }

    pub fn zero(len: usize) -> Self {
        ExponentTuple(vec![0; len])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Exponents of an ordered word.
    pub fn from_word(order: &BasisOrder, w: &Word) -> Result<Self> {
        if !order.is_ordered(w) {
            return Err(Error::NotNormalized);
        }
        let mut v = vec![0; order.k * order.k];
        for &e in w.letters() {
            v[order.position(e)] += 1;
        }
        Ok(ExponentTuple(v))
    }

    pub fn to_word(&self, order: &BasisOrder) -> Word {
        let mut letters = Vec::with_capacity(self.total() as usize);
        for (r, &n) in self.0.iter().enumerate() {
            for _ in 0..n {
                letters.push(order.element(r));
            }
        }
        Word(letters)
    }
}

/// Element of `U(gl_k)` as a linear combination of words.
#[derive(Clone, PartialEq, Eq)]
pub struct UeaElement {
    k: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl UeaElement {
    pub fn zero(k: usize) -> Self {
        UeaElement {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, c: Scalar) -> Self {
        let mut e = UeaElement::zero(k);
        e.add_term(Word::empty(), c);
        e
    }

    pub fn one(k: usize) -> Self {
        UeaElement::constant(k, Scalar::one())
    }

    pub fn basis(k: usize, e: BasisElement) -> Result<Self> {
        e.check(k)?;
        let mut out = UeaElement::zero(k);
        out.add_term(Word(vec![e]), Scalar::one());
        Ok(out)
    }

    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Result<Self> {
        let mut out = UeaElement::zero(k);
        for (w, c) in terms {
            for e in w.letters() {
                e.check(k)?;
            }
            out.add_term(w, c);
        }
        Ok(out)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Length of the longest word with a nonzero coefficient.
    pub fn length(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_k(&self, other: &UeaElement) -> Result<()> {
        if self.k != other.k {
            return Err(Error::VariableCountMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UeaElement) -> Result<UeaElement> {
        self.check_k(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UeaElement) -> Result<UeaElement> {
        self.add(&other.scale(&scalar::int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> UeaElement {
        let mut out = UeaElement::zero(self.k);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// Product in the free algebra (concatenation); normalize afterwards
    /// when a PBW form is needed.
    pub fn mul(&self, other: &UeaElement) -> Result<UeaElement> {
        self.check_k(other)?;
        let mut out = UeaElement::zero(self.k);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn is_normalized(&self, order: &BasisOrder) -> bool {
        self.terms.keys().all(|w| order.is_ordered(w))
    }

    /// Coefficients `beta_i` of the ordered monomials `X^i`.
    pub fn pbw_coefficients(&self, order: &BasisOrder) -> Result<Vec<(ExponentTuple, Scalar)>> {
        self.terms
            .iter()
            .map(|(w, c)| Ok((ExponentTuple::from_word(order, w)?, c.clone())))
            .collect()
    }
}

impl fmt::Debug for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let neg = *c < Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}*{w}")?;
            }
        }
        Ok(())
    }
}

type Lin = BTreeMap<Vec<u16>, Scalar>;

fn lin_add(out: &mut Lin, w: Vec<u16>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match out.entry(w) {
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

/// Rewrites words into ordered monomials. `insert(x, w)` is the normal form
/// of `x * w` for an ordered `w`; results are memoized per call.
struct Normalizer<'a> {
    order: &'a BasisOrder,
    memo: HashMap<Vec<u16>, Lin>,
}

impl<'a> Normalizer<'a> {
    fn bracket(&self, a: u16, b: u16) -> Vec<(i64, u16)> {
        let x = self.order.element(a as usize);
        let y = self.order.element(b as usize);
        x.bracket(&y)
            .into_iter()
            .map(|(s, e)| (s, self.order.position(e) as u16))
            .collect()
    }

    fn insert(&mut self, x: u16, w: &[u16]) -> Lin {
        if w.first().is_none_or(|&y| x <= y) {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(x);
            v.extend_from_slice(w);
            return Lin::from([(v, Scalar::one())]);
        }
        let mut key = Vec::with_capacity(w.len() + 1);
        key.push(x);
        key.extend_from_slice(w);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let y = w[0];
        let rest = &w[1..];
        let mut out = Lin::new();
        // x y rest = y (x rest) + [x, y] rest
        for (u, c) in self.insert(x, rest) {
            for (v, c2) in self.insert(y, &u) {
                lin_add(&mut out, v, &c * c2);
            }
        }
        for (s, z) in self.bracket(x, y) {
            for (v, c2) in self.insert(z, rest) {
                lin_add(&mut out, v, c2 * scalar::int(s));
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    fn word(&mut self, w: &[u16]) -> Lin {
        let mut acc = Lin::from([(Vec::new(), Scalar::one())]);
        for &x in w.iter().rev() {
            let mut next = Lin::new();
            for (u, c) in acc {
                for (v, c2) in self.insert(x, &u) {
                    lin_add(&mut next, v, &c * c2);
                }
            }
            acc = next;
        }
        acc
    }
}

/// PBW normal form in the given basis order.
pub fn pbw_normalize_with(e: &UeaElement, order: &BasisOrder) -> Result<UeaElement> {
    if order.k != e.k {
        return Err(Error::VariableCountMismatch {
            expected: e.k,
            found: order.k,
        });
    }
    let mut nz = Normalizer {
        order,
        memo: HashMap::new(),
    };
    let mut total = Lin::new();
    for (w, c) in &e.terms {
        let pos: Vec<u16> = w.letters().iter().map(|&x| order.position(x) as u16).collect();
        for (v, c2) in nz.word(&pos) {
            lin_add(&mut total, v, c * c2);
        }
    }
    let mut out = UeaElement::zero(e.k);
    for (v, c) in total {
        out.add_term(
            Word(v.into_iter().map(|r| order.element(r as usize)).collect()),
            c,
        );
    }
    Ok(out)
}

/// PBW normal form in the lexicographic order on `(i, j)`.
pub fn pbw_normalize(e: &UeaElement) -> UeaElement {
    pbw_normalize_with(e, &BasisOrder::lex(e.k)).expect("orders agree")
}

/// `C_{l,p} = sum E_{i1 i2} E_{i2 i3} ... E_{ip i1}` over indices in `1..=l`,
/// as an element of `U(gl_k)`.
pub fn casimir_gz(k: usize, l: usize, p: usize) -> Result<UeaElement> {
    if l == 0 || l > k {
        return Err(Error::OutOfRange(format!("level {l} outside 1..={k}")));
    }
    if p == 0 || p > l {
        return Err(Error::OutOfRange(format!("p = {p} outside 1..={l}")));
    }
    let mut out = UeaElement::zero(k);
    let mut idx = vec![0usize; p];
    loop {
        let letters = (0..p)
            .map(|r| BasisElement::new(idx[r], idx[(r + 1) % p]))
            .collect();
        out.add_term(Word(letters), Scalar::one());
        let mut r = p;
        loop {
            if r == 0 {
                return Ok(out);
            }
            r -= 1;
            idx[r] += 1;
            if idx[r] < l {
                break;
            }
            idx[r] = 0;
        }
    }
}

/// `C_p` of `gl_k`.
pub fn casimir(k: usize, p: usize) -> Result<UeaElement> {
    if p == 0 || p > k {
        return Err(Error::OutOfRange(format!("p = {p} outside 1..={k}")));
    }
    casimir_gz(k, k, p)
}

fn apply_grouped(items: Vec<(&[BasisElement], &Scalar)>, m: &MetaExpr, out: &mut MetaExpr) {
    let mut groups: BTreeMap<BasisElement, Vec<(&[BasisElement], &Scalar)>> = BTreeMap::new();
    for (w, c) in items {
        match w.split_last() {
            None => out.add_scaled(m, c),
            Some((&last, prefix)) => groups.entry(last).or_default().push((prefix, c)),
        }
    }
    for (letter, sub) in groups {
        let next = act_on_expr(letter, m).expect("letters checked against k");
        if !next.is_zero() {
            apply_grouped(sub, &next, out);
        }
    }
}

/// Action on a possibly inhomogeneous metapolynomial. Words sharing a suffix
/// share the corresponding partial results.
pub fn apply_expr(e: &UeaElement, m: &MetaExpr) -> Result<MetaExpr> {
    if e.k != m.k() {
        return Err(Error::VariableCountMismatch {
            expected: m.k(),
            found: e.k,
        });
    }
    let mut out = MetaExpr::zero(m.d(), m.k());
    let items = e.terms.iter().map(|(w, c)| (w.letters(), c)).collect();
    apply_grouped(items, m, &mut out);
    Ok(out)
}

pub fn apply(e: &UeaElement, m: &MetaPolynomial) -> Result<MetaPolynomial> {
    apply_expr(e, m.expr())?.into_homogeneous(m.format().delta)
}

/// Eigenvalue of `C_p` on the irreducible representation of highest weight
/// `lambda`: the sum of all entries of `A^p`, where `A` has diagonal
/// `lambda_i + k - i`, `-1` above the diagonal and `0` below.
pub fn central_character(lambda: &[i64], p: usize) -> Result<Scalar> {
    let k = lambda.len();
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    if p == 0 || p > k {
        return Err(Error::OutOfRange(format!("p = {p} outside 1..={k}")));
    }
    let mut a = linalg::zeros(k, k);
    for i in 0..k {
        a[i][i] = scalar::int(lambda[i] + (k - 1 - i) as i64);
        for j in i + 1..k {
            a[i][j] = scalar::int(-1);
        }
    }
    let mut power = a.clone();
    for _ in 1..p {
        power = linalg::mat_mul(&power, &a);
    }
    Ok(power.into_iter().flatten().sum())
}

#[derive(Serialize, Deserialize)]
struct UeaTermJson {
    #[serde(with = "scalar::serde_text")]
    coef: Scalar,
    word: Word,
}

#[derive(Serialize, Deserialize)]
struct UeaJson {
    k: usize,
    terms: Vec<UeaTermJson>,
}

impl Serialize for UeaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        UeaJson {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| UeaTermJson {
                    coef: c.clone(),
                    word: w.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UeaElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = UeaJson::deserialize(d)?;
        UeaElement::from_terms(raw.k, raw.terms.into_iter().map(|t| (t.word, t.coef)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::act_on_meta;
    use crate::meta::Format;
    use crate::scalar::int;
    use crate::testutil::random_meta;
    use crate::text::parse_meta;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(i: usize, j: usize) -> BasisElement {
        BasisElement::one_based(i, j).unwrap()
    }

    fn word(k: usize, letters: &[BasisElement]) -> UeaElement {
        UeaElement::from_terms(k, [(Word::new(letters.to_vec()), int(1))]).unwrap()
    }

    fn random_element(rng: &mut impl Rng, k: usize, max_len: usize) -> UeaElement {
        let mut out = UeaElement::zero(k);
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(0..=max_len);
            let letters = (0..len)
                .map(|_| BasisElement::new(rng.gen_range(0..k), rng.gen_range(0..k)))
                .collect();
            out.add_term(Word::new(letters), int(rng.gen_range(-3..=3)));
        }
        out
    }

    #[test]
    fn commutator_of_e_and_f() {
        let ef = word(2, &[e(1, 2), e(2, 1)]);
        let fe = word(2, &[e(2, 1), e(1, 2)]);
        let n = pbw_normalize(&ef.sub(&fe).unwrap());
        let expect = word(2, &[e(1, 1)]).sub(&word(2, &[e(2, 2)])).unwrap();
        assert_eq!(n, expect);
    }

    #[test]
    fn ordered_words_are_fixed() {
        let w = word(3, &[e(1, 1), e(1, 3), e(2, 1), e(3, 3)]);
        assert_eq!(pbw_normalize(&w), w);
        let c = casimir(3, 2).unwrap();
        let n = pbw_normalize(&c);
        assert_eq!(pbw_normalize(&n), n);
    }

    #[test]
    fn h1_e_f_in_the_f_e_h1_h2_order() {
        // F = E21, E = E12, H1 = E11, H2 = E22. Since F E has weight zero it
        // commutes with H1, so no F E term survives.
        let (f, ee, h1, h2) = (e(2, 1), e(1, 2), e(1, 1), e(2, 2));
        let order = BasisOrder::from_sequence(2, vec![f, ee, h1, h2]).unwrap();
        let n = pbw_normalize_with(&word(2, &[h1, ee, f]), &order).unwrap();
        let expect = word(2, &[f, ee, h1])
            .add(&word(2, &[h1, h1]))
            .unwrap()
            .sub(&word(2, &[h1, h2]))
            .unwrap();
        assert_eq!(n, expect);
        assert!(n.is_normalized(&order));
    }

    #[test]
    fn normalization_preserves_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let formats = [Format::new(2, 2, 2), Format::new(2, 2, 3), Format::new(2, 1, 3)];
        for n in 0..50 {
            let fmt = formats[n % 3];
            let x = random_element(&mut rng, fmt.k, 4);
            let m = random_meta(&mut rng, fmt);
            let normal = pbw_normalize(&x);
            assert!(normal.is_normalized(&BasisOrder::lex(fmt.k)));
            assert_eq!(apply(&x, &m).unwrap(), apply(&normal, &m).unwrap());
        }
    }

    #[test]
    fn normalization_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let a = random_element(&mut rng, 3, 3);
            let b = random_element(&mut rng, 3, 3);
            let s = int(rng.gen_range(-3..=3));
            let lhs = pbw_normalize(&a.add(&b.scale(&s)).unwrap());
            let rhs = pbw_normalize(&a).add(&pbw_normalize(&b).scale(&s)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn casimir_shapes() {
        assert_eq!(
            casimir(2, 1).unwrap(),
            word(2, &[e(1, 1)]).add(&word(2, &[e(2, 2)])).unwrap()
        );
        let c2 = casimir(2, 2).unwrap();
        assert_eq!(c2.len(), 4);
        for w in [
            [e(1, 1), e(1, 1)],
            [e(1, 2), e(2, 1)],
            [e(2, 1), e(1, 2)],
            [e(2, 2), e(2, 2)],
        ] {
            assert_eq!(c2.coefficient(&Word::new(w.to_vec())), int(1));
        }
        assert_eq!(casimir(3, 1).unwrap().len(), 3);
        assert_eq!(casimir(3, 3).unwrap().len(), 27);
        assert_eq!(casimir_gz(3, 3, 2).unwrap(), casimir(3, 2).unwrap());
        assert_eq!(casimir_gz(3, 1, 1).unwrap(), word(3, &[e(1, 1)]));
        assert!(casimir(2, 3).is_err());
        assert!(casimir_gz(3, 2, 3).is_err());
    }

    #[test]
    fn embedded_gl2_casimir() {
        // C_{2,2} inside gl_3 acts on metapolynomials in x1, x2 alone like
        // the gl_2 Casimir.
        let c_embedded = casimir_gz(3, 2, 2).unwrap();
        let c2 = casimir(2, 2).unwrap();
        let small = parse_meta("c[1,1]^2 + 2*c[0,2]*c[2,0] - c[2,0]*c[1,1]", None).unwrap();
        let big = parse_meta("c[1,1,0]^2 + 2*c[0,2,0]*c[2,0,0] - c[2,0,0]*c[1,1,0]", None).unwrap();
        let lhs = apply(&c_embedded, &big).unwrap();
        let rhs = apply(&c2, &small).unwrap();
        let lifted: Vec<_> = rhs
            .terms()
            .map(|(m, c)| {
                (
                    c.clone(),
                    m.factors().iter().map(|mu| {
                        let mut v = mu.as_slice().to_vec();
                        v.push(0);
                        crate::index::MultiIndex::new(v)
                    }).collect(),
                )
            })
            .collect();
        assert_eq!(lhs, MetaPolynomial::from_terms(big.format(), lifted).unwrap());
    }

    #[test]
    fn casimir_examples_on_binary_quadrics() {
        let c2 = casimir(2, 2).unwrap();
        let delta = parse_meta("c[1,1]^2 + 2*c[0,2]*c[2,0]", None).unwrap();
        assert_eq!(apply(&c2, &delta).unwrap(), delta.scale(&int(20)));
        let gamma = parse_meta("-c[1,1]^2 + 4*c[0,2]*c[2,0]", None).unwrap();
        assert_eq!(apply(&c2, &gamma).unwrap(), gamma.scale(&int(8)));
        let ef = word(2, &[e(1, 2), e(2, 1)]);
        assert_eq!(apply(&ef, &delta).unwrap(), delta.scale(&int(6)));
    }

    #[test]
    fn casimir_on_product_of_squares() {
        let c2 = casimir(3, 2).unwrap();
        let delta = parse_meta("c[0,0,2]*c[0,2,0]*c[2,0,0]", None).unwrap();
        let expect = parse_meta(
            "2*c[0,2,0]*c[1,0,1]^2 + 2*c[0,0,2]*c[1,1,0]^2 + 2*c[0,1,1]^2*c[2,0,0] \
             + 24*c[0,0,2]*c[0,2,0]*c[2,0,0]",
            None,
        )
        .unwrap();
        assert_eq!(apply(&c2, &delta).unwrap(), expect);
    }

    #[test]
    fn casimirs_are_central() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for fmt in [Format::new(2, 2, 2), Format::new(2, 2, 3), Format::new(3, 1, 3)] {
            let m = random_meta(&mut rng, fmt);
            for p in 1..=fmt.k {
                let c = casimir(fmt.k, p).unwrap();
                for a in BasisElement::all(fmt.k) {
                    let lhs = apply(&c, &act_on_meta(a, &m).unwrap()).unwrap();
                    let rhs = act_on_meta(a, &apply(&c, &m).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn gz_generators_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let fmt = Format::new(2, 2, 3);
        let m = random_meta(&mut rng, fmt);
        let mut gens = Vec::new();
        for l in 1..=3 {
            for p in 1..=l {
                gens.push(casimir_gz(3, l, p).unwrap());
            }
        }
        for a in &gens {
            for b in &gens {
                let ab = apply(a, &apply(b, &m).unwrap()).unwrap();
                let ba = apply(b, &apply(a, &m).unwrap()).unwrap();
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn central_character_values() {
        assert_eq!(central_character(&[4, 0], 2).unwrap(), int(20));
        assert_eq!(central_character(&[2, 2], 2).unwrap(), int(8));
        assert_eq!(central_character(&[6, 0, 0], 2).unwrap(), int(48));
        assert_eq!(central_character(&[4, 2, 0], 2).unwrap(), int(28));
        assert_eq!(central_character(&[2, 2, 2], 2).unwrap(), int(12));
        assert_eq!(central_character(&[4, 0], 1).unwrap(), int(4));
        assert!(central_character(&[0, 1], 1).is_err());
        assert!(central_character(&[1, 0], 3).is_err());
    }

    #[test]
    fn quadratic_character_closed_form() {
        // For gl_3: chi(C_2) = sum_i (lambda_i + 4 - 2i)^2 - 2, derived from
        // the sum of entries of A^2 with diagonal lambda_i + 3 - i.
        for lambda in crate::rep::enumerate_partitions(7, 3) {
            let l = lambda.padded(3).unwrap();
            let closed = (l[0] + 1).pow(2) + l[1].pow(2) + (l[2] - 1).pow(2) - 2;
            assert_eq!(central_character(&l, 2).unwrap(), int(closed));
        }
    }

    #[test]
    fn exponent_tuples() {
        let order = BasisOrder::lex(2);
        let w = Word::new(vec![e(1, 1), e(1, 2), e(1, 2), e(2, 2)]);
        let t = ExponentTuple::from_word(&order, &w).unwrap();
        assert_eq!(t.exponents(), &[1, 2, 0, 1]);
        assert_eq!(t.to_word(&order), w);
        let bad = Word::new(vec![e(2, 2), e(1, 1)]);
        assert!(matches!(ExponentTuple::from_word(&order, &bad), Err(Error::NotNormalized)));
    }

    #[test]
    fn json_round_trip() {
        let c = casimir(2, 2).unwrap().scale(&crate::scalar::ratio(-1, 3));
        let js = serde_json::to_string(&c).unwrap();
        assert!(js.starts_with("{\"k\":2,\"terms\":[{\"coef\":\"-1/3\",\"word\":[[1,1],[1,1]]}"));
        let back: UeaElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<UeaElement>(r#"{"k":2,"terms":[{"coef":"1","word":[[3,1]]}]}"#).is_err());
        assert!(serde_json::from_str::<UeaElement>(r#"{"k":2,"terms":[{"coef":"1","word":[[0,1]]}]}"#).is_err());
    }
}
