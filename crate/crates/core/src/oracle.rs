//! Brute-force decompositions of a format space by exact linear algebra.
//!
//! Nothing here uses Casimir elements or interpolation: weight spaces come
//! from the diagonal operators `E_ii`, highest weight vectors are kernels of
//! the raising operators, isotypic components are closures of highest
//! weight vectors under lowering operators, and tableau components intersect
//! the `gl_l`-isotypic components of the chain `gl_1 < ... < gl_k`.
//! Projections are taken along the other components of the same family.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::action::BasisElement;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::meta::{Format, MetaMonomial, MetaPolynomial};
use crate::projector::Target;
use crate::rep::{self, Partition, SemistandardTableau, Weight};
use crate::scalar::Scalar;
use crate::uea::{apply, UeaElement};

pub const DEFAULT_DIM_CAP: usize = 5000;

/// Largest format space dimension the oracle accepts; `ISOTYPICA_DIM_CAP`
/// overrides the default.
pub fn dim_cap() -> usize {
    std::env::var("ISOTYPICA_DIM_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

fn checked_basis(format: Format) -> Result<Vec<MetaMonomial>> {
    checked_basis_with(format, dim_cap())
}

fn checked_basis_with(format: Format, cap: usize) -> Result<Vec<MetaMonomial>> {
    let basis = format.metamonomials();
    if basis.len() > cap {
        return Err(Error::DimensionCap {
            dim: basis.len(),
            cap,
        });
    }
    Ok(basis)
}

/// Matrix of an operator on the metamonomial basis; column `j` holds the
/// image of `basis[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMatrix {
    pub format: Format,
    pub basis: Vec<MetaMonomial>,
    pub matrix: Matrix,
}

impl ActionMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn apply_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        linalg::mat_vec(&self.matrix, v)
    }

    pub fn apply(&self, m: &MetaPolynomial) -> Result<MetaPolynomial> {
        if m.format() != self.format {
            return Err(Error::FormatMismatch {
                expected: self.format,
                found: m.format(),
            });
        }
        let v = self.apply_vector(&m.to_vector(&self.basis));
        Ok(MetaPolynomial::from_vector(self.format, &self.basis, &v))
    }

    pub fn is_diagonal(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    pub fn commutes_with(&self, other: &ActionMatrix) -> bool {
        linalg::mat_mul(&self.matrix, &other.matrix) == linalg::mat_mul(&other.matrix, &self.matrix)
    }
}

pub fn build_action_matrix(e: &UeaElement, format: Format) -> Result<ActionMatrix> {
    if e.k() != format.k {
        return Err(Error::VariableCountMismatch {
            expected: format.k,
            found: e.k(),
        });
    }
    let basis = checked_basis(format)?;
    let n = basis.len();
    let mut matrix = linalg::zeros(n, n);
    for (j, m) in basis.iter().enumerate() {
        let image = apply(e, &MetaPolynomial::monomial(format, m.factors().to_vec())?)?;
        for (i, b) in basis.iter().enumerate() {
            matrix[i][j] = image.coefficient(b);
        }
    }
    Ok(ActionMatrix {
        format,
        basis,
        matrix,
    })
}

/// Basis of `ker(M - c)`; empty when `c` is not an eigenvalue.
pub fn eigenspace(m: &ActionMatrix, c: &Scalar) -> Vec<Vec<Scalar>> {
    linalg::kernel(&shifted(m, c), m.dim())
}

fn shifted(m: &ActionMatrix, c: &Scalar) -> Matrix {
    let mut a = m.matrix.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= c;
    }
    a
}

/// Projection onto `ker(M - c)` along `im(M - c)`. For diagonalizable `M`
/// the image is the sum of the other eigenspaces. Zero when `c` is not an
/// eigenvalue.
pub fn eigenprojection(m: &ActionMatrix, c: &Scalar) -> Result<Matrix> {
    let n = m.dim();
    let ker = eigenspace(m, c);
    if ker.is_empty() {
        return Ok(linalg::zeros(n, n));
    }
    let a = shifted(m, c);
    let (r, _) = linalg::rref(&linalg::transpose(&a));
    let family = Family::new(vec![0usize, 1], vec![ker, r])?;
    Ok(family.projection_matrix(0))
}

/// Growing subspace kept in reduced echelon form.
#[derive(Clone, Debug, Default)]
pub struct Span {
    reduced: Vec<(usize, Vec<Scalar>)>,
    originals: Vec<Vec<Scalar>>,
}

impl Span {
    pub fn new() -> Span {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.originals.len()
    }

    /// The inserted vectors that turned out independent.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.originals
    }

    pub fn into_basis(self) -> Vec<Vec<Scalar>> {
        self.originals
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.reduced {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; false when it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[p].clone();
        for x in r.iter_mut() {
            *x /= &lead;
        }
        for (_, row) in self.reduced.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.reduced.push((p, r));
        self.originals.push(v.to_vec());
        true
    }
}

/// Complementary subspaces with labels; projects along the other members.
#[derive(Clone, Debug)]
pub struct Family<L> {
    labels: Vec<L>,
    blocks: Vec<Vec<Vec<Scalar>>>,
    offsets: Vec<usize>,
    inverse: Matrix,
}

impl<L: PartialEq + Clone> Family<L> {
    /// Fails unless the blocks together form a basis of the whole space.
    pub fn new(labels: Vec<L>, blocks: Vec<Vec<Vec<Scalar>>>) -> Result<Family<L>> {
        let n = blocks.iter().flatten().next().map_or(0, Vec::len);
        let cols: Vec<&Vec<Scalar>> = blocks.iter().flatten().collect();
        if cols.len() != n || n == 0 {
            return Err(Error::Singular);
        }
        let mut aug = linalg::zeros(n, 2 * n);
        for i in 0..n {
            for (j, col) in cols.iter().enumerate() {
                aug[i][j] = col[i].clone();
            }
            aug[i][n + i] = Scalar::one();
        }
        let (r, pivots) = linalg::rref(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let inverse = r.into_iter().map(|row| row[n..].to_vec()).collect();
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut acc = 0;
        for b in &blocks {
            offsets.push(acc);
            acc += b.len();
        }
        offsets.push(acc);
        Ok(Family {
            labels,
            blocks,
            offsets,
            inverse,
        })
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, label: &L) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn block(&self, a: usize) -> &[Vec<Scalar>] {
        &self.blocks[a]
    }

    pub fn get(&self, label: &L) -> Option<&[Vec<Scalar>]> {
        self.position(label).map(|a| self.block(a))
    }

    pub fn dim(&self) -> usize {
        self.inverse.len()
    }

    pub fn project_vector(&self, a: usize, v: &[Scalar]) -> Vec<Scalar> {
        let coords = linalg::mat_vec(&self.inverse, v);
        let mut out = vec![Scalar::zero(); v.len()];
        for (b, c) in self.blocks[a].iter().zip(&coords[self.offsets[a]..self.offsets[a + 1]]) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        out
    }

    pub fn projection_matrix(&self, a: usize) -> Matrix {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            cols.push(self.project_vector(a, &e));
        }
        linalg::transpose(&cols)
    }
}

/// All brute-force components of one format space.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub format: Format,
    pub basis: Vec<MetaMonomial>,
    pub weights: Family<Weight>,
    pub isotypic: Family<Partition>,
    /// Highest weight vectors per occurring type.
    pub highest: Vec<(Partition, Vec<Vec<Scalar>>)>,
    pub tableaux: Family<SemistandardTableau>,
    /// Multiplicity of each occurring type.
    pub multiplicities: Vec<(Partition, usize)>,
}

struct Operators {
    n: usize,
    k: usize,
    /// Matrix of `E_ij` at `[i * k + j]`.
    e: Vec<Matrix>,
    /// `E_ii` eigenvalue of each basis vector.
    weights: Vec<Vec<i64>>,
}

impl Operators {
    fn build(format: Format) -> Result<Operators> {
        let k = format.k;
        let mut e = Vec::with_capacity(k * k);
        for be in BasisElement::all(k) {
            e.push(build_action_matrix(&UeaElement::basis(k, be)?, format)?.matrix);
        }
        let n = e.first().map_or(0, Vec::len);
        let mut weights = vec![vec![0i64; k]; n];
        for i in 0..k {
            let m = &e[i * k + i];
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if r != c && !x.is_zero() {
                        return Err(Error::OutOfRange("E_ii is not diagonal".into()));
                    }
                }
                if !row[r].is_integer() {
                    return Err(Error::OutOfRange("non-integral weight".into()));
                }
                weights[r][i] = i64::try_from(row[r].to_integer()).expect("small weight");
            }
        }
        Ok(Operators { n, k, e, weights })
    }

    fn get(&self, i: usize, j: usize) -> &Matrix {
        &self.e[i * self.k + j]
    }

    /// Unit vectors whose `gl_l` weight (first `l` coordinates) equals `nu`.
    fn weight_space(&self, nu: &[i64]) -> Vec<usize> {
        (0..self.n)
            .filter(|&r| self.weights[r][..nu.len()] == *nu)
            .collect()
    }

    /// `gl_l` highest weight vectors of `gl_l` weight `nu`, `l = nu.len()`.
    fn highest(&self, nu: &[i64]) -> Vec<Vec<Scalar>> {
        let l = nu.len();
        let cols = self.weight_space(nu);
        if cols.is_empty() {
            return Vec::new();
        }
        let mut stacked: Matrix = Vec::new();
        for i in 0..l {
            for j in i + 1..l {
                for row in self.get(i, j) {
                    let r: Vec<Scalar> = cols.iter().map(|&c| row[c].clone()).collect();
                    if r.iter().any(|x| !x.is_zero()) {
                        stacked.push(r);
                    }
                }
            }
        }
        linalg::kernel(&stacked, cols.len())
            .into_iter()
            .map(|x| {
                let mut v = vec![Scalar::zero(); self.n];
                for (&c, val) in cols.iter().zip(x) {
                    v[c] = val;
                }
                v
            })
            .collect()
    }

    /// Smallest subspace containing `seeds` and stable under the lowering
    /// operators of `gl_l`.
    fn lowering_closure(&self, seeds: &[Vec<Scalar>], l: usize) -> Vec<Vec<Scalar>> {
        let mut span = Span::new();
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for s in seeds {
            if span.insert(s) {
                queue.push(s.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..l {
                for j in 0..i {
                    let w = linalg::mat_vec(self.get(i, j), &v);
                    if span.insert(&w) {
                        queue.push(w);
                    }
                }
            }
        }
        span.into_basis()
    }

    fn isotypic(&self, nu: &[i64]) -> Vec<Vec<Scalar>> {
        self.lowering_closure(&self.highest(nu), nu.len())
    }
}

/// Basis of the intersection of two subspaces.
pub fn intersect(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    let m: Matrix = (0..n)
        .map(|i| {
            a.iter()
                .map(|v| v[i].clone())
                .chain(b.iter().map(|v| -v[i].clone()))
                .collect()
        })
        .collect();
    let mut span = Span::new();
    for x in linalg::kernel(&m, a.len() + b.len()) {
        let mut v = vec![Scalar::zero(); n];
        for (coef, col) in x.iter().zip(a) {
            if coef.is_zero() {
                continue;
            }
            for (y, z) in v.iter_mut().zip(col) {
                *y += coef * z;
            }
        }
        span.insert(&v);
    }
    span.into_basis()
}

fn unit(n: usize, r: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[r] = Scalar::one();
    v
}

pub fn brute_decompose(format: Format) -> Result<Decomposition> {
    let basis = checked_basis(format)?;
    let ops = Operators::build(format)?;
    let n = ops.n;
    let k = format.k;

    let mut by_weight: BTreeMap<Vec<i64>, Vec<Vec<Scalar>>> = BTreeMap::new();
    for r in 0..n {
        by_weight.entry(ops.weights[r].clone()).or_default().push(unit(n, r));
    }
    let (wl, wb): (Vec<Weight>, Vec<_>) = by_weight
        .into_iter()
        .rev()
        .map(|(w, b)| (Weight::new(w), b))
        .unzip();
    let weights = Family::new(wl, wb)?;

    let mut highest = Vec::new();
    let mut iso_labels = Vec::new();
    let mut iso_blocks = Vec::new();
    let mut multiplicities = Vec::new();
    for lambda in rep::enumerate_partitions(format.weight_total(), k) {
        let padded = lambda.padded(k)?;
        let hw = ops.highest(&padded);
        if hw.is_empty() {
            continue;
        }
        multiplicities.push((lambda.clone(), hw.len()));
        iso_blocks.push(ops.lowering_closure(&hw, k));
        iso_labels.push(lambda.clone());
        highest.push((lambda, hw));
    }
    let isotypic = Family::new(iso_labels, iso_blocks)?;

    let mut level_cache: BTreeMap<Vec<i64>, Vec<Vec<Scalar>>> = BTreeMap::new();
    let mut t_labels = Vec::new();
    let mut t_blocks = Vec::new();
    for (lambda, _) in &multiplicities {
        let top = isotypic.get(lambda).expect("listed type").to_vec();
        for t in rep::enumerate_tableaux(lambda, k) {
            let pattern = rep::tableau_to_pattern(&t, k)?;
            let mut comp = top.clone();
            for l in 1..k {
                let nu: Vec<i64> = pattern.levels()[l - 1].iter().map(|&x| i64::from(x)).collect();
                let piece = level_cache.entry(nu.clone()).or_insert_with(|| ops.isotypic(&nu));
                comp = intersect(&comp, piece);
                if comp.is_empty() {
                    break;
                }
            }
            if !comp.is_empty() {
                t_labels.push(t);
                t_blocks.push(comp);
            }
        }
    }
    let tableaux = Family::new(t_labels, t_blocks)?;

    Ok(Decomposition {
        format,
        basis,
        weights,
        isotypic,
        highest,
        tableaux,
        multiplicities,
    })
}

impl Decomposition {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_meta(&self, v: &[Scalar]) -> MetaPolynomial {
        MetaPolynomial::from_vector(self.format, &self.basis, v)
    }

    pub fn polys(&self, vs: &[Vec<Scalar>]) -> Vec<MetaPolynomial> {
        vs.iter().map(|v| self.to_meta(v)).collect()
    }

    pub fn highest_weight_vectors(&self, lambda: &Partition) -> &[Vec<Scalar>] {
        self.highest
            .iter()
            .find(|(l, _)| l == lambda)
            .map_or(&[], |(_, b)| b.as_slice())
    }

    /// Component of `m` for `target`; zero for targets absent from the space.
    pub fn project(&self, target: &Target, m: &MetaPolynomial) -> Result<MetaPolynomial> {
        if m.format() != self.format {
            return Err(Error::FormatMismatch {
                expected: self.format,
                found: m.format(),
            });
        }
        let v = m.to_vector(&self.basis);
        let zero = MetaPolynomial::zero(self.format);
        let out = match target {
            Target::Weight(w) => match self.weights.position(w) {
                Some(a) => self.weights.project_vector(a, &v),
                None => return Ok(zero),
            },
            Target::Isotypic(l) => match self.isotypic.position(l) {
                Some(a) => self.isotypic.project_vector(a, &v),
                None => return Ok(zero),
            },
            Target::HighestWeight(l) => {
                let (Some(a), Ok(w)) = (self.isotypic.position(l), l.to_weight(self.format.k)) else {
                    return Ok(zero);
                };
                let Some(b) = self.weights.position(&w) else {
                    return Ok(zero);
                };
                let iso = self.isotypic.project_vector(a, &v);
                self.weights.project_vector(b, &iso)
            }
            Target::TIsotypic(t) => match self.tableaux.position(t) {
                Some(a) => self.tableaux.project_vector(a, &v),
                None => return Ok(zero),
            },
        };
        Ok(self.to_meta(&out))
    }

    /// Scalar by which `u` acts on the `lambda`-isotypic component, if it
    /// acts by a scalar there.
    pub fn eigenvalue_on(&self, u: &UeaElement, lambda: &Partition) -> Result<Option<Scalar>> {
        let Some(block) = self.isotypic.get(lambda) else {
            return Ok(None);
        };
        let m = build_action_matrix(u, self.format)?;
        let mut value: Option<Scalar> = None;
        for v in block {
            let w = m.apply_vector(v);
            let r = v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
            let c = &w[r] / &v[r];
            if w.iter().zip(v).any(|(a, b)| *a != &c * b) {
                return Ok(None);
            }
            match &value {
                Some(prev) if *prev != c => return Ok(None),
                _ => value = Some(c),
            }
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::scalar::int;
    use crate::testutil::random_meta;
    use crate::text::parse_meta;
    use crate::uea::{casimir, casimir_gz, central_character};

    fn part(v: &[i64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cartan_matrix_is_diagonal_weight() {
        let fmt = Format::new(2, 3, 2);
        let e11 = UeaElement::basis(2, BasisElement::new(0, 0)).unwrap();
        let m = build_action_matrix(&e11, fmt).unwrap();
        assert!(m.is_diagonal());
        for (j, b) in m.basis.iter().enumerate() {
            assert_eq!(m.matrix[j][j], int(b.weight(2).coords()[0]));
        }
    }

    #[test]
    fn first_casimir_is_scalar() {
        for fmt in [Format::new(2, 2, 2), Format::new(3, 2, 3), Format::new(2, 3, 2)] {
            let m = build_action_matrix(&casimir(fmt.k, 1).unwrap(), fmt).unwrap();
            let n = m.dim();
            let mut expected = linalg::identity(n);
            for (i, row) in expected.iter_mut().enumerate() {
                row[i] = int(i64::from(fmt.weight_total()));
            }
            assert_eq!(m.matrix, expected);
        }
        let z = build_action_matrix(&UeaElement::zero(2), Format::new(2, 2, 2)).unwrap();
        assert!(linalg::is_zero_matrix(&z.matrix));
    }

    #[test]
    fn second_casimir_eigenspaces_on_binary_quadrics() {
        let fmt = Format::new(2, 2, 2);
        let m = build_action_matrix(&casimir(2, 2).unwrap(), fmt).unwrap();
        let e8 = eigenspace(&m, &int(8));
        assert_eq!(e8.len(), 1);
        let v = MetaPolynomial::from_vector(fmt, &m.basis, &e8[0]);
        let gamma = parse_meta("-c[1,1]^2 + 4*c[0,2]*c[2,0]", None).unwrap();
        assert_eq!(v.primitive(), gamma.primitive());
        assert!(eigenspace(&m, &int(7)).is_empty());
        let p = eigenprojection(&m, &int(8)).unwrap();
        assert_eq!(linalg::mat_mul(&p, &p), p);
        assert_eq!(linalg::rank(&p), 1);
        assert!(linalg::is_zero_matrix(&eigenprojection(&m, &int(7)).unwrap()));
    }

    #[test]
    fn top_type_eigenspace_matches_tableau_count() {
        let fmt = Format::new(3, 2, 3);
        let m = build_action_matrix(&casimir(3, 2).unwrap(), fmt).unwrap();
        let dim = eigenspace(&m, &int(48)).len();
        assert_eq!(dim, rep::enumerate_tableaux(&part(&[6]), 3).len());
    }

    #[test]
    fn ternary_quadric_cubics() {
        let dec = brute_decompose(Format::new(3, 2, 3)).unwrap();
        let types: Vec<Partition> = dec.isotypic.labels().to_vec();
        assert_eq!(types, vec![part(&[6]), part(&[4, 2]), part(&[2, 2, 2])]);
        let hw = dec.highest_weight_vectors(&part(&[2, 2, 2]));
        assert_eq!(hw.len(), 1);
        let expected = parse_meta(
            "4*c[2,0,0]*c[0,2,0]*c[0,0,2] - c[0,0,2]*c[1,1,0]^2 + c[1,0,1]*c[1,1,0]*c[0,1,1] \
             - c[0,2,0]*c[1,0,1]^2 - c[2,0,0]*c[0,1,1]^2",
            None,
        )
        .unwrap();
        assert_eq!(dec.to_meta(&hw[0]).primitive(), expected.primitive());
        let mult: Vec<usize> = dec.multiplicities.iter().map(|(_, m)| *m).collect();
        assert_eq!(mult, vec![1, 1, 1]);
    }

    #[test]
    fn binary_cubic_weight_dimensions() {
        let dec = brute_decompose(Format::new(2, 3, 2)).unwrap();
        let dims: Vec<usize> = (0..dec.weights.len()).map(|a| dec.weights.block(a).len()).collect();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 1, 1]);
        assert_eq!(dec.weights.labels()[0], Weight::new(vec![6, 0]));
    }

    #[test]
    fn families_are_complete() {
        for fmt in [Format::new(2, 2, 2), Format::new(3, 2, 3), Format::new(2, 3, 2)] {
            let dec = brute_decompose(fmt).unwrap();
            let n = dec.dim();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let m = random_meta(&mut rng, fmt);
            let v = m.to_vector(&dec.basis);
            for total in [
                (0..dec.weights.len()).map(|a| dec.weights.project_vector(a, &v)).collect::<Vec<_>>(),
                (0..dec.isotypic.len()).map(|a| dec.isotypic.project_vector(a, &v)).collect(),
                (0..dec.tableaux.len()).map(|a| dec.tableaux.project_vector(a, &v)).collect(),
            ] {
                let mut sum = vec![Scalar::zero(); n];
                for p in total {
                    for (x, y) in sum.iter_mut().zip(p) {
                        *x += y;
                    }
                }
                assert_eq!(sum, v);
            }
        }
    }

    #[test]
    fn casimir_matrices_commute() {
        let fmt = Format::new(3, 2, 3);
        let mut mats = Vec::new();
        for p in 1..=3 {
            mats.push(build_action_matrix(&casimir(3, p).unwrap(), fmt).unwrap());
        }
        for l in 1..=2 {
            for p in 1..=l {
                mats.push(build_action_matrix(&casimir_gz(3, l, p).unwrap(), fmt).unwrap());
            }
        }
        for a in &mats {
            for b in &mats {
                assert!(a.commutes_with(b));
            }
        }
    }

    #[test]
    fn central_characters_agree_with_eigenvalues() {
        for fmt in [Format::new(2, 2, 2), Format::new(3, 2, 3), Format::new(2, 3, 2)] {
            let dec = brute_decompose(fmt).unwrap();
            for lambda in dec.isotypic.labels() {
                for p in 1..=fmt.k {
                    let got = dec.eigenvalue_on(&casimir(fmt.k, p).unwrap(), lambda).unwrap();
                    let want = central_character(&lambda.padded(fmt.k).unwrap(), p).unwrap();
                    assert_eq!(got, Some(want), "{lambda} p={p}");
                }
            }
        }
    }

    #[test]
    fn tableau_components_have_type_multiplicity() {
        let dec = brute_decompose(Format::new(3, 2, 3)).unwrap();
        assert_eq!(dec.tableaux.len(), 28 + 27 + 1);
        for t in dec.tableaux.labels() {
            assert_eq!(dec.tableaux.get(t).unwrap().len(), 1);
        }
    }

    #[test]
    fn dimension_cap() {
        let r = checked_basis_with(Format::new(2, 2, 2), 3);
        assert!(matches!(r, Err(Error::DimensionCap { dim: 6, cap: 3 })));
        assert_eq!(checked_basis_with(Format::new(2, 2, 2), 6).unwrap().len(), 6);
    }
}
