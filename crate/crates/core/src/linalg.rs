//! Exact dense linear algebra over the rationals.
//!
//! Elimination is fraction-free: rows are cleared to integers and reduced
//! with Bareiss' algorithm, so intermediate entries stay bounded by minors
//! of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = zeros(n, m);
    for (i, row) in a.iter().enumerate() {
        for (l, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[l].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Scales a rational row to a primitive integer row.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in row {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Bareiss forward elimination. Returns the echelon rows (integers) and the
/// pivot columns. The sign of row swaps is tracked for the determinant.
fn bareiss(rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, bool) {
    let mut a = rows;
    let n = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        for i in r + 1..n {
            let f = a[i][c].clone();
            if f.is_zero() {
                for j in c..cols {
                    let v = &a[i][j] * &a[r][c];
                    a[i][j] = v / &prev;
                }
                continue;
            }
            for j in c..cols {
                let v = &a[i][j] * &a[r][c] - &f * &a[r][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots, negate)
}

/// Reduced row echelon form: nonzero rows with unit pivots, and the pivot
/// columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let cols = m.first().map_or(0, Vec::len);
    let rows: Vec<Vec<BigInt>> = m.iter().map(|r| integer_row(r)).collect();
    let (ech, pivots, _) = bareiss(rows, cols);
    let mut out: Matrix = ech
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = Scalar::from_integer(row[p].clone());
            row.into_iter()
                .map(|x| Scalar::from_integer(x) / &lead)
                .collect()
        })
        .collect();
    for r in (0..out.len()).rev() {
        let p = pivots[r];
        let pivot_row = out[r].clone();
        for other in out.iter_mut().take(r) {
            let f = other[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in other.iter_mut().zip(&pivot_row).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    (out, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let rows: Vec<Vec<BigInt>> = m.iter().map(|r| integer_row(r)).collect();
    bareiss(rows, cols).1.len()
}

/// Basis of the right kernel `{v : m v = 0}` for a matrix with `cols`
/// columns (needed when `m` has no rows).
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn determinant(m: &Matrix) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut scale = Scalar::one();
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let mut den = BigInt::one();
            for x in row {
                den = den.lcm(x.denom());
            }
            scale /= Scalar::from_integer(den.clone());
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    let (ech, pivots, negate) = bareiss(rows, n);
    if pivots.len() < n {
        return Scalar::zero();
    }
    let det = Scalar::from_integer(ech[n - 1][n - 1].clone()) * scale;
    if negate {
        -det
    } else {
        det
    }
}

/// Inverse through the adjugate: `inv[j][i] = (-1)^(i+j) det(minor(i,j)) / det`.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let det = determinant(m);
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let mut inv = zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor: Matrix = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let cof = determinant(&minor);
            inv[j][i] = if (i + j) % 2 == 0 { cof } else { -cof } / &det;
        }
    }
    Ok(inv)
}

/// Solves `basis^T x = v` where `basis` lists linearly independent vectors;
/// returns `None` when `v` is outside their span.
pub fn coordinates(basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = v.len();
    let b = basis.len();
    let aug: Matrix = (0..n)
        .map(|i| {
            let mut row: Vec<Scalar> = basis.iter().map(|col| col[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&b) {
        return None;
    }
    let mut x = vec![Scalar::zero(); b];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[b].clone();
    }
    Some(x)
}

pub fn is_zero_matrix(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

pub fn max_abs_entry(m: &Matrix) -> Scalar {
    m.iter()
        .flatten()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Scalar::zero)
}
