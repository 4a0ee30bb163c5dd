//! Weights, partitions, semistandard tableaux and Gelfand-Tsetlin patterns.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::compositions;
use crate::meta::{Format, MetaPolynomial};

/// Integer weight of `gl_k`, identified with its `k` coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Checks that this can be the weight of a metamonomial of `format`.
    pub fn validate_for(&self, format: Format) -> Result<()> {
        let ok = self.0.len() == format.k
            && self.0.iter().all(|&x| x >= 0)
            && self.total() == i64::from(format.weight_total());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidWeight {
                weight: self.0.clone(),
                format,
            })
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_str("(")?;
    for (n, x) in items.enumerate() {
        if n > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// Integer partition; trailing zeros are dropped on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a negative part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(
            parts
                .into_iter()
                .filter(|&p| p > 0)
                .map(|p| u32::try_from(p).expect("part fits in u32"))
                .collect(),
        ))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `lambda_j` (0-based), zero beyond the length.
    pub fn get(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// The partition as a `k`-tuple padded with zeros.
    pub fn padded(&self, k: usize) -> Result<Vec<i64>> {
        if self.len() > k {
            return Err(Error::InvalidPartition(format!("{self} has more than {k} parts")));
        }
        Ok((0..k).map(|j| i64::from(self.get(j))).collect())
    }

    pub fn to_weight(&self, k: usize) -> Result<Weight> {
        Ok(Weight::new(self.padded(k)?))
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Self {
        p.0.into_iter().map(i64::from).collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

/// Semistandard Young tableau with entries in `1..=k` (rows of the shape).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct SemistandardTableau {
    rows: Vec<Vec<u32>>,
}

impl SemistandardTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let rows: Vec<Vec<u32>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        for (r, row) in rows.iter().enumerate() {
            if row.contains(&0) {
                return Err(Error::NotSemistandard(format!("row {} has entry 0", r + 1)));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::NotSemistandard(format!("row {} decreases", r + 1)));
            }
            if r > 0 {
                let above = &rows[r - 1];
                if row.len() > above.len() {
                    return Err(Error::NotSemistandard(format!(
                        "row {} is longer than the row above",
                        r + 1
                    )));
                }
                if row.iter().zip(above).any(|(b, a)| b <= a) {
                    return Err(Error::NotSemistandard(format!(
                        "column entries in row {} do not increase",
                        r + 1
                    )));
                }
            }
        }
        Ok(SemistandardTableau { rows })
    }

    /// Row `i` filled with the value `i` (1-based).
    pub fn superstandard(shape: &Partition) -> Self {
        SemistandardTableau {
            rows: shape
                .parts()
                .iter()
                .enumerate()
                .map(|(i, &len)| vec![i as u32 + 1; len as usize])
                .collect(),
        }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Number of boxes labeled `1..=k`.
    pub fn content(&self, k: usize) -> Weight {
        let mut w = vec![0i64; k];
        for &x in self.rows.iter().flatten() {
            if let Some(slot) = w.get_mut(x as usize - 1) {
                *slot += 1;
            }
        }
        Weight::new(w)
    }
}

impl TryFrom<Vec<Vec<u32>>> for SemistandardTableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        SemistandardTableau::new(rows)
    }
}

impl From<SemistandardTableau> for Vec<Vec<u32>> {
    fn from(t: SemistandardTableau) -> Self {
        t.rows
    }
}

impl fmt::Debug for SemistandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SemistandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, row) in self.rows.iter().enumerate() {
            if n > 0 {
                f.write_str("/")?;
            }
            for x in row {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Gelfand-Tsetlin pattern: level `l` (1-based) holds `l` entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GtPattern(Vec<Vec<u32>>);

impl GtPattern {
    pub fn new(levels: Vec<Vec<u32>>) -> Result<Self> {
        for (l, row) in levels.iter().enumerate() {
            if row.len() != l + 1 {
                return Err(Error::InvalidPartition(format!(
                    "level {} has {} entries",
                    l + 1,
                    row.len()
                )));
            }
        }
        let p = GtPattern(levels);
        if !p.is_interleaving() {
            return Err(Error::InvalidPartition("levels do not interleave".into()));
        }
        Ok(p)
    }

    pub fn levels(&self) -> &[Vec<u32>] {
        &self.0
    }

    /// The partition at level `l` (1-based).
    pub fn level(&self, l: usize) -> Partition {
        Partition(self.0[l - 1].iter().copied().filter(|&x| x > 0).collect())
    }

    pub fn is_interleaving(&self) -> bool {
        self.0.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            (0..lower.len()).all(|i| upper[i] >= lower[i] && lower[i] >= upper[i + 1])
        }) && self.0.iter().all(|r| r.windows(2).all(|w| w[0] >= w[1]))
    }

    /// Inverse of [`tableau_to_pattern`].
    pub fn to_tableau(&self) -> SemistandardTableau {
        let k = self.0.len();
        let top = self.0.last().cloned().unwrap_or_default();
        let mut rows: Vec<Vec<u32>> = top.iter().map(|&len| Vec::with_capacity(len as usize)).collect();
        for l in 0..k {
            for (i, row) in rows.iter_mut().enumerate().take(l + 1) {
                let prev = if l == 0 || i >= l { 0 } else { self.0[l - 1][i] };
                for _ in prev..self.0[l][i] {
                    row.push(l as u32 + 1);
                }
            }
        }
        SemistandardTableau::new(rows).expect("interleaving patterns give tableaux")
    }
}

impl fmt::Debug for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, row) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write_tuple(f, row.iter())?;
        }
        f.write_str("]")
    }
}

/// All weights of metamonomials of `format`, in descending lexicographic order.
pub fn enumerate_weights(delta: u32, d: u32, k: usize) -> Vec<Weight> {
    compositions(delta * d, k)
        .into_iter()
        .map(|mu| Weight::new(mu.as_slice().iter().map(|&x| i64::from(x)).collect()))
        .collect()
}

/// Partitions of `n` with at most `max_parts` parts, descending lexicographic.
pub fn enumerate_partitions(n: u32, max_parts: usize) -> Vec<Partition> {
    fn go(rest: u32, cap: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Semistandard tableaux of `shape` with entries in `1..=k`, ordered
/// lexicographically by their row reading word.
pub fn enumerate_tableaux(shape: &Partition, k: usize) -> Vec<SemistandardTableau> {
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&l| vec![0; l as usize]).collect();
    let mut out = Vec::new();
    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        k: u32,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<SemistandardTableau>,
    ) {
        if idx == cells.len() {
            out.push(SemistandardTableau { rows: rows.clone() });
            return;
        }
        let (r, c) = cells[idx];
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(rows[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(rows[r - 1][c] + 1);
        }
        for v in lo..=k {
            rows[r][c] = v;
            go(idx + 1, cells, k, rows, out);
        }
        rows[r][c] = 0;
    }
    if shape.len() <= k {
        go(0, &cells, k as u32, &mut rows, &mut out);
    }
    out
}

/// Level `l` is the shape of the subtableau of entries `<= l`.
pub fn tableau_to_pattern(t: &SemistandardTableau, k: usize) -> Result<GtPattern> {
    if t.max_entry() as usize > k {
        return Err(Error::OutOfRange(format!("tableau {t} has an entry above {k}")));
    }
    if t.rows.len() > k {
        return Err(Error::OutOfRange(format!("tableau {t} has more than {k} rows")));
    }
    let levels = (1..=k)
        .map(|l| {
            (0..l)
                .map(|i| {
                    t.rows
                        .get(i)
                        .map_or(0, |row| row.iter().filter(|&&x| x as usize <= l).count() as u32)
                })
                .collect()
        })
        .collect();
    GtPattern::new(levels)
}

/// Number of semistandard tableaux of shape `shape` and content `content`.
pub fn kostka(shape: &Partition, content: &Weight) -> usize {
    let k = content.len();
    if i64::from(shape.size()) != content.total() {
        return 0;
    }
    enumerate_tableaux(shape, k)
        .iter()
        .filter(|t| t.content(k) == *content)
        .count()
}

/// Isomorphism types occurring in the space of metapolynomials of `format`,
/// with multiplicities, read off from the weight multiplicities by peeling
/// Kostka numbers in dominance-compatible order.
pub fn isotypic_types(format: Format) -> Vec<(Partition, usize)> {
    let mut dims: BTreeMap<Weight, usize> = BTreeMap::new();
    for m in format.metamonomials() {
        let w = m.weight(format.k);
        if w.is_dominant() {
            *dims.entry(w).or_insert(0) += 1;
        }
    }
    let mut found: Vec<(Partition, usize)> = Vec::new();
    for lambda in enumerate_partitions(format.weight_total(), format.k) {
        let w = lambda.to_weight(format.k).expect("at most k parts");
        let mut mult = dims.get(&w).copied().unwrap_or(0) as i64;
        for (mu, m) in &found {
            mult -= (*m * kostka(mu, &w)) as i64;
        }
        assert!(mult >= 0, "negative multiplicity for {lambda}");
        if mult > 0 {
            found.push((lambda, mult as usize));
        }
    }
    found
}

pub fn weight_component(m: &MetaPolynomial, w: &Weight) -> MetaPolynomial {
    let k = m.format().k;
    let mut out = MetaPolynomial::zero(m.format());
    for (mono, c) in m.terms() {
        if mono.weight(k) == *w {
            out.add_term_unchecked(mono.clone(), c.clone());
        }
    }
    out
}

/// Splits `m` into its nonzero weight components.
pub fn weight_decomposition(m: &MetaPolynomial) -> BTreeMap<Weight, MetaPolynomial> {
    let k = m.format().k;
    let mut out: BTreeMap<Weight, MetaPolynomial> = BTreeMap::new();
    for (mono, c) in m.terms() {
        out.entry(mono.weight(k))
            .or_insert_with(|| MetaPolynomial::zero(m.format()))
            .add_term_unchecked(mono.clone(), c.clone());
    }
    out
}
