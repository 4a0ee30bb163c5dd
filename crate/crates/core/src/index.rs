use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `mu` of a monomial `x^mu`; also the label of the
/// metavariable `c_mu`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(k: usize) -> Self {
        MultiIndex(vec![0; k])
    }

    /// Standard basis vector `e_i` (0-based `i`).
    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `mu + e_i - e_j`, or `None` when coordinate `j` would go negative.
    pub fn shifted(&self, i: usize, j: usize) -> Option<MultiIndex> {
        if i == j {
            return Some(self.clone());
        }
        if self.0[j] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] += 1;
        v[j] -= 1;
        Some(MultiIndex(v))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn prepend(&self, head: u32) -> MultiIndex {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(head);
        v.extend_from_slice(&self.0);
        MultiIndex(v)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, e) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// All exponent vectors of length `k` summing to `n`, in descending
/// lexicographic order (`(n,0,..,0)` first).
pub fn compositions(n: u32, k: usize) -> Vec<MultiIndex> {
    fn go(rest: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            prefix.push(rest);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for head in (0..=rest).rev() {
            prefix.push(head);
            go(rest - head, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    go(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_degree() {
        let mu = MultiIndex::new(vec![1, 1]);
        assert_eq!(mu.degree(), 2);
        assert_eq!(mu.shifted(0, 1), Some(MultiIndex::new(vec![2, 0])));
        assert_eq!(MultiIndex::new(vec![2, 0]).shifted(0, 1), None);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(6, 2).len(), 7);
        assert_eq!(compositions(6, 3).len(), 28);
        assert_eq!(compositions(2, 3)[0], MultiIndex::new(vec![2, 0, 0]));
        assert_eq!(compositions(0, 0).len(), 1);
    }
}
