//! Permutations of `1..=n` and the statistics defined on them.
//!
//! Descents follow the convention `pi_i > pi_{i+1}`; set-valued statistics are
//! returned as sorted vectors so they compare and serialize canonically.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n`, stored in one-line notation with 1-based values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty sequence".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn lmax(&self) -> Vec<usize> {
        let mut best = 0;
        let mut out: Vec<usize> = self
            .0
            .iter()
            .filter(|&&v| {
                let record = v > best;
                best = best.max(v);
                record
            })
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    pub fn lmin(&self) -> Vec<usize> {
        let mut best = usize::MAX;
        let mut out: Vec<usize> = self
            .0
            .iter()
            .filter(|&&v| {
                let record = v < best;
                best = best.min(v);
                record
            })
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    /// Descent positions `i` (1-based) with `pi_i > pi_{i+1}`.
    pub fn des(&self) -> Vec<usize> {
        self.0
            .iter()
            .tuple_windows()
            .enumerate()
            .filter(|(_, (a, b))| a > b)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Descent bottoms: the values right after each descent.
    pub fn desb(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.des().into_iter().map(|i| self.at(i + 1)).collect();
        out.sort_unstable();
        out
    }

    /// Length of the initial ascending run.
    pub fn iar(&self) -> usize {
        self.des().first().copied().unwrap_or(self.len())
    }

    /// Length of the initial descending run.
    pub fn idr(&self) -> usize {
        1 + self
            .0
            .iter()
            .tuple_windows()
            .take_while(|(a, b)| a > b)
            .count()
    }

    /// Number of components: prefixes `pi_1..pi_i` that are exactly `{1..i}`.
    pub fn comp(&self) -> usize {
        let mut max = 0;
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &v)| {
                max = max.max(v);
                max == i + 1
            })
            .count()
    }

    pub fn profile(&self) -> StatProfile {
        StatProfile {
            lmax: self.lmax(),
            lmin: self.lmin(),
            des: self.des(),
            desb: self.desb(),
            iar: self.iar(),
            idr: self.idr(),
            comp: self.comp(),
        }
    }

    /// Whether some subsequence is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        if k > self.len() {
            return false;
        }
        let p = pattern.values();
        (0..self.len()).combinations(k).any(|idx| {
            idx.iter().tuple_combinations().zip(p.iter().tuple_combinations()).all(
                |((&i, &j), (&a, &b))| (self.0[i] < self.0[j]) == (a < b),
            )
        })
    }

    pub fn avoids_all<'a>(&self, patterns: impl IntoIterator<Item = &'a Permutation>) -> bool {
        patterns.into_iter().all(|q| !self.contains_pattern(q))
    }

    pub fn is_separable(&self) -> bool {
        self.avoids_all(&separable_patterns())
    }

    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let k = self.len();
        let values = self
            .0
            .iter()
            .copied()
            .chain(other.0.iter().map(|&v| v + k))
            .collect();
        Permutation(values)
    }

    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let l = other.len();
        let values = self
            .0
            .iter()
            .map(|&v| v + l)
            .chain(other.0.iter().copied())
            .collect();
        Permutation(values)
    }

    pub fn reverse_complement(&self) -> Permutation {
        let n = self.len();
        Permutation(self.0.iter().rev().map(|&v| n + 1 - v).collect())
    }
}

/// The two patterns whose joint avoidance defines separable permutations.
pub fn separable_patterns() -> [Permutation; 2] {
    [
        Permutation(vec![2, 4, 1, 3]),
        Permutation(vec![3, 1, 4, 2]),
    ]
}

/// Parses a comma- or whitespace-separated list of patterns written as digit
/// strings (`"2413,3142"`) or space-separated values (`"2 4 1 3"`).
pub fn parse_patterns(s: &str) -> Result<Vec<Permutation>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            if p.contains(char::is_whitespace) {
                p.parse()
            } else {
                let digits = p
                    .chars()
                    .map(|c| {
                        c.to_digit(10).map(|d| d as usize).ok_or_else(|| {
                            Error::InvalidPermutation(format!("bad pattern `{p}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Permutation::new(digits)
            }
        })
        .collect()
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad token `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// All permutation statistics of one permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatProfile {
    pub lmax: Vec<usize>,
    pub lmin: Vec<usize>,
    pub des: Vec<usize>,
    pub desb: Vec<usize>,
    pub iar: usize,
    pub idr: usize,
    pub comp: usize,
}
