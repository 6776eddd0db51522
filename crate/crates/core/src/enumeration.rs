//! Exhaustive generators, counting sequences and distribution tables.
//!
//! Tree generators take the node count `m`; the class of trees paired with
//! permutations of length `n` has `m = n - 1` nodes.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bijections::eta_inv;
use crate::disktree::{DiSkTree, Sign, TREE_STATS};
use crate::error::{Error, Result};
use crate::perm::{separable_patterns, Permutation};

/// Largest `n` for which `n!` filtering is attempted by default.
pub const DEFAULT_NAIVE_CAP: usize = 10;

type Catalog = Arc<Vec<Vec<DiSkTree>>>;

/// Every di-sk tree with `m` nodes, each exactly once.
///
/// Order: root `+` before `-`, then by left-subtree size, then recursively
/// by left subtree and right subtree. Smaller sizes are materialized once;
/// the top level is streamed.
pub fn gen_disk_trees(m: usize) -> impl Iterator<Item = DiSkTree> + Send {
    let mut lists: Vec<Vec<DiSkTree>> = Vec::with_capacity(m);
    for size in 0..m {
        let catalog: Catalog = Arc::new(lists.clone());
        let level: Vec<DiSkTree> = compose(size, catalog).collect();
        lists.push(level);
    }
    compose(m, Arc::new(lists))
}

fn compose(size: usize, lists: Catalog) -> Box<dyn Iterator<Item = DiSkTree> + Send> {
    if size == 0 {
        return Box::new(std::iter::once(DiSkTree::empty()));
    }
    Box::new([Sign::Plus, Sign::Minus].into_iter().flat_map(move |sign| {
        let lists = lists.clone();
        (0..size).flat_map(move |left_size| {
            let lists = lists.clone();
            let right_size = size - 1 - left_size;
            (0..lists[left_size].len()).flat_map(move |li| {
                let lists = lists.clone();
                (0..lists[right_size].len()).filter_map(move |ri| {
                    let right = &lists[right_size][ri];
                    (right.root_sign() != Some(sign)).then(|| {
                        DiSkTree::join(lists[left_size][li].clone(), sign, right.clone())
                    })
                })
            })
        })
    }))
}

/// All permutations of length `n` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(Permutation::from_vec_unchecked)
}

/// Permutations of length `n` avoiding every pattern, by filtering all `n!`.
pub fn avoiders_naive(n: usize, patterns: &[Permutation], cap: usize) -> Result<impl Iterator<Item = Permutation> + '_> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "length",
            detail: "n must be at least 1".into(),
        });
    }
    if n > cap {
        return Err(Error::OutOfRange {
            what: "length",
            detail: format!("naive filtering capped at n = {cap}, got {n}"),
        });
    }
    Ok(permutations(n).filter(move |p| p.avoids_all(patterns)))
}

fn is_separable_set(patterns: &[Permutation]) -> bool {
    let mut given: Vec<&Permutation> = patterns.iter().collect();
    given.sort();
    given.dedup();
    let sep = separable_patterns();
    given.len() == 2 && given.iter().all(|p| sep.contains(p))
}

/// Avoiders of `patterns` of length `n`. For `{2413, 3142}` the trees with
/// `n - 1` nodes are decoded instead of filtering; other sets fall back to
/// [`avoiders_naive`] with [`DEFAULT_NAIVE_CAP`].
pub fn gen_avoiders(n: usize, patterns: &[Permutation]) -> Result<Box<dyn Iterator<Item = Permutation> + '_>> {
    if n >= 1 && is_separable_set(patterns) {
        return Ok(Box::new(gen_disk_trees(n - 1).map(|t| eta_inv(&t))));
    }
    Ok(Box::new(avoiders_naive(n, patterns, DEFAULT_NAIVE_CAP)?))
}

/// Separable permutations of length `n`.
pub fn separable(n: usize) -> impl Iterator<Item = Permutation> + Send {
    assert!(n >= 1, "permutations have length at least 1");
    gen_disk_trees(n - 1).map(|t| eta_inv(&t))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Large Schröder number `S_k`: sum over `i` of `Catalan(i) * C(k+i, k-i)`.
pub fn schroder(k: u64) -> BigUint {
    (0..=k)
        .map(|i| binomial(2 * i, i) / (i + 1) * binomial(k + i, k - i))
        .sum()
}

/// Catalan triangle entry `C_{n,k} = (n-k)/n * C(n-1+k, k)`, `0 <= k < n`.
pub fn catalan_triangle(n: u64, k: u64) -> Result<BigUint> {
    if n == 0 || k >= n {
        return Err(Error::OutOfRange {
            what: "catalan triangle index",
            detail: format!("need 0 <= k < n, got n = {n}, k = {k}"),
        });
    }
    Ok(binomial(n - 1 + k, k) * (n - k) / n)
}

/// A single statistic value; set-valued statistics are sorted lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StatValue {
    Int(usize),
    Set(Vec<usize>),
}

impl StatValue {
    pub fn as_int(&self) -> Option<usize> {
        match self {
            StatValue::Int(v) => Some(*v),
            StatValue::Set(_) => None,
        }
    }
}

impl std::fmt::Display for StatValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StatValue::Int(v) => write!(f, "{v}"),
            StatValue::Set(s) => write!(f, "{{{}}}", s.iter().join(" ")),
        }
    }
}

/// Objects that expose named statistics.
pub trait StatSource {
    const STAT_NAMES: &'static [&'static str];

    fn stat_value(&self, name: &str) -> Option<StatValue>;

    fn check_names(names: &[&str]) -> Result<()> {
        match names.iter().find(|n| !Self::STAT_NAMES.contains(n)) {
            Some(bad) => Err(Error::UnknownStatistic(bad.to_string())),
            None => Ok(()),
        }
    }
}

impl StatSource for Permutation {
    const STAT_NAMES: &'static [&'static str] =
        &["lmax", "lmin", "des", "desb", "iar", "idr", "comp"];

    fn stat_value(&self, name: &str) -> Option<StatValue> {
        Some(match name {
            "lmax" => StatValue::Set(self.lmax()),
            "lmin" => StatValue::Set(self.lmin()),
            "des" => StatValue::Set(self.des()),
            "desb" => StatValue::Set(self.desb()),
            "iar" => StatValue::Int(self.iar()),
            "idr" => StatValue::Int(self.idr()),
            "comp" => StatValue::Int(self.comp()),
            _ => return None,
        })
    }
}

const TREE_STAT_NAMES: [&str; 18] = {
    let mut names = [""; 18];
    let mut i = 0;
    while i < 16 {
        names[i] = TREE_STATS[i].0;
        i += 1;
    }
    names[16] = "omi";
    names[17] = "size";
    names
};

impl StatSource for DiSkTree {
    const STAT_NAMES: &'static [&'static str] = &TREE_STAT_NAMES;

    fn stat_value(&self, name: &str) -> Option<StatValue> {
        self.stat(name).map(StatValue::Int)
    }
}

/// Multiset of statistic tuples over an enumerated class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub stats: Vec<String>,
    pub rows: BTreeMap<Vec<StatValue>, u64>,
    pub universe: u64,
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    key: Vec<StatValue>,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    stats: Vec<String>,
    universe: u64,
    rows: Vec<TableRow>,
}

impl DistributionTable {
    pub fn new(stats: &[&str]) -> Self {
        DistributionTable {
            stats: stats.iter().map(|s| s.to_string()).collect(),
            rows: BTreeMap::new(),
            universe: 0,
        }
    }

    pub fn add<T: StatSource>(&mut self, object: &T) {
        let key = self
            .stats
            .iter()
            .map(|s| object.stat_value(s).expect("statistic names checked up front"))
            .collect();
        *self.rows.entry(key).or_default() += 1;
        self.universe += 1;
    }

    /// Combines two tables over disjoint parts of a class.
    pub fn merge(mut self, other: DistributionTable) -> DistributionTable {
        debug_assert_eq!(self.stats, other.stats);
        for (k, c) in other.rows {
            *self.rows.entry(k).or_default() += c;
        }
        self.universe += other.universe;
        self
    }

    pub fn count(&self, key: &[StatValue]) -> u64 {
        self.rows.get(key).copied().unwrap_or(0)
    }

    /// Equality of the multisets of tuples, ignoring the column names.
    pub fn same_distribution(&self, other: &DistributionTable) -> bool {
        self.rows == other.rows
    }

    /// The table with its columns permuted: column `i` of the result is
    /// column `order[i]` of `self`.
    pub fn reorder(&self, order: &[usize]) -> DistributionTable {
        let mut rows = BTreeMap::new();
        for (k, c) in &self.rows {
            let key: Vec<StatValue> = order.iter().map(|&i| k[i].clone()).collect();
            *rows.entry(key).or_default() += c;
        }
        DistributionTable {
            stats: order.iter().map(|&i| self.stats[i].clone()).collect(),
            rows,
            universe: self.universe,
        }
    }

    /// First tuple whose counts differ between the two tables.
    pub fn first_difference(&self, other: &DistributionTable) -> Option<(Vec<StatValue>, u64, u64)> {
        self.rows
            .keys()
            .chain(other.rows.keys())
            .find(|k| self.count(k) != other.count(k))
            .map(|k| (k.clone(), self.count(k), other.count(k)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableDoc {
            stats: self.stats.clone(),
            universe: self.universe,
            rows: self
                .rows
                .iter()
                .map(|(k, &c)| TableRow { key: k.clone(), count: c })
                .collect(),
        })
        .expect("table serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<DistributionTable> {
        let doc: TableDoc = serde_json::from_value(value.clone())
            .map_err(|e| Error::Serialization(e.to_string()))?;
        Ok(DistributionTable {
            stats: doc.stats,
            universe: doc.universe,
            rows: doc.rows.into_iter().map(|r| (r.key, r.count)).collect(),
        })
    }

    /// One line per tuple, with a trailing `count` column.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Serialization(e.to_string());
        w.write_record(self.stats.iter().map(String::as_str).chain(["count"]))
            .map_err(err)?;
        for (k, c) in &self.rows {
            w.write_record(k.iter().map(|v| v.to_string()).chain([c.to_string()]))
                .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Tabulates `stats` over `objects`.
pub fn distribution<T: StatSource>(objects: impl IntoIterator<Item = T>, stats: &[&str]) -> Result<DistributionTable> {
    T::check_names(stats)?;
    let mut table = DistributionTable::new(stats);
    for o in objects {
        table.add(&o);
    }
    Ok(table)
}

/// [`distribution`] spread over the rayon pool; the result does not depend
/// on scheduling.
pub fn distribution_par<T, I>(objects: I, stats: &[&str]) -> Result<DistributionTable>
where
    T: StatSource + Send,
    I: Iterator<Item = T> + Send,
{
    T::check_names(stats)?;
    let empty = DistributionTable::new(stats);
    Ok(objects
        .par_bridge()
        .fold(
            || empty.clone(),
            |mut t, o| {
                t.add(&o);
                t
            },
        )
        .reduce(|| empty.clone(), DistributionTable::merge))
}

/// Square matrix of joint counts of two integer statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatMatrix {
    pub row_stat: String,
    pub col_stat: String,
    /// Value of the statistics in row/column 0.
    pub offset: usize,
    pub entries: Vec<Vec<u64>>,
}

impl StatMatrix {
    /// Builds a `dim x dim` matrix from a two-column table of integer values.
    pub fn from_table(table: &DistributionTable, dim: usize, offset: usize) -> Result<StatMatrix> {
        if table.stats.len() != 2 {
            return Err(Error::OutOfRange {
                what: "table width",
                detail: "a matrix needs exactly two statistics".into(),
            });
        }
        let mut entries = vec![vec![0; dim]; dim];
        for (key, &count) in &table.rows {
            let (Some(r), Some(c)) = (key[0].as_int(), key[1].as_int()) else {
                return Err(Error::OutOfRange {
                    what: "statistic kind",
                    detail: "matrix statistics must be integer-valued".into(),
                });
            };
            let (r, c) = (r.checked_sub(offset), c.checked_sub(offset));
            match (r, c) {
                (Some(r), Some(c)) if r < dim && c < dim => entries[r][c] += count,
                _ => {
                    return Err(Error::OutOfRange {
                        what: "statistic value",
                        detail: format!("value outside {offset}..{}", offset + dim),
                    })
                }
            }
        }
        Ok(StatMatrix {
            row_stat: table.stats[0].clone(),
            col_stat: table.stats[1].clone(),
            offset,
            entries,
        })
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }

    /// Entry depends only on `i + j`.
    pub fn is_hankel(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| i + 1 >= n || j == 0 || self.entries[i][j] == self.entries[i + 1][j - 1]))
    }

    /// Entries vanish below the main anti-diagonal.
    pub fn is_upper_anti_triangular(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| i + j < n || self.entries[i][j] == 0))
    }

    pub fn to_csv(&self) -> String {
        self.entries
            .iter()
            .map(|row| row.iter().join(","))
            .map(|line| line + "\n")
            .collect()
    }

    pub fn to_text(&self) -> String {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        self.entries
            .iter()
            .map(|row| row.iter().map(|v| format!("{v:>width$}")).join(" ") + "\n")
            .collect()
    }
}

/// Counts of trees with `n - 1` nodes by `(top, iom)`, rows indexed by `top`.
pub fn matrix_top_iom(n: usize) -> StatMatrix {
    assert!(n >= 1, "n must be at least 1");
    let table = distribution(gen_disk_trees(n - 1), &["top", "iom"]).expect("known statistics");
    StatMatrix::from_table(&table, n, 0).expect("top + iom fits in n - 1")
}
