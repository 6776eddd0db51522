//! Truncated power series in `z` with integer polynomial coefficients in the
//! markers `t`, `x`, `y`, and the identities they satisfy when built from
//! tree enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::disktree::DiSkTree;
use crate::enumeration::gen_disk_trees;
use crate::error::{Error, Result};

/// Largest order accepted by [`build_series`].
pub const MAX_SERIES_ORDER: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marker {
    T,
    X,
    Y,
}

impl Marker {
    fn index(self) -> usize {
        match self {
            Marker::T => 0,
            Marker::X => 1,
            Marker::Y => 2,
        }
    }
}

const MARKER_NAMES: [&str; 3] = ["t", "x", "y"];

/// Exponents of `t`, `x`, `y`.
pub type Monomial = [u32; 3];

/// Integer polynomial in `t`, `x`, `y`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkerPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MarkerPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exps: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c.into());
        p
    }

    pub fn marker(m: Marker) -> Self {
        let mut exps = [0; 3];
        exps[m.index()] = 1;
        Self::monomial(exps, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: Monomial) -> BigInt {
        self.terms.get(&exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MarkerPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }

    /// Sets marker `m` to 1.
    pub fn specialize(&self, m: Marker) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e = *e;
            e[m.index()] = 0;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Exchanges the exponents of two markers.
    pub fn swap(&self, a: Marker, b: Marker) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e = *e;
            e.swap(a.index(), b.index());
            out.add_term(e, c.clone());
        }
        out
    }

    /// Sum of all coefficients.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

fn monomial_text(e: &Monomial) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(MARKER_NAMES)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, name)| if k == 1 { name.to_string() } else { format!("{name}^{k}") })
        .collect();
    parts.join(" ")
}

impl fmt::Display for MarkerPolynomial {
    /// Terms by decreasing total degree, e.g. `x y + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (std::cmp::Reverse(e.iter().sum::<u32>()), std::cmp::Reverse(**e)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono = monomial_text(e);
            let negative = c < &BigInt::zero();
            let mag = if negative { -c } else { c.clone() };
            let sign = match (i, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag} {mono}"),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// Power series in `z` truncated after `z^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<MarkerPolynomial>,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to length `order + 1`.
    pub fn new(order: usize, mut coeffs: Vec<MarkerPolynomial>) -> Self {
        coeffs.resize(order + 1, MarkerPolynomial::zero());
        TruncatedSeries { order, coeffs }
    }

    pub fn constant(order: usize, p: MarkerPolynomial) -> Self {
        Self::new(order, vec![p])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, MarkerPolynomial::constant(1))
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        Self::new(order, vec![MarkerPolynomial::zero(), MarkerPolynomial::constant(1)])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &MarkerPolynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MarkerPolynomial] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect();
        Self::new(order, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect();
        Self::new(order, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .into_par_iter()
            .map(|k| {
                (0..=k).fold(MarkerPolynomial::zero(), |acc, i| {
                    acc.add(&self.coeffs[i].mul(&other.coeffs[k - i]))
                })
            })
            .collect();
        Self::new(order, coeffs)
    }

    /// Multiplies every coefficient by `p`.
    pub fn scale(&self, p: &MarkerPolynomial) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    /// Multiplies by `z`, dropping the coefficient pushed past the order.
    pub fn shift(&self) -> Self {
        let mut coeffs = vec![MarkerPolynomial::zero()];
        coeffs.extend(self.coeffs[..self.order].iter().cloned());
        Self::new(self.order, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order), |acc, _| acc.mul(self))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order.min(self.order), self.coeffs.clone())
    }

    pub fn specialize(&self, m: Marker) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|c| c.specialize(m)).collect())
    }

    pub fn swap(&self, a: Marker, b: Marker) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|c| c.swap(a, b)).collect())
    }

    /// Adds `c` to the coefficient of `z^k t^e0 x^e1 y^e2`.
    pub fn perturb(&self, k: usize, exps: Monomial, c: i64) -> Self {
        let mut out = self.clone();
        out.coeffs[k].add_term(exps, BigInt::from(c));
        out
    }

    /// Degree `->` monomial text `->` coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let terms: serde_json::Map<String, serde_json::Value> = p
                    .terms()
                    .map(|(e, c)| {
                        let key = match monomial_text(e) {
                            s if s.is_empty() => "1".to_string(),
                            s => s,
                        };
                        (key, serde_json::Value::String(c.to_string()))
                    })
                    .collect();
                (k.to_string(), serde_json::Value::Object(terms))
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p}) z")?,
                _ => write!(f, "({p}) z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}

fn tree_monomial(t: &DiSkTree) -> Monomial {
    [t.omi() as u32, t.rpop() as u32, t.top() as u32]
}

/// `1 + sum_n z^n sum_T t^omi x^rpop y^top`, the inner sum over all trees
/// with `n` nodes.
pub fn build_series(order: usize) -> Result<TruncatedSeries> {
    if order > MAX_SERIES_ORDER {
        return Err(Error::OutOfRange {
            what: "series order",
            detail: format!("at most {MAX_SERIES_ORDER}, got {order}"),
        });
    }
    let coeffs = (0..=order)
        .into_par_iter()
        .map(|n| {
            if n == 0 {
                return MarkerPolynomial::constant(1);
            }
            let mut counts: BTreeMap<Monomial, u64> = BTreeMap::new();
            for t in gen_disk_trees(n) {
                *counts.entry(tree_monomial(&t)).or_default() += 1;
            }
            let mut p = MarkerPolynomial::zero();
            for (e, c) in counts {
                p.add_term(e, BigInt::from(c));
            }
            p
        })
        .collect();
    Ok(TruncatedSeries::new(order, coeffs))
}

/// `S = t z^2 S^3 + t z^2 S^2 + (1 + t) z S + 1` with `x = y = 1`.
pub fn cubic_holds(s: &TruncatedSeries) -> bool {
    let n = s.order();
    let s = s.specialize(Marker::X).specialize(Marker::Y);
    let t = MarkerPolynomial::marker(Marker::T);
    let one_plus_t = t.add(&MarkerPolynomial::constant(1));
    let s2 = s.mul(&s);
    let s3 = s2.mul(&s);
    let rhs = s3
        .scale(&t)
        .shift()
        .shift()
        .add(&s2.scale(&t).shift().shift())
        .add(&s.scale(&one_plus_t).shift())
        .add(&TruncatedSeries::one(n));
    s == rhs
}

/// `S(1, u) (1 + (1 - u) z S) = S` where `u` is the kept marker and `S` is
/// fully specialized except for `t`.
pub fn kernel_holds(s: &TruncatedSeries, keep: Marker) -> bool {
    let other = match keep {
        Marker::X => Marker::Y,
        Marker::Y => Marker::X,
        Marker::T => return false,
    };
    let full = s.specialize(Marker::X).specialize(Marker::Y);
    let marked = s.specialize(other);
    let one_minus_u = MarkerPolynomial::constant(1).sub(&MarkerPolynomial::marker(keep));
    let factor = TruncatedSeries::one(s.order()).add(&full.scale(&one_minus_u).shift());
    marked.mul(&factor) == full
}

/// `S(x, y) = S(y, x)` coefficientwise.
pub fn symmetry_holds(s: &TruncatedSeries) -> bool {
    s.swap(Marker::X, Marker::Y) == *s
}

pub fn check_cubic(order: usize) -> Result<bool> {
    Ok(cubic_holds(&build_series(order)?))
}

pub fn check_top_kernel(order: usize) -> Result<bool> {
    Ok(kernel_holds(&build_series(order)?, Marker::Y))
}

pub fn check_rpop_kernel(order: usize) -> Result<bool> {
    Ok(kernel_holds(&build_series(order)?, Marker::X))
}

pub fn check_symmetry(order: usize) -> Result<bool> {
    Ok(symmetry_holds(&build_series(order)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_coefficients() {
        let s = build_series(3).unwrap();
        assert_eq!(s.coeff(0), &MarkerPolynomial::constant(1));
        let expected = MarkerPolynomial::monomial([0, 1, 1], 1).add(&MarkerPolynomial::monomial([1, 0, 0], 1));
        assert_eq!(s.coeff(1), &expected);
        assert_eq!(s.coeff(1).to_string(), "x y + t");
        let totals: Vec<BigInt> = s.coeffs().iter().map(|p| p.evaluate_at_one()).collect();
        assert_eq!(totals, [1, 2, 6, 22].map(BigInt::from));
        assert!(build_series(11).is_err());
    }

    #[test]
    fn identities_small() {
        for n in 0..=6 {
            assert!(check_cubic(n).unwrap(), "cubic at {n}");
            assert!(check_top_kernel(n).unwrap(), "top kernel at {n}");
            assert!(check_rpop_kernel(n).unwrap(), "rpop kernel at {n}");
            assert!(check_symmetry(n).unwrap(), "symmetry at {n}");
        }
    }

    #[test]
    fn negative_controls() {
        let s = build_series(5).unwrap();
        for k in 0..=5 {
            let bad = s.perturb(k, [0, 0, 0], 1);
            assert!(!cubic_holds(&bad), "cubic at degree {k}");
        }
        assert!(!symmetry_holds(&s.perturb(3, [0, 2, 0], 1)));
        assert!(!kernel_holds(&s.perturb(2, [0, 0, 1], 1), Marker::Y));
        assert!(!kernel_holds(&s.perturb(2, [0, 1, 0], 1), Marker::X));
    }

    #[test]
    fn arithmetic() {
        let z = TruncatedSeries::z(4);
        let one = TruncatedSeries::one(4);
        let geom = TruncatedSeries::new(4, vec![MarkerPolynomial::constant(1); 5]);
        // (1 - z) * sum z^k = 1
        assert_eq!(one.sub(&z).mul(&geom), one);
        assert_eq!(z.pow(5), TruncatedSeries::new(4, vec![]));
        assert_eq!(z.shift(), z.pow(2));
        let p = MarkerPolynomial::monomial([1, 2, 0], 3).add(&MarkerPolynomial::constant(-1));
        assert_eq!(p.to_string(), "3 t x^2 - 1");
        assert_eq!(p.swap(Marker::X, Marker::Y).coefficient([1, 0, 2]), BigInt::from(3));
        assert_eq!(p.sub(&p), MarkerPolynomial::zero());
        assert!(geom.to_string().ends_with("O(z^5)"));
        assert_eq!(geom.to_json()["2"]["1"], "1");
    }
}
