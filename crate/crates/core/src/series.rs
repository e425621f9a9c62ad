//! Truncated planar power series in `x` with polynomial dependence on `y`.
//!
//! A [`Series`] stores a finite map from monomials to nonzero rationals plus
//! a precision `P`: the stored data is exact for every monomial of x-degree
//! at most `P` and says nothing about higher x-degrees. The y-direction is
//! never truncated.
//!
//! Precision rules: `add`, `scale` and `product` take the minimum of their
//! operands' precisions, which is sound because x-degree is additive under
//! grafting.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::trees::{graft_unchecked, Monomial};

/// Exact coefficient field.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: BTreeMap<Monomial, Rational>,
    precision: usize,
}

/// x-order of a truncated series. An empty truncated series only certifies
/// that the order exceeds its precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact(n) => write!(f, "{n}"),
            Order::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// x-adic distance, or an upper bound when the difference vanishes to
/// precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(Rational),
    Below(Rational),
}

/// First coefficient where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub monomial: Monomial,
    pub left: Rational,
    pub right: Rational,
}

impl Series {
    pub fn zero(precision: usize) -> Self {
        Series {
            coeffs: BTreeMap::new(),
            precision,
        }
    }

    pub fn one(precision: usize) -> Self {
        Self::monomial(Monomial::unit(), Rational::one(), precision)
    }

    pub fn x(precision: usize) -> Self {
        Self::monomial(Monomial::x(), Rational::one(), precision)
    }

    pub fn y(precision: usize) -> Self {
        Self::monomial(Monomial::y(), Rational::one(), precision)
    }

    pub fn monomial(m: Monomial, coeff: Rational, precision: usize) -> Self {
        Self::from_terms([(m, coeff)], precision)
    }

    /// Sums the given terms; terms beyond the precision and zero sums are
    /// dropped.
    pub fn from_terms<I>(terms: I, precision: usize) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut coeffs: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m.deg_x() > precision || c.is_zero() {
                continue;
            }
            *coeffs.entry(m).or_insert_with(Rational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Series { coeffs, precision }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.coeffs.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.coeffs.keys()
    }

    pub fn coefficient(&self, s: &Monomial) -> Result<Rational> {
        if s.deg_x() > self.precision {
            return Err(Error::Precision {
                requested: s.deg_x(),
                precision: self.precision,
            });
        }
        Ok(self.coeffs.get(s).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn has_y(&self) -> bool {
        self.coeffs.keys().any(|m| m.deg_y() > 0)
    }

    /// Largest x-degree among stored terms (0 when empty).
    pub fn max_deg_x(&self) -> usize {
        self.coeffs.keys().map(Monomial::deg_x).max().unwrap_or(0)
    }

    /// Drops every term above x-degree `p`; never raises the precision.
    pub fn truncate(&self, p: usize) -> Series {
        let p = p.min(self.precision);
        Series {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.deg_x() <= p)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            precision: p,
        }
    }

    /// Reinterprets the stored terms as an exact polynomial known to
    /// precision `p`. Only valid when the caller knows the value has no
    /// terms beyond those stored (parsed polynomials, homogeneous slices).
    pub fn as_polynomial(&self, p: usize) -> Series {
        Series::from_terms(self.coeffs.iter().map(|(m, c)| (m.clone(), c.clone())), p)
    }

    pub fn scale(&self, a: &Rational) -> Series {
        if a.is_zero() {
            return Series::zero(self.precision);
        }
        Series {
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (m.clone(), c * a))
                .collect(),
            precision: self.precision,
        }
    }

    /// The slice of x-degree exactly `n`, at precision `n`.
    pub fn homogeneous_component(&self, n: usize) -> Result<Series> {
        if n > self.precision {
            return Err(Error::Precision {
                requested: n,
                precision: self.precision,
            });
        }
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.deg_x() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            precision: n,
        })
    }

    pub fn ord_x(&self) -> Order {
        match self.coeffs.keys().map(Monomial::deg_x).min() {
            Some(n) => Order::Exact(n),
            None => Order::AtLeast(self.precision + 1),
        }
    }

    /// True when the x-order is certified to be at least 1.
    pub fn has_positive_order(&self) -> bool {
        !self.coeffs.keys().any(|m| m.deg_x() == 0)
    }

    /// Compares to the shared precision and reports the first difference in
    /// canonical order.
    pub fn first_mismatch(&self, other: &Series) -> Option<Mismatch> {
        let p = self.precision.min(other.precision);
        let mut keys: Vec<&Monomial> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .filter(|m| m.deg_x() <= p)
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let left = self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero);
            let right = other.coeffs.get(m).cloned().unwrap_or_else(Rational::zero);
            (left != right).then(|| Mismatch {
                monomial: m.clone(),
                left,
                right,
            })
        })
    }

    /// Equality to precision `min(P_self, P_other)`.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let p = self.precision.min(rhs.precision);
        Series::from_terms(
            self.terms()
                .chain(rhs.terms())
                .map(|(m, c)| (m.clone(), c.clone())),
            p,
        )
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            precision: self.precision,
        }
    }
}

/// Binary grafting product.
impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        product(&[self, rhs]).expect("binary product has arity 2")
    }
}

/// The m-ary convolution product, m = `args.len()` ≥ 2.
///
/// The coefficient at S sums `c_{S_1}(f_1)···c_{S_m}(f_m)` over all tuples
/// grafting to S. Tuples are generated from the operands' supports with
/// x-degree pruning, so every S that can receive a contribution is reached.
pub fn product(args: &[&Series]) -> Result<Series> {
    if args.len() < 2 {
        return Err(Error::Arity(args.len()));
    }
    let p = args.iter().map(|s| s.precision).min().unwrap();
    if args.iter().any(|s| s.is_empty()) {
        return Ok(Series::zero(p));
    }
    let supports: Vec<Vec<(&Monomial, &Rational)>> = args
        .iter()
        .map(|s| s.terms().filter(|(m, _)| m.deg_x() <= p).collect())
        .collect();
    // least x-degree the remaining operands can still add
    let mut tail_min = vec![0usize; args.len() + 1];
    for i in (0..args.len()).rev() {
        let least = supports[i].iter().map(|(m, _)| m.deg_x()).min();
        match least {
            Some(d) => tail_min[i] = tail_min[i + 1] + d,
            None => return Ok(Series::zero(p)),
        }
    }

    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    let mut picked: Vec<Monomial> = Vec::with_capacity(args.len());
    expand(
        &supports,
        &tail_min,
        p,
        0,
        Rational::one(),
        &mut picked,
        &mut acc,
    );
    Ok(Series::from_terms(acc, p))
}

fn expand(
    supports: &[Vec<(&Monomial, &Rational)>],
    tail_min: &[usize],
    budget: usize,
    i: usize,
    coeff: Rational,
    picked: &mut Vec<Monomial>,
    acc: &mut HashMap<Monomial, Rational>,
) {
    if i == supports.len() {
        let s = graft_unchecked(picked.clone());
        *acc.entry(s).or_insert_with(Rational::zero) += coeff;
        return;
    }
    for (m, c) in &supports[i] {
        let d = m.deg_x();
        if d + tail_min[i + 1] > budget {
            continue;
        }
        picked.push((*m).clone());
        expand(
            supports,
            tail_min,
            budget - d,
            i + 1,
            &coeff * *c,
            picked,
            acc,
        );
        picked.pop();
    }
}

/// `|f - g|_x = (1/2)^{ord_x(f - g)}`.
pub fn distance(f: &Series, g: &Series) -> Distance {
    let half = rat(1, 2);
    match (f - g).ord_x() {
        Order::Exact(n) => Distance::Exact(pow(&half, n)),
        Order::AtLeast(n) => Distance::Below(pow(&half, n)),
    }
}

pub(crate) fn pow(base: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * base)
}
