//! Bivariate polynomials over ℚ, read in the local ring ℚ[x,y] localized at (x,y).
//!
//! A polynomial is a unit of the local ring exactly when its constant term is
//! nonzero. Everything here is exact; there are no tolerances anywhere in the
//! crate.

mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use text::{parse_poly, Cursor, ParseError};
pub(crate) use text::render_monomial;

/// Exact rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The monomial `x^a y^b`.
///
/// Ordered graded-lexicographically with x > y: total degree first, then the
/// exponent of x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };
    pub const X: Monomial = Monomial { a: 1, b: 0 };
    pub const Y: Monomial = Monomial { a: 0, b: 1 };

    pub const fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub fn degree(self) -> u32 {
        self.a + self.b
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b)
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient(self, other: Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial::new(other.a - self.a, other.b - self.b))
    }

    /// All monomials of total degree exactly `d`, x-heaviest first.
    pub fn of_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).rev().map(move |a| Monomial::new(a, d - a))
    }

    /// All monomials of total degree `< d`, in ascending graded order.
    pub fn below_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..d).flat_map(|k| (0..=k).map(move |a| Monomial::new(a, k - a)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.a.cmp(&other.a))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(q(1))
    }

    pub fn x() -> Self {
        Poly::monomial(Monomial::X)
    }

    pub fn y() -> Self {
        Poly::monomial(Monomial::Y)
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(q(1), m)
    }

    /// `x^a y^b`.
    pub fn xy(a: u32, b: u32) -> Self {
        Poly::monomial(Monomial::new(a, b))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Linear form `cx·x + cy·y`.
    pub fn linear(cx: Q, cy: Q) -> Self {
        Poly::term(cx, Monomial::X) + Poly::term(cy, Monomial::Y)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Monomial) -> Q {
        self.terms.get(&m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(Monomial::ONE)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Lowest total degree of a term (the order in the local ring).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// If this is `c·x^a y^b` with a single term, return it.
    pub fn as_single_term(&self) -> Option<(Monomial, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Drop every term of total degree `>= d`.
    pub fn truncate(&self, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Split `f = x·fx + y·fy + c`, where `fy` collects the pure powers of y.
    ///
    /// The split is canonical: every term divisible by x goes to `fx`.
    pub fn split_xy(&self) -> (Poly, Poly, Q) {
        let mut fx = Poly::zero();
        let mut fy = Poly::zero();
        for (m, c) in &self.terms {
            if m.a > 0 {
                fx.add_term(Monomial::new(m.a - 1, m.b), c.clone());
            } else if m.b > 0 {
                fy.add_term(Monomial::new(0, m.b - 1), c.clone());
            }
        }
        (fx, fy, self.constant_term())
    }

    /// A polynomial `g` with `g·self ≡ 1 (mod m^d)`, for a local unit `self`.
    pub fn truncated_inverse(&self, d: u32) -> Option<Poly> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        // self = c0 (1 - h), h ∈ m; inverse = inv0 · Σ h^k
        let h = (Poly::one() - self.scale(&inv0)).truncate(d);
        let mut sum = Poly::one();
        let mut power = Poly::one();
        for _ in 1..d.max(1) {
            power = (&power * &h).truncate(d);
            if power.is_zero() {
                break;
            }
            sum = sum + power.clone();
        }
        Some(sum.scale(&inv0).truncate(d))
    }
}

/// A unit of the localized ring: nonzero constant term.
pub fn is_local_unit(p: &Poly) -> bool {
    !p.constant_term().is_zero()
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.clone() + rhs.clone()
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.clone() - rhs.clone()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render_poly(self))
    }
}

/// Serialized in the canonical text form.
impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&text::render_poly(self))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_poly(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChangeError {
    #[error("coordinate change matrix is singular")]
    Singular,
}

/// A constant invertible 2×2 matrix acting by the substitution
/// `x ↦ u11·x + u12·y`, `y ↦ u21·x + u22·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GL2Change {
    m: [[Q; 2]; 2],
}

impl GL2Change {
    pub fn new(m: [[Q; 2]; 2]) -> Result<Self, ChangeError> {
        let c = GL2Change { m };
        if c.det().is_zero() {
            Err(ChangeError::Singular)
        } else {
            Ok(c)
        }
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Result<Self, ChangeError> {
        GL2Change::new([[q(m[0][0]), q(m[0][1])], [q(m[1][0]), q(m[1][1])]])
    }

    pub fn identity() -> Self {
        GL2Change::from_ints([[1, 0], [0, 1]]).unwrap()
    }

    /// Exchange x and y.
    pub fn swap() -> Self {
        GL2Change::from_ints([[0, 1], [1, 0]]).unwrap()
    }

    pub fn entries(&self) -> &[[Q; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> Q {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let m = &self.m;
        GL2Change {
            m: [
                [&m[1][1] / &d, -&m[0][1] / &d],
                [-&m[1][0] / &d, &m[0][0] / &d],
            ],
        }
    }

    /// Images of x and y under the substitution.
    pub fn images(&self) -> (Poly, Poly) {
        (
            Poly::linear(self.m[0][0].clone(), self.m[0][1].clone()),
            Poly::linear(self.m[1][0].clone(), self.m[1][1].clone()),
        )
    }
}

/// Apply the substitution encoded by `u` to `p`.
///
/// `apply_change(apply_change(p, u), u.inverse()) == p`.
pub fn apply_change(p: &Poly, u: &GL2Change) -> Poly {
    let (xi, yi) = u.images();
    let max_a = p.terms().map(|(m, _)| m.a).max().unwrap_or(0);
    let max_b = p.terms().map(|(m, _)| m.b).max().unwrap_or(0);
    let xp: Vec<Poly> = powers(&xi, max_a);
    let yp: Vec<Poly> = powers(&yi, max_b);
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let t = (&xp[m.a as usize] * &yp[m.b as usize]).scale(c);
        out = out + t;
    }
    out
}

fn powers(p: &Poly, n: u32) -> Vec<Poly> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(Poly::one());
    for i in 0..n as usize {
        let next = &v[i] * p;
        v.push(next);
    }
    v
}

/// Is `c` an integer (used when rendering).
pub(crate) fn is_integer(c: &Q) -> bool {
    c.denom().is_one()
}

pub(crate) fn abs_q(c: &Q) -> Q {
    c.abs()
}
