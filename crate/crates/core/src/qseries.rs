//! Exact polynomials and truncated power series in `q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial in `q` with big-integer coefficients.
///
/// Zero coefficients are never stored, so derived equality is equality of
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct QPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Builds `Σ counts[e] q^e` from a dense histogram.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_terms(
            counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (e as i64, c)),
        )
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn sum_of_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| serde_json::json!([e, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [[exp, \"coeff\"], ...], got {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        let mut p = Self::zero();
        for item in arr {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let e = pair[0].as_i64().ok_or_else(bad)?;
            let c = match &pair[1] {
                serde_json::Value::String(s) => s.parse::<BigInt>().map_err(|_| bad())?,
                serde_json::Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad)?,
                _ => return Err(bad()),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(mut self, rhs: QPolynomial) -> QPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                *acc.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QPolynomial { terms: acc }
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let power = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if e == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{power}")?;
            } else if *c == -BigInt::one() {
                write!(f, "-{power}")?;
            } else {
                write!(f, "{c}*{power}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for QPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for raw in s.split(" + ") {
            let term = raw.trim();
            let bad = || Error::Parse(format!("bad polynomial term `{term}`"));
            let (coeff, power) = match term.split_once('*') {
                Some((c, q)) => (c.parse::<BigInt>().map_err(|_| bad())?, Some(q)),
                None if term.contains('q') => {
                    let (sign, rest) = match term.strip_prefix('-') {
                        Some(rest) => (-BigInt::one(), rest),
                        None => (BigInt::one(), term),
                    };
                    (sign, Some(rest))
                }
                None => (term.parse::<BigInt>().map_err(|_| bad())?, None),
            };
            let exp = match power {
                None => 0,
                Some("q") => 1,
                Some(q) => q
                    .strip_prefix("q^")
                    .and_then(|e| e.parse::<i64>().ok())
                    .ok_or_else(bad)?,
            };
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

/// Polynomial whose exponents count quarter powers of `q`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuarterPolynomial(pub QPolynomial);

impl QuarterPolynomial {
    pub fn inner(&self) -> &QPolynomial {
        &self.0
    }

    /// Multiplies by `q^{k/4}`.
    pub fn shift_quarters(&self, k: i64) -> Self {
        Self(self.0.shift(k))
    }

    /// Converts to whole powers of `q`; fails unless every exponent is a multiple of 4.
    pub fn to_qpolynomial(&self) -> Result<QPolynomial> {
        if let Some((e, _)) = self.0.terms().find(|(e, _)| e.rem_euclid(4) != 0) {
            return Err(Error::Domain(format!(
                "exponent {e}/4 is not an integer power of q"
            )));
        }
        Ok(QPolynomial::from_terms(
            self.0.terms().map(|(e, c)| (e / 4, c.clone())),
        ))
    }
}

/// Power series in `q` known exactly up to and including degree `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeriesTruncated {
    coeffs: Vec<BigInt>,
}

impl QSeriesTruncated {
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(0, BigInt::one(), degree)
    }

    pub fn monomial(exp: usize, coeff: BigInt, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if exp <= degree {
            s.coeffs[exp] = coeff;
        }
        s
    }

    /// Truncates a polynomial; negative exponents are rejected.
    pub fn from_polynomial(p: &QPolynomial, degree: usize) -> Result<Self> {
        let mut s = Self::zero(degree);
        for (e, c) in p.terms() {
            if e < 0 {
                return Err(Error::Domain(format!(
                    "q^{e} has no place in a power series"
                )));
            }
            if (e as usize) <= degree {
                s.coeffs[e as usize] = c.clone();
            }
        }
        Ok(s)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> &BigInt {
        &self.coeffs[exp]
    }

    pub fn to_polynomial(&self) -> QPolynomial {
        QPolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (e as i64, c.clone())),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree());
        Self {
            coeffs: (0..=d).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree());
        Self {
            coeffs: (0..=d).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree());
        let mut out = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Multiplicative inverse, defined when the constant term is ±1.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || *c0 == -BigInt::one()) {
            return Err(Error::Domain(format!(
                "constant term {c0} is not a unit"
            )));
        }
        let d = self.degree();
        let mut inv = Self::zero(d);
        inv.coeffs[0] = c0.clone();
        for n in 1..=d {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &inv.coeffs[n - k];
            }
            // c0 is ±1, so dividing is multiplying
            inv.coeffs[n] = -(acc * c0);
        }
        Ok(inv)
    }
}

/// `(q)_n = (1-q)(1-q^2)...(1-q^n)` truncated at degree `degree`.
pub fn pochhammer_trunc(n: usize, degree: usize) -> QSeriesTruncated {
    let mut out = QSeriesTruncated::one(degree);
    for i in 1..=n.min(degree) {
        // in-place multiply by (1 - q^i), high degrees first
        for e in (i..=degree).rev() {
            let prev = out.coeffs[e - i].clone();
            out.coeffs[e] -= prev;
        }
    }
    out
}

/// `(q)_∞` truncated at degree `degree`.
pub fn pochhammer_infinite_trunc(degree: usize) -> QSeriesTruncated {
    pochhammer_trunc(degree, degree)
}

/// Gaussian polynomial `[A over B]_q`, zero outside `0 <= B <= A`.
pub fn gaussian(a: i64, b: i64) -> QPolynomial {
    if b < 0 || a < 0 || b > a {
        return QPolynomial::zero();
    }
    let b = b.min(a - b) as usize;
    let a = a as usize;
    // row[k] holds [n over k] for the current n
    let mut row: Vec<QPolynomial> = vec![QPolynomial::one()];
    for n in 1..=a {
        let width = b.min(n);
        let mut next = Vec::with_capacity(width + 1);
        for k in 0..=width {
            let keep = if k < row.len() { row[k].clone() } else { QPolynomial::zero() };
            let shifted = if k >= 1 {
                row[k - 1].shift((n - k) as i64)
            } else {
                QPolynomial::zero()
            };
            next.push(&keep + &shifted);
        }
        row = next;
    }
    row.swap_remove(b)
}

/// Memo table for Gaussian polynomials via `[A,B] = [A-1,B] + q^{A-B}[A-1,B-1]`.
#[derive(Debug, Default)]
pub struct GaussianTable {
    memo: HashMap<(i64, i64), QPolynomial>,
}

impl GaussianTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, a: i64, b: i64) -> QPolynomial {
        if b < 0 || a < 0 || b > a {
            return QPolynomial::zero();
        }
        let b = b.min(a - b);
        if b == 0 {
            return QPolynomial::one();
        }
        if let Some(p) = self.memo.get(&(a, b)) {
            return p.clone();
        }
        let value = &self.get(a - 1, b) + &self.get(a - 1, b - 1).shift(a - b);
        self.memo.insert((a, b), value.clone());
        value
    }
}

/// `q^{mn} g(q^{-1})`, the reciprocal normalization of a Gaussian polynomial.
pub fn q_inverse_normalized(g: &QPolynomial, m: i64, n: i64) -> QPolynomial {
    g.reflect().shift(m * n)
}
