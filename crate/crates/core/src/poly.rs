//! Exact polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Univariate polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct RationalPolynomial {
    var: String,
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(var: impl Into<String>, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { var: var.into(), coeffs }
    }

    pub fn zero(var: impl Into<String>) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn constant(var: impl Into<String>, k: BigRational) -> Self {
        Self::new(var, vec![k])
    }

    /// `x − root`.
    pub fn linear(var: impl Into<String>, root: BigRational) -> Self {
        Self::new(var, vec![-root, BigRational::one()])
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.var.clone(), (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var.clone());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.var.clone(), out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.var.clone(), self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Indices where the coefficients of `self` and `other` differ.
    pub fn coefficient_diff(&self, other: &Self) -> Vec<(usize, BigRational, BigRational)> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .filter_map(|k| {
                let (a, b) = (self.coeff(k), other.coeff(k));
                (a != b).then_some((k, a, b))
            })
            .collect()
    }
}

/// The unique polynomial of degree `< points.len()` through `points`.
pub fn lagrange(var: &str, points: &[(BigRational, BigRational)]) -> Result<RationalPolynomial> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::bad(format!("duplicate interpolation node {x}")));
        }
    }
    let mut total = RationalPolynomial::zero(var);
    for (j, (xj, yj)) in points.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        let mut basis = RationalPolynomial::constant(var, BigRational::one());
        let mut denom = BigRational::one();
        for (m, (xm, _)) in points.iter().enumerate() {
            if m != j {
                basis = basis.mul(&RationalPolynomial::linear(var, xm.clone()));
                denom *= xj - xm;
            }
        }
        total = total.add(&basis.scale(&(yj / denom)));
    }
    Ok(total)
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{k}", self.var),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({a})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    var: String,
    coeffs: Vec<[String; 2]>,
}

impl From<RationalPolynomial> for PolyJson {
    fn from(p: RationalPolynomial) -> Self {
        PolyJson {
            var: p.var,
            coeffs: p.coeffs.iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect(),
        }
    }
}

impl TryFrom<PolyJson> for RationalPolynomial {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|[n, d]| {
                let n: BigInt = n.parse().map_err(|_| Error::bad(format!("bad numerator {n:?}")))?;
                let d: BigInt = d.parse().map_err(|_| Error::bad(format!("bad denominator {d:?}")))?;
                if d.is_zero() {
                    return Err(Error::bad("zero denominator"));
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalPolynomial::new(j.var, coeffs))
    }
}

/// Polynomial in `p` and `c` with rational coefficients, keyed by
/// `(deg_p, deg_c)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bivariate {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Bivariate {
    /// Builds from integer monomials `(coef, deg_p, deg_c)`.
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut out = Bivariate::default();
        for &(k, i, j) in terms {
            out.add_term((i, j), BigRational::from_integer(k.into()));
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), k: BigRational) {
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += k;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn constant(k: BigRational) -> Self {
        let mut out = Bivariate::default();
        out.add_term((0, 0), k);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Bivariate::default();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }

    pub fn product(factors: &[Bivariate]) -> Self {
        factors.iter().fold(Self::constant(BigRational::one()), |acc, f| acc.mul(f))
    }

    pub fn eval(&self, p: &BigRational, c: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), k)| k * num_traits::pow(p.clone(), i as usize) * num_traits::pow(c.clone(), j as usize))
            .sum()
    }

    /// Substitutes `c` and returns the univariate polynomial in `p`.
    pub fn at_c(&self, c: &BigRational) -> RationalPolynomial {
        let deg = self.terms.keys().map(|&(i, _)| i as usize).max().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (&(i, j), k) in &self.terms {
            coeffs[i as usize] += k * num_traits::pow(c.clone(), j as usize);
        }
        RationalPolynomial::new("p", coeffs)
    }
}

/// Recursive-descent parser for polynomial expressions in `p` and `c`:
/// integers, `+ - * ^`, parentheses, and juxtaposition as multiplication
/// (`2c`, `6p(c+1)`).
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn fail<T>(&self, what: &str) -> Result<T> {
        Err(Error::bad(format!("polynomial parse error at byte {}: {what}", self.pos)))
    }

    fn expr(&mut self) -> Result<Bivariate> {
        let mut acc = Bivariate::default();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&if negate { t.neg() } else { t });
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Bivariate> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(ch) if ch.is_ascii_digit() || ch == b'p' || ch == b'c' || ch == b'(' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Bivariate> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.uint()?;
        Ok((0..e).fold(Bivariate::constant(BigRational::one()), |acc, _| acc.mul(&base)))
    }

    fn atom(&mut self) -> Result<Bivariate> {
        match self.peek() {
            Some(b'p') => {
                self.pos += 1;
                Ok(Bivariate::from_terms(&[(1, 1, 0)]))
            }
            Some(b'c') => {
                self.pos += 1;
                Ok(Bivariate::from_terms(&[(1, 0, 1)]))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let k = self.uint()?;
                Ok(Bivariate::from_terms(&[(k as i64, 0, 0)]))
            }
            _ => self.fail("expected p, c, integer or '('"),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        self.peek();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| self.fail("expected integer"), Ok)
    }
}

impl Bivariate {
    pub fn parse(src: &str) -> Result<Self> {
        let mut parser = Parser { src: src.as_bytes(), pos: 0 };
        let out = parser.expr()?;
        if parser.peek().is_some() {
            return parser.fail("trailing input");
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&key, k) in &other.terms {
            out.add_term(key, k.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Bivariate { terms: self.terms.iter().map(|(&key, k)| (key, -k)).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Bivariate::default();
        for (&key, v) in &self.terms {
            out.add_term(key, v * k);
        }
        out
    }
}
