//! Integer Laurent polynomials in `a` and `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Sparse map `(i, j) -> coefficient of a^i z^j`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coef: impl Into<BigInt>, i: i64, j: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, coef.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (c, i, j) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: i64, j: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, i64, i64)> {
        self.terms.iter().map(|(&(i, j), c)| (c, i, j))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `a^i z^j`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&(x, y), c)| ((x + i, y + j), c.clone())).collect() }
    }

    /// Minimum and maximum `a`-exponent.
    pub fn a_span(&self) -> Result<(i64, i64)> {
        let mut it = self.terms.keys().map(|k| k.0);
        let first = it.next().ok_or(Error::Precondition("zero polynomial has no a-span".into()))?;
        Ok(it.fold((first, first), |(lo, hi), i| (lo.min(i), hi.max(i))))
    }

    /// `(E - e)/2 + 1` from the `a`-span.
    pub fn mfw_bound(&self) -> Result<i64> {
        let (lo, hi) = self.a_span()?;
        if (hi - lo) % 2 != 0 {
            return Err(Error::OddSum(hi - lo));
        }
        Ok((hi - lo) / 2 + 1)
    }

    /// `a -> a^{-1}`.
    pub fn subst_a_inverse(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(i, j), c)| ((-i, j), c.clone())).collect() }
    }

    /// `a -> a^{-1}, z -> -z`: the polynomial of the mirror image.
    pub fn mirror_substitution(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(i, j), c)| ((-i, j), if j % 2 == 0 { c.clone() } else { -c }))
            .collect();
        Self { terms }
    }

    pub fn to_latex(&self) -> String {
        self.render(|var, e| match e {
            1 => var.to_string(),
            _ => format!("{var}^{{{e}}}"),
        }, "")
    }

    fn render(&self, pow: impl Fn(char, i64) -> String, sep: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors = Vec::new();
            let mag = c.abs();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            if i != 0 {
                factors.push(pow('a', i));
            }
            if j != 0 {
                factors.push(pow('z', j));
            }
            out.push_str(&factors.join(sep));
        }
        out
    }

    /// `[[coef, i, j], ..]`; coefficients outside `i64` are strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&(i, j), c)| {
                    let coef = match c.to_i64() {
                        Some(v) => Value::from(v),
                        None => Value::from(c.to_string()),
                    };
                    Value::Array(vec![coef, Value::from(i), Value::from(j)])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [[coef,i,j],..], got {v}"));
        let mut p = Self::zero();
        for t in v.as_array().ok_or_else(bad)? {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
            let coef: BigInt = match &t[0] {
                Value::Number(n) => n.to_string().parse().map_err(|_| bad())?,
                Value::String(s) => s.parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            };
            let i = t[1].as_i64().ok_or_else(bad)?;
            let j = t[2].as_i64().ok_or_else(bad)?;
            p.add_term(i, j, coef);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(|var, e| match e {
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        }, " ");
        f.write_str(&s)
    }
}

impl FromStr for LaurentPoly2 {
    type Err = Error;

    /// Reads the plain text form, e.g. `a^3 z^-1 - a z^-1 - 2 a z^2`.
    fn from_str(s: &str) -> Result<Self> {
        Parser { src: s, pos: 0 }.poly()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace() || c == '*') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let d = self.digits();
        let e: i64 = d.parse().map_err(|_| self.err("bad exponent"))?;
        if braced {
            if self.peek() != Some('}') {
                return Err(self.err("expected }"));
            }
            self.pos += 1;
        }
        Ok(if neg { -e } else { e })
    }

    fn poly(&mut self) -> Result<LaurentPoly2> {
        let mut p = LaurentPoly2::zero();
        self.skip_ws();
        if self.src.trim() == "0" {
            return Ok(p);
        }
        let mut first = true;
        while self.pos < self.src.len() {
            self.skip_ws();
            let mut sign = BigInt::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return Err(self.err("expected + or -")),
            }
            first = false;
            self.skip_ws();
            let d = self.digits();
            let mut coef: BigInt = if d.is_empty() { BigInt::one() } else { d.parse().expect("digits") };
            let had_coef = !d.is_empty();
            coef *= sign;
            let (mut i, mut j, mut vars) = (0, 0, false);
            loop {
                self.skip_ws();
                match self.peek() {
                    Some('a') => {
                        self.pos += 1;
                        i += self.exponent()?;
                    }
                    Some('z') => {
                        self.pos += 1;
                        j += self.exponent()?;
                    }
                    _ => break,
                }
                vars = true;
            }
            if !had_coef && !vars {
                return Err(self.err("empty term"));
            }
            p.add_term(i, j, coef);
            self.skip_ws();
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;

    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;

    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;

    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut acc: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                *acc.entry((i1 + i2, j1 + j2)).or_default() += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly2 { terms: acc }
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;

    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly2 {
            type Output = LaurentPoly2;

            fn $f(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                (&self).$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;

    fn neg(self) -> LaurentPoly2 {
        -&self
    }
}
