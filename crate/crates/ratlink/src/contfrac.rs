//! Finite simple continued fractions `[c0, c1, ..., cn]`.
//!
//! Evaluation applies `M(c) = [[c, 1], [1, 0]]` right to left to `(1, 0)`,
//! so every integer sequence has a value, possibly `∞`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContFrac {
    terms: Vec<i64>,
}

impl ContFrac {
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<i64> {
        self.terms
    }

    /// Index of the last term.
    pub fn n(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn eval(&self) -> ExactRational {
        let (mut p, mut q) = (BigInt::one(), BigInt::zero());
        for &c in self.terms.iter().rev() {
            let next = BigInt::from(c) * &p + &q;
            q = p;
            p = next;
        }
        ExactRational::new(p, q).expect("continuant vector is never null")
    }

    pub fn negate(&self) -> Self {
        Self { terms: self.terms.iter().map(|c| -c).collect() }
    }

    pub fn is_nonsingular(&self) -> bool {
        self.terms[1..].iter().all(|&c| c != 0)
    }

    pub fn is_nonalternating(&self) -> bool {
        if !self.is_nonsingular() {
            return false;
        }
        let Some(&c1) = self.terms.get(1) else {
            return true;
        };
        let s = c1.signum();
        self.terms[1..].iter().all(|c| c.signum() == s)
            && (self.terms[0] == 0 || self.terms[0].signum() == s)
    }

    pub fn is_even_form(&self) -> bool {
        self.is_nonsingular() && self.terms[..self.n()].iter().all(|c| c % 2 == 0)
    }
}

impl fmt::Display for ContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for ContFrac {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [c0,...,cn], got {s:?}")))?;
        let terms = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

fn finite(r: &ExactRational) -> Result<(BigInt, BigInt)> {
    if r.is_infinite() {
        return Err(Error::Infinite);
    }
    Ok((r.numer().clone(), r.denom().clone()))
}

/// Regular expansion of `r >= 0`: `c1..cn >= 1` and `cn >= 2` when `n >= 1`.
pub fn euclid(r: &ExactRational) -> Result<ContFrac> {
    let (mut p, mut q) = finite(r)?;
    if p.is_negative() {
        return Err(Error::Precondition("euclid expects a non-negative value".into()));
    }
    let mut terms = Vec::new();
    loop {
        let (c, rem) = p.div_mod_floor(&q);
        terms.push(to_i64(&c)?);
        if rem.is_zero() {
            return ContFrac::new(terms);
        }
        p = q;
        q = rem;
    }
}

/// The other nonalternating expansion with the same value.
pub fn twin(cf: &ContFrac) -> ContFrac {
    let t = cf.terms();
    let n = cf.n();
    let s = if t[n] < 0 { -1 } else { 1 };
    if t[n] == 0 {
        return cf.clone();
    }
    let mut out = t.to_vec();
    if t[n].abs() > 1 {
        out[n] -= s;
        out.push(s);
    } else if n == 0 {
        out = vec![0, s];
    } else {
        out.pop();
        out[n - 1] += s;
    }
    ContFrac { terms: out }
}

/// Both nonalternating expansions: the Euclid form (`|cn| > 1`) first.
pub fn expand_nonalternating(r: &ExactRational) -> Result<(ContFrac, ContFrac)> {
    if r.is_zero() {
        return Ok((ContFrac { terms: vec![0] }, ContFrac { terms: vec![0] }));
    }
    let first = if r.is_negative() { euclid(&r.neg())?.negate() } else { euclid(r)? };
    let second = twin(&first);
    Ok((first, second))
}

/// The unique even form, built by nearest-even quotients.
pub fn expand_even(r: &ExactRational) -> Result<ContFrac> {
    let (mut p, mut q) = finite(r)?;
    let mut terms = Vec::new();
    loop {
        if q.is_one() {
            terms.push(to_i64(&p)?);
            return ContFrac::new(terms);
        }
        let mut c = p.div_floor(&q);
        if c.is_odd() {
            c += 1;
        }
        terms.push(to_i64(&c)?);
        let rem = &p - &c * &q;
        p = q;
        q = rem;
        if q.is_negative() {
            p = -p;
            q = -q;
        }
    }
}

/// `[.., c_i, c_{i+1}, ..] -> [.., c_i + δ, -δ, δ - c_{i+1}, -c_{i+2}, ..]`.
pub fn insert_pair(cf: &ContFrac, i: usize, delta: i64) -> Result<ContFrac> {
    if delta.abs() != 1 {
        return Err(Error::Precondition("delta must be ±1".into()));
    }
    let t = cf.terms();
    if i >= cf.n() {
        return Err(Error::Index { index: i, len: t.len() });
    }
    let mut out = t[..i].to_vec();
    out.push(t[i] + delta);
    out.push(-delta);
    out.push(delta - t[i + 1]);
    out.extend(t[i + 2..].iter().map(|c| -c));
    Ok(ContFrac { terms: out })
}

/// Merges `c_{j-1}, 0, c_{j+1}` into `c_{j-1} + c_{j+1}`.
pub fn absorb_zero(cf: &ContFrac, j: usize) -> Result<ContFrac> {
    let t = cf.terms();
    if j == 0 || j >= cf.n() {
        return Err(Error::Index { index: j, len: t.len() });
    }
    if t[j] != 0 {
        return Err(Error::Precondition(format!("term {j} is {} not 0", t[j])));
    }
    let mut out = t[..j - 1].to_vec();
    out.push(t[j - 1] + t[j + 1]);
    out.extend_from_slice(&t[j + 2..]);
    Ok(ContFrac { terms: out })
}

/// `[0, c1, ..] -> [0, s, c1 - s, c2, ..]` with `s = sign(c1)`; the result
/// evaluates to `s - eval(cf)`. With `|c1| = 1` the leading `±1` is merged
/// into `c2` instead, which is the inverse rewrite.
pub fn complement(cf: &ContFrac) -> Result<ContFrac> {
    let t = cf.terms();
    if t[0] != 0 || t.len() < 2 || !cf.is_nonsingular() {
        return Err(Error::Precondition("complement expects [0,c1,..,cn] nonsingular".into()));
    }
    let s = t[1].signum();
    if t[1].abs() > 1 {
        let mut out = vec![0, s, t[1] - s];
        out.extend_from_slice(&t[2..]);
        return Ok(ContFrac { terms: out });
    }
    if t.len() == 2 {
        return Ok(ContFrac { terms: vec![0] });
    }
    let mut out = vec![0, t[2] + s];
    out.extend_from_slice(&t[3..]);
    Ok(ContFrac { terms: out })
}
