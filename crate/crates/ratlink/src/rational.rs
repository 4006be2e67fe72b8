//! Reduced fractions of arbitrary-precision integers, with a point at infinity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced fraction `p/q` with `q >= 0`. Infinity is unsigned, stored as `(1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: BigInt,
    den: BigInt,
}

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::Indeterminate);
        }
        if den.is_zero() {
            return Ok(Self::infinity());
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        Ok(Self { num: num / &g, den: den / g })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), den: BigInt::one() }
    }

    pub fn infinity() -> Self {
        Self { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        Self { num: -&self.num, den: self.den.clone() }
    }

    /// `p*q` is even. Infinity counts as `1/0`, which is even.
    pub fn pq_even(&self) -> bool {
        self.num.is_even() || self.den.is_even()
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected p/q, got {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalises_sign() {
        let r = ExactRational::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(ExactRational::new(0, 7).unwrap().to_string(), "0/1");
    }

    #[test]
    fn infinity_forms() {
        assert_eq!(ExactRational::new(5, 0).unwrap(), ExactRational::infinity());
        assert_eq!(ExactRational::new(-5, 0).unwrap().to_string(), "1/0");
        assert_eq!(ExactRational::infinity().neg(), ExactRational::infinity());
        assert_eq!(ExactRational::new(0, 0), Err(Error::Indeterminate));
    }

    #[test]
    fn parses() {
        let r: ExactRational = "-1402/1813".parse().unwrap();
        assert_eq!(r, ExactRational::new(-1402, 1813).unwrap());
        assert!("3".parse::<ExactRational>().is_err());
        assert!("a/b".parse::<ExactRational>().is_err());
    }
}
