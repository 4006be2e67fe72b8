//! Fibonacci polynomials `F_{n+1} = x F_n + F_{n-1}`, `F_0 = 0`, `F_1 = 1`,
//! extended by `F_{-1} = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LaurentPoly2;
use crate::error::{Error, Result};

/// Dense coefficients, index = power of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibPoly {
    pub coeffs: Vec<BigInt>,
}

impl FibPoly {
    fn trimmed(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Substitutes `x = sign * z`.
    pub fn to_laurent(&self, sign: i64) -> LaurentPoly2 {
        LaurentPoly2::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| {
            let c = if sign < 0 && k % 2 == 1 { -c } else { c.clone() };
            (c, 0, k as i64)
        }))
    }
}

/// By the recurrence.
pub fn fib(n: i64) -> Result<FibPoly> {
    if n < -1 {
        return Err(Error::Precondition(format!("F_{n} is undefined")));
    }
    if n == -1 {
        return Ok(FibPoly { coeffs: vec![BigInt::one()] });
    }
    let (mut prev, mut cur): (Vec<BigInt>, Vec<BigInt>) = (vec![], vec![BigInt::one()]);
    if n == 0 {
        return Ok(FibPoly { coeffs: prev });
    }
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] += c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(FibPoly::trimmed(cur))
}

/// By `F_n(x) = Σ_{j=0}^{⌊(n-1)/2⌋} C(n-1-j, j) x^{n-1-2j}`.
pub fn fib_closed(n: i64) -> Result<FibPoly> {
    if n < -1 {
        return Err(Error::Precondition(format!("F_{n} is undefined")));
    }
    if n == -1 {
        return Ok(FibPoly { coeffs: vec![BigInt::one()] });
    }
    if n == 0 {
        return Ok(FibPoly { coeffs: vec![] });
    }
    let mut coeffs = vec![BigInt::zero(); n as usize];
    for j in 0..=(n - 1) / 2 {
        coeffs[(n - 1 - 2 * j) as usize] = binomial(n - 1 - j, j);
    }
    Ok(FibPoly::trimmed(coeffs))
}

fn binomial(n: i64, k: i64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn co(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(fib(-1).unwrap().coeffs, co(&[1]));
        assert_eq!(fib(0).unwrap().coeffs, co(&[]));
        assert_eq!(fib(1).unwrap().coeffs, co(&[1]));
        assert_eq!(fib(4).unwrap().coeffs, co(&[0, 2, 0, 1]));
        assert!(fib(-2).is_err());
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for n in -1..=40 {
            assert_eq!(fib(n).unwrap(), fib_closed(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn substitution() {
        assert_eq!(fib(4).unwrap().to_laurent(-1), "-z^3 - 2 z".parse().unwrap());
    }
}
