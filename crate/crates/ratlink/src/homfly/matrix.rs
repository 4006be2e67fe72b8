use std::ops::Mul;

use super::fib::fib_closed;
use super::LaurentPoly2;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[LaurentPoly2; 2]; 2],
}

impl Mat2 {
    pub fn new(a: LaurentPoly2, b: LaurentPoly2, c: LaurentPoly2, d: LaurentPoly2) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::new(LaurentPoly2::one(), LaurentPoly2::zero(), LaurentPoly2::zero(), LaurentPoly2::one())
    }

    /// `self * (x, y)^T`.
    pub fn apply(&self, v: &[LaurentPoly2; 2]) -> [LaurentPoly2; 2] {
        let [[a, b], [c, d]] = &self.m;
        [&(a * &v[0]) + &(b * &v[1]), &(c * &v[0]) + &(d * &v[1])]
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        let (x, y) = (&self.m, &rhs.m);
        let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

/// `M(2r)`, with the top-left entry written as a geometric sum so that no
/// `a^2 - 1` denominator appears. `M(0)` is the identity.
pub fn m_matrix(c: i64) -> Result<Mat2> {
    if c % 2 != 0 {
        return Err(Error::OddArgument(c));
    }
    let r = c / 2;
    if r == 0 {
        return Ok(Mat2::identity());
    }
    let top_left = if r > 0 {
        LaurentPoly2::from_terms((1..=r).map(|k| (1.into(), -(2 * k - 1), 1)))
    } else {
        LaurentPoly2::from_terms((1..=-r).map(|k| ((-1).into(), 2 * k - 1, 1)))
    };
    Ok(Mat2::new(
        top_left,
        LaurentPoly2::monomial(1, -2 * r, 0),
        LaurentPoly2::one(),
        LaurentPoly2::zero(),
    ))
}

/// `M(2σ)^n` in closed form through Fibonacci polynomials in `σz`.
pub fn m_power(sign: i64, n: i64) -> Result<Mat2> {
    if sign.abs() != 1 || n < 0 {
        return Err(Error::Precondition(format!("m_power({sign}, {n})")));
    }
    let f = |k: i64, shift: i64| -> Result<LaurentPoly2> {
        Ok(fib_closed(k)?.to_laurent(sign).shift(-sign * shift, 0))
    };
    Ok(Mat2::new(f(n + 1, n)?, f(n, n + 1)?, f(n, n - 1)?, f(n - 1, n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    fn mat(a: &str, b: &str, c: &str, d: &str) -> Mat2 {
        Mat2::new(p(a), p(b), p(c), p(d))
    }

    #[test]
    fn m_examples() {
        assert_eq!(m_matrix(2).unwrap(), mat("a^-1 z", "a^-2", "1", "0"));
        assert_eq!(m_matrix(-2).unwrap(), mat("-a z", "a^2", "1", "0"));
        assert_eq!(m_matrix(4).unwrap(), mat("a^-1 z + a^-3 z", "a^-4", "1", "0"));
        assert_eq!(m_matrix(0).unwrap(), Mat2::identity());
        assert_eq!(m_matrix(3), Err(Error::OddArgument(3)));
    }

    #[test]
    fn power_examples() {
        assert_eq!(m_power(1, 0).unwrap(), Mat2::identity());
        assert_eq!(m_power(1, 2).unwrap(), mat("a^-2 z^2 + a^-2", "a^-3 z", "a^-1 z", "a^-2"));
        assert_eq!(m_power(-1, 1).unwrap(), m_matrix(-2).unwrap());
    }

    #[test]
    fn power_is_repeated_product() {
        for sign in [1, -1] {
            let m = m_matrix(2 * sign).unwrap();
            let mut acc = Mat2::identity();
            for n in 0..=12 {
                assert_eq!(m_power(sign, n).unwrap(), acc, "sign {sign}, n {n}");
                acc = &acc * &m;
            }
        }
    }
}
