//! Oriented standard diagrams of rational links.
//!
//! A diagram of `b(q, p)` is drawn from the Euclid expansion `[0, a1, .., an]`
//! with every `a_i > 0`. Crossing signs are recorded for the drawing with
//! `sign_t(a1) = +1`; the other convention negates all of them.

use std::fmt;

use num_integer::Integer;

use crate::contfrac::euclid;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedDiagram {
    pub q: u64,
    pub p: u64,
    pub terms: Vec<i64>,
    pub twist_signs: Vec<i64>,
    pub crossing_signs: Vec<i64>,
    pub preferred: bool,
}

impl AnnotatedDiagram {
    pub fn is_unknot(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_knot(&self) -> bool {
        self.q % 2 == 1
    }

    fn with_orientation(q: u64, p: u64, terms: Vec<i64>, preferred: bool) -> Self {
        let twist_signs = (0..terms.len())
            .map(|i| if i % 2 == 0 { terms[i].signum() } else { -terms[i].signum() })
            .collect();
        let crossing_signs = if terms.is_empty() {
            Vec::new()
        } else if preferred {
            crossing_signs(&terms)
        } else {
            other_orientation_signs(&terms)
        };
        Self { q, p, terms, twist_signs, crossing_signs, preferred }
    }
}

impl fmt::Display for AnnotatedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0")?;
        for (a, e) in self.terms.iter().zip(&self.crossing_signs) {
            write!(f, ",{a}^{}", if *e > 0 { '+' } else { '-' })?;
        }
        write!(f, "]")
    }
}

/// Standard diagram of `b(q, p)`, in preferred orientation whenever `pq` is
/// even. `(1, 0)` is the unknot.
pub fn build_diagram(q: u64, p: u64) -> Result<AnnotatedDiagram> {
    if q == 1 && p == 0 {
        return Ok(AnnotatedDiagram::with_orientation(1, 0, Vec::new(), true));
    }
    check_fraction(q, p)?;
    let r = ExactRational::new(p, q)?;
    let terms = euclid(&r)?.terms()[1..].to_vec();
    Ok(AnnotatedDiagram::with_orientation(q, p, terms, (p * q) % 2 == 0))
}

pub(crate) fn check_fraction(q: u64, p: u64) -> Result<()> {
    let bad = |reason| Error::InvalidFraction { q: q as i64, p: p as i64, reason };
    if q > i64::MAX as u64 {
        return Err(bad("too large"));
    }
    if p == 0 || p >= q {
        return Err(bad("need 0 < p < q"));
    }
    if p.gcd(&q) != 1 {
        return Err(bad("p and q must be coprime"));
    }
    Ok(())
}

/// Crossing signs read off by the block automaton, starting from
/// `sign(a1)`. Past the first term only parities matter.
pub fn crossing_signs(terms: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(terms.len());
    let mut sign = if terms.first().is_some_and(|&a| a < 0) { -1 } else { 1 };
    // offset within the current block; None at a block boundary
    let mut pos: Option<usize> = None;
    for &a in terms {
        out.push(sign);
        let odd = a % 2 != 0;
        pos = match pos {
            None if odd => Some(1),
            None => {
                sign = -sign;
                None
            }
            Some(k) if k % 2 == 1 => Some(k + 1),
            Some(_) if odd => {
                sign = -sign;
                None
            }
            Some(k) => Some(k + 1),
        };
    }
    out
}

/// Crossing signs of the diagram when the orientation is not the preferred
/// one: reverse one component of a two-component link, or the only
/// orientation of a knot with `pq` odd.
pub fn other_orientation_signs(terms: &[i64]) -> Vec<i64> {
    if terms[0] > 1 {
        let mut ext = vec![1, terms[0] - 1];
        ext.extend_from_slice(&terms[1..]);
        let e = crossing_signs(&ext);
        std::iter::once(-e[0]).chain(e[2..].iter().map(|x| -x)).collect()
    } else {
        let mut ext = vec![terms[1] + 1];
        ext.extend_from_slice(&terms[2..]);
        let e = crossing_signs(&ext);
        [-e[0], -e[0]].into_iter().chain(e[1..].iter().map(|x| -x)).collect()
    }
}

/// Reverses one component of a two-component link. Knots are returned
/// unchanged since reversing a knot keeps every crossing sign.
pub fn reoriented(d: &AnnotatedDiagram) -> AnnotatedDiagram {
    if d.is_knot() || d.is_unknot() {
        return d.clone();
    }
    AnnotatedDiagram::with_orientation(d.q, d.p, d.terms.clone(), !d.preferred)
}

/// Mirror image `b(q, q - p)`, drawn again with positive terms. For links the
/// mirror of the preferred orientation is the non-preferred one and back.
pub fn mirror(d: &AnnotatedDiagram) -> AnnotatedDiagram {
    if d.is_unknot() {
        return d.clone();
    }
    let p = d.q - d.p;
    let r = ExactRational::new(p, d.q).expect("valid fraction");
    let terms = euclid(&r).expect("finite").terms()[1..].to_vec();
    let preferred = if d.is_knot() { p % 2 == 0 } else { !d.preferred };
    AnnotatedDiagram::with_orientation(d.q, p, terms, preferred)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedVector {
    pub entries: Vec<i64>,
    pub convention: i64,
}

/// `b_i = ε(a_i) a_i` under the convention `sign_t(a1) = convention`,
/// padded to odd length by `a_n -> (a_n - 1, 1)`.
pub fn signed_vector(d: &AnnotatedDiagram, convention: i64) -> SignedVector {
    let mut terms = d.terms.clone();
    let mut signs = d.crossing_signs.clone();
    if terms.len() % 2 == 0 && !terms.is_empty() {
        let last = terms.len() - 1;
        terms[last] -= 1;
        terms.push(1);
        signs.push(signs[last]);
    }
    let entries = terms.iter().zip(&signs).map(|(a, e)| convention * e * a).collect();
    SignedVector { entries, convention }
}

/// Signed vector of the mirror fraction `b(q, q - p)` computed from the
/// entries alone.
pub fn complement_signed_vector(sv: &SignedVector) -> Result<SignedVector> {
    let b = &sv.entries;
    let n = b.len();
    if n < 2 {
        return Err(Error::Precondition("complement needs at least two entries".into()));
    }
    if n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    let sg = |x: i64| x.signum();
    let mut head = if b[0].abs() > 1 {
        let mut h = vec![sg(b[0]), sg(b[0]) * (b[0].abs() - 1)];
        h.extend_from_slice(&b[1..n - 1]);
        h
    } else {
        let mut h = vec![sg(b[1]) * (b[1].abs() + 1)];
        h.extend_from_slice(&b[2..n - 1]);
        h
    };
    let tail = if b[n - 1].abs() > 1 {
        vec![sg(b[n - 1]) * (b[n - 1].abs() - 1), sg(b[n - 1])]
    } else {
        head.pop();
        vec![sg(b[n - 2]) * (b[n - 2].abs() + 1)]
    };
    let entries = head.into_iter().chain(tail).map(|x| -x).collect();
    Ok(SignedVector { entries, convention: sv.convention })
}

/// Schubert's classification: oriented equivalence works modulo `2q`,
/// unoriented modulo `q`.
pub fn schubert_equivalent(q: u64, p: u64, q2: u64, p2: u64, oriented: bool) -> bool {
    if q != q2 {
        return false;
    }
    let m = if oriented { 2 * q as u128 } else { q as u128 };
    let (p, p2) = (p as u128 % m, p2 as u128 % m);
    p == p2 || (p * p2) % m == 1 % m
}
