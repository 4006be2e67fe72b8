//! HOMFLY polynomials of rational links by three matrix-product pipelines.
//!
//! Every pipeline evaluates `(1, 0) · F_k ··· F_1 · v` where
//! `v = (1, a z^-1 - a^-1 z^-1)` and `F_1` is the factor of the first term.

mod fib;
mod matrix;
mod poly;

pub use fib::{fib, fib_closed, FibPoly};
pub use matrix::{m_matrix, m_power, Mat2};
pub use poly::LaurentPoly2;

use crate::blocks::{BlockDecomposition, BlockKind};
use crate::contfrac::{expand_even, ContFrac};
use crate::error::{Error, Result};
use crate::link::{build_diagram, AnnotatedDiagram};
use crate::rational::ExactRational;

/// One factor of a product: `M(c)` or `M(2σ)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    M(i64),
    Power { sign: i64, n: i64 },
}

impl Factor {
    pub fn matrix(&self) -> Result<Mat2> {
        match *self {
            Factor::M(c) => m_matrix(c),
            Factor::Power { sign, n } => m_power(sign, n),
        }
    }
}

pub fn boundary_column() -> [LaurentPoly2; 2] {
    [LaurentPoly2::one(), LaurentPoly2::from_terms([(1.into(), 1, -1), ((-1).into(), -1, -1)])]
}

/// Closes a product whose first matrix sits next to the column.
fn close<'a>(mats: impl IntoIterator<Item = &'a Mat2>) -> LaurentPoly2 {
    let mut w = boundary_column();
    for m in mats {
        w = m.apply(&w);
    }
    let [top, _] = w;
    top
}

fn require_leading_zero(cf: &ContFrac) -> Result<()> {
    if cf.terms()[0] != 0 {
        return Err(Error::Precondition(format!("{cf} must start with 0")));
    }
    Ok(())
}

/// `(1,0) · M((-1)^n c_n) ··· M(c_2) M(-c_1) · v` on an even form.
pub fn homfly_even(cf: &ContFrac) -> Result<LaurentPoly2> {
    require_leading_zero(cf)?;
    if let Some(&c) = cf.terms().iter().find(|c| *c % 2 != 0) {
        return Err(Error::OddArgument(c));
    }
    let mats = cf.terms()[1..]
        .iter()
        .enumerate()
        .map(|(k, &c)| m_matrix(if k % 2 == 0 { -c } else { c }))
        .collect::<Result<Vec<_>>>()?;
    Ok(close(&mats))
}

/// Factors contributed by each primitive block, first block first. `sigma1`
/// is the sign of the arguments in the first block; it flips per block.
pub fn block_factors(dec: &BlockDecomposition, sigma1: i64) -> Result<Vec<Factor>> {
    require_leading_zero(dec.source())?;
    let mut out = Vec::new();
    let mut sigma = sigma1;
    for b in dec.blocks() {
        if b.start == 0 {
            continue;
        }
        let t: Vec<i64> = b.terms.iter().map(|c| c.abs()).collect();
        match b.kind {
            BlockKind::Exceptional => return Err(Error::Exceptional),
            BlockKind::Trivial => out.push(Factor::M(sigma * t[0])),
            BlockKind::Nontrivial => {
                let last = t.len() - 1;
                out.push(Factor::M(sigma * (t[0] + 1)));
                for (i, &c) in t.iter().enumerate().skip(1) {
                    if i % 2 == 1 {
                        out.push(Factor::Power { sign: sigma, n: c - 1 });
                    } else {
                        out.push(Factor::M(sigma * (c + if i == last { 1 } else { 2 })));
                    }
                }
            }
        }
        sigma = -sigma;
    }
    Ok(out)
}

/// Block-by-block product. With `sigma1 = -sign(c1)` this equals
/// `homfly_even(to_all_even(dec))`; the opposite sign gives the mirror.
pub fn homfly_blocks(dec: &BlockDecomposition, sigma1: i64) -> Result<LaurentPoly2> {
    let mats = block_factors(dec, sigma1)?
        .iter()
        .map(Factor::matrix)
        .collect::<Result<Vec<_>>>()?;
    Ok(close(&mats))
}

/// `H(a_i)` for each term of a preferred diagram, driven by crossing signs.
pub fn diagram_factors(d: &AnnotatedDiagram) -> Result<Vec<Mat2>> {
    if !d.preferred {
        return Err(Error::Precondition("diagram is not in preferred form".into()));
    }
    let (a, e) = (&d.terms, &d.crossing_signs);
    let mut out = Vec::with_capacity(a.len());
    for i in 0..a.len() {
        let (ai, ei) = (a[i], e[i]);
        let s = a[0].signum();
        let odd = ai % 2 != 0;
        let m = if i == 0 {
            m_matrix(-(if odd { ai + s } else { ai }))?
        } else if ei != e[i - 1] {
            m_matrix(-ei * if odd { ai + s } else { ai })?
        } else if (i % 2 == 0 && ei == s) || (i % 2 == 1 && ei == -s) {
            m_matrix(-ei * if odd { ai + s } else { ai + 2 * s })?
        } else {
            let k = ai.abs();
            let f = |n: i64, shift: i64| -> Result<LaurentPoly2> {
                Ok(fib_closed(n)?.to_laurent(-ei).shift(ei * shift, 0))
            };
            Mat2::new(f(k, ai - s)?, f(k - 1, ai)?, f(k - 1, ai - 2 * s)?, f(k - 2, ai - s)?)
        };
        out.push(m);
    }
    Ok(out)
}

/// Per-term product over a preferred diagram.
pub fn homfly_matrices(d: &AnnotatedDiagram) -> Result<LaurentPoly2> {
    Ok(close(&diagram_factors(d)?))
}

/// HOMFLY polynomial of `b(q, p)`. When `pq` is odd it is read off the
/// mirror `b(q, q - p)` by `a -> a^-1`; the flag reports that.
pub fn homfly(q: u64, p: u64) -> Result<(LaurentPoly2, bool)> {
    let d = build_diagram(q, p)?;
    if d.is_unknot() {
        return Ok((LaurentPoly2::one(), false));
    }
    if d.preferred {
        let r = ExactRational::new(p, q)?;
        return Ok((homfly_even(&expand_even(&r)?)?, false));
    }
    let (m, _) = homfly(q, q - p)?;
    Ok((m.subst_a_inverse(), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::canonical_block_form;

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    fn cf(t: &[i64]) -> ContFrac {
        ContFrac::new(t.to_vec()).unwrap()
    }

    const FIG8: &str = "a^2 + a^-2 - z^2 - 1";
    const TREFOIL: &str = "2a^2 - a^4 + a^2 z^2";
    const HOPF: &str = "a^3 z^-1 - a z^-1 - a z";

    #[test]
    fn even_examples() {
        assert_eq!(homfly_even(&cf(&[0])).unwrap(), LaurentPoly2::one());
        assert_eq!(homfly_even(&cf(&[0, 2, 2])).unwrap(), p(FIG8));
        assert_eq!(homfly_even(&cf(&[0, 2, -2])).unwrap(), p(TREFOIL));
        assert_eq!(homfly_even(&cf(&[0, 2])).unwrap(), p(HOPF));
        assert_eq!(homfly_even(&cf(&[0, 3])), Err(Error::OddArgument(3)));
    }

    #[test]
    fn blocks_of_3244_over_4195() {
        let dec = canonical_block_form(&ExactRational::new(3244, 4195).unwrap()).unwrap();
        assert_eq!(dec.to_string(), "[0; 1,3,2,2,3; 5,3,3]");
        use Factor::*;
        assert_eq!(
            block_factors(&dec, -1).unwrap(),
            [
                M(-2),
                Power { sign: -1, n: 2 },
                M(-4),
                Power { sign: -1, n: 1 },
                M(-4),
                M(6),
                Power { sign: 1, n: 2 },
                M(4),
            ]
        );
        let even = crate::blocks::to_all_even(&dec).unwrap();
        assert_eq!(homfly_blocks(&dec, -1).unwrap(), homfly_even(&even).unwrap());
    }

    #[test]
    fn blocks_small_examples() {
        let dec = canonical_block_form(&ExactRational::new(2, 5).unwrap()).unwrap();
        assert_eq!(homfly_blocks(&dec, -1).unwrap(), p(FIG8));
        let dec = canonical_block_form(&ExactRational::new(0, 1).unwrap()).unwrap();
        assert_eq!(homfly_blocks(&dec, -1).unwrap(), LaurentPoly2::one());
        let dec = canonical_block_form(&ExactRational::new(1, 3).unwrap()).unwrap();
        assert_eq!(homfly_blocks(&dec, -1), Err(Error::Exceptional));
    }

    #[test]
    fn matrices_examples() {
        let d = build_diagram(49654, 34651).unwrap();
        let even = cf(&[0, 2, -2, 4, 4, 2, 2, -2, 2, -2, 2, -2, 4, 6, -2, 2]);
        assert_eq!(homfly_matrices(&d).unwrap(), homfly_even(&even).unwrap());
        assert_eq!(homfly_matrices(&build_diagram(5, 2).unwrap()).unwrap(), p(FIG8));
        assert_eq!(homfly_matrices(&build_diagram(2, 1).unwrap()).unwrap(), p(HOPF));
        assert!(homfly_matrices(&build_diagram(3, 1).unwrap()).is_err());
    }

    #[test]
    fn dispatcher_examples() {
        assert_eq!(homfly(3, 1).unwrap(), (p("2a^-2 - a^-4 + a^-2 z^2"), true));
        assert_eq!(homfly(3, 2).unwrap(), (p(TREFOIL), false));
        assert_eq!(homfly(5, 2).unwrap(), (p(FIG8), false));
        assert_eq!(homfly(1, 0).unwrap(), (LaurentPoly2::one(), false));
    }

    #[test]
    fn spans() {
        assert_eq!(p(FIG8).a_span().unwrap(), (-2, 2));
        assert_eq!(p(HOPF).a_span().unwrap(), (1, 3));
        assert_eq!(p(HOPF).mfw_bound().unwrap(), 2);
        assert_eq!(p(TREFOIL).a_span().unwrap(), (2, 4));
        assert_eq!(p(TREFOIL).mfw_bound().unwrap(), 2);
    }
}
