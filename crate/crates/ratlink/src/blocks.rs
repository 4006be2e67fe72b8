//! Primitive-block decomposition of nonalternating continued fractions and
//! the conversion to the all-even form.

use std::fmt;

use crate::contfrac::{expand_nonalternating, ContFrac};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Trivial,
    Nontrivial,
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveBlock {
    pub start: usize,
    pub terms: Vec<i64>,
    pub kind: BlockKind,
}

impl PrimitiveBlock {
    /// `|c|` summed over the block's even offsets.
    pub fn odd_position_sum(&self) -> i64 {
        self.terms.iter().step_by(2).map(|c| c.abs()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    source: ContFrac,
    blocks: Vec<PrimitiveBlock>,
}

impl BlockDecomposition {
    pub fn source(&self) -> &ContFrac {
        &self.source
    }

    pub fn blocks(&self) -> &[PrimitiveBlock] {
        &self.blocks
    }

    pub fn has_exceptional(&self) -> bool {
        self.blocks.iter().any(|b| b.kind == BlockKind::Exceptional)
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let terms: Vec<String> = b.terms.iter().map(i64::to_string).collect();
            write!(f, "{}", terms.join(","))?;
            if b.kind == BlockKind::Exceptional {
                write!(f, "!")?;
            }
        }
        write!(f, "]")
    }
}

/// Greedy left-to-right parse. An odd term opens a block that closes at the
/// first odd term an even distance (at least 2) further on. A final odd
/// singleton is accepted as exceptional only when it is `±1`.
pub fn decompose(cf: &ContFrac) -> Option<BlockDecomposition> {
    if !cf.is_nonalternating() {
        return None;
    }
    let c = cf.terms();
    let n = cf.n();
    let mut blocks = Vec::new();
    let mut m = 0;
    while m <= n {
        let block = |end: usize, kind| PrimitiveBlock { start: m, terms: c[m..=end].to_vec(), kind };
        if c[m] % 2 == 0 {
            blocks.push(block(m, BlockKind::Trivial));
            m += 1;
            continue;
        }
        if m == n {
            if c[m].abs() != 1 {
                return None;
            }
            blocks.push(block(m, BlockKind::Exceptional));
            break;
        }
        let end = (m + 2..=n).step_by(2).find(|&j| c[j] % 2 != 0)?;
        blocks.push(block(end, BlockKind::Nontrivial));
        m = end + 1;
    }
    Some(BlockDecomposition { source: cf.clone(), blocks })
}

/// The nonalternating form of `r` that decomposes, with its decomposition.
/// Fails loudly if both or neither of the two forms decompose.
pub fn canonical_block_form(r: &ExactRational) -> Result<BlockDecomposition> {
    let (a, b) = expand_nonalternating(r)?;
    if r.is_zero() {
        return decompose(&a).ok_or_else(|| Error::Invariant("[0] must decompose".into()));
    }
    match (decompose(&a), decompose(&b)) {
        (Some(d), None) | (None, Some(d)) => Ok(d),
        (Some(_), Some(_)) => Err(Error::Invariant(format!("both {a} and {b} decompose"))),
        (None, None) => Err(Error::Invariant(format!("neither {a} nor {b} decomposes"))),
    }
}

/// Rewrites `c_i, c_{i+1}, c_{i+2}` (all of sign `δ`) so that `c_{i+1}`
/// becomes `|c_{i+1}| - 1` alternating `∓2` terms.
pub fn two_step(cf: &ContFrac, i: usize, delta: i64) -> Result<ContFrac> {
    let c = cf.terms();
    if i + 2 > cf.n() {
        return Err(Error::Index { index: i + 2, len: c.len() });
    }
    if delta.abs() != 1 || c[i..=i + 2].iter().any(|x| x.signum() != delta) {
        return Err(Error::Precondition(format!("terms {i}..={} must have sign {delta}", i + 2)));
    }
    let k = c[i + 1].abs();
    let flip = if k % 2 == 0 { 1 } else { -1 };
    let mut out = c[..i].to_vec();
    out.push(c[i] + delta);
    out.extend((0..k - 1).map(|j| if j % 2 == 0 { -2 * delta } else { 2 * delta }));
    out.push(flip * (c[i + 2] + delta));
    out.extend(c[i + 3..].iter().map(|x| flip * x));
    ContFrac::new(out)
}

/// All-even image of one block. `delta` is the sign carried in from earlier
/// blocks. Returns the terms and the sign to carry into later blocks.
pub fn block_to_even(block: &PrimitiveBlock, delta: i64) -> Result<(Vec<i64>, i64)> {
    match block.kind {
        BlockKind::Exceptional => Err(Error::Exceptional),
        BlockKind::Trivial => Ok((vec![delta * block.terms[0]], 1)),
        BlockKind::Nontrivial => {
            let t = &block.terms;
            let last = t.len() - 1;
            let mut mags = vec![t[0].abs() + 1];
            let mut carried = 0;
            for (i, c) in t.iter().enumerate().skip(1) {
                let c = c.abs();
                if i % 2 == 1 {
                    mags.extend(std::iter::repeat(2).take(c as usize - 1));
                    carried += c;
                } else {
                    mags.push(c + if i == last { 1 } else { 2 });
                }
            }
            let d = delta * t[0].signum();
            let out = mags
                .into_iter()
                .enumerate()
                .map(|(i, m)| if i % 2 == 0 { d * m } else { -d * m })
                .collect();
            Ok((out, if carried % 2 == 0 { 1 } else { -1 }))
        }
    }
}

/// All-even form assembled block by block.
pub fn to_all_even(dec: &BlockDecomposition) -> Result<ContFrac> {
    let mut out = Vec::with_capacity(dec.source.terms().len() * 2);
    let mut sign = 1;
    for b in &dec.blocks {
        let (terms, parity) = block_to_even(b, sign)?;
        out.extend(terms);
        sign *= parity;
    }
    ContFrac::new(out)
}

/// Sign exponent driving the per-term route. `terms` are `a_1..a_n`,
/// `signs` their crossing signs, `i` is 1-based.
pub fn tau(terms: &[i64], signs: &[i64], i: usize) -> i64 {
    let a = |j: usize| terms[j - 1];
    let e = |j: usize| signs[j - 1];
    let s = terms[0].signum();
    let changes = (2..=i).filter(|&j| e(j) != e(j - 1)).count() as i64;
    let runs: i64 = (2..i)
        .filter(|&j| e(j) == e(j - 1) && e(j) == alt(j) * s)
        .map(|j| a(j).abs() - 2)
        .sum();
    (i as i64 - 1) - changes + runs
}

fn alt(j: usize) -> i64 {
    if j % 2 == 0 { 1 } else { -1 }
}

/// All-even form built term by term from crossing signs.
pub fn to_all_even_by_tau(terms: &[i64], signs: &[i64]) -> Result<ContFrac> {
    if terms.len() != signs.len() || terms.is_empty() {
        return Err(Error::Precondition("terms and signs must be non-empty and equal length".into()));
    }
    let s = terms[0].signum();
    let mut out = vec![0];
    for i in 1..=terms.len() {
        let a = terms[i - 1];
        let odd = a % 2 != 0;
        let t = if tau(terms, signs, i) % 2 == 0 { 1 } else { -1 };
        if i == 1 {
            out.push(if odd { a + s } else { a });
        } else if signs[i - 1] != signs[i - 2] {
            out.push(t * if odd { a + s } else { a });
        } else if signs[i - 1] == -alt(i) * s {
            out.push(t * if odd { a + s } else { a + 2 * s });
        } else {
            out.extend((0..a.abs() - 1).map(|k| t * s * if k % 2 == 0 { 2 } else { -2 }));
        }
    }
    ContFrac::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::crossing_signs;

    fn cf(t: &[i64]) -> ContFrac {
        ContFrac::new(t.to_vec()).unwrap()
    }

    fn q(p: i64, q: i64) -> ExactRational {
        ExactRational::new(p, q).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&cf(&[0, 1, 3, 2, 2, 3, 5, 1, 3])).unwrap();
        assert_eq!(d.to_string(), "[0; 1,3,2,2,3; 5,1,3]");
        assert!(decompose(&cf(&[0, 1, 3, 2, 2, 3, 5, 1, 2, 1])).is_none());
        let d = decompose(&cf(&[0, 3, 2, 3, 3, 1, 2, 3, 4, 3, 1])).unwrap();
        assert_eq!(d.to_string(), "[0; 3,2,3; 3,1,2,3,4,3,1]");
        let kinds: Vec<_> = d.blocks().iter().map(|b| b.kind).collect();
        assert_eq!(kinds, [BlockKind::Trivial, BlockKind::Nontrivial, BlockKind::Nontrivial]);
        assert!(decompose(&cf(&[0, 1, -3])).is_none());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_block_form(&q(1402, 1813)).unwrap().to_string(), "[0; 1,3,2,2,3; 5,1,3]");
        assert_eq!(
            canonical_block_form(&q(5075, 17426)).unwrap().to_string(),
            "[0; 3,2,3; 3,1,2,3,4,3,1]"
        );
        assert_eq!(canonical_block_form(&q(0, 1)).unwrap().to_string(), "[0]");
    }

    #[test]
    fn one_third_ends_in_exceptional_one() {
        // [0,3] would also parse if any odd final singleton were exceptional.
        let d = canonical_block_form(&q(1, 3)).unwrap();
        assert_eq!(d.to_string(), "[0; 2; 1!]");
        assert!(d.has_exceptional());
        assert!(decompose(&cf(&[0, 3])).is_none());
    }

    #[test]
    fn two_step_examples() {
        let x = cf(&[1, 2, 3, 4, 2, 1, 6, 3, 5, 3]);
        let y = two_step(&x, 2, 1).unwrap();
        assert_eq!(y, cf(&[1, 2, 4, -2, 2, -2, 3, 1, 6, 3, 5, 3]));
        assert_eq!(y.eval(), x.eval());
        let y = two_step(&cf(&[2, 1, 2]), 0, 1).unwrap();
        assert_eq!(y, cf(&[3, -3]));
        assert_eq!(y.eval(), q(8, 3));
        assert!(two_step(&cf(&[2, -1, 2]), 0, 1).is_err());
    }

    #[test]
    fn block_to_even_examples() {
        let b = PrimitiveBlock { start: 2, terms: vec![3, 4, 2, 1, 6, 3, 5], kind: BlockKind::Nontrivial };
        assert_eq!(block_to_even(&b, 1).unwrap(), (vec![4, -2, 2, -2, 4, -8, 2, -2, 6], 1));
        let b = PrimitiveBlock { start: 1, terms: vec![1, 3, 2, 2, 3], kind: BlockKind::Nontrivial };
        assert_eq!(block_to_even(&b, 1).unwrap(), (vec![2, -2, 2, -4, 2, -4], -1));
        let b = PrimitiveBlock { start: 1, terms: vec![4], kind: BlockKind::Trivial };
        assert_eq!(block_to_even(&b, 1).unwrap(), (vec![4], 1));
        let b = PrimitiveBlock { start: 1, terms: vec![1], kind: BlockKind::Exceptional };
        assert_eq!(block_to_even(&b, 1), Err(Error::Exceptional));
    }

    #[test]
    fn to_all_even_examples() {
        let d = decompose(&cf(&[0, 1, 3, 2, 2, 3, 5, 1, 3])).unwrap();
        assert_eq!(to_all_even(&d).unwrap(), cf(&[0, 2, -2, 2, -4, 2, -4, -6, 4]));
        // [0,1,2,3,4,2,1,6,3,5,3] itself has no decomposition; its twin does.
        assert!(decompose(&cf(&[0, 1, 2, 3, 4, 2, 1, 6, 3, 5, 3])).is_none());
        let d = canonical_block_form(&q(34651, 49654)).unwrap();
        assert_eq!(d.to_string(), "[0; 1,2,3; 4; 2; 1,6,3; 5,2,1]");
        assert_eq!(
            to_all_even(&d).unwrap(),
            cf(&[0, 2, -2, 4, 4, 2, 2, -2, 2, -2, 2, -2, 4, 6, -2, 2])
        );
        assert_eq!(to_all_even(&decompose(&cf(&[0, 2])).unwrap()).unwrap(), cf(&[0, 2]));
        let d = canonical_block_form(&q(1, 3)).unwrap();
        assert_eq!(to_all_even(&d), Err(Error::Exceptional));
    }

    #[test]
    fn tau_values_for_34651_over_49654() {
        let a = [1, 2, 3, 4, 2, 1, 6, 3, 5, 3];
        let e = crossing_signs(&a);
        let t: Vec<i64> = (1..=10).map(|i| tau(&a, &e, i)).collect();
        // τ(9) is 8 here, which is the value the displayed even form needs.
        assert_eq!(t, [0, 1, 2, 2, 2, 2, 3, 8, 8, 9]);
        assert_eq!(
            to_all_even_by_tau(&a, &e).unwrap(),
            cf(&[0, 2, -2, 4, 4, 2, 2, -2, 2, -2, 2, -2, 4, 6, -2, 2])
        );
    }

    #[test]
    fn tau_route_on_negated_terms() {
        let a = [-1, -3, -2, -2, -3, -5, -1, -3];
        let e = crossing_signs(&a);
        assert_eq!(to_all_even_by_tau(&a, &e).unwrap(), cf(&[0, -2, 2, -2, 4, -2, 4, 6, -4]));
    }
}
