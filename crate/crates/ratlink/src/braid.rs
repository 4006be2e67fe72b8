//! Braid index of rational links by four independent formulas.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blocks::{canonical_block_form, BlockDecomposition};
use crate::contfrac::{expand_even, ContFrac};
use crate::error::{Error, Result};
use crate::link::{build_diagram, mirror, signed_vector, AnnotatedDiagram, SignedVector};
use crate::rational::ExactRational;

pub const CROMWELL_MURASUGI: &str = "cromwell_murasugi";
pub const BLOCKS: &str = "blocks";
pub const PREFERRED: &str = "preferred";
pub const SIGNED_MINUS: &str = "signed_vector_minus";
pub const SIGNED_PLUS: &str = "signed_vector_plus";
pub const SIGNED_DIRECT: &str = "signed_vector_direct";

fn half(x: i64) -> Result<i64> {
    if x % 2 != 0 {
        return Err(Error::OddSum(x));
    }
    Ok(x / 2)
}

/// `Σ|d_i| - t + 1` over the even form `[2d_0, .., 2d_n]`, where `t` counts
/// sign changes between neighbours.
pub fn cm_index(cf: &ContFrac) -> Result<u64> {
    let t = cf.terms();
    if let Some(&c) = t.iter().find(|c| *c % 2 != 0) {
        return Err(Error::OddArgument(c));
    }
    let d: Vec<i64> = t.iter().map(|c| c / 2).collect();
    let total: i64 = d.iter().map(|x| x.abs()).sum();
    let changes = d.windows(2).filter(|w| w[0] * w[1] < 0).count() as i64;
    Ok((total - changes + 1) as u64)
}

/// `1 + ½ Σ|c|` over the odd positions within each primitive block.
pub fn cm_index_blocks(dec: &BlockDecomposition) -> Result<u64> {
    if dec.has_exceptional() {
        return Err(Error::Exceptional);
    }
    let total: i64 = dec.blocks().iter().map(|b| b.odd_position_sum()).sum();
    Ok((half(total)? + 1) as u64)
}

/// Closed formula on a preferred diagram: `1 + ½ S + ½ c`, where `S` sums
/// the odd-index terms whose sign matches `ε(a1)` and the even-index terms
/// whose sign opposes it, and `c` is the end correction.
pub fn braid_index_preferred(d: &AnnotatedDiagram) -> Result<u64> {
    if !d.preferred {
        return Err(Error::Precondition("diagram is not in preferred form".into()));
    }
    if d.is_unknot() {
        return Ok(1);
    }
    let (a, e) = (&d.terms, &d.crossing_signs);
    let n = a.len();
    let e1 = e[0];
    let s: i64 = (0..n)
        .filter(|&i| if i % 2 == 0 { e[i] == e1 } else { e[i] == -e1 })
        .map(|i| a[i])
        .sum();
    let matched = if n % 2 == 1 { e[n - 1] == e1 } else { e[n - 1] == -e1 };
    let correction = if matched { 0 } else { 1 };
    Ok(half(2 + s + correction)? as u64)
}

/// Signed-vector formula; the convention `sign_t(a1) = ±1` selects the
/// variant.
pub fn braid_index_dl(sv: &SignedVector) -> Result<u64> {
    let b = &sv.entries;
    let n = b.len();
    if n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    if b.contains(&0) {
        return Err(Error::Precondition("signed vector has a zero entry".into()));
    }
    let c = sv.convention;
    if c.abs() != 1 {
        return Err(Error::Precondition("convention must be ±1".into()));
    }
    let (first, last) = (b[0].signum(), b[n - 1].signum());
    let mut num = 4 + 2 - c * (first + last);
    for (i, &x) in b.iter().enumerate() {
        let odd_index = i % 2 == 0;
        if (odd_index && x * c > 0) || (!odd_index && x * c < 0) {
            num += 2 * x.abs();
        }
    }
    if num % 4 != 0 {
        return Err(Error::OddSum(num));
    }
    Ok((num / 4) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidIndexReport {
    pub value: u64,
    pub formulas: BTreeMap<String, u64>,
    pub used_mirror: bool,
}

fn all_formulas(d: &AnnotatedDiagram) -> Result<BTreeMap<String, u64>> {
    let r = ExactRational::new(d.p, d.q)?;
    let mut out = BTreeMap::new();
    out.insert(CROMWELL_MURASUGI.to_string(), cm_index(&expand_even(&r)?)?);
    out.insert(BLOCKS.to_string(), cm_index_blocks(&canonical_block_form(&r)?)?);
    out.insert(PREFERRED.to_string(), braid_index_preferred(d)?);
    out.insert(SIGNED_MINUS.to_string(), braid_index_dl(&signed_vector(d, -1))?);
    out.insert(SIGNED_PLUS.to_string(), braid_index_dl(&signed_vector(d, 1))?);
    Ok(out)
}

/// Runs every formula on the preferred representative, switching to the
/// mirror `(q, q - p)` when `pq` is odd. All values must agree.
pub fn braid_index(q: u64, p: u64) -> Result<BraidIndexReport> {
    let d = build_diagram(q, p)?;
    if d.is_unknot() {
        let formulas = [(CROMWELL_MURASUGI.to_string(), cm_index(&ContFrac::new(vec![0])?)?)].into();
        return Ok(BraidIndexReport { value: 1, formulas, used_mirror: false });
    }
    let used_mirror = !d.preferred;
    let mut formulas = if used_mirror { all_formulas(&mirror(&d))? } else { all_formulas(&d)? };
    if used_mirror {
        formulas.insert(SIGNED_DIRECT.to_string(), braid_index_dl(&signed_vector(&d, 1))?);
    }
    let value = *formulas.values().next().expect("non-empty");
    if formulas.values().any(|&v| v != value) {
        return Err(Error::Disagreement(format!("b({q},{p}): {formulas:?}")));
    }
    Ok(BraidIndexReport { value, formulas, used_mirror })
}
