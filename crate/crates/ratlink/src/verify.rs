//! Cross-checks between the independent pipelines, swept over all links
//! `b(q, p)` with `0 < p < q <= max_q`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::blocks::{canonical_block_form, to_all_even, to_all_even_by_tau, BlockDecomposition};
use crate::braid::{braid_index, braid_index_dl, cm_index, BraidIndexReport};
use crate::contfrac::{expand_even, expand_nonalternating, ContFrac};
use crate::error::{Error, Result};
use crate::homfly::{homfly, homfly_blocks, homfly_even, homfly_matrices, LaurentPoly2};
use crate::link::{
    build_diagram, complement_signed_vector, crossing_signs, reoriented, schubert_equivalent,
    signed_vector,
};
use crate::rational::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Roundtrip,
    Decomposition,
    Signs,
    Even,
    Braid,
    Homfly,
    Mfw,
    Parity,
    Mirror,
    Complement,
    Schubert,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Roundtrip,
        Check::Decomposition,
        Check::Signs,
        Check::Even,
        Check::Braid,
        Check::Homfly,
        Check::Mfw,
        Check::Parity,
        Check::Mirror,
        Check::Complement,
        Check::Schubert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Roundtrip => "roundtrip",
            Check::Decomposition => "decomposition",
            Check::Signs => "signs",
            Check::Even => "even",
            Check::Braid => "braid",
            Check::Homfly => "homfly",
            Check::Mfw => "mfw",
            Check::Parity => "parity",
            Check::Mirror => "mirror",
            Check::Complement => "complement",
            Check::Schubert => "schubert",
        }
    }

    fn needs_braid(self) -> bool {
        matches!(self, Check::Braid | Check::Mfw | Check::Schubert)
    }

    fn needs_homfly(self) -> bool {
        matches!(self, Check::Homfly | Check::Mfw | Check::Parity | Check::Mirror | Check::Schubert)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

fn fail(msg: String) -> Error {
    Error::Invariant(msg)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn fraction(q: u64, p: u64) -> Result<ExactRational> {
    ExactRational::new(p, q)
}

fn pq_even(q: u64, p: u64) -> bool {
    (p * q) % 2 == 0
}

/// Both nonalternating forms and the even form evaluate back to `p/q`.
pub fn check_roundtrip(q: u64, p: u64) -> Result<()> {
    let r = fraction(q, p)?;
    let (a, b) = expand_nonalternating(&r)?;
    let e = expand_even(&r)?;
    ensure(a.eval() == r && b.eval() == r && e.eval() == r, || format!("eval mismatch: {a} {b} {e}"))?;
    ensure(a.is_nonalternating() && b.is_nonalternating(), || "not nonalternating".into())?;
    let last_even = e.terms()[e.n()] % 2 == 0;
    ensure(e.is_even_form() && last_even == pq_even(q, p), || format!("bad even form {e}"))
}

/// Exactly one nonalternating form decomposes; its decomposition has an
/// exceptional block iff `pq` is odd.
pub fn check_decomposition(q: u64, p: u64) -> Result<BlockDecomposition> {
    let dec = canonical_block_form(&fraction(q, p)?)?;
    ensure(dec.has_exceptional() != pq_even(q, p), || format!("exceptional block mismatch in {dec}"))?;
    Ok(dec)
}

/// Crossing signs are constant on each block and flip between blocks.
pub fn check_signs(q: u64, p: u64) -> Result<()> {
    let dec = canonical_block_form(&fraction(q, p)?)?;
    let eps = crossing_signs(&dec.source().terms()[1..]);
    let mut prev: Option<i64> = None;
    for b in dec.blocks().iter().filter(|b| b.start > 0) {
        let run = &eps[b.start - 1..b.start - 1 + b.terms.len()];
        ensure(run.iter().all(|&e| e == run[0]), || format!("signs vary inside a block of {dec}"))?;
        ensure(prev != Some(run[0]), || format!("adjacent blocks share a sign in {dec}"))?;
        prev = Some(run[0]);
    }
    Ok(())
}

/// Block route, per-term route on the canonical and on the Euclid form, and
/// the direct expansion all give the same even form.
pub fn check_even(q: u64, p: u64) -> Result<ContFrac> {
    let r = fraction(q, p)?;
    let e = expand_even(&r)?;
    let dec = canonical_block_form(&r)?;
    let blocks = to_all_even(&dec)?;
    ensure(blocks == e, || format!("block route {blocks} != {e}"))?;
    let c = &dec.source().terms()[1..];
    let by_tau = to_all_even_by_tau(c, &crossing_signs(c))?;
    ensure(by_tau == e, || format!("tau route on canonical form {by_tau} != {e}"))?;
    let d = build_diagram(q, p)?;
    let by_tau = to_all_even_by_tau(&d.terms, &d.crossing_signs)?;
    ensure(by_tau == e, || format!("tau route on Euclid form {by_tau} != {e}"))?;
    Ok(e)
}

/// All braid formulas agree; for links the other orientation matches the
/// braid index of `b(q, q - p)`.
pub fn check_braid(q: u64, p: u64) -> Result<BraidIndexReport> {
    let report = braid_index(q, p)?;
    if q % 2 == 0 {
        let other = reoriented(&build_diagram(q, p)?);
        let expect = cm_index(&expand_even(&fraction(q, q - p)?)?)?;
        for conv in [-1, 1] {
            let got = braid_index_dl(&signed_vector(&other, conv))?;
            ensure(got == expect, || format!("reoriented b({q},{p}) conv {conv}: {got} != {expect}"))?;
        }
    }
    Ok(report)
}

/// Even, block and per-term products agree.
pub fn check_homfly(q: u64, p: u64) -> Result<LaurentPoly2> {
    let r = fraction(q, p)?;
    let h = homfly_even(&expand_even(&r)?)?;
    let dec = canonical_block_form(&r)?;
    ensure(homfly_blocks(&dec, -1)? == h, || "block product differs".into())?;
    ensure(homfly_matrices(&build_diagram(q, p)?)? == h, || "per-term product differs".into())?;
    Ok(h)
}

/// `(E - e)/2 + 1` equals the braid index.
pub fn check_mfw(poly: &LaurentPoly2, braid: u64) -> Result<()> {
    let bound = poly.mfw_bound()?;
    ensure(bound == braid as i64, || format!("mfw bound {bound} != braid index {braid}"))
}

/// z-exponents are even and `>= 0` for knots, odd and `>= -1` for links.
pub fn check_parity(q: u64, poly: &LaurentPoly2) -> Result<()> {
    let knot = q % 2 == 1;
    let ok = poly.terms().all(|(_, _, j)| if knot { j % 2 == 0 && j >= 0 } else { j % 2 != 0 && j >= -1 });
    ensure(ok, || format!("z-exponent parity broken in {poly}"))
}

/// Negating the even form mirrors the link: `a -> a^-1, z -> -z`, which for
/// knots is `a -> a^-1` alone. The block product with the opposite sign
/// gives the same mirror.
pub fn check_mirror(q: u64, p: u64, poly: &LaurentPoly2) -> Result<()> {
    let r = fraction(q, p)?;
    let neg = homfly_even(&expand_even(&r)?.negate())?;
    ensure(neg == poly.mirror_substitution(), || "mirror substitution law fails".into())?;
    if q % 2 == 1 {
        ensure(neg == poly.subst_a_inverse(), || "a -> 1/a law fails on a knot".into())?;
    }
    ensure(homfly_blocks(&canonical_block_form(&r)?, 1)? == neg, || "opposite block sign is not the mirror".into())
}

/// The complement signed vector has the same signed-vector braid index.
pub fn check_complement(q: u64, p: u64) -> Result<()> {
    let d = build_diagram(q, p)?;
    for conv in [-1, 1] {
        let sv = signed_vector(&d, conv);
        if sv.entries.len() < 2 {
            continue;
        }
        let (x, y) = (braid_index_dl(&sv)?, braid_index_dl(&complement_signed_vector(&sv)?)?);
        ensure(x == y, || format!("complement changes dl index: {x} != {y} (conv {conv})"))?;
    }
    Ok(())
}

pub fn digest(poly: &LaurentPoly2) -> String {
    let h = Sha256::digest(poly.to_string().as_bytes());
    h.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub q: u64,
    pub p: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub braid: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homfly_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mfw_bound: Option<i64>,
    pub flags: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepParameters {
    pub max_q: u64,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub links: u64,
    pub failures: u64,
    pub per_check: BTreeMap<String, CheckTally>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub parameters: SweepParameters,
    pub records: Vec<LinkRecord>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.summary.failures == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Recounts the summary from the per-link flags.
    pub fn tally(records: &[LinkRecord]) -> SweepSummary {
        let mut per_check: BTreeMap<String, CheckTally> = BTreeMap::new();
        for r in records {
            for (name, &ok) in &r.flags {
                let t = per_check.entry(name.clone()).or_default();
                if ok {
                    t.passed += 1;
                } else {
                    t.failed += 1;
                }
            }
        }
        let failures = per_check.values().map(|t| t.failed).sum();
        SweepSummary { links: records.len() as u64, failures, per_check }
    }
}

pub fn links_up_to(max_q: u64) -> Vec<(u64, u64)> {
    (2..=max_q).flat_map(|q| (1..q).filter(move |p| p.gcd(&q) == 1).map(move |p| (q, p))).collect()
}

struct Computed {
    record: LinkRecord,
    poly: Option<LaurentPoly2>,
    braid: Option<u64>,
}

fn record_flag<T>(rec: &mut LinkRecord, check: Check, res: Result<T>) -> Option<T> {
    match res {
        Ok(v) => {
            rec.flags.insert(check.name().into(), true);
            Some(v)
        }
        Err(e) => {
            rec.flags.insert(check.name().into(), false);
            rec.notes.push(format!("{check}: {e}"));
            None
        }
    }
}

fn run_link(q: u64, p: u64, checks: &[Check]) -> Computed {
    let mut rec = LinkRecord {
        q,
        p,
        braid: BTreeMap::new(),
        homfly_digest: None,
        mfw_bound: None,
        flags: BTreeMap::new(),
        notes: Vec::new(),
    };
    let has = |c: Check| checks.contains(&c);
    let even = pq_even(q, p);

    if has(Check::Roundtrip) {
        record_flag(&mut rec, Check::Roundtrip, check_roundtrip(q, p));
    }
    if has(Check::Decomposition) {
        record_flag(&mut rec, Check::Decomposition, check_decomposition(q, p));
    }
    if has(Check::Signs) {
        record_flag(&mut rec, Check::Signs, check_signs(q, p));
    }
    if has(Check::Even) && even {
        record_flag(&mut rec, Check::Even, check_even(q, p));
    }
    if has(Check::Complement) {
        record_flag(&mut rec, Check::Complement, check_complement(q, p));
    }

    let mut braid = None;
    if checks.iter().any(|c| c.needs_braid()) {
        let res = if has(Check::Braid) { check_braid(q, p) } else { braid_index(q, p) };
        let report = if has(Check::Braid) {
            record_flag(&mut rec, Check::Braid, res)
        } else {
            res.map_err(|e| rec.notes.push(format!("braid: {e}"))).ok()
        };
        if let Some(r) = report {
            braid = Some(r.value);
            rec.braid = r.formulas;
        }
    }

    let mut poly = None;
    if checks.iter().any(|c| c.needs_homfly()) {
        if has(Check::Homfly) && even {
            poly = record_flag(&mut rec, Check::Homfly, check_homfly(q, p));
        } else {
            poly = homfly(q, p).map(|(h, _)| h).map_err(|e| rec.notes.push(format!("homfly: {e}"))).ok();
        }
    }
    if let Some(h) = &poly {
        rec.homfly_digest = Some(digest(h));
        rec.mfw_bound = h.mfw_bound().ok();
        if has(Check::Parity) {
            record_flag(&mut rec, Check::Parity, check_parity(q, h));
        }
        if has(Check::Mirror) && even {
            record_flag(&mut rec, Check::Mirror, check_mirror(q, p, h));
        }
    }
    if has(Check::Mfw) {
        let res = match (&poly, braid) {
            (Some(h), Some(b)) => check_mfw(h, b),
            _ => Err(fail("missing polynomial or braid index".into())),
        };
        record_flag(&mut rec, Check::Mfw, res);
    }
    Computed { record: rec, poly, braid }
}

/// Oriented Schubert-equivalent pairs with `pq` even share HOMFLY polynomial
/// and braid index.
fn schubert_pass(computed: &mut [Computed]) {
    let index: BTreeMap<(u64, u64), usize> =
        computed.iter().enumerate().map(|(i, c)| ((c.record.q, c.record.p), i)).collect();
    let verdicts: Vec<Result<()>> = computed
        .par_iter()
        .map(|c| {
            let (q, p) = (c.record.q, c.record.p);
            if !pq_even(q, p) {
                return Ok(());
            }
            for p2 in (1..q).filter(|&p2| p2 != p && pq_even(q, p2) && schubert_equivalent(q, p, q, p2, true)) {
                let Some(&j) = index.get(&(q, p2)) else { continue };
                let other = &computed[j];
                ensure(c.poly.is_some() && c.poly == other.poly, || format!("HOMFLY differs from b({q},{p2})"))?;
                ensure(c.braid.is_some() && c.braid == other.braid, || format!("braid index differs from b({q},{p2})"))?;
            }
            Ok(())
        })
        .collect();
    for (c, v) in computed.iter_mut().zip(verdicts) {
        if pq_even(c.record.q, c.record.p) {
            record_flag(&mut c.record, Check::Schubert, v);
        }
    }
}

/// Runs the selected checks over every link with `q <= max_q` on the
/// current rayon pool. Records come back in `(q, p)` order.
pub fn run_sweep(max_q: u64, checks: &[Check]) -> SweepReport {
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let mut computed: Vec<Computed> =
        links_up_to(max_q).into_par_iter().map(|(q, p)| run_link(q, p, &checks)).collect();
    if checks.contains(&Check::Schubert) {
        schubert_pass(&mut computed);
    }
    let records: Vec<LinkRecord> = computed.into_iter().map(|c| c.record).collect();
    let summary = SweepReport::tally(&records);
    SweepReport {
        parameters: SweepParameters { max_q, checks: checks.iter().map(|c| c.name().to_string()).collect() },
        records,
        summary,
    }
}
