//! Sufficient local conditions for the vanishing of Galois invariants of a
//! Tate-twisted newform over the local cyclotomic towers at the primes of
//! its (square-free) level.
//!
//! For each `ℓ | N` with `m_ℓ` the order of `ℓ` in `(Z/p)^×`:
//!
//! * `ℓ ≢ 1 (mod p)`;
//! * if `ℓ | M`: `m_ℓ ∤ 1-k+i` and `m_ℓ ∤ 1-i`;
//! * if `ℓ | N/M`: `gcd(m_ℓ, φ(M)) = 1`, `m_ℓ ∤ k` and `m_ℓ ∤ k-2`.
//!
//! Divisibility follows `m | 0`: a twist that makes an exponent vanish gives
//! the trivial character and fails.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Level, weight and nebentypus conductor of a newform; other fields in an
/// ingested record are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewformRecord {
    pub label: String,
    #[serde(rename = "N")]
    pub level: u64,
    #[serde(rename = "k")]
    pub weight: u64,
    #[serde(rename = "M")]
    pub conductor: u64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(NewformRecord),
    Many(Vec<NewformRecord>),
}

impl NewformRecord {
    pub fn new(label: impl Into<String>, level: u64, weight: u64, conductor: u64) -> Result<Self> {
        let r = Self { label: label.into(), level, weight, conductor };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if self.level == 0 || self.conductor == 0 {
            return Err(Error::InvalidRecord(format!("{}: N and M must be positive", self.label)));
        }
        if self.weight < 2 {
            return Err(Error::InvalidRecord(format!("{}: weight {} < 2", self.label, self.weight)));
        }
        if self.level % self.conductor != 0 {
            return Err(Error::InvalidRecord(format!(
                "{}: M = {} does not divide N = {}",
                self.label, self.conductor, self.level
            )));
        }
        if arith::factorize(self.level).iter().any(|&(_, e)| e > 1) {
            return Err(Error::NotSquareFree(self.level));
        }
        Ok(())
    }

    /// Parses a single record or an array of records and validates each.
    pub fn parse_json(text: &str) -> Result<Vec<Self>> {
        let parsed: OneOrMany =
            serde_json::from_str(text).map_err(|e| Error::InvalidRecord(format!("newform record: {e}")))?;
        let records = match parsed {
            OneOrMany::One(r) => vec![r],
            OneOrMany::Many(rs) => rs,
        };
        if records.is_empty() {
            return Err(Error::InvalidRecord("no records".into()));
        }
        for r in &records {
            r.validate()?;
        }
        Ok(records)
    }

    pub fn level_primes(&self) -> Vec<u64> {
        arith::factorize(self.level).into_iter().map(|(l, _)| l).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistQuery {
    pub p: u64,
    pub i: u64,
}

impl TwistQuery {
    pub fn admissible_for(&self, record: &NewformRecord) -> Result<()> {
        if self.p % 2 == 0 || !arith::is_prime(self.p) {
            return Err(Error::InadmissibleQuery(format!("p = {} is not an odd prime", self.p)));
        }
        if record.level % self.p == 0 {
            return Err(Error::InadmissibleQuery(format!("p = {} divides N = {}", self.p, record.level)));
        }
        if self.i > record.weight {
            return Err(Error::InadmissibleQuery(format!("i = {} exceeds k = {}", self.i, record.weight)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReasonCode {
    EllEq1ModP,
    OrderDivides1MinusKPlusI,
    OrderDivides1MinusI,
    GcdWithPhiM,
    OrderDividesK,
    OrderDividesKMinus2,
}

impl ReasonCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReasonCode::EllEq1ModP => "ELL_EQ_1_MOD_P",
            ReasonCode::OrderDivides1MinusKPlusI => "ORDER_DIVIDES_1_MINUS_K_PLUS_I",
            ReasonCode::OrderDivides1MinusI => "ORDER_DIVIDES_1_MINUS_I",
            ReasonCode::GcdWithPhiM => "GCD_WITH_PHI_M",
            ReasonCode::OrderDividesK => "ORDER_DIVIDES_K",
            ReasonCode::OrderDividesKMinus2 => "ORDER_DIVIDES_K_MINUS_2",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of `M`, `N/M` the prime divides (exactly one, `N` being square-free).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    DividesM,
    DividesNOverM,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeEntry {
    pub ell: u64,
    pub order: u64,
    pub branch: Branch,
    pub failures: Vec<ReasonCode>,
}

impl PrimeEntry {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub label: String,
    pub p: u64,
    pub i: u64,
    pub verdict: Verdict,
    pub per_prime: Vec<PrimeEntry>,
}

impl HypothesisReport {
    /// `label p i verdict CODE@ell ...`
    pub fn line(&self) -> String {
        let mut out = format!("{} {} {} {}", self.label, self.p, self.i, self.verdict);
        for entry in &self.per_prime {
            for code in &entry.failures {
                out.push_str(&format!(" {code}@{}", entry.ell));
            }
        }
        out
    }
}

/// Least `m ≥ 1` with `ell^m ≡ 1 (mod p)`.
pub fn multiplicative_order(ell: u64, p: u64) -> Result<u64> {
    arith::check_odd_prime(p)?;
    if ell % p == 0 {
        return Err(Error::NotCoprime { ell, p });
    }
    // the order divides p - 1: strip prime factors while the power stays 1
    let mut order = p - 1;
    for (q, _) in arith::factorize(p - 1) {
        while order % q == 0 && arith::pow_mod(ell % p, order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

pub fn euler_phi(m: u64) -> u64 {
    arith::factorize(m).into_iter().fold(m, |acc, (q, _)| acc / q * (q - 1))
}

fn divides(m: u64, x: i64) -> bool {
    x.rem_euclid(m as i64) == 0
}

/// All failing conditions at one `ℓ | N`.
pub fn check_prime(ell: u64, record: &NewformRecord, query: &TwistQuery) -> Result<PrimeEntry> {
    if record.level % ell != 0 || ell == query.p {
        return Err(Error::InvalidInput(format!("ℓ = {ell} must divide N = {} and differ from p", record.level)));
    }
    let m = multiplicative_order(ell, query.p)?;
    let (k, i) = (record.weight as i64, query.i as i64);
    let mut failures = Vec::new();
    if ell % query.p == 1 {
        failures.push(ReasonCode::EllEq1ModP);
    }
    let branch = if record.conductor % ell == 0 {
        if divides(m, 1 - k + i) {
            failures.push(ReasonCode::OrderDivides1MinusKPlusI);
        }
        if divides(m, 1 - i) {
            failures.push(ReasonCode::OrderDivides1MinusI);
        }
        Branch::DividesM
    } else {
        if m.gcd(&euler_phi(record.conductor)) != 1 {
            failures.push(ReasonCode::GcdWithPhiM);
        }
        if divides(m, k) {
            failures.push(ReasonCode::OrderDividesK);
        }
        if divides(m, k - 2) {
            failures.push(ReasonCode::OrderDividesKMinus2);
        }
        Branch::DividesNOverM
    };
    Ok(PrimeEntry { ell, order: m, branch, failures })
}

pub fn check_hcyc(record: &NewformRecord, query: &TwistQuery) -> Result<HypothesisReport> {
    record.validate()?;
    query.admissible_for(record)?;
    let per_prime = record
        .level_primes()
        .into_iter()
        .map(|ell| check_prime(ell, record, query))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if per_prime.iter().all(PrimeEntry::passed) { Verdict::Pass } else { Verdict::Fail };
    Ok(HypothesisReport { label: record.label.clone(), p: query.p, i: query.i, verdict, per_prime })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistRange {
    Single(u64),
    /// `0..=k`
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanEntry {
    Checked(HypothesisReport),
    /// `p | N`: the conditions do not apply.
    Inadmissible { label: String, p: u64, i: u64 },
}

impl ScanEntry {
    pub fn line(&self) -> String {
        match self {
            ScanEntry::Checked(r) => r.line(),
            ScanEntry::Inadmissible { label, p, i } => format!("{label} {p} {i} inadmissible P_DIVIDES_N"),
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            ScanEntry::Checked(r) => r.p,
            ScanEntry::Inadmissible { p, .. } => *p,
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self, ScanEntry::Checked(r) if r.verdict == Verdict::Fail)
    }
}

/// Every odd prime `p ≤ p_max`, ascending, and every requested `i`, ascending.
pub fn scan(record: &NewformRecord, p_max: u64, twists: TwistRange) -> Result<Vec<ScanEntry>> {
    record.validate()?;
    if p_max < 3 {
        return Err(Error::InvalidInput(format!("p_max = {p_max} < 3")));
    }
    let twists: Vec<u64> = match twists {
        TwistRange::Single(i) if i > record.weight => {
            return Err(Error::InadmissibleQuery(format!("i = {i} exceeds k = {}", record.weight)))
        }
        TwistRange::Single(i) => vec![i],
        TwistRange::All => (0..=record.weight).collect(),
    };
    let mut out = Vec::new();
    for p in arith::odd_primes_up_to(p_max) {
        for &i in &twists {
            if record.level % p == 0 {
                out.push(ScanEntry::Inadmissible { label: record.label.clone(), p, i });
            } else {
                out.push(ScanEntry::Checked(check_hcyc(record, &TwistQuery { p, i })?));
            }
        }
    }
    Ok(out)
}
