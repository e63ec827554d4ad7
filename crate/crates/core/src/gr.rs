//! The conjectural characteristic ideal built from Mordell–Weil ranks along
//! the cyclotomic tower: `Π_{e_n ≥ 1} Φ_n^(e_n - 1)`.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::lambda::{cyclotomic_phi, iota_normalize, DistinguishedPoly};

/// p-adic digits used to compare `ι(Φ_n)` with `Φ_n`.
pub const IOTA_CHECK_PRECISION: u32 = 6;

/// `r_n = rank E(L_n)` for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSequence {
    p: u64,
    ranks: Vec<u64>,
}

impl RankSequence {
    pub fn new(p: u64, ranks: Vec<u64>) -> Result<Self> {
        arith::check_odd_prime(p)?;
        if ranks.is_empty() {
            return Err(Error::InvalidInput("rank sequence is empty".into()));
        }
        let seq = Self { p, ranks };
        seq.exponents()?;
        Ok(seq)
    }

    /// Ranks implied by `e_0, e_1, ...`: `r_n = r_{n-1} + e_n p^(n-1) (p-1)`.
    pub fn from_exponents(p: u64, exponents: &[u64]) -> Result<Self> {
        arith::check_odd_prime(p)?;
        let mut ranks = Vec::with_capacity(exponents.len());
        for (n, &e) in exponents.iter().enumerate() {
            let r = if n == 0 {
                e
            } else {
                let step = layer_degree(p, n)?.checked_mul(e).ok_or_else(overflow)?;
                ranks[n - 1] + step
            };
            ranks.push(r);
        }
        Self::new(p, ranks)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    fn exponents(&self) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(self.ranks.len());
        out.push(self.ranks[0]);
        for n in 1..self.ranks.len() {
            let (prev, cur) = (self.ranks[n - 1], self.ranks[n]);
            if cur < prev {
                return Err(Error::DecreasingRank(n));
            }
            let divisor = layer_degree(self.p, n)?;
            let jump = cur - prev;
            if jump % divisor != 0 {
                return Err(Error::NonIntegralExponent { n, jump, divisor });
            }
            out.push(jump / divisor);
        }
        Ok(out)
    }
}

fn overflow() -> Error {
    Error::InvalidInput("rank arithmetic overflows".into())
}

/// `[L_n : L_{n-1}]`-style degree `p^(n-1) (p-1)` = `deg Φ_n`.
fn layer_degree(p: u64, n: usize) -> Result<u64> {
    let n = u32::try_from(n - 1).map_err(|_| overflow())?;
    p.checked_pow(n).and_then(|v| v.checked_mul(p - 1)).ok_or_else(overflow)
}

/// `e_0 = r_0`, `e_n = (r_n - r_{n-1}) / (p^(n-1) (p-1))`.
pub fn exponent_sequence(ranks: &RankSequence) -> Result<Vec<u64>> {
    ranks.exponents()
}

/// Factored `Π Φ_n^exponent`. Entries with exponent 0 record a layer where
/// the rank jumped exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrRightSide {
    p: u64,
    factors: Vec<(u32, u64)>,
}

impl GrRightSide {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn factors(&self) -> &[(u32, u64)] {
        &self.factors
    }

    pub fn degree(&self) -> Result<u64> {
        self.factors.iter().try_fold(0u64, |acc, &(n, exp)| {
            let d = if n == 0 { 1 } else { layer_degree(self.p, n as usize)? };
            d.checked_mul(exp).and_then(|v| v.checked_add(acc)).ok_or_else(overflow)
        })
    }

    /// The product as a single distinguished polynomial.
    pub fn expand(&self) -> Result<DistinguishedPoly> {
        let mut acc = DistinguishedPoly::one(self.p)?;
        for &(n, exp) in &self.factors {
            let exp = u32::try_from(exp).map_err(|_| overflow())?;
            acc = acc.mul(&cyclotomic_phi(n, self.p)?.pow(exp))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GrRightSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("(1)");
        }
        let terms: Vec<String> = self.factors.iter().map(|(n, e)| format!("Phi_{n}^{e}")).collect();
        f.write_str(&terms.join(" * "))
    }
}

pub fn gr_rhs(ranks: &RankSequence) -> Result<GrRightSide> {
    let factors = exponent_sequence(ranks)?
        .into_iter()
        .enumerate()
        .filter(|&(_, e)| e >= 1)
        .map(|(n, e)| (n as u32, e - 1))
        .collect();
    Ok(GrRightSide { p: ranks.p, factors })
}

/// Recomputes `ι(Φ_n)` for every factor and compares it with `Φ_n` modulo
/// `p^IOTA_CHECK_PRECISION`.
pub fn verify_iota_invariance(rhs: &GrRightSide) -> Result<bool> {
    for &(n, _) in &rhs.factors {
        let phi = cyclotomic_phi(n, rhs.p)?;
        if !iota_normalize(&phi, IOTA_CHECK_PRECISION)?.congruent(&phi, IOTA_CHECK_PRECISION)? {
            return Ok(false);
        }
    }
    Ok(true)
}
