//! The two pseudo-isomorphism criteria for torsion Λ-modules, the size
//! ledger around the localization maps, and their growth targets.
//!
//! Criterion 1 compares `F`-primary parts through the coranks of
//! `((M^∨)_{F^m})^Γ`; criterion 2 compares `p`-primary parts through the
//! growth of `|(M/p^e)_{Γ_n}|` in `n`. Both report the structural verdict
//! (side a) next to the computed one (side b) so callers can detect a
//! disagreement.

use std::fmt;

use crate::error::{Error, Result};
use crate::lambda::DistinguishedPoly;
use crate::module::{
    coinvariant_size_exponent, coinvariant_stable_level, f_part, pi_part, twisted_dual_invariant_corank,
    ElementaryModule,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    FPrimary,
    PPrimary,
}

impl Criterion {
    pub fn id(self) -> u8 {
        match self {
            Criterion::FPrimary => 1,
            Criterion::PPrimary => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witnesses {
    /// `corank` of `U` and `V` for `m = 1..=m_max`.
    Coranks { u: Vec<u64>, v: Vec<u64> },
    /// `d[e-1][n]` = p-exponent of `|(U/p^e)_{Γ_n}| / |(V/p^e)_{Γ_n}|` for
    /// `n = 0..=n_window`; `stable_from[e-1]` is the level from which the
    /// polynomial summands no longer change.
    SizeDifferences { table: Vec<Vec<i64>>, stable_from: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub poly: Option<DistinguishedPoly>,
    pub m_max: u32,
    pub e_max: u32,
    pub n_max: u32,
    /// Levels actually computed; at least `n_max`, widened so every `e` row
    /// reaches its stable range with one level to spare.
    pub n_window: u32,
    pub side_a: bool,
    pub side_b: bool,
    pub witnesses: Witnesses,
}

impl CriterionReport {
    pub fn consistent(&self) -> bool {
        self.side_a == self.side_b
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "criterion {}", self.criterion.id())?;
        match self.criterion {
            Criterion::FPrimary => {
                let poly = self.poly.as_ref().map(|p| p.to_csv()).unwrap_or_default();
                writeln!(f, "  F = {poly}  m_max = {}", self.m_max)?;
            }
            Criterion::PPrimary => {
                writeln!(f, "  e_max = {}  n_max = {}  n_window = {}", self.e_max, self.n_max, self.n_window)?;
            }
        }
        writeln!(f, "  side_a (structure) = {}", self.side_a)?;
        writeln!(f, "  side_b (computed)  = {}", self.side_b)?;
        match &self.witnesses {
            Witnesses::Coranks { u, v } => {
                writeln!(f, "  coranks U: {}", join(u))?;
                write!(f, "  coranks V: {}", join(v))
            }
            Witnesses::SizeDifferences { table, stable_from } => {
                for (i, row) in table.iter().enumerate() {
                    writeln!(f, "  d(e={}, n=0..) = {}  stable from n = {}", i + 1, join(row), stable_from[i])?;
                }
                write!(f, "  verdicts agree = {}", self.consistent())
            }
        }
    }
}

fn require_pair(u: &ElementaryModule, v: &ElementaryModule) -> Result<()> {
    u.require_torsion()?;
    v.require_torsion()?;
    u.require_same_base(v)
}

/// `U(F^∞) = V(F^∞)` against equality of the twisted-dual coranks for
/// `m = 1..=m_max`. The coranks pin down every `β ≤ m_max`.
pub fn criterion1_check(
    u: &ElementaryModule,
    v: &ElementaryModule,
    poly: &DistinguishedPoly,
    m_max: u32,
) -> Result<CriterionReport> {
    require_pair(u, v)?;
    if poly.prime() != u.prime() {
        return Err(Error::PrimeMismatch(u.prime(), poly.prime()));
    }
    if m_max == 0 {
        return Err(Error::InvalidInput("m_max must be positive".into()));
    }
    let coranks = |m: &ElementaryModule| {
        (1..=m_max).map(|t| twisted_dual_invariant_corank(m, poly, t)).collect::<Result<Vec<_>>>()
    };
    let (cu, cv) = (coranks(u)?, coranks(v)?);
    Ok(CriterionReport {
        criterion: Criterion::FPrimary,
        poly: Some(poly.clone()),
        m_max,
        e_max: 0,
        n_max: 0,
        n_window: 0,
        side_a: f_part(u, poly) == f_part(v, poly),
        side_b: cu == cv,
        witnesses: Witnesses::Coranks { u: cu, v: cv },
    })
}

/// `U(p^∞) = V(p^∞)` against boundedness in `n` of the coinvariant ratio.
///
/// Past the level where `ω_n` kills every polynomial summand mod `p^e`, the
/// difference is `c * p^n` plus a constant, so it is bounded iff it is
/// constant from that level on. The window is widened to reach it.
pub fn criterion2_check(u: &ElementaryModule, v: &ElementaryModule, e_max: u32, n_max: u32) -> Result<CriterionReport> {
    require_pair(u, v)?;
    if n_max < 2 {
        return Err(Error::WindowTooSmall(n_max));
    }
    if e_max == 0 {
        return Err(Error::InvalidInput("e_max must be positive".into()));
    }
    let mut stable_from = Vec::with_capacity(e_max as usize);
    for e in 1..=e_max {
        let level = coinvariant_stable_level(u, e)?.max(coinvariant_stable_level(v, e)?);
        stable_from.push(level.max(1));
    }
    let n_window = n_max.max(stable_from.iter().max().copied().unwrap_or(1) + 1);

    let mut table = Vec::with_capacity(e_max as usize);
    let mut bounded = true;
    for e in 1..=e_max {
        let row = (0..=n_window)
            .map(|n| Ok(coinvariant_size_exponent(u, e, n)? as i64 - coinvariant_size_exponent(v, e, n)? as i64))
            .collect::<Result<Vec<_>>>()?;
        let from = stable_from[e as usize - 1] as usize;
        bounded &= row[from..].windows(2).all(|w| w[0] == w[1]);
        table.push(row);
    }
    Ok(CriterionReport {
        criterion: Criterion::PPrimary,
        poly: None,
        m_max: 0,
        e_max,
        n_max,
        n_window,
        side_a: pi_part(u) == pi_part(v),
        side_b: bounded,
        witnesses: Witnesses::SizeDifferences { table, stable_from },
    })
}

/// Exponents of `q` for the pieces of the localization-kernel identity
/// `|K1†| / |K1| = |G1| * χ_glob / (|H^0| * |G2|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeLedger {
    pub k1: i64,
    pub k1_dagger: i64,
    pub g1: i64,
    pub g2: i64,
    pub h0: i64,
    pub chi_glob: i64,
}

impl SizeLedger {
    fn right_side(g1: i64, g2: i64, h0: i64, chi_glob: i64) -> i64 {
        g1 + chi_glob - h0 - g2
    }

    /// Checks the stored left side against the identity.
    pub fn new(k1: i64, k1_dagger: i64, g1: i64, g2: i64, h0: i64, chi_glob: i64) -> Result<Self> {
        let computed = Self::right_side(g1, g2, h0, chi_glob);
        if k1_dagger - k1 != computed {
            return Err(Error::InconsistentLedger { stored: k1_dagger - k1, computed });
        }
        Ok(Self { k1, k1_dagger, g1, g2, h0, chi_glob })
    }

    /// Fills in `K1†` from the other five exponents.
    pub fn from_right_side(k1: i64, g1: i64, g2: i64, h0: i64, chi_glob: i64) -> Self {
        let k1_dagger = k1 + Self::right_side(g1, g2, h0, chi_glob);
        Self { k1, k1_dagger, g1, g2, h0, chi_glob }
    }

    pub fn residual(&self) -> i64 {
        (self.k1_dagger - self.k1) - Self::right_side(self.g1, self.g2, self.h0, self.chi_glob)
    }
}

/// `log_q |K1†| / |K1|`, read from the right side of the identity.
pub fn ledger_ratio(ledger: &SizeLedger) -> i64 {
    SizeLedger::right_side(ledger.g1, ledger.g2, ledger.h0, ledger.chi_glob)
}

/// `log_q χ_glob(Q, M)` for `M = A(i)_{F^m}[p^e]`: `-e * deg(F^m)`.
pub fn chi_glob_rational(e: u32, poly: &DistinguishedPoly, m: u32) -> i64 {
    -(e as i64) * m as i64 * poly.degree() as i64
}

/// `log_q χ_glob(L_n, M)` for `M = A(i)[p^e]` over the totally real `L_n`: `-e * p^n`.
pub fn chi_glob_level(e: u32, n: u32, p: u64) -> Result<i64> {
    let pn = p.checked_pow(n).ok_or_else(|| Error::InvalidInput(format!("{p}^{n} overflows")))?;
    (e as i64)
        .checked_mul(pn as i64)
        .map(|v| -v)
        .ok_or_else(|| Error::InvalidInput("exponent overflows".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthTarget {
    FTwist { e: u32, poly: DistinguishedPoly, m: u32 },
    Level { e: u32, n: u32, p: u64 },
}

/// The `q`-exponent the image of the localization map has to track.
pub fn theta_growth_target(target: &GrowthTarget) -> Result<i64> {
    match target {
        GrowthTarget::FTwist { e, poly, m } => Ok(-chi_glob_rational(*e, poly, *m)),
        GrowthTarget::Level { e, n, p } => Ok(-chi_glob_level(*e, *n, *p)?),
    }
}
