//! Finitely generated Λ-modules in structure-theorem form.
//!
//! A module is stored as its elementary data up to pseudo-isomorphism:
//! `Λ^a ⊕ ⊕ Λ/p^α_i ⊕ ⊕ Λ/F_j^β_jl`. Two modules are pseudo-isomorphic
//! exactly when their canonical forms are equal.

mod coinvariants;
mod oracle;
mod spec_file;

use std::cmp::Reverse;
use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::lambda::{default_iota_precision, iota_normalize, DistinguishedPoly};

pub use coinvariants::{coinvariant_size_exponent, coinvariant_size_exponent_dense, coinvariant_stable_level};
pub use oracle::{brute_force_corank, twisted_dual_invariant_corank, DEFAULT_ORACLE_E_MAX};
pub use spec_file::{ModuleSpecFile, TorsionEntry};

/// One summand `Λ/F^β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorsionPart {
    pub poly: DistinguishedPoly,
    pub beta: u32,
    /// Irreducibility of `poly` is the caller's claim; nothing here checks it.
    pub irreducible_asserted: bool,
}

impl TorsionPart {
    pub fn new(poly: DistinguishedPoly, beta: u32) -> Self {
        Self { poly, beta, irreducible_asserted: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryModule {
    p: u64,
    residue_degree: u32,
    free_rank: u32,
    mu_exponents: Vec<u32>,
    torsion_parts: Vec<TorsionPart>,
}

impl ElementaryModule {
    pub fn new(
        p: u64,
        residue_degree: u32,
        free_rank: u32,
        mu_exponents: Vec<u32>,
        torsion_parts: Vec<TorsionPart>,
    ) -> Result<Self> {
        arith::check_odd_prime(p)?;
        if residue_degree == 0 {
            return Err(Error::InvalidInput("residue degree f must be positive".into()));
        }
        if mu_exponents.contains(&0) {
            return Err(Error::InvalidInput("p-power exponents must be positive".into()));
        }
        for part in &torsion_parts {
            if part.poly.prime() != p {
                return Err(Error::PrimeMismatch(p, part.poly.prime()));
            }
            if part.poly.degree() == 0 {
                return Err(Error::InvalidInput("torsion polynomial must have degree >= 1".into()));
            }
            if part.beta == 0 {
                return Err(Error::InvalidInput("torsion exponents must be positive".into()));
            }
        }
        let mut m = Self { p, residue_degree, free_rank, mu_exponents, torsion_parts };
        m.canonicalize();
        Ok(m)
    }

    /// The zero module over `Z_p`.
    pub fn zero(p: u64) -> Result<Self> {
        Self::new(p, 1, 0, Vec::new(), Vec::new())
    }

    /// Torsion module over `Z_p` from p-power exponents and `(F, β)` pairs.
    pub fn torsion(p: u64, mu_exponents: &[u32], parts: &[(DistinguishedPoly, u32)]) -> Result<Self> {
        let parts = parts.iter().map(|(f, b)| TorsionPart::new(f.clone(), *b)).collect();
        Self::new(p, 1, 0, mu_exponents.to_vec(), parts)
    }

    fn canonicalize(&mut self) {
        self.mu_exponents.sort_by_key(|&a| Reverse(a));
        self.torsion_parts
            .sort_by(|x, y| x.poly.cmp(&y.poly).then(y.beta.cmp(&x.beta)));
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn residue_degree(&self) -> u32 {
        self.residue_degree
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn mu_exponents(&self) -> &[u32] {
        &self.mu_exponents
    }

    pub fn torsion_parts(&self) -> &[TorsionPart] {
        &self.torsion_parts
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.mu_exponents.is_empty() && self.torsion_parts.is_empty()
    }

    pub(crate) fn require_torsion(&self) -> Result<()> {
        if self.is_torsion() {
            Ok(())
        } else {
            Err(Error::NotTorsion(self.free_rank))
        }
    }

    pub(crate) fn require_same_base(&self, other: &Self) -> Result<()> {
        if (self.p, self.residue_degree) != (other.p, other.residue_degree) {
            return Err(Error::ModuleMismatch(format!(
                "(p, f) = ({}, {}) vs ({}, {})",
                self.p, self.residue_degree, other.p, other.residue_degree
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.require_same_base(other)?;
        let mut mu = self.mu_exponents.clone();
        mu.extend_from_slice(&other.mu_exponents);
        let mut parts = self.torsion_parts.clone();
        parts.extend_from_slice(&other.torsion_parts);
        Self::new(self.p, self.residue_degree, self.free_rank + other.free_rank, mu, parts)
    }

    fn with_parts(&self, free_rank: u32, mu: Vec<u32>, parts: Vec<TorsionPart>) -> Self {
        let mut m = Self { free_rank, mu_exponents: mu, torsion_parts: parts, ..self.clone() };
        m.canonicalize();
        m
    }
}

impl fmt::Display for ElementaryModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if self.free_rank > 0 {
            terms.push(if self.free_rank == 1 { "Λ".to_string() } else { format!("Λ^{}", self.free_rank) });
        }
        for a in &self.mu_exponents {
            terms.push(format!("Λ/p^{a}"));
        }
        for part in &self.torsion_parts {
            if part.beta == 1 {
                terms.push(format!("Λ/({})", part.poly));
            } else {
                terms.push(format!("Λ/({})^{}", part.poly, part.beta));
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" ⊕ "))
        }
    }
}

/// Characteristic ideal in factored form `p^mu_total * Π F^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharIdeal {
    pub mu_total: u64,
    pub distinguished_factors: Vec<(DistinguishedPoly, u64)>,
}

impl CharIdeal {
    /// Product of ideals (the ideal of a direct sum).
    pub fn multiply(&self, other: &Self) -> Self {
        let mut factors = self.distinguished_factors.clone();
        for (poly, e) in &other.distinguished_factors {
            match factors.iter_mut().find(|(q, _)| q == poly) {
                Some((_, acc)) => *acc += e,
                None => factors.push((poly.clone(), *e)),
            }
        }
        factors.sort_by(|x, y| x.0.cmp(&y.0));
        Self { mu_total: self.mu_total + other.mu_total, distinguished_factors: factors }
    }

    pub fn lambda(&self) -> u64 {
        self.distinguished_factors.iter().map(|(f, e)| f.degree() as u64 * e).sum()
    }
}

impl fmt::Display for CharIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if self.mu_total > 0 {
            terms.push(format!("p^{}", self.mu_total));
        }
        for (poly, e) in &self.distinguished_factors {
            terms.push(format!("[{}]^{}", poly.to_csv(), e));
        }
        if terms.is_empty() {
            f.write_str("(1)")
        } else {
            f.write_str(&terms.join(" * "))
        }
    }
}

pub fn mu_invariant(m: &ElementaryModule) -> u64 {
    m.mu_exponents.iter().map(|&a| a as u64).sum()
}

pub fn lambda_invariant(m: &ElementaryModule) -> u64 {
    m.torsion_parts.iter().map(|t| t.beta as u64 * t.poly.degree() as u64).sum()
}

/// `M(F^∞)`: the summands whose polynomial is exactly `F`.
pub fn f_part(m: &ElementaryModule, poly: &DistinguishedPoly) -> ElementaryModule {
    let parts = m.torsion_parts.iter().filter(|t| &t.poly == poly).cloned().collect();
    m.with_parts(0, Vec::new(), parts)
}

/// `M(p^∞)`: the p-power summands.
pub fn pi_part(m: &ElementaryModule) -> ElementaryModule {
    m.with_parts(0, m.mu_exponents.clone(), Vec::new())
}

pub fn char_ideal(m: &ElementaryModule) -> Result<CharIdeal> {
    m.require_torsion()?;
    let mut factors: Vec<(DistinguishedPoly, u64)> = Vec::new();
    for part in &m.torsion_parts {
        match factors.last_mut() {
            Some((poly, e)) if *poly == part.poly => *e += part.beta as u64,
            _ => factors.push((part.poly.clone(), part.beta as u64)),
        }
    }
    Ok(CharIdeal { mu_total: mu_invariant(m), distinguished_factors: factors })
}

/// `M^ι`: every `F` replaced by the distinguished generator of `(ι F)`.
pub fn iota_twist(m: &ElementaryModule) -> Result<ElementaryModule> {
    iota_twist_with(m, default_iota_precision(m.p))
}

pub fn iota_twist_with(m: &ElementaryModule, p_precision: u32) -> Result<ElementaryModule> {
    let parts = m
        .torsion_parts
        .iter()
        .map(|t| Ok(TorsionPart { poly: iota_normalize(&t.poly, p_precision)?, ..t.clone() }))
        .collect::<Result<Vec<_>>>()?;
    Ok(m.with_parts(m.free_rank, m.mu_exponents.clone(), parts))
}
