//! `Z_p`-coranks of `((M^∨)_{F^m})^Γ`: closed form and a finite-level oracle.
//!
//! The oracle never reads the structure-theorem exponents off the module. It
//! realizes `(M/p^e)^∨ ⊗ Λ/F^m` as a finite `Z/p^e`-module with the
//! contragredient action of `γ = 1+X` on the first factor, counts the
//! `Γ`-invariants, and reads the corank off the growth in `e`.

use crate::arith;
use crate::error::{Error, Result};
use crate::lambda::DistinguishedPoly;
use crate::module::ElementaryModule;
use crate::zmod::{multiplication_matrix, ModMatrix};

/// Default number of `p^e`-layers the oracle inspects. Coprime summands can
/// leave finite pieces of exponent up to `p^8` for `β, m, deg F ≤ 3` at
/// `p = 3`, and the increments only settle past them.
pub const DEFAULT_ORACLE_E_MAX: u32 = 10;

/// Closed form: `Σ min(β, m) * deg F * f` over the summands `Λ/F^β`.
pub fn twisted_dual_invariant_corank(m: &ElementaryModule, poly: &DistinguishedPoly, twist: u32) -> Result<u64> {
    m.require_torsion()?;
    if poly.prime() != m.prime() {
        return Err(Error::PrimeMismatch(m.prime(), poly.prime()));
    }
    let per_part: u64 = m
        .torsion_parts()
        .iter()
        .filter(|t| &t.poly == poly)
        .map(|t| t.beta.min(twist) as u64)
        .sum();
    Ok(per_part * poly.degree() as u64 * m.residue_degree() as u64)
}

/// Action of `γ = 1+X` on `(Z/p^e)[X]/G`.
fn gamma_matrix(p: u64, e: u32, g: &[u64]) -> Result<ModMatrix> {
    multiplication_matrix(p, e, &[1, 1], g)
}

/// `log_p |((Λ/G)/p^e)^∨ ⊗ W)^Γ|` for a monic `G`, where `W` carries `twist_action`.
///
/// The dual carries `(C^-1)^T`; invariants of `(C^-1)^T ⊗ D` are the kernel of
/// `I ⊗ D - C^T ⊗ I` (multiply through by the invertible `C^T ⊗ I`).
fn polynomial_summand_log(p: u64, e: u32, g: &[u64], twist_action: &ModMatrix) -> Result<u64> {
    let c = gamma_matrix(p, e, g)?;
    let (n1, n2) = (c.rows(), twist_action.rows());
    let mut k = ModMatrix::zeros(p, e, n1 * n2, n1 * n2)?;
    let modulus = k.modulus();
    for i in 0..n1 {
        for j in 0..n2 {
            let row = i * n2 + j;
            for j2 in 0..n2 {
                let col = i * n2 + j2;
                k.set(row, col, arith::add_mod(k.get(row, col), twist_action.get(j, j2), modulus));
            }
            for i2 in 0..n1 {
                let col = i2 * n2 + j;
                k.set(row, col, arith::sub_mod(k.get(row, col), c.get(i2, i), modulus));
            }
        }
    }
    Ok(k.kernel_log())
}

/// `log_p |((Λ/p^α)/p^e)^∨ ⊗ W)^Γ|`.
///
/// `(Λ/p^a)^∨` is the union of the duals of `(Z/p^a)[Γ/Γ_n]`, and
/// `((Z/p^a)[Γ/Γ_n]^∨ ⊗ W)^Γ = (W/p^a)^{Γ_n}`. The union stabilizes once
/// `γ^{p^n}` acts trivially on `W/p^a`.
fn p_power_summand_log(p: u64, a: u32, twist_poly: &[u64]) -> Result<u64> {
    let d = gamma_matrix(p, a, twist_poly)?;
    let id = ModMatrix::identity(p, a, d.rows())?;
    let mut power = d;
    let mut guard = 0;
    loop {
        let fixed = power.sub(&id);
        if fixed.is_zero() {
            return Ok(fixed.kernel_log());
        }
        power = power.pow(p)?;
        guard += 1;
        if guard > 64 {
            return Err(Error::InvalidInput("γ^(p^n) never becomes trivial on W/p^a".into()));
        }
    }
}

/// Finite-level oracle for [`twisted_dual_invariant_corank`].
///
/// Computes `s_e = log_p |((M^∨)_{F^m})^Γ[p^e]|` for `e = 1..=e_max` and
/// returns the final increment `s_e - s_{e-1}` (in units of `f`) once the last
/// two increments agree.
pub fn brute_force_corank(m: &ElementaryModule, poly: &DistinguishedPoly, twist: u32, e_max: u32) -> Result<u64> {
    m.require_torsion()?;
    if poly.prime() != m.prime() {
        return Err(Error::PrimeMismatch(m.prime(), poly.prime()));
    }
    if e_max < 2 {
        return Err(Error::InvalidInput("oracle needs e_max >= 2".into()));
    }
    if twist == 0 {
        return Ok(0);
    }
    let p = m.prime();
    let twisted = poly.pow(twist);
    let summand_gens: Vec<DistinguishedPoly> =
        m.torsion_parts().iter().map(|t| t.poly.pow(t.beta)).collect();

    let mut sizes = vec![0i64];
    for e in 1..=e_max {
        let modulus = arith::prime_power(p, e)?;
        let w = twisted.residues(modulus);
        let d = gamma_matrix(p, e, &w)?;
        let mut s = 0u64;
        for &alpha in m.mu_exponents() {
            let a = alpha.min(e);
            s += p_power_summand_log(p, a, &twisted.residues(p.pow(a)))?;
        }
        for g in &summand_gens {
            s += polynomial_summand_log(p, e, &g.residues(modulus), &d)?;
        }
        sizes.push(s as i64 * m.residue_degree() as i64);
    }
    let increments: Vec<i64> = sizes.windows(2).map(|w| w[1] - w[0]).collect();
    let last = increments[increments.len() - 1];
    if increments[increments.len() - 2] != last || last < 0 {
        return Err(Error::NotStabilized { e_max, increments });
    }
    Ok(last as u64)
}
