//! Sizes of `(M/p^e)_{Γ_n}` for torsion modules in elementary form.
//!
//! For a summand `Λ/G` the coinvariants are `Λ/(G, p^e, ω_n)`. Two matrix
//! routes compute the same cardinality: multiplication by `ω_n` on
//! `(Z/p^e)[X]/G` (small, used by default for polynomial summands) and
//! multiplication by `G` on `(Z/p^e)[X]/ω_n` (size `p^n`).

use crate::arith;
use crate::error::{Error, Result};
use crate::lambda::omega;
use crate::module::ElementaryModule;
use crate::zmod::{mul_by_x_rem, mul_rem, multiplication_matrix, ModMatrix};

/// Cap on the level search in [`coinvariant_stable_level`].
const MAX_STABLE_LEVEL: u32 = 64;

fn p_power_n(p: u64, n: u32) -> Result<u64> {
    p.checked_pow(n).ok_or_else(|| Error::InvalidInput(format!("{p}^{n} overflows")))
}

/// `(1+X)^(p^n) - 1` reduced in `(Z/p^e)[X]/G`, with `G` monic.
fn omega_mod(g: &[u64], p: u64, n: u32, modulus: u64) -> Vec<u64> {
    let d = g.len() - 1;
    let mut one = vec![0u64; d];
    if d == 0 {
        return one;
    }
    one[0] = 1 % modulus;
    // y = 1 + X reduced mod G
    let mut y = mul_by_x_rem(&one, g, modulus);
    y[0] = arith::add_mod(y[0], 1, modulus);
    for _ in 0..n {
        let mut acc = one.clone();
        for _ in 0..p {
            acc = mul_rem(&acc, &y, g, modulus);
        }
        y = acc;
    }
    y[0] = arith::sub_mod(y[0], 1, modulus);
    y
}

fn summand_polys(m: &ElementaryModule, modulus: u64) -> Vec<Vec<u64>> {
    m.torsion_parts()
        .iter()
        .map(|t| t.poly.pow(t.beta).residues(modulus))
        .collect()
}

/// Exponent of `p` in `|(M/p^e)_{Γ_n}|`.
///
/// The residue degree `f` scales every count, so for `M = Λ/p^α` this is
/// `min(α, e) * f * p^n`.
pub fn coinvariant_size_exponent(m: &ElementaryModule, e: u32, n: u32) -> Result<u64> {
    m.require_torsion()?;
    if e == 0 {
        return Err(Error::InvalidInput("e must be positive".into()));
    }
    let p = m.prime();
    let modulus = arith::prime_power(p, e)?;
    let rank = p_power_n(p, n)?;
    let mut total = 0u64;
    for &alpha in m.mu_exponents() {
        // multiplication by p^α on the free (Z/p^e)-module of rank p^n is a
        // scalar matrix: p^n copies of the same 1x1 block
        let mut block = ModMatrix::zeros(p, e, 1, 1)?;
        block.set(0, 0, p.checked_pow(alpha).map_or(0, |v| v % modulus));
        total += block.cokernel_log() * rank;
    }
    for g in summand_polys(m, modulus) {
        let w = omega_mod(&g, p, n, modulus);
        total += multiplication_matrix(p, e, &w, &g)?.cokernel_log();
    }
    Ok(total * m.residue_degree() as u64)
}

/// Same count through multiplication by each summand's generator on
/// `(Z/p^e)[X]/ω_n`, a matrix of size `p^n`.
pub fn coinvariant_size_exponent_dense(m: &ElementaryModule, e: u32, n: u32) -> Result<u64> {
    m.require_torsion()?;
    let p = m.prime();
    let modulus = arith::prime_power(p, e)?;
    let w = omega(n, p)?.residues(modulus);
    let mut total = 0u64;
    for &alpha in m.mu_exponents() {
        let c = p.checked_pow(alpha).map_or(0, |v| v % modulus);
        total += multiplication_matrix(p, e, &[c], &w)?.cokernel_log();
    }
    for g in summand_polys(m, modulus) {
        total += multiplication_matrix(p, e, &g, &w)?.cokernel_log();
    }
    Ok(total * m.residue_degree() as u64)
}

/// Least `n` such that `ω_n` vanishes in `(Z/p^e)[X]/F^β` for every
/// polynomial summand. From that level on the polynomial summands contribute
/// a constant to [`coinvariant_size_exponent`].
pub fn coinvariant_stable_level(m: &ElementaryModule, e: u32) -> Result<u32> {
    let p = m.prime();
    let modulus = arith::prime_power(p, e)?;
    let mut level = 0;
    for g in summand_polys(m, modulus) {
        let mut n = 0;
        while omega_mod(&g, p, n, modulus).iter().any(|&c| c != 0) {
            n += 1;
            if n > MAX_STABLE_LEVEL {
                return Err(Error::InvalidInput(format!(
                    "ω_n does not vanish modulo (p^{e}, G) by n = {MAX_STABLE_LEVEL}"
                )));
            }
        }
        level = level.max(n);
    }
    Ok(level)
}
