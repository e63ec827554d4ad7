//! The involution of the Iwasawa algebra induced by `gamma -> gamma^-1`.
//!
//! On `Z_p[[X]]` with `gamma = 1 + X` it is `X -> (1+X)^-1 - 1`. The image of
//! a distinguished polynomial is a unit times another distinguished
//! polynomial; [`iota_normalize`] returns that polynomial.

use crate::arith::add_mod;
use crate::error::{Error, Result};
use crate::lambda::poly::DistinguishedPoly;
use crate::lambda::series::{mul_truncated, LambdaSeries};
use crate::lambda::weierstrass::weierstrass_prepare;

/// p-adic digits used when a caller does not choose a precision for the twist
/// of a polynomial. Coefficients are balanced residues modulo `p^a`, so any
/// integer polynomial with coefficients below `p^a / 2` survives a double
/// twist exactly.
pub fn default_iota_precision(p: u64) -> u32 {
    let mut a = 1;
    while p.checked_pow(a + 1).is_some_and(|m| m <= (1u64 << 40)) {
        a += 1;
    }
    a
}

/// `F((1+X)^-1 - 1)` modulo `(p^p_precision, X^x_precision)`.
pub fn iota_apply(poly: &DistinguishedPoly, p_precision: u32, x_precision: usize) -> Result<LambdaSeries> {
    let p = poly.prime();
    let zero = LambdaSeries::zero(p, p_precision, x_precision)?;
    let modulus = zero.modulus();
    // y = (1+X)^-1 - 1 = -X + X^2 - X^3 + ...
    let y: Vec<u64> = (0..x_precision)
        .map(|k| match k {
            0 => 0,
            k if k % 2 == 1 => modulus - 1,
            _ => 1 % modulus,
        })
        .collect();
    let coeffs = poly.residues(modulus);
    let mut acc = vec![0u64; x_precision];
    for &c in coeffs.iter().rev() {
        acc = mul_truncated(&acc, &y, x_precision, modulus);
        acc[0] = add_mod(acc[0], c, modulus);
    }
    Ok(LambdaSeries::from_residues(p, p_precision, modulus, acc))
}

/// The distinguished generator of the ideal `(iota(F))`, with coefficients
/// reduced to balanced residues modulo `p^p_precision`.
pub fn iota_normalize(poly: &DistinguishedPoly, p_precision: u32) -> Result<DistinguishedPoly> {
    let d = poly.degree();
    iota_normalize_with(poly, p_precision, d * (p_precision as usize + 1) + 1)
}

/// As [`iota_normalize`] with an explicit X-precision for the intermediate series.
pub fn iota_normalize_with(poly: &DistinguishedPoly, p_precision: u32, x_precision: usize) -> Result<DistinguishedPoly> {
    let d = poly.degree();
    if d == 0 {
        return Ok(poly.clone());
    }
    if x_precision <= d {
        return Err(Error::InsufficientPrecision(format!(
            "X^{x_precision} is too short to expose the degree-{d} twist"
        )));
    }
    let series = iota_apply(poly, p_precision, x_precision)?;
    let prep = weierstrass_prepare(&series)?;
    // F = X^d mod p, so iota(F) = (-X/(1+X))^d mod p: no p-power, same degree
    assert_eq!((prep.mu, prep.lambda()), (0, d), "twist of a distinguished polynomial changed its invariants");
    if prep.distinguished_p_precision < p_precision {
        return Err(Error::InsufficientPrecision(format!(
            "twist resolved only mod p^{} of requested p^{p_precision}",
            prep.distinguished_p_precision
        )));
    }
    Ok(prep.distinguished_part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{self, mul_mod};
    use crate::lambda::poly::cyclotomic_phi;
    use num_traits::ToPrimitive;

    fn eval_mod(coeffs: &[u64], x: u64, modulus: u64) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, modulus), c, modulus))
    }

    #[test]
    fn twist_of_x() {
        let s = iota_apply(&DistinguishedPoly::x(3).unwrap(), 4, 6).unwrap();
        assert_eq!(s.balanced_coeffs(), vec![0, -1, 1, -1, 1, -1]);
        assert_eq!(iota_normalize(&DistinguishedPoly::x(3).unwrap(), 6).unwrap(), DistinguishedPoly::x(3).unwrap());
    }

    #[test]
    fn twist_is_affine_in_the_constant() {
        let s = iota_apply(&DistinguishedPoly::from_i64(3, &[3, 1]).unwrap(), 4, 5).unwrap();
        assert_eq!(s.balanced_coeffs(), vec![3, -1, 1, -1, 1]);
    }

    #[test]
    fn twist_transports_roots() {
        // root -3 of X + 3 goes to (1-3)^-1 - 1 = -3/2, so the twist is X + 3/2
        let a = 6;
        let m = arith::prime_power(3, a).unwrap();
        let got = iota_normalize(&DistinguishedPoly::from_i64(3, &[3, 1]).unwrap(), a).unwrap();
        let c = got.coeffs()[0].to_i64().unwrap().rem_euclid(m as i64) as u64;
        let half = arith::inv_mod(2, m).unwrap();
        assert_eq!(c, mul_mod(3, half, m));
        assert_eq!(eval_mod(&[c, 1], mul_mod(m - 3, half, m), m), 0);
    }

    #[test]
    fn phi_is_fixed() {
        for (p, n) in [(3, 1), (3, 2), (5, 1)] {
            let phi = cyclotomic_phi(n, p).unwrap();
            let twisted = iota_normalize(&phi, 5).unwrap();
            assert!(twisted.congruent(&phi, 5).unwrap(), "p={p} n={n}");
        }
        let c: Vec<i64> = iota_normalize(&cyclotomic_phi(1, 3).unwrap(), 5)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(c, vec![3, 3, 1]);
    }

    #[test]
    fn short_series_is_rejected() {
        let f = cyclotomic_phi(1, 3).unwrap();
        assert!(matches!(iota_normalize_with(&f, 4, 3), Err(Error::InsufficientPrecision(_))));
        assert!(matches!(iota_normalize_with(&f, 4, 5), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn default_precision_fits() {
        assert_eq!(default_iota_precision(3), 25);
        assert!(5u64.pow(default_iota_precision(5)) <= 1 << 40);
    }
}
