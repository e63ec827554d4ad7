//! Weierstrass division and preparation over `Z_p[[X]]` with tracked precision.
//!
//! Both algorithms are contractions: each pass moves `deg` steps up in `X`
//! and gains one factor of `p`. A series known modulo `X^b` therefore pins
//! down a degree-`d` remainder only modulo `p^floor(b/d)`, and the quotient
//! trades X-precision for p-precision in the same way. The functions below
//! compute those result precisions instead of returning digits that were
//! never determined.

use num_bigint::BigInt;

use crate::arith::{self, add_mod, sub_mod};
use crate::error::{Error, Result};
use crate::lambda::padic::PadicInt;
use crate::lambda::poly::DistinguishedPoly;
use crate::lambda::series::{inverse_truncated, mul_truncated, LambdaSeries};

/// `f = quotient * P + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassDivision {
    pub quotient: LambdaSeries,
    /// Coefficients of the remainder (degree `< deg P`), all sharing one precision.
    pub remainder: Vec<PadicInt>,
    pub remainder_p_precision: u32,
}

/// `f = p^mu * distinguished_part * unit_part`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassFactorization {
    pub mu: u32,
    /// Coefficients are balanced representatives modulo `p^distinguished_p_precision`.
    pub distinguished_part: DistinguishedPoly,
    pub distinguished_p_precision: u32,
    pub unit_part: LambdaSeries,
    /// The product reproduces the input modulo `(p^result_p_precision, X^result_x_precision)`.
    pub result_p_precision: u32,
    pub result_x_precision: usize,
}

impl WeierstrassFactorization {
    pub fn lambda(&self) -> usize {
        self.distinguished_part.degree()
    }

    /// `p^mu * P * u` at the result precision.
    pub fn reconstruct(&self) -> Result<LambdaSeries> {
        let p = self.unit_part.prime();
        let b = self.result_x_precision;
        let umod = self.unit_part.modulus();
        let product = mul_truncated(&pad(self.distinguished_part.residues(umod), b), self.unit_part.residues(), b, umod);
        // multiplying by p^mu lifts a value known mod p^k to one known mod p^(k+mu)
        let modulus = arith::prime_power(p, self.result_p_precision)?;
        let shift = p.pow(self.mu);
        let coeffs = product.into_iter().map(|c| (c as u128 * shift as u128 % modulus as u128) as u64).collect();
        Ok(LambdaSeries::from_residues(p, self.result_p_precision, modulus, coeffs))
    }
}

fn pad(mut v: Vec<u64>, len: usize) -> Vec<u64> {
    v.resize(len, 0);
    v.truncate(len);
    v
}

fn distinguished_from_residues(p: u64, low: &[u64], modulus: u64) -> Result<DistinguishedPoly> {
    let mut coeffs: Vec<BigInt> =
        low.iter().map(|&c| BigInt::from(arith::balanced(c, modulus))).collect();
    coeffs.push(BigInt::from(1));
    DistinguishedPoly::new(p, coeffs)
}

/// Weierstrass division of `f` by a distinguished polynomial.
pub fn weierstrass_divide(f: &LambdaSeries, divisor: &DistinguishedPoly) -> Result<WeierstrassDivision> {
    let p = f.prime();
    if divisor.prime() != p {
        return Err(Error::PrimeMismatch(p, divisor.prime()));
    }
    let (a, b, modulus) = (f.p_precision(), f.x_precision(), f.modulus());
    let d = divisor.degree();
    if d == 0 {
        return Ok(WeierstrassDivision { quotient: f.clone(), remainder: Vec::new(), remainder_p_precision: a });
    }
    if b <= d {
        return Err(Error::InsufficientPrecision(format!(
            "series known mod X^{b} determines no quotient coefficient for a divisor of degree {d}"
        )));
    }
    let rem_prec = a.min((b / d) as u32);
    let quot_prec = a.min(((b - 1) / d) as u32);
    let quot_len = b - d * quot_prec as usize;

    // divisor = X^d + tail, tail = 0 mod p
    let tail = &divisor.residues(modulus)[..d];
    let mut quot = vec![0u64; b - d];
    let mut rem = vec![0u64; d];
    let mut cur = f.residues().to_vec();
    while cur.len() > d && cur.iter().any(|&c| c != 0) {
        for (r, &c) in rem.iter_mut().zip(&cur) {
            *r = add_mod(*r, c, modulus);
        }
        let high = &cur[d..];
        for (q, &c) in quot.iter_mut().zip(high) {
            *q = add_mod(*q, c, modulus);
        }
        // f - high*X^d*... leaves -high*tail, known below X^(len - d)
        let next = mul_truncated(high, tail, high.len(), modulus);
        cur = next.into_iter().map(|c| sub_mod(0, c, modulus)).collect();
    }
    if cur.len() <= d {
        // the last block only feeds the remainder, known to fewer terms
        for (r, &c) in rem.iter_mut().zip(&cur) {
            *r = add_mod(*r, c, modulus);
        }
    }

    let rmod = p.pow(rem_prec);
    let remainder = rem
        .iter()
        .map(|&c| PadicInt::from_residue(p, c % rmod, rem_prec, rmod))
        .collect();
    let qmod = p.pow(quot_prec);
    let quotient = LambdaSeries::from_residues(
        p,
        quot_prec,
        qmod,
        quot[..quot_len].iter().map(|&c| c % qmod).collect(),
    );
    Ok(WeierstrassDivision { quotient, remainder, remainder_p_precision: rem_prec })
}

/// Weierstrass preparation `f = p^mu * P * u`.
pub fn weierstrass_prepare(f: &LambdaSeries) -> Result<WeierstrassFactorization> {
    let p = f.prime();
    let (a, b) = (f.p_precision(), f.x_precision());
    let mu = f
        .residues()
        .iter()
        .filter(|&&c| c != 0)
        .map(|&c| arith::valuation_capped(c, p, a))
        .min()
        .ok_or(Error::ZeroWithinPrecision)?;

    // g = f / p^mu, known mod p^(a - mu)
    let ga = a - mu;
    let gmod = p.pow(ga);
    let shift = p.pow(mu);
    let g: Vec<u64> = f.residues().iter().map(|&c| (c / shift) % gmod).collect();
    let lambda = g
        .iter()
        .position(|&c| c % p != 0)
        .ok_or(Error::InsufficientXPrecision(b))?;

    if lambda == 0 {
        return Ok(WeierstrassFactorization {
            mu,
            distinguished_part: DistinguishedPoly::one(p)?,
            distinguished_p_precision: ga,
            unit_part: LambdaSeries::from_residues(p, ga, gmod, g),
            result_p_precision: a,
            result_x_precision: b,
        });
    }

    // g = low + X^lambda * high with low = 0 mod p and high a unit.
    // Solve high * w = tau(g * q) for w = q * high via the contraction
    // w = 1 - tau(low * high^-1 * w).
    let low = &g[..lambda];
    let high = &g[lambda..];
    let high_inv = inverse_truncated(high, gmod)?;
    let low_scaled = mul_truncated(&high_inv, low, high.len(), gmod);

    let mut w = vec![0u64; high.len()];
    let mut term = vec![0u64; high.len()];
    term[0] = 1 % gmod;
    while !term.is_empty() && term.iter().any(|&c| c != 0) {
        for (acc, &c) in w.iter_mut().zip(&term) {
            *acc = add_mod(*acc, c, gmod);
        }
        let prod = mul_truncated(&low_scaled, &term, term.len(), gmod);
        if prod.len() <= lambda {
            break;
        }
        term = prod[lambda..].iter().map(|&c| sub_mod(0, c, gmod)).collect();
    }

    let p_prec = ga.min((b / lambda) as u32);
    let u_prec = ga.min(((b - 1) / lambda) as u32);
    let u_len = b - lambda * u_prec as usize;

    // P = X^lambda + low(q * low), q = high^-1 * w
    let q_low = mul_truncated(&high_inv, &w, lambda.min(w.len()), gmod);
    let p_low = mul_truncated(&pad(q_low, lambda), low, lambda, gmod);
    let pmod = p.pow(p_prec);
    let p_low: Vec<u64> = p_low.iter().map(|&c| c % pmod).collect();
    let distinguished_part = distinguished_from_residues(p, &p_low, pmod)?;

    // u = q^-1 = high * w^-1
    let w_inv = inverse_truncated(&w, gmod)?;
    let umod = p.pow(u_prec);
    let unit: Vec<u64> = mul_truncated(high, &w_inv, u_len, gmod).iter().map(|&c| c % umod).collect();
    let unit_part = LambdaSeries::from_residues(p, u_prec, umod, unit);

    Ok(WeierstrassFactorization {
        mu,
        distinguished_part,
        distinguished_p_precision: p_prec,
        unit_part,
        result_p_precision: mu + u_prec,
        result_x_precision: u_len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::poly::{cyclotomic_phi, omega};
    use num_traits::ToPrimitive;

    fn series(p: u64, a: u32, b: usize, c: &[i128]) -> LambdaSeries {
        LambdaSeries::new(p, a, b, c).unwrap()
    }

    fn ints(poly: &DistinguishedPoly) -> Vec<i64> {
        poly.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn monomial_division() {
        let f = series(3, 4, 8, &[0, 0, 1]);
        let div = weierstrass_divide(&f, &DistinguishedPoly::x(3).unwrap()).unwrap();
        assert_eq!(div.quotient.balanced_coeffs()[..2], [0, 1]);
        assert!(div.quotient.balanced_coeffs()[2..].iter().all(|&c| c == 0));
        assert!(div.remainder.iter().all(PadicInt::is_zero));
    }

    #[test]
    fn omega_divided_by_phi() {
        let w1: Vec<i128> = omega(1, 3).unwrap().coeffs().iter().map(|c| c.to_i128().unwrap()).collect();
        let f = series(3, 6, 12, &w1);
        let div = weierstrass_divide(&f, &cyclotomic_phi(1, 3).unwrap()).unwrap();
        let q = div.quotient.balanced_coeffs();
        assert_eq!(q[..2], [0, 1]);
        assert!(q[2..].iter().all(|&c| c == 0));
        assert!(div.remainder.iter().all(PadicInt::is_zero));
    }

    #[test]
    fn constant_by_linear() {
        // f = 3 exactly: quotient 0, remainder 3
        let div = weierstrass_divide(&series(3, 4, 8, &[3]), &DistinguishedPoly::from_i64(3, &[3, 1]).unwrap())
            .unwrap();
        assert_eq!(div.remainder[0].value(), 3);
        assert_eq!(div.remainder_p_precision, 4);
        assert!(div.quotient.is_zero());
        // f = 3 + O(X^2): only the first digit of the remainder is determined
        let short = weierstrass_divide(&series(3, 4, 2, &[3]), &DistinguishedPoly::from_i64(3, &[3, 1]).unwrap())
            .unwrap();
        assert_eq!(short.remainder_p_precision, 2);
        assert_eq!(short.remainder[0].value(), 3);
        assert_eq!(short.quotient.x_precision(), 1);
        assert_eq!(short.quotient.p_precision(), 1);
    }

    #[test]
    fn division_needs_room_above_degree() {
        let f = series(3, 4, 2, &[1, 1]);
        let err = weierstrass_divide(&f, &cyclotomic_phi(1, 3).unwrap()).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision(_)));
    }

    #[test]
    fn already_factored_inputs() {
        let w = weierstrass_prepare(&series(3, 4, 8, &[0, 3])).unwrap();
        assert_eq!((w.mu, ints(&w.distinguished_part)), (1, vec![0, 1]));
        assert!(w.unit_part.balanced_coeffs()[0] == 1);
        assert!(w.unit_part.balanced_coeffs()[1..].iter().all(|&c| c == 0));

        let w = weierstrass_prepare(&series(3, 4, 8, &[3, 1])).unwrap();
        assert_eq!((w.mu, ints(&w.distinguished_part)), (0, vec![3, 1]));
        assert_eq!(w.unit_part.balanced_coeffs()[0], 1);
    }

    #[test]
    fn quadratic_with_one_small_root() {
        let w = weierstrass_prepare(&series(3, 4, 8, &[3, 1, 1])).unwrap();
        assert_eq!(w.mu, 0);
        assert_eq!(w.lambda(), 1);
        let c0 = w.distinguished_part.coeffs()[0].to_i64().unwrap();
        assert_eq!(c0.rem_euclid(9), 3);
        assert_eq!(w.reconstruct().unwrap(), series(3, 4, 8, &[3, 1, 1]).truncate(w.result_p_precision, w.result_x_precision));
    }

    #[test]
    fn preparation_errors() {
        assert_eq!(weierstrass_prepare(&series(3, 2, 4, &[9, 0, 18])), Err(Error::ZeroWithinPrecision));
        // the minimal-valuation coefficient always becomes a unit after dividing out p^mu
        let w = weierstrass_prepare(&series(3, 3, 3, &[3, 3, 6])).unwrap();
        assert_eq!((w.mu, w.lambda()), (1, 0));
    }

    #[test]
    fn unit_input_has_trivial_distinguished_part() {
        let f = series(5, 3, 6, &[2, 5, 1]);
        let w = weierstrass_prepare(&f).unwrap();
        assert_eq!(w.lambda(), 0);
        assert_eq!(w.unit_part, f);
    }
}
