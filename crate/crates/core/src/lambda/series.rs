use std::fmt;

use crate::arith::{self, add_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};
use crate::lambda::padic::PadicInt;

/// Element of `Z_p[[X]]` known modulo `(p^p_precision, X^x_precision)`.
///
/// Coefficients are stored as residues in `[0, p^p_precision)`, one per
/// exponent below `x_precision`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaSeries {
    p: u64,
    p_precision: u32,
    modulus: u64,
    coeffs: Vec<u64>,
}

impl LambdaSeries {
    /// Build from signed integer coefficients (ascending); terms at or beyond
    /// `x_precision` are dropped.
    pub fn new(p: u64, p_precision: u32, x_precision: usize, coeffs: &[i128]) -> Result<Self> {
        let mut s = Self::zero(p, p_precision, x_precision)?;
        for (slot, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = arith::reduce_i128(c, s.modulus);
        }
        Ok(s)
    }

    pub fn zero(p: u64, p_precision: u32, x_precision: usize) -> Result<Self> {
        arith::check_odd_prime(p)?;
        if p_precision == 0 || x_precision == 0 {
            return Err(Error::InvalidPrecision(format!(
                "series precision (p^{p_precision}, X^{x_precision}) must be positive"
            )));
        }
        let modulus = arith::prime_power(p, p_precision)?;
        Ok(Self { p, p_precision, modulus, coeffs: vec![0; x_precision] })
    }

    pub fn one(p: u64, p_precision: u32, x_precision: usize) -> Result<Self> {
        Self::new(p, p_precision, x_precision, &[1])
    }

    /// `X^k`.
    pub fn monomial(p: u64, p_precision: u32, x_precision: usize, k: usize) -> Result<Self> {
        let mut s = Self::zero(p, p_precision, x_precision)?;
        if k < x_precision {
            s.coeffs[k] = 1 % s.modulus;
        }
        Ok(s)
    }

    /// Build from `PadicInt` coefficients; precision is the minimum over them
    /// (and `p_precision` when given).
    pub fn from_padic(coeffs: &[PadicInt], x_precision: usize) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidInput("empty coefficient list".into()))?;
        let p = first.prime();
        let mut a = first.precision();
        for c in coeffs {
            if c.prime() != p {
                return Err(Error::PrimeMismatch(p, c.prime()));
            }
            a = a.min(c.precision());
        }
        let mut s = Self::zero(p, a, x_precision)?;
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.value() % s.modulus;
        }
        Ok(s)
    }

    pub(crate) fn from_residues(p: u64, p_precision: u32, modulus: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        debug_assert!(coeffs.iter().all(|&c| c < modulus));
        Self { p, p_precision, modulus, coeffs }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn p_precision(&self) -> u32 {
        self.p_precision
    }

    pub fn x_precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficients as balanced integers in `(-p^a/2, p^a/2]`.
    pub fn balanced_coeffs(&self) -> Vec<i128> {
        self.coeffs.iter().map(|&c| arith::balanced(c, self.modulus)).collect()
    }

    /// Coefficient of `X^i`, or `None` if `i` is beyond the known range.
    pub fn coeff(&self, i: usize) -> Option<PadicInt> {
        self.coeffs
            .get(i)
            .map(|&c| PadicInt::from_residue(self.p, c, self.p_precision, self.modulus))
    }

    pub fn coefficients(&self) -> Vec<PadicInt> {
        (0..self.coeffs.len()).filter_map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] % self.p != 0
    }

    /// Reduce to a coarser precision. Requests finer than the current one are clamped.
    pub fn truncate(&self, p_precision: u32, x_precision: usize) -> Self {
        let a = p_precision.clamp(1, self.p_precision);
        let b = x_precision.clamp(1, self.coeffs.len());
        let modulus = self.p.pow(a);
        let coeffs = self.coeffs[..b].iter().map(|&c| c % modulus).collect();
        Self::from_residues(self.p, a, modulus, coeffs)
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let a = self.p_precision.min(other.p_precision);
        let b = self.x_precision().min(other.x_precision());
        Ok((self.truncate(a, b), other.truncate(a, b)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut x, y) = self.aligned(other)?;
        for (c, d) in x.coeffs.iter_mut().zip(&y.coeffs) {
            *c = add_mod(*c, *d, y.modulus);
        }
        Ok(x)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (mut x, y) = self.aligned(other)?;
        for (c, d) in x.coeffs.iter_mut().zip(&y.coeffs) {
            *c = sub_mod(*c, *d, y.modulus);
        }
        Ok(x)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| sub_mod(0, c, self.modulus)).collect();
        Self { coeffs, ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (x, y) = self.aligned(other)?;
        let coeffs = mul_truncated(&x.coeffs, &y.coeffs, x.coeffs.len(), x.modulus);
        Ok(Self { coeffs, ..x })
    }

    pub fn scale(&self, c: &PadicInt) -> Result<Self> {
        if c.prime() != self.p {
            return Err(Error::PrimeMismatch(self.p, c.prime()));
        }
        let x = self.truncate(c.precision(), self.x_precision());
        let k = c.value() % x.modulus;
        let coeffs = x.coeffs.iter().map(|&v| mul_mod(v, k, x.modulus)).collect();
        Ok(Self { coeffs, ..x })
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let coeffs = inverse_truncated(&self.coeffs, self.modulus)?;
        Ok(Self { coeffs, ..self.clone() })
    }
}

impl fmt::Display for LambdaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.balanced_coeffs().into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{}, X^{})", self.p, self.p_precision, self.x_precision())
    }
}

/// Product of residue vectors, keeping the first `len` terms.
pub(crate) fn mul_truncated(a: &[u64], b: &[u64], len: usize, modulus: u64) -> Vec<u64> {
    let m = modulus as u128;
    let mut acc = vec![0u128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            acc[i + j] = (acc[i + j] + x as u128 * y as u128) % m;
        }
    }
    acc.into_iter().map(|v| v as u64).collect()
}

/// Power-series inverse modulo `X^len`, `len = a.len()`.
pub(crate) fn inverse_truncated(a: &[u64], modulus: u64) -> Result<Vec<u64>> {
    let inv0 = arith::inv_mod(a[0], modulus).ok_or(Error::NotInvertible)?;
    let m = modulus as u128;
    let mut out = vec![0u64; a.len()];
    out[0] = inv0;
    for k in 1..a.len() {
        let mut s = 0u128;
        for j in 1..=k {
            s = (s + a[j] as u128 * out[k - j] as u128) % m;
        }
        out[k] = mul_mod(sub_mod(0, s as u64, modulus), inv0, modulus);
    }
    Ok(out)
}
