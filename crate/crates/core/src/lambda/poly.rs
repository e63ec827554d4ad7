use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Monic polynomial over `Z` whose non-leading coefficients are divisible by `p`.
///
/// Coefficients are exact integers in ascending order. Ordering is
/// lexicographic on the coefficient vector, which is what canonical module
/// forms sort by.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistinguishedPoly {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl DistinguishedPoly {
    pub fn new(p: u64, mut coeffs: Vec<BigInt>) -> Result<Self> {
        arith::check_odd_prime(p)?;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        match coeffs.last() {
            Some(lead) if lead.is_one() => {}
            Some(lead) => {
                return Err(Error::NotDistinguished(format!("leading coefficient {lead} is not 1")))
            }
            None => return Err(Error::NotDistinguished("empty coefficient list".into())),
        }
        let pb = BigInt::from(p);
        if let Some(bad) = coeffs[..coeffs.len() - 1].iter().find(|c| !c.is_multiple_of(&pb)) {
            return Err(Error::NotDistinguished(format!(
                "non-leading coefficient {bad} is not divisible by {p}"
            )));
        }
        Ok(Self { p, coeffs })
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(p, coeffs.iter().copied().map(BigInt::from).collect())
    }

    /// The polynomial `X`.
    pub fn x(p: u64) -> Result<Self> {
        Self::from_i64(p, &[0, 1])
    }

    pub fn one(p: u64) -> Result<Self> {
        Self::from_i64(p, &[1])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(Self { p: self.p, coeffs: poly_mul(&self.coeffs, &other.coeffs) })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = vec![BigInt::one()];
        for _ in 0..k {
            acc = poly_mul(&acc, &self.coeffs);
        }
        Self { p: self.p, coeffs: acc }
    }

    /// Residues of the coefficients modulo `modulus`.
    pub fn residues(&self, modulus: u64) -> Vec<u64> {
        let m = BigInt::from(modulus);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("residue fits in u64"))
            .collect()
    }

    /// Coefficients replaced by balanced representatives modulo `p^precision`.
    pub fn reduce_balanced(&self, precision: u32) -> Result<Self> {
        let modulus = arith::prime_power(self.p, precision)?;
        let coeffs = self
            .residues(modulus)
            .into_iter()
            .map(|r| BigInt::from(arith::balanced(r, modulus)))
            .collect();
        Ok(Self { p: self.p, coeffs })
    }

    /// Equality of degrees and of coefficients modulo `p^precision`.
    pub fn congruent(&self, other: &Self, precision: u32) -> Result<bool> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let modulus = arith::prime_power(self.p, precision)?;
        Ok(self.degree() == other.degree() && self.residues(modulus) == other.residues(modulus))
    }

    /// Ascending coefficients joined by commas, e.g. `3,3,1`.
    pub fn to_csv(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for DistinguishedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{mag}*X^{i}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a monic polynomial over `Z`; returns `(quotient, remainder)`.
pub(crate) fn poly_divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = den.len() - 1;
    debug_assert!(den[d].is_one());
    if num.len() <= d {
        return (vec![BigInt::zero()], num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - d];
    for k in (0..quot.len()).rev() {
        let c = rem[k + d].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    rem.truncate(d.max(1));
    (quot, rem)
}

/// `(1+X)^(p^n) - 1`.
pub fn omega(n: u32, p: u64) -> Result<DistinguishedPoly> {
    arith::check_odd_prime(p)?;
    let deg = p
        .checked_pow(n)
        .and_then(|d| usize::try_from(d).ok())
        .ok_or_else(|| Error::InvalidInput(format!("degree {p}^{n} is too large")))?;
    // binomial coefficients C(deg, k) via the multiplicative recurrence
    let mut coeffs = Vec::with_capacity(deg + 1);
    let mut c = BigInt::one();
    coeffs.push(BigInt::zero());
    for k in 1..=deg {
        c = c * BigInt::from(deg - k + 1) / BigInt::from(k);
        coeffs.push(c.clone());
    }
    DistinguishedPoly::new(p, coeffs)
}

/// The `p^n`-th cyclotomic polynomial evaluated at `1+X`; `Phi_0 = X`.
pub fn cyclotomic_phi(n: u32, p: u64) -> Result<DistinguishedPoly> {
    if n == 0 {
        return DistinguishedPoly::x(p);
    }
    let num = omega(n, p)?;
    let den = omega(n - 1, p)?;
    let (quot, rem) = poly_divrem_monic(num.coeffs(), den.coeffs());
    assert!(rem.iter().all(Zero::is_zero), "omega(n) / omega(n-1) must be exact");
    DistinguishedPoly::new(p, quot)
}
