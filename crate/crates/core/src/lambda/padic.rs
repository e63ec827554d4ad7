use std::fmt;

use crate::arith::{self, add_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};

/// A p-adic integer known modulo `p^precision`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    value: u64,
    precision: u32,
    modulus: u64,
}

impl PadicInt {
    pub fn new(p: u64, value: i128, precision: u32) -> Result<Self> {
        arith::check_odd_prime(p)?;
        if precision == 0 {
            return Err(Error::InvalidPrecision("p-adic precision must be positive".into()));
        }
        let modulus = arith::prime_power(p, precision)?;
        Ok(Self { p, value: arith::reduce_i128(value, modulus), precision, modulus })
    }

    pub(crate) fn from_residue(p: u64, value: u64, precision: u32, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Self { p, value, precision, modulus }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Residue in `[0, p^precision)`.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn balanced(&self) -> i128 {
        arith::balanced(self.value, self.modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        self.value % self.p != 0
    }

    /// Valuation, or `None` when the value is zero to the known precision.
    pub fn valuation(&self) -> Option<u32> {
        (!self.is_zero()).then(|| arith::valuation_capped(self.value, self.p, self.precision))
    }

    /// Forget digits beyond `p^precision`.
    pub fn truncate(&self, precision: u32) -> Self {
        if precision >= self.precision {
            return *self;
        }
        let modulus = self.p.pow(precision);
        Self::from_residue(self.p, self.value % modulus, precision, modulus)
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let prec = self.precision.min(other.precision);
        Ok((self.truncate(prec), other.truncate(prec)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(Self { value: add_mod(a.value, b.value, a.modulus), ..a })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(Self { value: sub_mod(a.value, b.value, a.modulus), ..a })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(Self { value: mul_mod(a.value, b.value, a.modulus), ..a })
    }

    pub fn neg(&self) -> Self {
        Self { value: sub_mod(0, self.value, self.modulus), ..*self }
    }

    pub fn inverse(&self) -> Result<Self> {
        let value = arith::inv_mod(self.value, self.modulus).ok_or(Error::NotInvertible)?;
        Ok(Self { value, ..*self })
    }

    /// Exact division by `p^k`; the result is known to `precision - k` digits.
    pub fn div_p_power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(*self);
        }
        if k >= self.precision {
            return Err(Error::InsufficientPrecision(format!(
                "dividing by p^{k} leaves no digits of a value known mod p^{}",
                self.precision
            )));
        }
        let divisor = self.p.pow(k);
        if self.value % divisor != 0 {
            return Err(Error::InvalidInput(format!("{} is not divisible by p^{k}", self.value)));
        }
        let precision = self.precision - k;
        let modulus = self.p.pow(precision);
        Ok(Self::from_residue(self.p, self.value / divisor, precision, modulus))
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.value, self.p, self.precision)
    }
}
