//! Dense matrices over `Z/p^k` and their elementary divisors.
//!
//! `Z/p^k` is a local principal ideal ring, so diagonalization only needs
//! pivots of minimal valuation: every other entry of the active block is a
//! multiple of the pivot.

use crate::arith::{self, add_mod, mul_mod, sub_mod};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    p: u64,
    k: u32,
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(p: u64, k: u32, rows: usize, cols: usize) -> Result<Self> {
        let modulus = arith::prime_power(p, k)?;
        Ok(Self { p, k, modulus, rows, cols, data: vec![0; rows * cols] })
    }

    pub fn identity(p: u64, k: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, k, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    /// Stores `value mod p^k`.
    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.data[r * self.cols + c] = value % self.modulus;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let m = self.modulus as u128;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let slot = &mut out[i * other.cols + j];
                    *slot = ((*slot as u128 + a as u128 * other.get(l, j) as u128) % m) as u64;
                }
            }
        }
        Self { rows: self.rows, cols: other.cols, data: out, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub_mod(a, b, self.modulus)).collect();
        Self { data, ..*self }
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.k, self.rows)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Valuations of the diagonal entries of the Smith form, one per
    /// `min(rows, cols)`, with a zero entry reported as `k`.
    pub fn elementary_divisor_exponents(&self) -> Vec<u32> {
        let (p, k, modulus) = (self.p, self.k, self.modulus);
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let idx = |r: usize, c: usize| r * cols + c;
        let mut out = Vec::with_capacity(rows.min(cols));
        for t in 0..rows.min(cols) {
            let mut best: Option<(u32, usize, usize)> = None;
            'search: for r in t..rows {
                for c in t..cols {
                    let v = a[idx(r, c)];
                    if v == 0 {
                        continue;
                    }
                    let val = arith::valuation_capped(v, p, k);
                    if best.is_none_or(|(b, _, _)| val < b) {
                        best = Some((val, r, c));
                        if val == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((val, pr, pc)) = best else {
                out.extend(std::iter::repeat_n(k, rows.min(cols) - t));
                break;
            };
            out.push(val);
            if pr != t {
                for c in 0..cols {
                    a.swap(idx(pr, c), idx(t, c));
                }
            }
            if pc != t {
                for r in 0..rows {
                    a.swap(idx(r, pc), idx(r, t));
                }
            }
            // pivot = p^val * unit; scale the pivot row so the pivot is exactly p^val
            let shift = p.pow(val);
            let unit = a[idx(t, t)] / shift;
            let unit_inv = arith::inv_mod(unit, modulus).expect("unit part of pivot is invertible");
            for c in t..cols {
                a[idx(t, c)] = mul_mod(a[idx(t, c)], unit_inv, modulus);
            }
            // clear column t below the pivot
            for r in t + 1..rows {
                let v = a[idx(r, t)];
                if v == 0 {
                    continue;
                }
                let factor = v / shift;
                for c in t..cols {
                    let sub = mul_mod(factor, a[idx(t, c)], modulus);
                    a[idx(r, c)] = sub_mod(a[idx(r, c)], sub, modulus);
                }
            }
            // row t beyond the pivot is a multiple of p^val; column operations clear it
            // without touching rows below (their column-t entries are already zero)
            for c in t + 1..cols {
                a[idx(t, c)] = 0;
            }
        }
        out
    }

    /// `log_p` of the cokernel of `Z/p^k^cols -> Z/p^k^rows`.
    pub fn cokernel_log(&self) -> u64 {
        let divisors: u64 = self.elementary_divisor_exponents().iter().map(|&v| v as u64).sum();
        let missing = self.rows.saturating_sub(self.cols) as u64;
        divisors + missing * self.k as u64
    }

    /// `log_p` of the kernel.
    pub fn kernel_log(&self) -> u64 {
        let image_log = self.rows as u64 * self.k as u64 - self.cokernel_log();
        self.cols as u64 * self.k as u64 - image_log
    }
}

/// Matrix of multiplication by `g` on `(Z/p^k)[X] / (modulus_poly)`, in the
/// monomial basis, for a monic `modulus_poly` given by its residues.
pub fn multiplication_matrix(p: u64, k: u32, g: &[u64], modulus_poly: &[u64]) -> Result<ModMatrix> {
    let n = modulus_poly.len() - 1;
    let mut m = ModMatrix::zeros(p, k, n, n)?;
    let md = m.modulus;
    let reduced_g = poly_rem(g, modulus_poly, md);
    // column j = g * X^j mod modulus_poly
    let mut col = reduced_g;
    for j in 0..n {
        for (i, &c) in col.iter().enumerate() {
            m.set(i, j, c);
        }
        col = mul_by_x_rem(&col, modulus_poly, md);
    }
    Ok(m)
}

/// Remainder of `a` modulo a monic polynomial, as a vector of length `deg`.
pub fn poly_rem(a: &[u64], monic: &[u64], modulus: u64) -> Vec<u64> {
    let d = monic.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c % modulus).collect();
    for top in (d..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (j, &mj) in monic.iter().enumerate() {
            let idx = top - d + j;
            r[idx] = sub_mod(r[idx], mul_mod(c, mj, modulus), modulus);
        }
    }
    r.resize(d, 0);
    r
}

/// `X * a mod monic` for `a` already reduced (length `deg`).
pub fn mul_by_x_rem(a: &[u64], monic: &[u64], modulus: u64) -> Vec<u64> {
    let d = monic.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let top = a[d - 1];
    let mut out = vec![0u64; d];
    for i in (1..d).rev() {
        out[i] = a[i - 1];
    }
    for (o, &mj) in out.iter_mut().zip(monic) {
        *o = sub_mod(*o, mul_mod(top, mj, modulus), modulus);
    }
    out
}

/// Product of two reduced elements of `(Z/p^k)[X] / (monic)`.
pub fn mul_rem(a: &[u64], b: &[u64], monic: &[u64], modulus: u64) -> Vec<u64> {
    let mut full = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            full[i + j] = add_mod(full[i + j], mul_mod(x, y, modulus), modulus);
        }
    }
    poly_rem(&full, monic, modulus)
}

/// Residues of the product of two integer-residue polynomials.
pub fn poly_mul_mod(a: &[u64], b: &[u64], modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, modulus), modulus);
        }
    }
    out
}
