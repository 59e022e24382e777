use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{ModVector, Modulus, Residue, MAX_TABLE_LEN};

/// A polynomial `c_0 + c_1 X + ... + c_r X^r` over `Z_n`.
///
/// Coefficients are reduced and trailing zeros trimmed, so the zero polynomial
/// has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPolynomial {
    modulus: Modulus,
    coeffs: Vec<Residue>,
}

impl ModPolynomial {
    pub fn new(modulus: Modulus, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| modulus.reduce(c)).collect();
        let mut p = ModPolynomial { modulus, coeffs };
        p.trim();
        p
    }

    pub fn zero(modulus: Modulus) -> Self {
        ModPolynomial {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(modulus: Modulus, c: u64) -> Self {
        Self::new(modulus, vec![c])
    }

    /// The indeterminate `X`.
    pub fn x(modulus: Modulus) -> Self {
        Self::new(modulus, vec![0, 1])
    }

    /// `c * X^degree`.
    pub fn monomial(modulus: Modulus, c: u64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::new(modulus, coeffs)
    }

    /// `(X - k)^d`, expanded with the binomial theorem.
    pub fn shifted_power(modulus: Modulus, d: usize, k: u64) -> Self {
        let row = binomial_row(modulus, d);
        Self::shifted_power_with_row(modulus, &row, k)
    }

    /// `(X - k)^d` given the binomial row `C(d, 0..=d) mod n`.
    pub(crate) fn shifted_power_with_row(modulus: Modulus, row: &[Residue], k: u64) -> Self {
        let d = row.len() - 1;
        let minus_k = modulus.neg(modulus.reduce(k));
        let mut coeffs = vec![0; d + 1];
        // coefficient of X^i is C(d, i) * (-k)^(d - i)
        let mut pow = 1 % modulus.get();
        for i in (0..=d).rev() {
            coeffs[i] = modulus.mul(row[i], pow);
            pow = modulus.mul(pow, minus_k);
        }
        Self::new(modulus, coeffs)
    }

    /// `X (X - 1) ... (X - mu + 1)`, monic of degree `mu`.
    pub fn falling_factorial(modulus: Modulus, mu: usize) -> Self {
        let mut coeffs = vec![1 % modulus.get()];
        for k in 0..mu as u64 {
            let minus_k = modulus.neg(modulus.reduce(k));
            let mut next = vec![0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = modulus.add(next[i + 1], c);
                next[i] = modulus.add(next[i], modulus.mul(c, minus_k));
            }
            coeffs = next;
        }
        Self::new(modulus, coeffs)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Residue] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Residue {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| m.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::new(m, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| m.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::new(m, coeffs))
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        Self::new(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    /// `self += c * other`, in place.
    pub(crate) fn add_scaled_assign(&mut self, c: Residue, other: &Self) {
        debug_assert_eq!(self.modulus, other.modulus);
        if c == 0 || other.is_zero() {
            return;
        }
        let m = self.modulus;
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0);
        }
        for (slot, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *slot = m.add(*slot, m.mul(c, b));
        }
        self.trim();
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.modulus));
        }
        let m = self.modulus;
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = m.add(coeffs[i + j], m.mul(a, b));
            }
        }
        Ok(Self::new(m, coeffs))
    }

    /// Horner evaluation at a single point.
    pub fn eval(&self, x: u64) -> Residue {
        let m = self.modulus;
        let x = m.reduce(x);
        self.coeffs.iter().rev().fold(0, |acc, &c| m.add(m.mul(acc, x), c))
    }

    /// The induced function, evaluated at `0, ..., n-1`.
    pub fn evaluate(&self) -> Result<ModVector> {
        if self.modulus.get() > MAX_TABLE_LEN {
            return Err(Error::Resource(format!(
                "cannot tabulate a function over Z_{}",
                self.modulus
            )));
        }
        Ok(ModVector::from_fn(self.modulus, |a| self.eval(a)))
    }

    /// Quotient and remainder by a monic divisor.
    ///
    /// Over `Z_n` only monic division is always defined, so any other divisor
    /// is rejected.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same(divisor)?;
        if !divisor.is_monic() {
            return Err(Error::Domain("divisor must be monic".into()));
        }
        let m = self.modulus;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(m), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let lead = rem[top];
            if lead == 0 {
                continue;
            }
            let shift = top - dd;
            quot[shift] = lead;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = m.sub(rem[shift + i], m.mul(lead, c));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(m, quot), Self::new(m, rem)))
    }
}

/// `C(d, i) mod n` for `i = 0..=d`, by Pascal's rule (no division needed).
pub(crate) fn binomial_row(modulus: Modulus, d: usize) -> Vec<Residue> {
    let mut row = vec![0; d + 1];
    row[0] = 1 % modulus.get();
    for r in 1..=d {
        for i in (1..=r).rev() {
            row[i] = modulus.add(row[i], row[i - 1]);
        }
    }
    row
}

/// `c0 + c1*X + c2*X^2 + ...`; zero terms omitted, zero polynomial is `0`.
impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
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
        Ok(())
    }
}
