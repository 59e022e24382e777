use std::fmt;

use crate::error::{domain, Result};

/// A least non-negative residue. Always interpreted relative to some [`Modulus`].
pub type Residue = u64;

/// Exclusive upper bound on supported moduli.
pub const MAX_MODULUS: u64 = 1 << 63;

/// A modulus `n` with `2 <= n < 2^63`.
///
/// Products are formed in `u128` before reduction, so every operation is exact
/// for the whole supported range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return domain(format!("modulus must be at least 2, got {n}"));
        }
        if n >= MAX_MODULUS {
            return domain(format!("modulus {n} is not below 2^63"));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, a: u64) -> Residue {
        a % self.0
    }

    #[inline]
    pub fn reduce_i128(self, a: i128) -> Residue {
        a.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn contains(self, a: u64) -> bool {
        a < self.0
    }

    #[inline]
    pub fn add(self, a: Residue, b: Residue) -> Residue {
        debug_assert!(a < self.0 && b < self.0);
        let (s, overflow) = a.overflowing_add(b);
        if overflow || s >= self.0 {
            s.wrapping_sub(self.0)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: Residue, b: Residue) -> Residue {
        debug_assert!(a < self.0 && b < self.0);
        if a >= b {
            a - b
        } else {
            a + (self.0 - b)
        }
    }

    #[inline]
    pub fn neg(self, a: Residue) -> Residue {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: Residue, b: Residue) -> Residue {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    /// `base^exp` with `0^0 = 1`.
    pub fn pow(self, base: Residue, mut exp: u64) -> Residue {
        let mut result = 1 % self.0;
        let mut b = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inverse(self, a: Residue) -> Option<Residue> {
        let (g, x, _) = ext_gcd(self.reduce(a) as i128, self.0 as i128);
        (g == 1).then(|| self.reduce_i128(x))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}
