use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::ring::MAX_MODULUS;

/// A prime power `p^e` with `e >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
}

impl PrimePower {
    /// `p^e`. Only constructed for factors of a supported modulus, so this fits.
    pub fn value(&self) -> u64 {
        self.p.pow(self.e)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

/// Prime factorization of `n >= 2`, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<PrimePower>,
}

impl Factorization {
    /// Builds a factorization from `(p, e)` pairs, checking primality, order and size.
    pub fn from_prime_powers(pairs: &[(u64, u32)]) -> Result<Self> {
        if pairs.is_empty() {
            return domain("empty factorization");
        }
        let mut n: u64 = 1;
        let mut factors = Vec::with_capacity(pairs.len());
        for (idx, &(p, e)) in pairs.iter().enumerate() {
            if !is_prime(p) {
                return domain(format!("{p} is not prime"));
            }
            if e == 0 {
                return domain(format!("exponent of {p} must be positive"));
            }
            if idx > 0 && pairs[idx - 1].0 >= p {
                return domain("primes must be strictly increasing");
            }
            let pe = p
                .checked_pow(e)
                .filter(|&v| v < MAX_MODULUS)
                .ok_or_else(|| crate::Error::Domain(format!("{p}^{e} exceeds 2^63")))?;
            n = n
                .checked_mul(pe)
                .filter(|&v| v < MAX_MODULUS)
                .ok_or_else(|| crate::Error::Domain("product exceeds 2^63".into()))?;
            factors.push(PrimePower { p, e });
        }
        Ok(Factorization { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.p)
    }

    /// Number of distinct primes, `t`.
    pub fn num_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].e == 1
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// `e_1 + ... + e_t`, the row sparsity bound of the generator matrix.
    pub fn sum_exponents(&self) -> u64 {
        self.factors.iter().map(|f| f.e as u64).sum()
    }

    /// `max p_i * e_i`, an upper bound for the Kempner function.
    pub fn lambda(&self) -> u64 {
        self.factors.iter().map(|f| f.p * f.e as u64).max().unwrap_or(1)
    }

    /// `n / p^e` for a factor of this factorization.
    pub fn cofactor(&self, pp: &PrimePower) -> u64 {
        self.n / pp.value()
    }

    pub fn factor_of(&self, p: u64) -> Option<PrimePower> {
        self.factors.iter().copied().find(|f| f.p == p)
    }

    /// Euler's totient computed from the factorization.
    pub fn phi(&self) -> u64 {
        self.factors.iter().map(|f| f.p.pow(f.e - 1) * (f.p - 1)).product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pp) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{pp}")?;
        }
        Ok(())
    }
}

/// Trial division up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return domain(format!("cannot factorize {n}: need n >= 2"));
    }
    if n >= MAX_MODULUS {
        return domain(format!("{n} is not below 2^63"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push(PrimePower { p, e });
        }
    };
    push(&mut rest, 2);
    let mut d = 3;
    while d <= rest / d {
        push(&mut rest, d);
        d += 2;
    }
    if rest > 1 {
        factors.push(PrimePower { p: rest, e: 1 });
    }
    Ok(Factorization { n, factors })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Euler's totient. `phi(1) = 1`.
pub fn euler_phi(n: u64) -> Result<u64> {
    match n {
        0 => domain("phi(0) is undefined"),
        1 => Ok(1),
        _ => Ok(factorize(n)?.phi()),
    }
}
