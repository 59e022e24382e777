use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::ring::vector::advance;
use crate::ring::{factorize, Factorization, ModVector, MultiModVector, StageCounts};

/// A point `base` and offset `l` with `f(base) != f(base + p*l) (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceWitness {
    pub p: u64,
    pub base: Vec<u64>,
    pub offset: Vec<u64>,
}

impl fmt::Display for CongruenceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "f({}) and f({} + {}*({})) differ mod {}",
            show(&self.base),
            show(&self.base),
            self.p,
            show(&self.offset),
            self.p
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precheck {
    Pass,
    Fail(CongruenceWitness),
}

impl Precheck {
    pub fn passed(&self) -> bool {
        matches!(self, Precheck::Pass)
    }
}

/// Checks `f(j) = f(j + l p) (mod p)` for every prime `p | n`.
pub fn congruence_precheck(f: &ModVector) -> Result<Precheck> {
    let fac = factorize(f.modulus().get())?;
    Ok(precheck_univariate(f, &fac, &mut StageCounts::default()))
}

pub(crate) fn precheck_univariate(f: &ModVector, fac: &Factorization, counts: &mut StageCounts) -> Precheck {
    let values = f.values();
    for p in fac.primes() {
        for a in p as usize..values.len() {
            counts.adds += 1;
            let j = a % p as usize;
            if values[a] % p != values[j] % p {
                return Precheck::Fail(CongruenceWitness {
                    p,
                    base: vec![j as u64],
                    offset: vec![a as u64 / p],
                });
            }
        }
    }
    Precheck::Pass
}

/// The same congruence in every coordinate at once:
/// `F(a) = F(a mod p) (mod p)` coordinatewise.
pub fn multivariate_precheck(f: &MultiModVector) -> Result<Precheck> {
    let fac = factorize(f.modulus().get())?;
    Ok(precheck_multivariate(f, &fac, &mut StageCounts::default()))
}

pub(crate) fn precheck_multivariate(f: &MultiModVector, fac: &Factorization, counts: &mut StageCounts) -> Precheck {
    let n = f.modulus().get();
    let m = f.arity() as usize;
    let values = f.values();
    for p in fac.primes() {
        let mut point = vec![0u64; m];
        for (i, &value) in values.iter().enumerate() {
            if i > 0 {
                advance(&mut point, n);
            }
            if point.iter().all(|&a| a < p) {
                continue;
            }
            let base: Vec<u64> = point.iter().map(|&a| a % p).collect();
            counts.adds += 1;
            if value % p != f.get(&base) % p {
                let offset = point.iter().map(|&a| a / p).collect();
                return Precheck::Fail(CongruenceWitness { p, base, offset });
            }
        }
    }
    Precheck::Pass
}
