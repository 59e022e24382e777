use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::vector::advance;
use crate::ring::{Modulus, MultiModVector, Residue};

/// A polynomial in `X1, ..., Xm` over `Z_n`, stored as exponent vector to
/// nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolynomial {
    modulus: Modulus,
    arity: u32,
    terms: BTreeMap<Vec<u32>, Residue>,
}

impl MultiPolynomial {
    pub fn zero(modulus: Modulus, arity: u32) -> Self {
        MultiPolynomial {
            modulus,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(modulus: Modulus, arity: u32, terms: impl IntoIterator<Item = (Vec<u32>, u64)>) -> Result<Self> {
        let mut p = Self::zero(modulus, arity);
        for (exps, c) in terms {
            p.add_term(exps, c)?;
        }
        Ok(p)
    }

    /// `c * X1^e1 * ... * Xm^em`.
    pub fn monomial(modulus: Modulus, c: u64, exps: Vec<u32>) -> Result<Self> {
        let arity = exps.len() as u32;
        Self::from_terms(modulus, arity, [(exps, c)])
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: u64) -> Result<()> {
        if exps.len() != self.arity as usize {
            return Err(Error::DimensionMismatch {
                expected: self.arity as usize,
                actual: exps.len(),
            });
        }
        let m = self.modulus;
        let slot = self.terms.entry(exps).or_insert(0);
        *slot = m.add(*slot, m.reduce(c));
        self.terms.retain(|_, c| *c != 0);
        Ok(())
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Residue)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent of any single variable.
    pub fn max_partial_degree(&self) -> Option<u32> {
        self.terms.keys().flat_map(|e| e.iter().copied()).max()
    }

    pub fn eval(&self, point: &[u64]) -> Residue {
        let m = self.modulus;
        self.terms.iter().fold(0, |acc, (exps, &c)| {
            let term = exps
                .iter()
                .zip(point)
                .fold(c, |t, (&e, &a)| m.mul(t, m.pow(m.reduce(a), e as u64)));
            m.add(acc, term)
        })
    }

    /// Values at all `n^m` points, first variable most significant.
    pub fn evaluate(&self) -> Result<MultiModVector> {
        let m = self.modulus;
        let len = MultiModVector::table_len(m, self.arity)?;
        let mut point = vec![0u64; self.arity as usize];
        let mut values = Vec::with_capacity(len);
        for i in 0..len {
            if i > 0 {
                advance(&mut point, m.get());
            }
            values.push(self.eval(&point));
        }
        Ok(MultiModVector::from_raw(m, self.arity, values))
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (t, (exps, &c)) in self.terms.iter().enumerate() {
            if t > 0 {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("X{}", i + 1)
                    } else {
                        format!("X{}^{e}", i + 1)
                    }
                })
                .collect();
            match (c, vars.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => f.write_str(&vars.join("*"))?,
                _ => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}
