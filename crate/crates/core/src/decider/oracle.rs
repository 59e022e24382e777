use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ring::{kempner, ModVector, Modulus, Residue};

/// Largest `n^mu` the exhaustive enumeration accepts.
pub const ORACLE_BUDGET: u128 = 100_000_000;

/// Every polynomial function over `Z_n`, found by evaluating all `n^mu`
/// coefficient tuples of degree below `mu`.
pub struct PolynomialCatalog {
    modulus: Modulus,
    mu: usize,
    functions: HashSet<Vec<Residue>>,
}

impl PolynomialCatalog {
    pub fn new(n: u64) -> Result<Self> {
        let modulus = Modulus::new(n)?;
        let mu = kempner(n)? as usize;
        let tuples = (n as u128).checked_pow(mu as u32).filter(|&t| t <= ORACLE_BUDGET);
        let tuples = tuples.ok_or_else(|| {
            Error::Resource(format!(
                "enumerating {n}^{mu} coefficient tuples exceeds {ORACLE_BUDGET}"
            ))
        })?;
        let len = n as usize;
        let columns: Vec<Vec<Residue>> = (0..mu as u64)
            .map(|i| (0..n).map(|a| modulus.pow(a, i)).collect())
            .collect();
        // Odometer over coefficient tuples. Bumping digit i adds column i to
        // the running evaluation; a wrap from n-1 to 0 is the n-th addition,
        // which cancels, so the same update covers carries.
        let mut digits = vec![0u64; mu];
        let mut current = vec![0; len];
        let mut functions = HashSet::new();
        functions.insert(current.clone());
        for _ in 1..tuples {
            let mut i = 0;
            loop {
                for (x, &c) in current.iter_mut().zip(&columns[i]) {
                    *x = modulus.add(*x, c);
                }
                digits[i] += 1;
                if digits[i] < n {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            functions.insert(current.clone());
        }
        Ok(PolynomialCatalog { modulus, mu, functions })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn contains(&self, f: &ModVector) -> bool {
        f.modulus() == self.modulus && self.functions.contains(f.values())
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Residue]> {
        self.functions.iter().map(Vec::as_slice)
    }
}

/// Whether some polynomial of degree below `mu(n)` induces `f`.
pub fn brute_force_oracle(f: &ModVector) -> Result<bool> {
    Ok(PolynomialCatalog::new(f.modulus().get())?.contains(f))
}

/// The number of distinct polynomial functions `Z_n -> Z_n`.
pub fn count_polynomial_functions(n: u64) -> Result<u64> {
    Ok(PolynomialCatalog::new(n)?.len() as u64)
}
