use crate::error::{Error, Result};
use crate::modsolve::{solve_mod_n_with, SolveOptions, SolveOutcome, SparseModMatrix};
use crate::ring::{factorize, kempner_of, Factorization, ModVector, Modulus, OpCounters, Tally};

use super::precheck::precheck_univariate;
use super::{DecideOptions, Decision, Precheck, Rejection, VerifyMode};

/// The baseline decider over the monomials `1, X, ..., X^(mu-1)`.
///
/// The truncated system is the Vandermonde matrix on `0, ..., mu-1`; the
/// verification step evaluates the candidate by Horner's rule.
pub struct CanonicalDecider {
    factorization: Factorization,
    modulus: Modulus,
    mu: usize,
    vandermonde: SparseModMatrix,
    options: DecideOptions,
}

impl CanonicalDecider {
    pub fn new(n: u64) -> Result<Self> {
        Self::with_options(n, DecideOptions::default())
    }

    pub fn with_options(n: u64, options: DecideOptions) -> Result<Self> {
        let factorization = factorize(n)?;
        let modulus = Modulus::new(n)?;
        let mu = kempner_of(&factorization) as usize;
        crate::ring::vector::check_table_len((mu as u128) * (mu as u128), "the Vandermonde system")?;
        let rows: Vec<Vec<u64>> = (0..mu as u64)
            .map(|a| (0..mu as u64).map(|i| modulus.pow(a, i)).collect())
            .collect();
        Ok(CanonicalDecider {
            vandermonde: SparseModMatrix::from_dense(modulus, &rows)?,
            factorization,
            modulus,
            mu,
            options,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn decide(&self, f: &ModVector) -> Result<Decision> {
        self.decide_counted(f, &mut OpCounters::default())
    }

    pub fn decide_counted(&self, f: &ModVector, counters: &mut OpCounters) -> Result<Decision> {
        let m = self.modulus;
        if f.modulus() != m {
            return Err(Error::ModulusMismatch {
                left: m.get(),
                right: f.modulus().get(),
            });
        }
        if self.options.precheck {
            if let Precheck::Fail(w) = precheck_univariate(f, &self.factorization, &mut counters.precheck) {
                return Ok(Decision::NotPolynomial(Rejection::Precheck(w)));
            }
        }
        let opts = SolveOptions {
            column_primes: None,
            dense_limit: self.options.dense_limit,
        };
        let b = &f.values()[..self.mu];
        let c = match solve_mod_n_with(&self.vandermonde, b, &self.factorization, &opts, &mut counters.solve)? {
            SolveOutcome::Solvable(c) => c,
            SolveOutcome::Unsolvable => return Ok(Decision::NotPolynomial(Rejection::LinearSolve)),
        };

        let start = match self.options.verify {
            VerifyMode::All => 0,
            VerifyMode::Tail => self.mu,
        };
        let mut t = Tally::new(m, &mut counters.verify);
        let (&lead, rest) = c.split_last().expect("mu >= 1");
        for a in start..f.len() {
            let x = a as u64;
            let value = rest.iter().rev().fold(lead, |acc, &ci| t.mul_add(ci, acc, x));
            t.compare();
            if value != f.get(a) {
                return Ok(Decision::NotPolynomial(Rejection::TailVerify { index: a }));
            }
        }
        Ok(Decision::Polynomial(c))
    }
}

/// Decides with a one-off [`CanonicalDecider`]; coefficients are `c_0, ..., c_{mu-1}`.
pub fn decide_canonical(f: &ModVector) -> Result<Decision> {
    CanonicalDecider::new(f.modulus().get())?.decide(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::ModPolynomial;

    fn v(n: u64, values: &[u64]) -> ModVector {
        ModVector::new(Modulus::new(n).unwrap(), values.to_vec()).unwrap()
    }

    #[test]
    fn squares_mod_12_give_x_squared() {
        let f = v(12, &[0, 1, 4, 9, 4, 1, 0, 1, 4, 9, 4, 1]);
        let out = decide_canonical(&f).unwrap();
        let c = out.coefficients().unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(
            ModPolynomial::new(Modulus::new(12).unwrap(), c.to_vec())
                .evaluate()
                .unwrap(),
            f
        );
    }

    #[test]
    fn zero_function() {
        let out = decide_canonical(&v(10, &[0; 10])).unwrap();
        assert_eq!(out, Decision::Polynomial(vec![0; 5]));
    }

    #[test]
    fn non_polynomial_on_z4() {
        assert!(!decide_canonical(&v(4, &[0, 1, 0, 0])).unwrap().is_polynomial());
        let opts = DecideOptions {
            precheck: false,
            ..Default::default()
        };
        let dec = CanonicalDecider::with_options(4, opts).unwrap();
        assert!(!dec.decide(&v(4, &[0, 1, 0, 0])).unwrap().is_polynomial());
    }

    #[test]
    fn horner_cost_is_mu_minus_one_per_point() {
        let dec = CanonicalDecider::with_options(
            10,
            DecideOptions {
                verify: VerifyMode::Tail,
                ..Default::default()
            },
        )
        .unwrap();
        let m = dec.modulus();
        let f = ModVector::from_fn(m, |a| m.mul(a, a));
        let mut counters = OpCounters::default();
        assert!(dec.decide_counted(&f, &mut counters).unwrap().is_polynomial());
        assert_eq!(counters.verify.mults, (10 - 5) * 4);
    }
}
