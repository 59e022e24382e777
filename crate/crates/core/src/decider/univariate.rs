use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::modsolve::{solve_mod_n_with, SolveOptions, SolveOutcome, SparseModMatrix};
use crate::ring::{factorize, Factorization, ModVector, Modulus, OpCounters, Residue, Tally};

use super::precheck::precheck_univariate;
use super::{DecideOptions, Decision, Precheck, Rejection, VerifyMode};

/// The generator-based decider for one modulus.
///
/// Construction builds the generator matrix once; deciding a function then
/// costs a precheck, one truncated solve and a sparse verification pass.
pub struct UnivariateDecider {
    gens: GeneratorSet,
    column_primes: Vec<u64>,
    truncated: SparseModMatrix,
    rows: Vec<Vec<(usize, Residue)>>,
    options: DecideOptions,
}

impl UnivariateDecider {
    pub fn new(n: u64) -> Result<Self> {
        Self::with_options(n, DecideOptions::default())
    }

    pub fn with_options(n: u64, options: DecideOptions) -> Result<Self> {
        Self::from_factorization(&factorize(n)?, options)
    }

    pub fn from_factorization(f: &Factorization, options: DecideOptions) -> Result<Self> {
        let gens = GeneratorSet::new(f)?;
        let matrix = gens.matrix();
        let truncated = matrix.truncated(gens.len().min(matrix.rows()));
        Ok(UnivariateDecider {
            column_primes: gens.column_primes(),
            rows: matrix.to_sparse_rows(),
            truncated,
            gens,
            options,
        })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn modulus(&self) -> Modulus {
        self.gens.modulus()
    }

    pub fn options(&self) -> &DecideOptions {
        &self.options
    }

    /// Number of equations in the truncated system.
    pub fn truncated_rows(&self) -> usize {
        self.truncated.rows()
    }

    pub fn decide(&self, f: &ModVector) -> Result<Decision> {
        self.decide_counted(f, &mut OpCounters::default())
    }

    pub fn decide_counted(&self, f: &ModVector, counters: &mut OpCounters) -> Result<Decision> {
        let m = self.modulus();
        if f.modulus() != m {
            return Err(Error::ModulusMismatch {
                left: m.get(),
                right: f.modulus().get(),
            });
        }
        let fac = self.gens.factorization();
        if self.options.prime_fast_path && fac.is_prime() {
            return Ok(Decision::Polynomial(f.values().to_vec()));
        }
        if self.options.precheck {
            if let Precheck::Fail(w) = precheck_univariate(f, fac, &mut counters.precheck) {
                return Ok(Decision::NotPolynomial(Rejection::Precheck(w)));
            }
        }

        let top = self.truncated.rows();
        let opts = SolveOptions {
            column_primes: Some(&self.column_primes),
            dense_limit: self.options.dense_limit,
        };
        let d = match solve_mod_n_with(&self.truncated, &f.values()[..top], fac, &opts, &mut counters.solve)? {
            SolveOutcome::Solvable(d) => d,
            SolveOutcome::Unsolvable => return Ok(Decision::NotPolynomial(Rejection::LinearSolve)),
        };

        let start = match self.options.verify {
            VerifyMode::All => 0,
            VerifyMode::Tail => top,
        };
        let mut t = Tally::new(m, &mut counters.verify);
        for (j, row) in self.rows.iter().enumerate().skip(start) {
            let mut acc = 0;
            for &(c, a) in row {
                if d[c] != 0 {
                    acc = t.mul_add(acc, d[c], a);
                }
            }
            t.compare();
            if acc != f.get(j) {
                return Ok(Decision::NotPolynomial(Rejection::TailVerify { index: j }));
            }
        }
        Ok(Decision::Polynomial(d))
    }
}

/// Decides with a one-off [`UnivariateDecider`].
pub fn decide_univariate(f: &ModVector) -> Result<Decision> {
    UnivariateDecider::new(f.modulus().get())?.decide(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decider::RejectStage;
    use proptest::prelude::*;

    fn v(n: u64, values: &[u64]) -> ModVector {
        ModVector::new(Modulus::new(n).unwrap(), values.to_vec()).unwrap()
    }

    fn stage(d: &Decision) -> Option<RejectStage> {
        d.rejection().map(|r| r.stage())
    }

    #[test]
    fn squares_mod_12() {
        let f = v(12, &[0, 1, 4, 9, 4, 1, 0, 1, 4, 9, 4, 1]);
        let dec = UnivariateDecider::new(12).unwrap();
        let out = dec.decide(&f).unwrap();
        let d = out.coefficients().unwrap();
        assert_eq!(d.len(), 7);
        assert_eq!(dec.generators().combine(d).unwrap(), f);
    }

    #[test]
    fn non_polynomial_on_z4() {
        let out = decide_univariate(&v(4, &[0, 1, 0, 0])).unwrap();
        assert_eq!(stage(&out), Some(RejectStage::Precheck));
        let opts = DecideOptions {
            precheck: false,
            ..Default::default()
        };
        let out = UnivariateDecider::with_options(4, opts)
            .unwrap()
            .decide(&v(4, &[0, 1, 0, 0]))
            .unwrap();
        assert!(!out.is_polynomial());
    }

    #[test]
    fn tail_stage_reached_without_precheck() {
        // Passes the congruences but is not polynomial: 2 * [a = 0] over Z_8
        // would need degree-4 behaviour the generators cannot match.
        let f = v(8, &[2, 0, 0, 0, 0, 0, 0, 0]);
        let out = decide_univariate(&f).unwrap();
        assert!(!out.is_polynomial());
        assert_ne!(stage(&out), Some(RejectStage::Precheck));
    }

    #[test]
    fn prime_modulus_returns_input() {
        let f = v(7, &[3, 1, 4, 1, 5, 2, 6]);
        let mut counters = OpCounters::default();
        let dec = UnivariateDecider::new(7).unwrap();
        assert_eq!(
            dec.decide_counted(&f, &mut counters).unwrap(),
            Decision::Polynomial(f.values().to_vec())
        );
        assert_eq!(counters.total().mults, 0);
        let slow = UnivariateDecider::with_options(
            7,
            DecideOptions {
                prime_fast_path: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(slow.decide(&f).unwrap(), Decision::Polynomial(f.values().to_vec()));
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let dec = UnivariateDecider::new(12).unwrap();
        assert!(dec.decide(&v(6, &[0; 6])).is_err());
    }

    #[test]
    fn tail_mode_agrees_with_full_mode() {
        let tail = UnivariateDecider::with_options(
            24,
            DecideOptions {
                verify: VerifyMode::Tail,
                ..Default::default()
            },
        )
        .unwrap();
        let full = UnivariateDecider::new(24).unwrap();
        let m = Modulus::new(24).unwrap();
        for seed in 0..200u64 {
            let f = ModVector::from_fn(m, |a| (seed * a * a + (seed / 7) * a * a * a + seed % 5) % 24);
            assert!(full.decide(&f).unwrap().is_polynomial());
            assert!(tail.decide(&f).unwrap().is_polynomial());
        }
    }

    #[test]
    fn verify_counts_follow_row_sparsity() {
        let dec = UnivariateDecider::new(9797).unwrap();
        let m = dec.modulus();
        let f = ModVector::from_fn(m, |a| m.add(m.mul(a, a), 5));
        let mut counters = OpCounters::default();
        assert!(dec.decide_counted(&f, &mut counters).unwrap().is_polynomial());
        assert!(counters.verify.mults <= 2 * 9797);
        assert_eq!(
            counters.total().mults,
            counters.precheck.mults + counters.solve.mults + counters.verify.mults
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn witness_reproduces_input(n in 2u64..40, coeffs in prop::collection::vec(0u64..1000, 1..8)) {
            let m = Modulus::new(n).unwrap();
            let f = ModVector::from_fn(m, |a| coeffs.iter().rev().fold(0, |acc, &c| m.add(m.mul(acc, a), m.reduce(c))));
            let dec = UnivariateDecider::new(n).unwrap();
            let out = dec.decide(&f).unwrap();
            let d = out.coefficients().expect("polynomial input");
            prop_assert_eq!(dec.generators().combine(d).unwrap(), f);
        }
    }
}
