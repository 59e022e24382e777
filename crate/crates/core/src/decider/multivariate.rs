use crate::error::{Error, Result};
use crate::generators::MultiGeneratorSet;
use crate::modsolve::{solve_mod_n_with, SolveOptions, SolveOutcome, SparseModMatrix, DENSE_LIMIT};
use crate::ring::vector::advance;
use crate::ring::{factorize, kempner_of, Modulus, MultiModVector, OpCounters, Residue, Tally};

use super::precheck::precheck_multivariate;
use super::{Decision, Precheck, Rejection, VerifyMode};

/// Which equations form the truncated system.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TruncationRows {
    /// The points of `[0, mu)^m`. A polynomial function is determined by its
    /// values there, so any solution of this subsystem is a valid candidate.
    #[default]
    KempnerGrid,
    /// The first `N_m` entries of the table. Smaller, but it can miss: over
    /// `Z_4` in two variables the leading rows only see `x1 < 3`.
    Leading,
    /// Every entry.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDecideOptions {
    pub precheck: bool,
    pub truncation: TruncationRows,
    pub verify: VerifyMode,
    pub dense_limit: usize,
}

impl Default for MultiDecideOptions {
    fn default() -> Self {
        MultiDecideOptions {
            precheck: true,
            truncation: TruncationRows::KempnerGrid,
            verify: VerifyMode::All,
            dense_limit: DENSE_LIMIT,
        }
    }
}

pub struct MultivariateDecider {
    gens: MultiGeneratorSet,
    column_primes: Vec<u64>,
    selected: Vec<usize>,
    in_selection: Vec<bool>,
    truncated: SparseModMatrix,
    rows: Vec<Vec<(usize, Residue)>>,
    options: MultiDecideOptions,
}

impl MultivariateDecider {
    pub fn new(n: u64, arity: u32) -> Result<Self> {
        Self::with_options(n, arity, MultiDecideOptions::default())
    }

    pub fn with_options(n: u64, arity: u32, options: MultiDecideOptions) -> Result<Self> {
        let f = factorize(n)?;
        let gens = MultiGeneratorSet::new(&f, arity)?;
        let matrix = gens.matrix();
        let total = matrix.rows();
        let selected: Vec<usize> = match options.truncation {
            TruncationRows::KempnerGrid => {
                let mu = kempner_of(&f);
                let m = arity as usize;
                let count = (mu as usize).pow(arity);
                let mut point = vec![0u64; m];
                let mut out = Vec::with_capacity(count);
                for i in 0..count {
                    if i > 0 {
                        advance(&mut point, mu);
                    }
                    out.push(point.iter().fold(0usize, |acc, &a| acc * n as usize + a as usize));
                }
                out
            }
            TruncationRows::Leading => (0..gens.len().min(total)).collect(),
            TruncationRows::All => (0..total).collect(),
        };
        let mut in_selection = vec![false; total];
        for &r in &selected {
            in_selection[r] = true;
        }
        Ok(MultivariateDecider {
            column_primes: gens.column_primes(),
            truncated: matrix.select_rows(&selected)?,
            rows: matrix.to_sparse_rows(),
            selected,
            in_selection,
            gens,
            options,
        })
    }

    pub fn generators(&self) -> &MultiGeneratorSet {
        &self.gens
    }

    pub fn modulus(&self) -> Modulus {
        self.gens.modulus()
    }

    pub fn arity(&self) -> u32 {
        self.gens.arity()
    }

    /// Table indices of the equations in the truncated system.
    pub fn truncation(&self) -> &[usize] {
        &self.selected
    }

    pub fn decide(&self, f: &MultiModVector) -> Result<Decision> {
        self.decide_counted(f, &mut OpCounters::default())
    }

    pub fn decide_counted(&self, f: &MultiModVector, counters: &mut OpCounters) -> Result<Decision> {
        let m = self.modulus();
        if f.modulus() != m {
            return Err(Error::ModulusMismatch {
                left: m.get(),
                right: f.modulus().get(),
            });
        }
        if f.arity() != self.arity() {
            return Err(Error::DimensionMismatch {
                expected: self.arity() as usize,
                actual: f.arity() as usize,
            });
        }
        let fac = self.gens.factorization();
        if self.options.precheck {
            if let Precheck::Fail(w) = precheck_multivariate(f, fac, &mut counters.precheck) {
                return Ok(Decision::NotPolynomial(Rejection::Precheck(w)));
            }
        }

        let b: Vec<Residue> = self.selected.iter().map(|&r| f.values()[r]).collect();
        let opts = SolveOptions {
            column_primes: Some(&self.column_primes),
            dense_limit: self.options.dense_limit,
        };
        let d = match solve_mod_n_with(&self.truncated, &b, fac, &opts, &mut counters.solve)? {
            SolveOutcome::Solvable(d) => d,
            SolveOutcome::Unsolvable => return Ok(Decision::NotPolynomial(Rejection::LinearSolve)),
        };

        let mut t = Tally::new(m, &mut counters.verify);
        for (i, row) in self.rows.iter().enumerate() {
            if self.options.verify == VerifyMode::Tail && self.in_selection[i] {
                continue;
            }
            let mut acc = 0;
            for &(c, a) in row {
                if d[c] != 0 {
                    acc = t.mul_add(acc, d[c], a);
                }
            }
            t.compare();
            if acc != f.values()[i] {
                return Ok(Decision::NotPolynomial(Rejection::TailVerify { index: i }));
            }
        }
        Ok(Decision::Polynomial(d))
    }
}

/// Decides with a one-off [`MultivariateDecider`].
pub fn decide_multivariate(f: &MultiModVector) -> Result<Decision> {
    MultivariateDecider::new(f.modulus().get(), f.arity())?.decide(f)
}
