//! Linear systems `A y = b` over `Z_n` for composite `n`.
//!
//! The system is split by the Chinese Remainder Theorem into one system per
//! prime power `p^e || n`, each solved by valuation-pivoted elimination, and
//! the per-prime solutions are glued back together.

mod eliminate;
mod matrix;

use std::borrow::Cow;

pub use matrix::SparseModMatrix;

use crate::error::{domain, Error, Result};
use crate::ring::{factorize, Factorization, Modulus, PrimePower, Residue, StageCounts, Tally};
use eliminate::{solve_dense, solve_sparse, LocalRing};

/// Subsystems with both dimensions at most this are eliminated densely.
pub const DENSE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// One particular solution `y` with `A y = b (mod n)`.
    Solvable(Vec<Residue>),
    Unsolvable,
}

impl SolveOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolveOutcome::Solvable(_))
    }

    pub fn solution(&self) -> Option<&[Residue]> {
        match self {
            SolveOutcome::Solvable(y) => Some(y),
            SolveOutcome::Unsolvable => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions<'a> {
    /// When the columns are generator vectors, the prime each one belongs to.
    /// The solver then checks that columns of other primes vanish in each
    /// prime-power subsystem.
    pub column_primes: Option<&'a [u64]>,
    pub dense_limit: usize,
}

impl Default for SolveOptions<'_> {
    fn default() -> Self {
        SolveOptions {
            column_primes: None,
            dense_limit: DENSE_LIMIT,
        }
    }
}

/// The leading `rows` equations. Borrows unchanged when nothing is cut.
pub fn truncate_system<'a>(
    a: &'a SparseModMatrix,
    b: &'a [Residue],
    rows: usize,
) -> Result<(Cow<'a, SparseModMatrix>, Cow<'a, [Residue]>)> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            actual: b.len(),
        });
    }
    if rows > a.rows() {
        return domain(format!("cannot keep {rows} of {} rows", a.rows()));
    }
    if rows == a.rows() {
        return Ok((Cow::Borrowed(a), Cow::Borrowed(b)));
    }
    Ok((Cow::Owned(a.truncated(rows)), Cow::Borrowed(&b[..rows])))
}

/// Solves over `Z_{p^e}`; `a` must be a matrix mod `p^e`.
pub fn solve_prime_power(a: &SparseModMatrix, b: &[Residue], p: u64, e: u32) -> Result<SolveOutcome> {
    let f = Factorization::from_prime_powers(&[(p, e)])?;
    let mut counts = StageCounts::default();
    solve_mod_n_with(a, b, &f, &SolveOptions::default(), &mut counts)
}

/// Solves over `Z_n` using the factorization of `n`.
pub fn solve_mod_n(a: &SparseModMatrix, b: &[Residue], f: &Factorization) -> Result<SolveOutcome> {
    let mut counts = StageCounts::default();
    solve_mod_n_with(a, b, f, &SolveOptions::default(), &mut counts)
}

pub fn solve_mod_n_with(
    a: &SparseModMatrix,
    b: &[Residue],
    f: &Factorization,
    opts: &SolveOptions<'_>,
    counts: &mut StageCounts,
) -> Result<SolveOutcome> {
    let n = a.modulus();
    if n.get() != f.n() {
        return Err(Error::ModulusMismatch {
            left: n.get(),
            right: f.n(),
        });
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            actual: b.len(),
        });
    }
    if let Some(bad) = b.iter().find(|&&x| x >= n.get()) {
        return domain(format!("right-hand side entry {bad} is not below {n}"));
    }
    if let Some(primes) = opts.column_primes {
        if primes.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                actual: primes.len(),
            });
        }
    }

    let mut parts = Vec::with_capacity(f.num_primes());
    for pp in f.factors() {
        let q = Modulus::new(pp.value())?;
        let local = if f.is_prime_power() {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.reduced(q))
        };
        if let Some(primes) = opts.column_primes {
            if let Some(c) = (0..local.cols()).find(|&c| primes[c] != pp.p && !local.column(c).is_empty()) {
                return domain(format!(
                    "column {c} (prime {}) does not vanish mod {}",
                    primes[c],
                    pp.value()
                ));
            }
        }
        let local_b: Vec<Residue> = b.iter().map(|&x| q.reduce(x)).collect();
        match solve_block(&local, &local_b, *pp, opts.dense_limit, counts) {
            Some(y) => parts.push((q, y)),
            None => return Ok(SolveOutcome::Unsolvable),
        }
    }
    Ok(SolveOutcome::Solvable(crt_combine(n, &parts, counts)))
}

/// Drops zero columns and zero rows, then eliminates.
fn solve_block(
    a: &SparseModMatrix,
    b: &[Residue],
    pp: PrimePower,
    dense_limit: usize,
    counts: &mut StageCounts,
) -> Option<Vec<Residue>> {
    let live_cols: Vec<usize> = (0..a.cols()).filter(|&c| !a.column(c).is_empty()).collect();
    let mut col_pos = vec![usize::MAX; a.cols()];
    for (i, &c) in live_cols.iter().enumerate() {
        col_pos[c] = i;
    }
    let full_rows = a.to_sparse_rows();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (row, &bi) in full_rows.into_iter().zip(b) {
        if row.is_empty() {
            if bi != 0 {
                return None;
            }
            continue;
        }
        rows.push(row.into_iter().map(|(c, x)| (col_pos[c], x)).collect::<Vec<_>>());
        rhs.push(bi);
    }

    let mut y = vec![0; a.cols()];
    if rows.is_empty() {
        return Some(y);
    }
    let ring = LocalRing::new(pp);
    let width = live_cols.len();
    let local = if rows.len().max(width) <= dense_limit {
        let dense = rows
            .iter()
            .map(|row| {
                let mut d = vec![0; width];
                for &(c, x) in row {
                    d[c] = x;
                }
                d
            })
            .collect();
        solve_dense(&ring, dense, rhs, width, counts)?
    } else {
        solve_sparse(&ring, rows, rhs, width, counts)?
    };
    for (i, &c) in live_cols.iter().enumerate() {
        y[c] = local[i];
    }
    Some(y)
}

/// Glues solutions mod each `q_i` into one solution mod `n = prod q_i`.
fn crt_combine(n: Modulus, parts: &[(Modulus, Vec<Residue>)], counts: &mut StageCounts) -> Vec<Residue> {
    if let [(_, y)] = parts {
        return y.clone();
    }
    let len = parts.first().map_or(0, |(_, y)| y.len());
    let mut t = Tally::new(n, counts);
    let mut out = vec![0; len];
    for (q, y) in parts {
        let cofactor = n.get() / q.get();
        let inv = q.inverse(cofactor % q.get()).expect("coprime cofactor");
        let basis = n.mul(cofactor, inv);
        for (slot, &yi) in out.iter_mut().zip(y) {
            if yi != 0 {
                *slot = t.mul_add(*slot, basis, yi);
            }
        }
    }
    out
}

/// Convenience: solve over `Z_n`, factorizing `n` first.
pub fn solve(a: &SparseModMatrix, b: &[Residue]) -> Result<SolveOutcome> {
    solve_mod_n(a, b, &factorize(a.modulus().get())?)
}
