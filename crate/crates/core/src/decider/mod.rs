//! Decision procedures: the generator-based decider, the monomial baseline,
//! the multivariate decider and an exhaustive oracle.

mod canonical;
mod multivariate;
mod oracle;
mod precheck;
mod univariate;

use std::fmt;

use serde::Serialize;

use crate::ring::{MultiModVector, Residue};

pub use canonical::{decide_canonical, CanonicalDecider};
pub use multivariate::{decide_multivariate, MultiDecideOptions, MultivariateDecider, TruncationRows};
pub use oracle::{brute_force_oracle, count_polynomial_functions, PolynomialCatalog, ORACLE_BUDGET};
pub use precheck::{congruence_precheck, multivariate_precheck, CongruenceWitness, Precheck};
pub use univariate::{decide_univariate, UnivariateDecider};

/// A function `Z_n^m -> Z_n` as its table, first variable most significant.
pub type MultiFunction = MultiModVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RejectStage {
    Precheck,
    LinearSolve,
    TailVerify,
}

impl RejectStage {
    pub fn name(self) -> &'static str {
        match self {
            RejectStage::Precheck => "precheck",
            RejectStage::LinearSolve => "linear-solve",
            RejectStage::TailVerify => "tail-verify",
        }
    }
}

impl fmt::Display for RejectStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Precheck(CongruenceWitness),
    LinearSolve,
    /// The candidate combination differs from the input at this table index.
    TailVerify {
        index: usize,
    },
}

impl Rejection {
    pub fn stage(&self) -> RejectStage {
        match self {
            Rejection::Precheck(_) => RejectStage::Precheck,
            Rejection::LinearSolve => RejectStage::LinearSolve,
            Rejection::TailVerify { .. } => RejectStage::TailVerify,
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Precheck(w) => write!(f, "precheck: {w}"),
            Rejection::LinearSolve => f.write_str("linear-solve: truncated system has no solution"),
            Rejection::TailVerify { index } => write!(f, "tail-verify: mismatch at index {index}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// Coefficients over the decider's generators (or monomials for the
    /// baseline) whose combination equals the input.
    Polynomial(Vec<Residue>),
    NotPolynomial(Rejection),
}

impl Decision {
    pub fn is_polynomial(&self) -> bool {
        matches!(self, Decision::Polynomial(_))
    }

    pub fn coefficients(&self) -> Option<&[Residue]> {
        match self {
            Decision::Polynomial(d) => Some(d),
            Decision::NotPolynomial(_) => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Decision::Polynomial(_) => None,
            Decision::NotPolynomial(r) => Some(r),
        }
    }
}

/// Which table entries the last step checks against the candidate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum VerifyMode {
    /// Every entry, so correctness never rests on the truncation argument.
    #[default]
    All,
    /// Only the entries outside the truncated system.
    Tail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub precheck: bool,
    pub verify: VerifyMode,
    /// For prime `n` every function is polynomial and the generators are the
    /// standard basis, so the input is its own coefficient vector.
    pub prime_fast_path: bool,
    pub dense_limit: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            precheck: true,
            verify: VerifyMode::All,
            prime_fast_path: true,
            dense_limit: crate::modsolve::DENSE_LIMIT,
        }
    }
}
