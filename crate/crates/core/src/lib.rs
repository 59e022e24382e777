//! Deciding whether a function over `Z_n` is induced by a polynomial.
//!
//! The polynomial functions `Z_n -> Z_n` form a `Z_n`-module. Besides the
//! monomial evaluations `1, X, ..., X^(mu-1)` (where `mu` is the Kempner
//! function of `n`), the module is generated by the much sparser vectors
//! `u_{p,j}^{<k>}`: for every prime power `p^e` exactly dividing `n`, every
//! `j < e` and every shift `k < p`,
//!
//! ```text
//! u_{p,j}^{<k>}(a) = (n / p^e) * (a - k)^j   if a = k (mod p)
//!                  = 0                        otherwise
//! ```
//!
//! Deciding representability then reduces to a sparse linear system over
//! `Z_n`, solved here by splitting into prime-power rings and running
//! valuation-pivoted elimination in each.
//!
//! ```
//! use polyrep::{decide_univariate, ModVector, Modulus};
//!
//! let n = Modulus::new(12).unwrap();
//! let squares = ModVector::from_fn(n, |a| a * a);
//! assert!(decide_univariate(&squares).unwrap().is_polynomial());
//! ```

pub mod bench;
pub mod decider;
pub mod error;
pub mod generators;
pub mod interp;
pub mod modsolve;
pub mod ring;

pub use decider::{
    brute_force_oracle, congruence_precheck, count_polynomial_functions, decide_canonical, decide_multivariate,
    decide_univariate, CanonicalDecider, CongruenceWitness, DecideOptions, Decision, MultiDecideOptions, MultiFunction,
    MultivariateDecider, Precheck, RejectStage, Rejection, TruncationRows, UnivariateDecider, VerifyMode,
};
pub use error::{Error, Result};
pub use generators::{
    generator_count, generator_polynomial, generator_set, generator_vector, multivariate_generator_set,
    tensor_generator, GeneratorId, GeneratorSet, MultiGeneratorId, MultiGeneratorSet,
};
pub use interp::{assemble_polynomial, evaluate_polynomial, falling_factorial_reduce, ModPolynomial, MultiPolynomial};
pub use modsolve::{solve_mod_n, solve_prime_power, truncate_system, SolveOutcome, SparseModMatrix};
pub use ring::{
    euler_phi, factorize, kempner, kempner_prime_power, Factorization, ModVector, Modulus, MultiModVector, OpCounters,
    PrimePower, Residue, Stage, StageCounts,
};
