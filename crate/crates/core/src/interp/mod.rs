//! Witness polynomials: expanding a generator combination into an explicit
//! polynomial and reducing its degree below the Kempner bound.

mod multi;
mod polynomial;
mod witness;

pub use multi::MultiPolynomial;
pub(crate) use polynomial::binomial_row;
pub use polynomial::ModPolynomial;
pub use witness::{assemble_polynomial, evaluate_polynomial, falling_factorial_reduce, reduce_below};
