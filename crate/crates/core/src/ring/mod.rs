//! Arithmetic in `Z_n`: moduli, factorization, the Kempner function and
//! function tables.

mod counters;
mod factor;
mod kempner;
mod modulus;
pub(crate) mod vector;

pub use counters::{OpCounters, Stage, StageCounts, Tally};
pub use factor::{euler_phi, factorize, is_prime, Factorization, PrimePower};
pub use kempner::{kempner, kempner_of, kempner_prime_power, legendre_valuation};
pub use modulus::{ext_gcd, gcd, Modulus, Residue, MAX_MODULUS};
pub use vector::{ModVector, MultiModVector, MAX_TABLE_LEN};
