use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::interp::binomial_row;
use crate::interp::ModPolynomial;
use crate::modsolve::SparseModMatrix;
use crate::ring::vector::check_table_len;
use crate::ring::{factorize, Factorization, ModVector, Modulus, PrimePower, Residue};

/// Moduli above this store generator vectors sparsely.
pub const DEFAULT_SPARSE_THRESHOLD: u64 = 512;

/// Largest `phi(n)` for which explicit generator polynomials are built; the
/// binomial row alone costs `phi^2 / 2` additions.
pub const MAX_GENERATOR_DEGREE: u64 = 20_000;

/// Identifies `u_{p,j}^{<k>}`: prime `p | n`, power `j < e`, shift `k < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneratorId {
    pub p: u64,
    pub j: u32,
    pub k: u64,
}

impl GeneratorId {
    pub fn new(p: u64, j: u32, k: u64) -> Self {
        GeneratorId { p, j, k }
    }

    /// Checks the id against `n`'s factorization and returns the matching prime power.
    pub fn validate(&self, f: &Factorization) -> Result<PrimePower> {
        let pp = f
            .factor_of(self.p)
            .ok_or_else(|| Error::Domain(format!("{} is not a prime factor of {}", self.p, f.n())))?;
        if self.j >= pp.e {
            return domain(format!(
                "power {} must be below the exponent {} of {} in {}",
                self.j,
                pp.e,
                self.p,
                f.n()
            ));
        }
        if self.k >= self.p {
            return domain(format!("shift {} must be below {}", self.k, self.p));
        }
        Ok(pp)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} j={} k={}", self.p, self.j, self.k)
    }
}

/// `(n / p^e) * (a - k)^j` on `a = k (mod p)`, zero elsewhere. `0^0 = 1`.
fn support_values(modulus: Modulus, cofactor: u64, id: &GeneratorId) -> impl Iterator<Item = (usize, Residue)> + '_ {
    let n = modulus.get();
    let p = id.p;
    let j = id.j as u64;
    let scale = modulus.reduce(cofactor);
    (id.k..n)
        .step_by(p as usize)
        .map(move |a| (a as usize, modulus.mul(scale, modulus.pow(a - id.k, j))))
}

/// The table of `u_{p,j}^{<k>}` over `Z_n`.
pub fn generator_vector(n: u64, p: u64, j: u32, k: u64) -> Result<ModVector> {
    let f = factorize(n)?;
    check_table_len(n as u128, "a generator vector")?;
    let id = GeneratorId::new(p, j, k);
    let pp = id.validate(&f)?;
    let modulus = Modulus::new(n)?;
    let mut values = vec![0; n as usize];
    for (a, v) in support_values(modulus, f.cofactor(&pp), &id) {
        values[a] = v;
    }
    Ok(ModVector::from_raw(modulus, values))
}

/// Storage for one generator's table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenValues {
    Dense(Vec<Residue>),
    /// `(index, value)` pairs, indices increasing, values nonzero.
    Sparse(Vec<(usize, Residue)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    id: GeneratorId,
    modulus: Modulus,
    values: GenValues,
}

impl Generator {
    fn build(modulus: Modulus, cofactor: u64, id: GeneratorId, sparse: bool) -> Self {
        let values = if sparse {
            GenValues::Sparse(
                support_values(modulus, cofactor, &id)
                    .filter(|&(_, v)| v != 0)
                    .collect(),
            )
        } else {
            let mut dense = vec![0; modulus.get() as usize];
            for (a, v) in support_values(modulus, cofactor, &id) {
                dense[a] = v;
            }
            GenValues::Dense(dense)
        };
        Generator { id, modulus, values }
    }

    pub fn id(&self) -> GeneratorId {
        self.id
    }

    pub fn storage(&self) -> &GenValues {
        &self.values
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.values, GenValues::Sparse(_))
    }

    pub fn to_vector(&self) -> ModVector {
        match &self.values {
            GenValues::Dense(v) => ModVector::from_raw(self.modulus, v.clone()),
            GenValues::Sparse(entries) => {
                let mut v = vec![0; self.modulus.get() as usize];
                for &(i, x) in entries {
                    v[i] = x;
                }
                ModVector::from_raw(self.modulus, v)
            }
        }
    }

    /// Nonzero entries with index in `range`, in increasing index order.
    pub fn nonzeros_in(&self, range: std::ops::Range<usize>) -> Box<dyn Iterator<Item = (usize, Residue)> + '_> {
        match &self.values {
            GenValues::Dense(v) => Box::new(
                v[range.clone()]
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(move |(i, &x)| (i + range.start, x)),
            ),
            GenValues::Sparse(entries) => {
                let lo = entries.partition_point(|&(i, _)| i < range.start);
                let hi = entries.partition_point(|&(i, _)| i < range.end);
                Box::new(entries[lo..hi].iter().copied())
            }
        }
    }

    pub fn nonzeros(&self) -> Box<dyn Iterator<Item = (usize, Residue)> + '_> {
        self.nonzeros_in(0..self.modulus.get() as usize)
    }
}

/// All `N = sum p_i e_i` generators of the module of polynomial functions over
/// `Z_n`, ordered by prime, then power `j`, then shift `k`.
///
/// This order fixes the column order of the generator matrix and the meaning
/// of coefficient vectors returned by the deciders.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    factorization: Factorization,
    modulus: Modulus,
    generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(factorization: &Factorization) -> Result<Self> {
        Self::with_sparse_threshold(factorization, DEFAULT_SPARSE_THRESHOLD)
    }

    /// Stores vectors sparsely when `n` exceeds `threshold`.
    pub fn with_sparse_threshold(factorization: &Factorization, threshold: u64) -> Result<Self> {
        let n = factorization.n();
        check_table_len(n as u128, "a generator set")?;
        let modulus = Modulus::new(n)?;
        let sparse = n > threshold;
        let mut generators = Vec::with_capacity(generator_count_of(factorization) as usize);
        for pp in factorization.factors() {
            let cofactor = factorization.cofactor(pp);
            for j in 0..pp.e {
                for k in 0..pp.p {
                    let id = GeneratorId::new(pp.p, j, k);
                    generators.push(Generator::build(modulus, cofactor, id, sparse));
                }
            }
        }
        Ok(GeneratorSet {
            factorization: factorization.clone(),
            modulus,
            generators,
        })
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Generator> {
        self.generators.iter()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn ids(&self) -> Vec<GeneratorId> {
        self.generators.iter().map(|g| g.id).collect()
    }

    pub fn position(&self, id: &GeneratorId) -> Option<usize> {
        self.generators.iter().position(|g| g.id == *id)
    }

    /// The prime each column belongs to.
    pub fn column_primes(&self) -> Vec<u64> {
        self.generators.iter().map(|g| g.id.p).collect()
    }

    /// The `n x N` matrix whose columns are the generator vectors.
    pub fn matrix(&self) -> SparseModMatrix {
        let columns = self.generators.iter().map(|g| g.nonzeros().collect()).collect();
        SparseModMatrix::from_sorted_columns(self.modulus, self.modulus.get() as usize, columns)
    }

    /// `sum_i coeffs[i] * u_i`.
    pub fn combine(&self, coeffs: &[Residue]) -> Result<ModVector> {
        if coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: coeffs.len(),
            });
        }
        let m = self.modulus;
        let mut acc = vec![0; m.get() as usize];
        for (g, &c) in self.generators.iter().zip(coeffs) {
            let c = m.reduce(c);
            if c == 0 {
                continue;
            }
            for (i, v) in g.nonzeros() {
                acc[i] = m.add(acc[i], m.mul(c, v));
            }
        }
        Ok(ModVector::from_raw(m, acc))
    }

    /// One line per generator: `p=<p> j=<j> k=<k>: v0,v1,...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(&format!("{}: {}\n", g.id, g.to_vector()));
        }
        out
    }
}

pub fn generator_set(n: u64) -> Result<GeneratorSet> {
    GeneratorSet::new(&factorize(n)?)
}

/// `N = p_1 e_1 + ... + p_t e_t`, from the factorization alone.
pub fn generator_count(n: u64) -> Result<u64> {
    Ok(generator_count_of(&factorize(n)?))
}

pub fn generator_count_of(f: &Factorization) -> u64 {
    f.factors().iter().map(|pp| pp.p * pp.e as u64).sum()
}

/// Explicit polynomials for the generators of one modulus.
///
/// `u_{p,j}^{<k>}` is induced by `(n/p^e) (X-k)^j (1 - (X-k)^phi(n))`: for
/// `a` prime to `p`, `(a-k)^phi(n) = 1 (mod p^e)` by Euler, and for `p | a-k`
/// it vanishes mod `p^e` because `phi(n) >= e`. The binomial row for `phi(n)`
/// is shared between all generators.
pub struct GeneratorPolynomials {
    factorization: Factorization,
    modulus: Modulus,
    phi_row: Vec<Residue>,
}

impl GeneratorPolynomials {
    pub fn new(factorization: &Factorization) -> Result<Self> {
        let modulus = Modulus::new(factorization.n())?;
        let phi = factorization.phi();
        if phi > MAX_GENERATOR_DEGREE {
            return Err(Error::Resource(format!(
                "generator polynomials over Z_{} have degree phi = {phi}, above {MAX_GENERATOR_DEGREE}",
                factorization.n()
            )));
        }
        Ok(GeneratorPolynomials {
            factorization: factorization.clone(),
            modulus,
            phi_row: binomial_row(modulus, phi as usize),
        })
    }

    pub fn polynomial(&self, id: &GeneratorId) -> Result<ModPolynomial> {
        let pp = id.validate(&self.factorization)?;
        let m = self.modulus;
        let cofactor = self.factorization.cofactor(&pp);
        let low = ModPolynomial::shifted_power(m, id.j as usize, id.k);
        let high = ModPolynomial::shifted_power_with_row(m, &self.phi_row, id.k).mul(&low)?;
        Ok(low.sub(&high)?.scale(cofactor))
    }
}

/// A polynomial of degree at most `j + phi(n)` inducing `u_{p,j}^{<k>}`.
pub fn generator_polynomial(n: u64, p: u64, j: u32, k: u64) -> Result<ModPolynomial> {
    GeneratorPolynomials::new(&factorize(n)?)?.polynomial(&GeneratorId::new(p, j, k))
}
