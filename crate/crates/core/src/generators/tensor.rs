use std::fmt;

use crate::error::{domain, Error, Result};
use crate::modsolve::SparseModMatrix;
use crate::ring::vector::advance;
use crate::ring::{factorize, Factorization, ModVector, Modulus, MultiModVector, Residue};

/// Identifies `u_{p,j_1}^{<k_1>} (x) ... (x) u_{p,j_m}^{<k_m>}` for a single prime `p`.
///
/// Tensors mixing different primes vanish identically and are never built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiGeneratorId {
    pub p: u64,
    pub powers: Vec<u32>,
    pub shifts: Vec<u64>,
}

impl MultiGeneratorId {
    fn validate(&self, f: &Factorization, arity: u32) -> Result<u64> {
        let m = arity as usize;
        if self.powers.len() != m || self.shifts.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: self.powers.len().min(self.shifts.len()),
            });
        }
        let pp = f
            .factor_of(self.p)
            .ok_or_else(|| Error::Domain(format!("{} is not a prime factor of {}", self.p, f.n())))?;
        let total: u64 = self.powers.iter().map(|&j| j as u64).sum();
        if total >= pp.e as u64 {
            return domain(format!(
                "power sum {total} must be below the exponent {} of {}",
                pp.e, self.p
            ));
        }
        if self.shifts.iter().any(|&k| k >= self.p) {
            return domain(format!("shifts must be below {}", self.p));
        }
        Ok(f.cofactor(&pp))
    }
}

impl fmt::Display for MultiGeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} j={:?} k={:?}", self.p, self.powers, self.shifts)
    }
}

/// Nonzero entries of a tensor generator, sorted by linear index.
fn tensor_entries(modulus: Modulus, cofactor: u64, id: &MultiGeneratorId) -> Vec<(usize, Residue)> {
    let n = modulus.get();
    let p = id.p;
    let m = id.powers.len();
    let steps = n / p;
    let scale = modulus.reduce(cofactor);
    // factor[i][t] = u_{p, j_i}(t * p), the value at a_i = k_i + t p
    let factors: Vec<Vec<Residue>> = id
        .powers
        .iter()
        .map(|&j| {
            (0..steps)
                .map(|t| modulus.mul(scale, modulus.pow(t * p, j as u64)))
                .collect()
        })
        .collect();
    let mut entries = Vec::new();
    let mut t = vec![0u64; m];
    let count = steps.pow(m as u32);
    for step in 0..count {
        if step > 0 {
            advance(&mut t, steps);
        }
        let mut value = 1 % n;
        let mut index = 0u64;
        for i in 0..m {
            value = modulus.mul(value, factors[i][t[i] as usize]);
            index = index * n + id.shifts[i] + t[i] * p;
        }
        if value != 0 {
            entries.push((index as usize, value));
        }
    }
    entries
}

/// The full `n^m` table of a tensor generator.
pub fn tensor_generator(n: u64, arity: u32, id: &MultiGeneratorId) -> Result<MultiModVector> {
    let f = factorize(n)?;
    let modulus = Modulus::new(n)?;
    let len = MultiModVector::table_len(modulus, arity)?;
    let cofactor = id.validate(&f, arity)?;
    let mut values = vec![0; len];
    for (i, v) in tensor_entries(modulus, cofactor, id) {
        values[i] = v;
    }
    Ok(MultiModVector::from_raw(modulus, arity, values))
}

/// Outer product of univariate tables: the value at `(a_1, ..., a_m)` is
/// `v_1(a_1) * ... * v_m(a_m)`.
pub fn tensor_product(factors: &[ModVector]) -> Result<MultiModVector> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Domain("tensor product of no vectors".into()))?;
    let modulus = first.modulus();
    if let Some(other) = factors.iter().find(|v| v.modulus() != modulus) {
        return Err(Error::ModulusMismatch {
            left: modulus.get(),
            right: other.modulus().get(),
        });
    }
    let arity = factors.len() as u32;
    MultiModVector::from_fn(modulus, arity, |point| {
        point
            .iter()
            .zip(factors)
            .fold(1, |acc, (&a, v)| modulus.mul(acc, v.get(a as usize)))
    })
}

/// `N_m = sum_i p_i^m * C(m + e_i - 1, m)`.
pub fn multivariate_generator_count(f: &Factorization, arity: u32) -> u128 {
    f.factors()
        .iter()
        .map(|pp| (pp.p as u128).pow(arity) * binomial(arity as u128 + pp.e as u128 - 1, arity as u128))
        .sum()
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGenerator {
    id: MultiGeneratorId,
    entries: Vec<(usize, Residue)>,
}

impl MultiGenerator {
    pub fn id(&self) -> &MultiGeneratorId {
        &self.id
    }

    /// Nonzero `(index, value)` pairs, indices increasing.
    pub fn entries(&self) -> &[(usize, Residue)] {
        &self.entries
    }
}

/// All `N_m` tensor generators over `Z_n^m`, ordered by prime, then power
/// tuple, then shift tuple (both lexicographic). Stored sparsely: a generator
/// for `p` is nonzero on at most a `1/p^m` fraction of points.
#[derive(Clone, Debug)]
pub struct MultiGeneratorSet {
    factorization: Factorization,
    modulus: Modulus,
    arity: u32,
    generators: Vec<MultiGenerator>,
}

impl MultiGeneratorSet {
    pub fn new(factorization: &Factorization, arity: u32) -> Result<Self> {
        let modulus = Modulus::new(factorization.n())?;
        MultiModVector::table_len(modulus, arity)?;
        let m = arity as usize;
        let mut generators = Vec::new();
        for pp in factorization.factors() {
            let cofactor = factorization.cofactor(pp);
            for powers in power_tuples(m, pp.e - 1) {
                let mut shifts = vec![0u64; m];
                for step in 0..pp.p.pow(arity) {
                    if step > 0 {
                        advance(&mut shifts, pp.p);
                    }
                    let id = MultiGeneratorId {
                        p: pp.p,
                        powers: powers.clone(),
                        shifts: shifts.clone(),
                    };
                    let entries = tensor_entries(modulus, cofactor, &id);
                    generators.push(MultiGenerator { id, entries });
                }
            }
        }
        Ok(MultiGeneratorSet {
            factorization: factorization.clone(),
            modulus,
            arity,
            generators,
        })
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiGenerator> {
        self.generators.iter()
    }

    pub fn get(&self, i: usize) -> &MultiGenerator {
        &self.generators[i]
    }

    pub fn table(&self, i: usize) -> MultiModVector {
        let len = self.modulus.get().pow(self.arity) as usize;
        let mut values = vec![0; len];
        for &(idx, v) in &self.generators[i].entries {
            values[idx] = v;
        }
        MultiModVector::from_raw(self.modulus, self.arity, values)
    }

    pub fn column_primes(&self) -> Vec<u64> {
        self.generators.iter().map(|g| g.id.p).collect()
    }

    /// The `n^m x N_m` generator matrix.
    pub fn matrix(&self) -> SparseModMatrix {
        let rows = self.modulus.get().pow(self.arity) as usize;
        let columns = self.generators.iter().map(|g| g.entries.clone()).collect();
        SparseModMatrix::from_sorted_columns(self.modulus, rows, columns)
    }

    pub fn combine(&self, coeffs: &[Residue]) -> Result<MultiModVector> {
        if coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: coeffs.len(),
            });
        }
        let m = self.modulus;
        let mut acc = vec![0; m.get().pow(self.arity) as usize];
        for (g, &c) in self.generators.iter().zip(coeffs) {
            let c = m.reduce(c);
            if c == 0 {
                continue;
            }
            for &(i, v) in &g.entries {
                acc[i] = m.add(acc[i], m.mul(c, v));
            }
        }
        Ok(MultiModVector::from_raw(m, self.arity, acc))
    }
}

/// All `m`-tuples of non-negative integers with sum at most `bound`, in lexicographic order.
fn power_tuples(m: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, m: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for j in 0..=left {
            prefix.push(j);
            rec(prefix, m, left - j, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(m), m, bound, &mut out);
    out
}

pub fn multivariate_generator_set(n: u64, arity: u32) -> Result<MultiGeneratorSet> {
    MultiGeneratorSet::new(&factorize(n)?, arity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generator_set;

    fn id(p: u64, powers: &[u32], shifts: &[u64]) -> MultiGeneratorId {
        MultiGeneratorId {
            p,
            powers: powers.to_vec(),
            shifts: shifts.to_vec(),
        }
    }

    #[test]
    fn example_tables_over_z6() {
        let t = tensor_generator(6, 2, &id(3, &[0, 0], &[0, 0])).unwrap();
        for a in 0..6u64 {
            for b in 0..6u64 {
                let expect = if a % 3 == 0 && b % 3 == 0 { 4 } else { 0 };
                assert_eq!(t.get(&[a, b]), expect);
            }
        }
        let t = tensor_generator(6, 2, &id(2, &[0, 0], &[0, 0])).unwrap();
        for a in 0..6u64 {
            for b in 0..6u64 {
                let expect = if a % 2 == 0 && b % 2 == 0 { 3 } else { 0 };
                assert_eq!(t.get(&[a, b]), expect);
            }
        }
    }

    #[test]
    fn mixed_prime_tensor_vanishes() {
        let u2 = crate::generators::generator_vector(6, 2, 0, 0).unwrap();
        let u3 = crate::generators::generator_vector(6, 3, 0, 0).unwrap();
        assert!(tensor_product(&[u2.clone(), u3.clone()])
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0));
        assert_eq!(
            tensor_product(&[u3.clone(), u3]).unwrap(),
            tensor_generator(6, 2, &id(3, &[0, 0], &[0, 0])).unwrap()
        );
    }

    #[test]
    fn counts() {
        assert_eq!(multivariate_generator_set(6, 2).unwrap().len(), 13);
        assert_eq!(multivariate_generator_set(4, 2).unwrap().len(), 12);
        for n in 2..=40u64 {
            for m in 1..=3u32 {
                if (n as u128).pow(m) > 20_000 {
                    continue;
                }
                let f = factorize(n).unwrap();
                let set = MultiGeneratorSet::new(&f, m).unwrap();
                assert_eq!(set.len() as u128, multivariate_generator_count(&f, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn arity_one_matches_univariate() {
        for n in 2..=60u64 {
            let uni = generator_set(n).unwrap();
            let multi = multivariate_generator_set(n, 1).unwrap();
            assert_eq!(uni.len(), multi.len());
            for (i, g) in uni.iter().enumerate() {
                let mid = multi.get(i).id();
                assert_eq!((mid.p, mid.powers[0], mid.shifts[0]), (g.id().p, g.id().j, g.id().k));
                assert_eq!(multi.table(i).values(), g.to_vector().values());
            }
        }
    }

    #[test]
    fn ordering_is_prime_power_shift() {
        let set = multivariate_generator_set(8, 2).unwrap();
        let ids: Vec<_> = set.iter().map(|g| g.id().clone()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        assert_eq!(ids[0], id(2, &[0, 0], &[0, 0]));
        assert_eq!(ids[1], id(2, &[0, 0], &[0, 1]));
        assert_eq!(ids[4], id(2, &[0, 1], &[0, 0]));
    }

    #[test]
    fn tensor_support_fraction() {
        for n in [12u64, 18, 30, 36] {
            let set = multivariate_generator_set(n, 2).unwrap();
            let total = (n * n) as usize;
            for g in set.iter() {
                let p = g.id().p as usize;
                assert!(g.entries().len() * p * p <= total);
            }
        }
    }

    #[test]
    fn invalid_tensor_ids() {
        assert!(tensor_generator(6, 2, &id(5, &[0, 0], &[0, 0])).is_err());
        assert!(tensor_generator(12, 2, &id(2, &[1, 1], &[0, 0])).is_err());
        assert!(tensor_generator(12, 2, &id(2, &[0, 0], &[0, 2])).is_err());
        assert!(tensor_generator(12, 2, &id(2, &[0], &[0])).is_err());
        assert!(matches!(multivariate_generator_set(1000, 3), Err(Error::Resource(_))));
    }
}
