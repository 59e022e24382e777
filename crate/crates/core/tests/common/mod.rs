#![allow(dead_code)]

use std::collections::HashSet;

use polyrep::ring::ext_gcd;
use polyrep::{
    factorize, generator_set, kempner, GeneratorSet, ModVector, Modulus, SparseModMatrix, UnivariateDecider,
};

pub fn modulus(n: u64) -> Modulus {
    Modulus::new(n).unwrap()
}

/// Base-`n` encoding of a table, least significant entry first.
pub fn encode(values: &[u64], n: u64) -> u64 {
    values.iter().rev().fold(0, |acc, &v| acc * n + v)
}

/// Every polynomial function `Z_n^2 -> Z_n`, as the span of the monomial
/// tables `x^a y^b` with `a, b < mu(n)`, grown one generator at a time.
pub fn bivariate_span(n: u64) -> HashSet<u64> {
    let m = modulus(n);
    let mu = kempner(n).unwrap();
    let len = (n * n) as usize;
    assert!(
        (n as f64).powi(len as i32) < 1.8e19,
        "tables of Z_{n}^2 do not fit in a u64 key"
    );
    let monomials: Vec<Vec<u64>> = (0..mu)
        .flat_map(|a| (0..mu).map(move |b| (a, b)))
        .map(|(a, b)| {
            (0..len as u64)
                .map(|i| m.mul(m.pow(i / n, a), m.pow(i % n, b)))
                .collect()
        })
        .collect();
    let mut span: Vec<Vec<u64>> = vec![vec![0; len]];
    let mut seen: HashSet<u64> = span.iter().map(|v| encode(v, n)).collect();
    for g in &monomials {
        let mut next = Vec::new();
        for s in &span {
            let mut cur = s.clone();
            for _ in 1..n {
                for (x, &y) in cur.iter_mut().zip(g) {
                    *x = m.add(*x, y);
                }
                if seen.insert(encode(&cur, n)) {
                    next.push(cur.clone());
                }
            }
        }
        span.extend(next);
    }
    seen
}

/// Exhaustive solvability of `A y = b` over all `n^cols` vectors.
pub fn brute_solvable(a: &SparseModMatrix, b: &[u64]) -> bool {
    let n = a.modulus().get();
    let dense = a.to_dense();
    let cols = a.cols();
    let total = n.pow(cols as u32);
    (0..total).any(|mut code| {
        let mut y = vec![0u64; cols];
        for slot in y.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        dense
            .iter()
            .zip(b)
            .all(|(row, &bi)| row.iter().zip(&y).fold(0, |acc, (&x, &yi)| (acc + x * yi) % n) == bi)
    })
}

/// Generator tables plus the monomial tables `X^i`, `i < mu`: functions
/// known to be polynomial.
pub fn known_polynomials(gens: &GeneratorSet) -> Vec<ModVector> {
    let m = gens.modulus();
    let mu = kempner(m.get()).unwrap();
    gens.iter()
        .map(|g| g.to_vector())
        .chain((0..mu).map(|i| ModVector::from_fn(m, |a| m.pow(a, i))))
        .collect()
}

fn accept(dec: &UnivariateDecider, f: &ModVector, what: &str) -> Result<(), String> {
    let out = dec.decide(f).map_err(|e| format!("{what}: {e}"))?;
    let d = out
        .coefficients()
        .ok_or_else(|| format!("{what}: rejected ({:?})", out.rejection()))?;
    if dec.generators().combine(d).unwrap() != *f {
        return Err(format!("{what}: coefficients do not reproduce the function"));
    }
    Ok(())
}

/// Products of two generators: zero unless prime and shift agree, in which
/// case `cofactor * u_{p, j1+j2}^{<k>}` (zero once `j1 + j2 >= e`).
pub fn check_multiplicative_closure(n: u64) -> Result<(), String> {
    let gens = generator_set(n).unwrap();
    let f = gens.factorization().clone();
    let m = gens.modulus();
    let tables: Vec<ModVector> = gens.iter().map(|g| g.to_vector()).collect();
    for (x, gx) in gens.iter().enumerate() {
        for (y, gy) in gens.iter().enumerate() {
            let (a, b) = (gx.id(), gy.id());
            let product = tables[x].hadamard(&tables[y]).unwrap();
            let expected = if a.p == b.p && a.k == b.k {
                let pp = f.factor_of(a.p).unwrap();
                let j = a.j + b.j;
                if j < pp.e {
                    let idx = gens.position(&polyrep::GeneratorId::new(a.p, j, a.k)).unwrap();
                    tables[idx].scale(m.reduce(f.cofactor(&pp)))
                } else {
                    ModVector::zeros(m)
                }
            } else {
                ModVector::zeros(m)
            };
            if product != expected {
                return Err(format!("n={n}: {a} * {b}"));
            }
        }
    }
    Ok(())
}

/// Every cyclic shift of a known polynomial function is accepted.
pub fn check_shift_closure(n: u64) -> Result<(), String> {
    let dec = UnivariateDecider::new(n).unwrap();
    for (i, f) in known_polynomials(dec.generators()).iter().enumerate() {
        for k in 0..n {
            accept(&dec, &f.cyclic_shift(k), &format!("n={n} function {i} shifted by {k}"))?;
        }
    }
    Ok(())
}

/// `a f + b g` is accepted for every pair of known polynomial functions.
pub fn check_linear_closure(n: u64) -> Result<(), String> {
    let dec = UnivariateDecider::new(n).unwrap();
    let m = dec.modulus();
    let known = known_polynomials(dec.generators());
    let scalars = [(1, 1), (n - 1, 1), (2 % n, 3 % n), (n / 2, n - 1)];
    for (i, f) in known.iter().enumerate() {
        for (j, g) in known.iter().enumerate() {
            for &(a, b) in &scalars {
                let h = f.scale(m.reduce(a)).add(&g.scale(m.reduce(b))).unwrap();
                accept(&dec, &h, &format!("n={n} {a}*f{i} + {b}*f{j}"))?;
            }
        }
    }
    Ok(())
}

/// Componentwise products of known polynomial functions are accepted.
pub fn check_product_closure(n: u64) -> Result<(), String> {
    let dec = UnivariateDecider::new(n).unwrap();
    let known = known_polynomials(dec.generators());
    for (i, f) in known.iter().enumerate() {
        for (j, g) in known.iter().enumerate().skip(i) {
            accept(&dec, &f.hadamard(g).unwrap(), &format!("n={n} f{i} * f{j}"))?;
        }
    }
    Ok(())
}

/// Integers `a_i` with `sum_i a_i * n / p_i^e_i = 1`.
fn bezout(n: u64) -> Vec<(u64, i128)> {
    let f = factorize(n).unwrap();
    let mut g = 0i128;
    let mut coeffs: Vec<i128> = Vec::new();
    let cofactors: Vec<i128> = f.factors().iter().map(|pp| f.cofactor(pp) as i128).collect();
    for &c in &cofactors {
        let (d, x, y) = ext_gcd(g, c);
        for a in coeffs.iter_mut() {
            *a *= x;
        }
        coeffs.push(y);
        g = d;
    }
    assert_eq!(g, 1);
    assert_eq!(coeffs.iter().zip(&cofactors).map(|(a, c)| a * c).sum::<i128>(), 1);
    f.primes().zip(coeffs).collect()
}

/// `sum_i a_i sum_k u_{p_i,0}^{<k>}` is the all-ones function.
pub fn check_bezout_ones(n: u64) -> Result<(), String> {
    let gens = generator_set(n).unwrap();
    let m = gens.modulus();
    let mut d = vec![0u64; gens.len()];
    for (p, a) in bezout(n) {
        for k in 0..p {
            let idx = gens.position(&polyrep::GeneratorId::new(p, 0, k)).unwrap();
            d[idx] = m.reduce_i128(a);
        }
    }
    if gens.combine(&d).unwrap() == ModVector::constant(m, 1) {
        Ok(())
    } else {
        Err(format!("n={n}: Bezout combination is not all ones"))
    }
}

/// `sum_i a_i sum_k (u_{p_i,1}^{<k>} + k u_{p_i,0}^{<k>})` is the identity;
/// `u_{p,1}` is the zero function when `e = 1`.
pub fn check_identity_membership(n: u64) -> Result<(), String> {
    let gens = generator_set(n).unwrap();
    let m = gens.modulus();
    let mut d = vec![0u64; gens.len()];
    for (p, a) in bezout(n) {
        let a = m.reduce_i128(a);
        for k in 0..p {
            let i0 = gens.position(&polyrep::GeneratorId::new(p, 0, k)).unwrap();
            d[i0] = m.add(d[i0], m.mul(a, k));
            if let Some(i1) = gens.position(&polyrep::GeneratorId::new(p, 1, k)) {
                d[i1] = m.add(d[i1], a);
            }
        }
    }
    if gens.combine(&d).unwrap() == ModVector::identity(m) {
        Ok(())
    } else {
        Err(format!("n={n}: identity combination differs from X"))
    }
}
