use crate::error::{Error, Result};
use crate::generators::{GeneratorPolynomials, GeneratorSet};
use crate::ring::{kempner, ModVector, Residue};

use super::ModPolynomial;

/// `sum_i coeffs[i] * P_i` where `P_i` is the explicit polynomial of the
/// `i`-th generator. The degree is at most `phi(n) + max j`.
pub fn assemble_polynomial(coeffs: &[Residue], gens: &GeneratorSet) -> Result<ModPolynomial> {
    if coeffs.len() != gens.len() {
        return Err(Error::DimensionMismatch {
            expected: gens.len(),
            actual: coeffs.len(),
        });
    }
    let m = gens.modulus();
    if let Some(bad) = coeffs.iter().find(|&&c| c >= m.get()) {
        return Err(Error::Domain(format!("coefficient {bad} is not below {m}")));
    }
    let mut out = ModPolynomial::zero(m);
    if coeffs.iter().all(|&c| c == 0) {
        return Ok(out);
    }
    let polys = GeneratorPolynomials::new(gens.factorization())?;
    for (g, &c) in gens.iter().zip(coeffs) {
        if c != 0 {
            out.add_scaled_assign(c, &polys.polynomial(&g.id())?);
        }
    }
    Ok(out)
}

/// Remainder modulo `X (X-1) ... (X-mu+1)`.
///
/// The divisor is monic and vanishes on all of `Z_n`, so the remainder has
/// degree below `mu` and induces the same function.
pub fn falling_factorial_reduce(p: &ModPolynomial) -> ModPolynomial {
    let mu = kempner(p.modulus().get()).expect("a modulus is at least 2");
    reduce_below(p, mu as usize)
}

/// Remainder modulo the falling factorial of the given degree.
pub fn reduce_below(p: &ModPolynomial, degree: usize) -> ModPolynomial {
    if p.degree().is_none_or(|d| d < degree) {
        return p.clone();
    }
    let divisor = ModPolynomial::falling_factorial(p.modulus(), degree);
    p.div_rem_monic(&divisor).expect("falling factorial is monic").1
}

/// The function `0..n -> Z_n` induced by `p`.
pub fn evaluate_polynomial(p: &ModPolynomial) -> Result<ModVector> {
    p.evaluate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generator_set;
    use crate::ring::Modulus;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn worked_solution_over_z12() {
        let gens = generator_set(12).unwrap();
        // Column order here is u_{2,0}^{<0>}, u_{2,0}^{<1>}, u_{2,1}^{<0>},
        // u_{2,1}^{<1>}, u_{3,0}^{<0>}, u_{3,0}^{<1>}, u_{3,0}^{<2>}.
        let d = [0, 3, 0, 0, 0, 1, 1];
        let expected = ModVector::from_fn(m(12), |a| a * a);
        assert_eq!(gens.combine(&d).unwrap(), expected);
        let p = assemble_polynomial(&d, &gens).unwrap();
        assert_eq!(evaluate_polynomial(&p).unwrap(), expected);
        let r = falling_factorial_reduce(&p);
        assert!(r.degree().unwrap() < 4);
        assert_eq!(evaluate_polynomial(&r).unwrap(), expected);
    }

    #[test]
    fn zero_coefficients() {
        let gens = generator_set(12).unwrap();
        assert!(assemble_polynomial(&[0; 7], &gens).unwrap().is_zero());
        assert!(assemble_polynomial(&[0; 6], &gens).is_err());
        assert!(assemble_polynomial(&[12, 0, 0, 0, 0, 0, 0], &gens).is_err());
    }

    #[test]
    fn unit_on_first_generator() {
        let gens = generator_set(12).unwrap();
        let p = assemble_polynomial(&[1, 0, 0, 0, 0, 0, 0], &gens).unwrap();
        assert_eq!(p.to_string(), "3 + 9*X^4");
        let r = falling_factorial_reduce(&p);
        assert!(r.degree().unwrap() < 4);
        let v = evaluate_polynomial(&r).unwrap();
        assert_eq!(v.values(), &[3, 0, 3, 0, 3, 0, 3, 0, 3, 0, 3, 0]);
    }

    #[test]
    fn reduce_leaves_low_degree_alone() {
        let p = ModPolynomial::new(m(12), vec![5, 0, 7]);
        assert_eq!(falling_factorial_reduce(&p), p);
        let z = ModPolynomial::zero(m(12));
        assert_eq!(falling_factorial_reduce(&z), z);
    }

    #[test]
    fn division_reexpands() {
        for n in 2..=30u64 {
            let mu = kempner(n).unwrap() as usize;
            let p = ModPolynomial::new(m(n), (0..(mu as u64 + 7)).map(|i| (i * i + 3 * i + 1) % n).collect());
            let divisor = ModPolynomial::falling_factorial(m(n), mu);
            let (q, r) = p.div_rem_monic(&divisor).unwrap();
            assert_eq!(q.mul(&divisor).unwrap().add(&r).unwrap(), p);
            assert_eq!(r, falling_factorial_reduce(&p));
            assert_eq!(r.evaluate().unwrap(), p.evaluate().unwrap());
        }
    }
}
