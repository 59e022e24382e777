use crate::error::{domain, Result};
use crate::ring::{factorize, Factorization};

/// Exponent of `p` in `k!` (Legendre's formula).
pub fn legendre_valuation(k: u64, p: u64) -> u64 {
    debug_assert!(p >= 2);
    let mut total = 0;
    let mut q = k / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// Smallest `k` with `p^e | k!`.
///
/// Binary search over `[1, p*e]`; the upper end always qualifies since
/// `v_p((p*e)!) >= e`.
pub fn kempner_prime_power(p: u64, e: u32) -> u64 {
    assert!(p >= 2, "prime expected, got {p}");
    let e = e as u64;
    if e == 0 {
        return 1;
    }
    let (mut lo, mut hi) = (1u64, p * e);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if legendre_valuation(mid, p) >= e {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Kempner function: smallest positive `k` with `n | k!`.
pub fn kempner(n: u64) -> Result<u64> {
    match n {
        0 => domain("kempner(0) is undefined"),
        1 => Ok(1),
        _ => Ok(kempner_of(&factorize(n)?)),
    }
}

pub fn kempner_of(f: &Factorization) -> u64 {
    f.factors()
        .iter()
        .map(|pp| kempner_prime_power(pp.p, pp.e))
        .max()
        .unwrap_or(1)
}
