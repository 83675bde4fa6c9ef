//! Deterministic primality testing and upward prime search.

use crate::error::{GpssError, Result};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller-Rabin with the first twelve primes as witnesses, which is exact
/// for every 64-bit input.
pub fn is_prime(u: u64) -> bool {
    if u < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if u.is_multiple_of(p) {
            return u == p;
        }
    }
    // u - 1 = 2^s * d with d odd
    let s = (u - 1).trailing_zeros();
    let d = (u - 1) >> s;
    'witness: for a in SMALL_PRIMES {
        let mut x = pow_mod(a, d, u);
        if x == 1 || x == u - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, u);
            if x == u - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `p >= m`, scanning odd candidates upward.
pub fn next_prime_at_least(m: u64) -> Result<u64> {
    if m <= 2 {
        return Ok(2);
    }
    let mut c = if m.is_multiple_of(2) { m + 1 } else { m };
    loop {
        if is_prime(c) {
            return Ok(c);
        }
        c = c.checked_add(2).ok_or(GpssError::PrimeOverflow(m))?;
    }
}
