//! Small integer helpers shared across modules.

use num_integer::Integer;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd_u(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Nonnegative remainder of `n` modulo `m`.
#[inline]
pub fn modulo(n: i64, m: u64) -> u64 {
    n.rem_euclid(m as i64) as u64
}

/// Inverse of `k` modulo `q`, if `gcd(k, q) = 1`.
pub fn mod_inverse(k: i64, q: u64) -> Option<u64> {
    if q == 1 {
        return Some(0);
    }
    let ext = (k.rem_euclid(q as i64) as i128).extended_gcd(&(q as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(q as i128) as u64)
}

/// Largest `e` with `p^e | n`; `n` must be nonzero.
pub fn valuation(n: i64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut n = n.unsigned_abs();
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Returns `(p, alpha)` with `n = p^alpha`, `alpha >= 1`, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > n {
        return Some((n, 1));
    }
    let mut rest = n;
    let mut alpha = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        alpha += 1;
    }
    (rest == 1).then_some((p, alpha))
}
