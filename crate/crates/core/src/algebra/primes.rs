//! Primality testing and prime enumeration.
//!
//! Miller–Rabin with the fixed witness set {2, 3, ..., 41} is deterministic
//! for all inputs below 3.3e24, which covers every modulus this crate uses;
//! above that the same witnesses give a (vanishingly unlikely to fail)
//! probabilistic check.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in MR_WITNESSES.iter() {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime_biguint(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in MR_WITNESSES.iter() {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Writes q = p^e with p prime, preferring the largest exponent.
pub fn is_prime_power(q: &BigUint) -> Option<(BigUint, u32)> {
    if q < &BigUint::from(2u32) {
        return None;
    }
    let max_e = q.bits() as u32;
    for e in (1..=max_e).rev() {
        let r = q.nth_root(e);
        if r.pow(e) == *q && is_prime_biguint(&r) {
            return Some((r, e));
        }
    }
    None
}

/// All primes <= n by a sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = vec![];
    for p in 2..=n {
        if !composite[p] {
            out.push(p as u64);
            let mut k = p * p;
            while k <= n {
                composite[k] = true;
                k += p;
            }
        }
    }
    out
}
