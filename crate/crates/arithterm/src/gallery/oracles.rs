//! Naive reference implementations. These play the role the verification
//! protocol assigns to library functions: every closed form in the gallery is
//! checked against them, so they stay deliberately simple (trial division
//! and direct search, nothing clever).

use num_bigint::BigUint;
use num_traits::One;

pub fn tau(n: u64) -> u64 {
    assert!(n >= 1);
    (1..=n).filter(|d| n % d == 0).count() as u64
}

pub fn sigma(n: u64) -> u64 {
    assert!(n >= 1);
    (1..=n).filter(|d| n % d == 0).sum()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub fn phi(n: u64) -> u64 {
    assert!(n >= 1);
    (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
}

/// Modular inverse by exhaustive search; `None` when `gcd(m, n) != 1`.
pub fn inv(m: u64, n: u64) -> Option<u64> {
    if n < 2 || gcd(m % n, n) != 1 {
        return None;
    }
    (1..n).find(|&x| (m % n) * x % n == 1)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn sieve(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| is_prime(n)).collect()
}

/// Exponent of `p` in `n`, by repeated division.
pub fn nu_p(p: u64, n: u64) -> u64 {
    assert!(n >= 1 && p >= 2);
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Floor of the m-th root, by search.
pub fn iroot(m: u32, n: u64) -> u64 {
    assert!(m >= 1);
    let mut r = 0u64;
    while pow_u64((r + 1) as u128, m) <= n as u128 {
        r += 1;
    }
    r
}

pub fn isqrt(n: u64) -> u64 {
    iroot(2, n)
}

/// Floor of log base m, by successive powers.
pub fn ilog(m: u64, n: u64) -> u64 {
    assert!(m >= 2 && n >= 1);
    let mut e = 0u64;
    let mut acc = 1u128;
    while acc * m as u128 <= n as u128 {
        acc *= m as u128;
        e += 1;
    }
    e
}

fn pow_u64(base: u128, e: u32) -> u128 {
    let mut acc = 1u128;
    for _ in 0..e {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Multiplicative order of `m` mod `n`, by successive powers.
pub fn ord(m: u64, n: u64) -> Option<u64> {
    if n < 2 || gcd(m % n, n) != 1 {
        return None;
    }
    let mut acc = m % n;
    let mut r = 1u64;
    while acc != 1 {
        acc = acc * (m % n) % n;
        r += 1;
    }
    Some(r)
}

pub fn is_primitive_root(g: u64, n: u64) -> bool {
    match ord(g, n) {
        Some(r) => r == phi(n),
        None => false,
    }
}

/// Discrete logarithm of `m` base `g` mod `n`, by successive powers. The
/// caller guarantees `g` is a primitive root; result is in `1..=phi(n)`.
pub fn dlog(m: u64, g: u64, n: u64) -> Option<u64> {
    if n < 2 || gcd(m % n, n) != 1 || !is_primitive_root(g, n) {
        return None;
    }
    let mut acc = 1u64;
    for d in 1..=phi(n) {
        acc = acc * (g % n) % n;
        if acc == m % n {
            return Some(d);
        }
    }
    None
}

/// Binomial coefficients by Pascal's rule, the oracle for the central
/// binomial closed form.
pub fn binomial_pascal(n: u64, k: u64) -> BigUint {
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one()];
        for i in 1..row.len() {
            next.push(&row[i - 1] + &row[i]);
        }
        next.push(BigUint::one());
        row = next;
    }
    row[k as usize].clone()
}

pub fn popcount(n: u64) -> u64 {
    n.count_ones() as u64
}

/// The two prime factors of a squarefree semiprime, smallest first.
pub fn semiprime_factors(n: u64) -> Option<(u64, u64)> {
    for p in 2..n {
        if p * p >= n {
            break;
        }
        if n % p == 0 {
            let q = n / p;
            if is_prime(p) && is_prime(q) && p < q {
                return Some((p, q));
            }
            return None;
        }
    }
    None
}

pub fn is_perfect(n: u64) -> bool {
    n >= 1 && sigma(n) == 2 * n
}

/// Cantor pairing `(x, y) -> (x+y)(x+y+1)/2 + x`.
pub fn cantor_pair(x: u64, y: u64) -> u64 {
    (x + y) * (x + y + 1) / 2 + x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_small_values() {
        assert_eq!(tau(12), 6);
        assert_eq!(sigma(6), 12);
        assert_eq!(phi(10), 4);
        assert_eq!(inv(3, 7), Some(5));
        assert_eq!(inv(4, 8), None);
        assert_eq!(nu_p(2, 12), 2);
        assert_eq!(nu_p(3, 27), 3);
        assert_eq!(iroot(2, 15), 3);
        assert_eq!(iroot(3, 27), 3);
        assert_eq!(ilog(2, 1023), 9);
        assert_eq!(ord(2, 5), Some(4));
        assert_eq!(dlog(3, 3, 4), Some(1));
        assert_eq!(binomial_pascal(4, 2), BigUint::from(6u32));
        assert_eq!(semiprime_factors(15), Some((3, 5)));
        assert_eq!(semiprime_factors(9), None);
        assert!(is_perfect(6) && is_perfect(28) && !is_perfect(12));
        assert_eq!(cantor_pair(0, 0), 0);
        assert_eq!(cantor_pair(1, 0), 2);
    }

    #[test]
    fn totient_of_primes() {
        for p in sieve(50) {
            assert_eq!(phi(p), p - 1);
        }
    }
}
