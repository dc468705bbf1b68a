//! Small integer helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return a.abs().max(b.abs());
    }
    a.lcm(&b)
}

/// Binomial coefficient C(n, k) for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// C(n, 2) as a big integer, valid for any sign of `n`.
pub fn choose2(n: &BigInt) -> BigInt {
    n * (n - BigInt::one()) / BigInt::from(2)
}

/// Floor of the square root of a nonnegative big integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Euclidean residue in `[0, m)` for `m > 0`.
pub fn rem_euclid_big(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

pub fn floor_div_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Extended gcd on big integers: returns (g, s, t) with s*a + t*b = g >= 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(12i64, 18i64), (-7, 5), (0, 9), (240, -46)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (g, s, t) = ext_gcd(&a, &b);
            assert_eq!(&s * &a + &t * &b, g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn choose2_negative() {
        assert_eq!(choose2(&BigInt::from(-3)), BigInt::from(6));
        assert_eq!(choose2(&BigInt::from(4)), BigInt::from(6));
    }
}
