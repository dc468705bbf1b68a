//! `e_i ↦ √p_i` on finitely supported rational vectors, decided by rational
//! interval arithmetic with on-demand refinement.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::surd::is_square;
use super::RotationError;
use crate::arith::isqrt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tri {
    In,
    Out,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSurdHom {
    radicands: Vec<u64>,
}

impl MultiSurdHom {
    pub fn new(radicands: Vec<u64>) -> Result<Self, RotationError> {
        if let Some(&d) = radicands.iter().find(|&&d| is_square(d)) {
            return Err(RotationError::SquareRadicand(d));
        }
        Ok(MultiSurdHom { radicands })
    }

    /// The first `k` primes as radicands.
    pub fn primes(k: usize) -> Self {
        let mut ps = Vec::new();
        let mut n = 2u64;
        while ps.len() < k {
            if (2..n).take_while(|p| p * p <= n).all(|p| n % p != 0) {
                ps.push(n);
            }
            n += 1;
        }
        MultiSurdHom { radicands: ps }
    }

    pub fn radicands(&self) -> &[u64] {
        &self.radicands
    }

    /// An interval `[lo, hi]` containing `Σ x_i √d_i`, of width at most
    /// `Σ |x_i| / 2^bits`.
    pub fn value_interval(&self, x: &[BigRational], bits: u32) -> Result<(BigRational, BigRational), RotationError> {
        if x.len() > self.radicands.len() {
            return Err(RotationError::NotInDomain(format!("support of size {} exceeds {}", x.len(), self.radicands.len())));
        }
        let scale = BigInt::one() << bits;
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (c, &d) in x.iter().zip(&self.radicands) {
            if c.is_zero() {
                continue;
            }
            let f = isqrt(&(BigInt::from(d) * &scale * &scale));
            let a = BigRational::new(f.clone(), scale.clone());
            let b = BigRational::new(f + 1, scale.clone());
            if c.is_positive() {
                lo += c * &a;
                hi += c * &b;
            } else {
                lo += c * &b;
                hi += c * &a;
            }
        }
        Ok((lo, hi))
    }

    /// Three-valued membership in `X(t)` at a fixed precision.
    pub fn member_at(&self, x: &[BigRational], t: &BigRational, bits: u32) -> Result<Tri, RotationError> {
        let (lo, hi) = self.value_interval(x, bits)?;
        if lo == hi {
            // only when every coordinate is zero
            let m = lo.floor();
            let dist = (&lo - &m).min(&m + BigRational::one() - &lo);
            return Ok(if dist < *t { Tri::In } else { Tri::Out });
        }
        let m = lo.floor();
        let one = BigRational::one();
        if hi < &m + t || (lo > &m + &one - t && hi < &m + &one + t) {
            return Ok(Tri::In);
        }
        if lo >= &m + t && hi <= &m + &one - t {
            return Ok(Tri::Out);
        }
        Ok(Tri::Unknown)
    }

    /// Refines until decided; `Unknown` at `max_bits` is an error.
    pub fn member(&self, x: &[BigRational], t: &BigRational, max_bits: u32) -> Result<bool, RotationError> {
        let mut bits = 32.min(max_bits);
        loop {
            match self.member_at(x, t, bits)? {
                Tri::In => return Ok(true),
                Tri::Out => return Ok(false),
                Tri::Unknown if bits >= max_bits => {
                    return Err(RotationError::PrecisionExhausted(max_bits));
                }
                Tri::Unknown => bits = (bits * 2).min(max_bits),
            }
        }
    }

    /// Representative of `g(x)` in `[-1/2, 1/2)` to within `2^-bits`.
    pub fn approx(&self, x: &[BigRational], bits: u32) -> Result<BigRational, RotationError> {
        let (lo, _) = self.value_interval(x, bits)?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        Ok(&lo - (&lo + &half).floor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::BohrSet;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn agrees_with_exact_surd_on_one_coordinate() {
        let h = MultiSurdHom::new(vec![2]).unwrap();
        let x = BohrSet::surd(2, q(1, 3)).unwrap();
        for n in -500i64..=500 {
            let v = vec![BigRational::from_integer(BigInt::from(n))];
            assert_eq!(h.member(&v, &q(1, 3), 4096).unwrap(), x.member_int(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn low_precision_is_unknown() {
        let h = MultiSurdHom::primes(3);
        assert_eq!(h.radicands(), &[2, 3, 5]);
        // √2 + √3 - √5 ≈ 0.910 ≈ -0.0902 mod 1; near 1/11 ≈ 0.0909
        let x = vec![q(1, 1), q(1, 1), q(-1, 1)];
        let t = q(1, 11);
        assert_eq!(h.member_at(&x, &t, 2).unwrap(), Tri::Unknown);
        assert!(h.member(&x, &t, 4096).unwrap());
    }

    #[test]
    fn zero_is_member() {
        let h = MultiSurdHom::primes(2);
        assert!(h.member(&[q(0, 1), q(0, 1)], &q(1, 100), 64).unwrap());
    }

    #[test]
    fn precision_budget_error() {
        let h = MultiSurdHom::primes(3);
        let x = vec![q(1, 1), q(1, 1), q(-1, 1)];
        assert!(matches!(h.member(&x, &q(1, 11), 4), Err(RotationError::PrecisionExhausted(4))));
    }
}
