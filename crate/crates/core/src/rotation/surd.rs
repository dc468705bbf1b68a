//! Exact arithmetic in `Q(√d)`: signs, floors and values on the circle
//! `R/Z`, all decided by integer comparisons.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{floor_div_big, isqrt};

fn sign_of(x: &BigInt) -> Ordering {
    x.cmp(&BigInt::zero())
}

/// Sign of `u + v√d` for nonsquare `d` (or `v = 0`).
pub fn sign_surd(u: &BigInt, v: &BigInt, d: u64) -> Ordering {
    let su = sign_of(u);
    let sv = sign_of(v);
    if sv == Ordering::Equal || d == 0 {
        return su;
    }
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    // opposite signs: compare u^2 with v^2 d
    let lhs = u * u;
    let rhs = v * v * BigInt::from(d);
    match lhs.cmp(&rhs) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Machine-integer version of [`sign_surd`]; `None` on overflow.
pub fn sign_surd_i128(u: i128, v: i128, d: u64) -> Option<Ordering> {
    let su = u.cmp(&0);
    let sv = v.cmp(&0);
    if sv == Ordering::Equal || d == 0 {
        return Some(su);
    }
    if su == Ordering::Equal || su == sv {
        return Some(sv);
    }
    let lhs = u.checked_mul(u)?;
    let rhs = v.checked_mul(v)?.checked_mul(d as i128)?;
    Some(match lhs.cmp(&rhs) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    })
}

/// `floor(v√d)` for nonsquare `d`.
pub fn floor_surd(v: &BigInt, d: u64) -> BigInt {
    if v.is_zero() || d == 0 {
        return BigInt::zero();
    }
    let s = isqrt(&(v * v * BigInt::from(d)));
    if v.is_positive() {
        s
    } else {
        -s - 1
    }
}

/// `floor((u + v√d) / w)` for `w > 0` and nonsquare `d`.
pub fn floor_surd_div(u: &BigInt, v: &BigInt, d: u64, w: &BigInt) -> BigInt {
    floor_div_big(&(u + floor_surd(v, d)), w)
}

/// `floor(v√d)` in machine integers; `None` on overflow.
pub fn floor_surd_i128(v: i128, d: u64) -> Option<i128> {
    if v == 0 || d == 0 {
        return Some(0);
    }
    let sq = (v.unsigned_abs()).checked_mul(v.unsigned_abs())?.checked_mul(d as u128)?;
    let s = sq.sqrt() as i128;
    Some(if v > 0 { s } else { -s - 1 })
}

pub fn is_square(d: u64) -> bool {
    let r = d.sqrt();
    r * r == d
}

/// A point of `R/Z` represented exactly as `(a + b√d)/r`, `r > 0`, reduced to
/// the fundamental domain `[-1/2, 1/2)`. `d = 0` marks a rational value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircleValue {
    a: BigInt,
    b: BigInt,
    r: BigInt,
    d: u64,
}

impl CircleValue {
    /// Reduces `(a + b√d)/r` modulo 1.
    pub fn new(a: BigInt, b: BigInt, r: BigInt, d: u64) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        let (mut a, mut b, mut r) = if r.is_negative() { (-a, -b, -r) } else { (a, b, r) };
        let d = if b.is_zero() { 0 } else { d };
        if d == 0 {
            b = BigInt::zero();
        }
        // nearest integer: floor((2a + r + 2b√d) / 2r)
        let two = BigInt::from(2);
        let k = if d == 0 {
            floor_div_big(&(&two * &a + &r), &(&two * &r))
        } else {
            floor_surd_div(&(&two * &a + &r), &(&two * &b), d, &(&two * &r))
        };
        a -= &k * &r;
        let g = a.gcd(&b).gcd(&r);
        if !g.is_zero() && !g.is_one() {
            a /= &g;
            b /= &g;
            r /= &g;
        }
        CircleValue { a, b, r, d }
    }

    pub fn zero() -> Self {
        CircleValue { a: BigInt::zero(), b: BigInt::zero(), r: BigInt::one(), d: 0 }
    }

    pub fn rational(q: &BigRational) -> Self {
        Self::new(q.numer().clone(), BigInt::zero(), q.denom().clone(), 0)
    }

    /// `c·√d` for rational `c`.
    pub fn scaled_surd(c: &BigRational, d: u64) -> Self {
        Self::new(BigInt::zero(), c.numer().clone(), c.denom().clone(), d)
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, u64) {
        (&self.a, &self.b, &self.r, self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.a.clone(), self.r.clone()))
    }

    fn common_d(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, x) | (x, 0) => x,
            (x, y) => {
                assert_eq!(x, y, "values from different quadratic fields");
                x
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.common_d(other);
        Self::new(
            &self.a * &other.r + &other.a * &self.r,
            &self.b * &other.r + &other.b * &self.r,
            &self.r * &other.r,
            d,
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b, self.r.clone(), self.d)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(&self.a * k, &self.b * k, self.r.clone(), self.d)
    }

    /// Exact order on representatives in `[-1/2, 1/2)`.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let d = self.common_d(other);
        let u = &self.a * &other.r - &other.a * &self.r;
        let v = &self.b * &other.r - &other.b * &self.r;
        sign_surd(&u, &v, d)
    }

    /// Sign of `representative - q`.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let u = &self.a * q.denom() - q.numer() * &self.r;
        let v = &self.b * q.denom();
        sign_surd(&u, &v, self.d)
    }

    /// `|value| < t`: the open arc `(-t, t)`.
    pub fn abs_lt(&self, t: &BigRational) -> bool {
        self.cmp_rational(t) == Ordering::Less && self.cmp_rational(&-t) == Ordering::Greater
    }

    /// The circle distance `|value|` as an exact string.
    pub fn abs_string(&self) -> String {
        let neg = self.cmp_rational(&BigRational::zero()) == Ordering::Less;
        let (a, b) = if neg { (-&self.a, -&self.b) } else { (self.a.clone(), self.b.clone()) };
        if b.is_zero() {
            format!("{}/{}", a, self.r)
        } else {
            format!("({}+{}*sqrt({}))/{}", a, b, self.d, self.r)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        (a + b * (self.d as f64).sqrt()) / r
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}/{}", self.a, self.r)
        } else {
            write!(f, "({}+{}*sqrt({}))/{}", self.a, self.b, self.d, self.r)
        }
    }
}

pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn sign_matches_definition_on_grid() {
        for d in [2u64, 3, 5, 7] {
            for u in -30i64..=30 {
                for v in -30i64..=30 {
                    let s = sign_surd(&big(u), &big(v), d);
                    // u + v√d > 0 iff u > -v√d; exact via squares oracle
                    let expect = if v == 0 {
                        u.cmp(&0)
                    } else {
                        let x = u as f64 + v as f64 * (d as f64).sqrt();
                        x.partial_cmp(&0.0).unwrap()
                    };
                    assert_eq!(s, expect, "u={u} v={v} d={d}");
                    assert_eq!(sign_surd_i128(u as i128, v as i128, d), Some(s));
                }
            }
        }
    }

    #[test]
    fn floor_of_surds() {
        assert_eq!(floor_surd(&big(1), 2), big(1));
        assert_eq!(floor_surd(&big(-1), 2), big(-2));
        assert_eq!(floor_surd(&big(5), 2), big(7));
        assert_eq!(floor_surd_div(&big(1), &big(2), 2, &big(2)), big(1)); // (1+2.83)/2
        assert_eq!(floor_surd_i128(-5, 2), Some(-8));
    }

    #[test]
    fn circle_reduction() {
        let v = CircleValue::new(big(0), big(2), big(1), 2); // 2√2 ≈ 2.828 -> -0.172
        assert_eq!(v.to_string(), "(-3+2*sqrt(2))/1");
        assert!(v.abs_lt(&BigRational::new(big(1), big(3))));
        let w = CircleValue::new(big(1), big(0), big(2), 2); // 1/2 -> -1/2
        assert_eq!(w.to_string(), "-1/2");
        assert_eq!(CircleValue::new(big(7), big(0), big(3), 0).to_string(), "1/3");
        let x = CircleValue::new(big(0), big(4), big(1), 2); // 4√2 ≈ 5.657 -> -0.343
        assert!(!x.abs_lt(&BigRational::new(big(1), big(3))));
    }

    #[test]
    fn addition_is_exact() {
        let a = CircleValue::new(big(0), big(3), big(1), 2);
        let b = CircleValue::new(big(0), big(5), big(1), 2);
        let c = CircleValue::new(big(0), big(8), big(1), 2);
        assert_eq!(a.add(&b), c);
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("2/6"), Some(BigRational::new(big(1), big(3))));
        assert_eq!(parse_rational("3"), Some(BigRational::from_integer(big(3))));
        assert_eq!(parse_rational("1/0"), None);
    }
}
