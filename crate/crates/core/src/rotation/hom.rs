use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::surd::{floor_surd_i128, is_square, sign_surd_i128, CircleValue};
use super::RotationError;
use crate::groups::{AbelianGroup, FGAbelianElement};
use crate::thickset::{Symbolic, SymmetricSet, Undecided};

/// A homomorphism into `R/Z` with exactly comparable values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircleHom {
    /// `n ↦ n√d mod 1` on `Z`.
    SurdRotation { d: u64 },
    /// `e_i ↦ images[i] mod 1`.
    RationalImages { domain: AbelianGroup, images: Vec<BigRational> },
    /// `e_i ↦ coeffs[i]·√d mod 1`; torsion generators must map to 0.
    ScaledRational { d: u64, domain: AbelianGroup, coeffs: Vec<BigRational> },
}

impl CircleHom {
    pub fn surd(d: u64) -> Result<Self, RotationError> {
        if is_square(d) {
            return Err(RotationError::SquareRadicand(d));
        }
        Ok(CircleHom::SurdRotation { d })
    }

    pub fn rational_images(domain: AbelianGroup, images: Vec<BigRational>) -> Result<Self, RotationError> {
        if images.len() != domain.num_generators() {
            return Err(RotationError::Invalid("one image per generator required".into()));
        }
        for (j, c) in domain.moduli().iter().enumerate() {
            let img = &images[domain.rank() + j];
            if !(img * BigRational::from_integer(c.clone())).is_integer() {
                return Err(RotationError::IllDefined { generator: domain.rank() + j });
            }
        }
        Ok(CircleHom::RationalImages { domain, images })
    }

    pub fn scaled_rational(d: u64, domain: AbelianGroup, coeffs: Vec<BigRational>) -> Result<Self, RotationError> {
        if is_square(d) {
            return Err(RotationError::SquareRadicand(d));
        }
        if coeffs.len() != domain.num_generators() {
            return Err(RotationError::Invalid("one coefficient per generator required".into()));
        }
        if let Some(j) = (domain.rank()..coeffs.len()).find(|&i| !coeffs[i].is_zero()) {
            return Err(RotationError::IllDefined { generator: j });
        }
        Ok(CircleHom::ScaledRational { d, domain, coeffs })
    }

    pub fn domain(&self) -> AbelianGroup {
        match self {
            CircleHom::SurdRotation { .. } => AbelianGroup::free(1),
            CircleHom::RationalImages { domain, .. } | CircleHom::ScaledRational { domain, .. } => domain.clone(),
        }
    }

    pub fn radicand(&self) -> u64 {
        match self {
            CircleHom::SurdRotation { d } | CircleHom::ScaledRational { d, .. } => *d,
            CircleHom::RationalImages { .. } => 0,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CircleHom::SurdRotation { d } => format!("n*sqrt({d})"),
            CircleHom::RationalImages { domain, images } => {
                let imgs: Vec<String> = images.iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect();
                format!("{} -> [{}]", domain.signature(), imgs.join(","))
            }
            CircleHom::ScaledRational { d, domain, coeffs } => {
                let cs: Vec<String> = coeffs.iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect();
                format!("{} -> sqrt({d})*[{}]", domain.signature(), cs.join(","))
            }
        }
    }

    /// `g(x)` reduced to `[-1/2, 1/2)`.
    pub fn value(&self, x: &FGAbelianElement) -> Result<CircleValue, RotationError> {
        let dom = self.domain();
        if !dom.contains(x) {
            return Err(RotationError::NotInDomain(x.to_string()));
        }
        let coords = x.coordinates();
        Ok(match self {
            CircleHom::SurdRotation { d } => CircleValue::new(BigInt::zero(), coords[0].clone(), BigInt::one(), *d),
            CircleHom::RationalImages { images, .. } => {
                let s = lin(&coords, images);
                CircleValue::rational(&s)
            }
            CircleHom::ScaledRational { d, coeffs, .. } => {
                let s = lin(&coords, coeffs);
                CircleValue::scaled_surd(&s, *d)
            }
        })
    }

    /// `g(n)` for a hom on `Z`.
    pub fn value_int(&self, n: &BigInt) -> Result<CircleValue, RotationError> {
        let dom = self.domain();
        if dom.rank() != 1 || dom.num_generators() != 1 {
            return Err(RotationError::Invalid(format!("domain {} is not Z", dom.signature())));
        }
        self.value(&dom.element(vec![n.clone()], vec![]).expect("rank one"))
    }
}

fn lin(coords: &[BigInt], coeffs: &[BigRational]) -> BigRational {
    coords
        .iter()
        .zip(coeffs)
        .fold(BigRational::zero(), |acc, (c, q)| acc + q * BigRational::from_integer(c.clone()))
}

/// Checks `g(x + y) = g(x) + g(y)` exactly on the given pairs; returns the
/// first failing pair.
pub fn check_hom_law(
    h: &CircleHom,
    pairs: &[(FGAbelianElement, FGAbelianElement)],
) -> Result<Option<(FGAbelianElement, FGAbelianElement)>, RotationError> {
    for (x, y) in pairs {
        let lhs = h.value(&x.add(y))?;
        let rhs = h.value(x)?.add(&h.value(y)?);
        if lhs != rhs {
            return Ok(Some((x.clone(), y.clone())));
        }
    }
    Ok(None)
}

/// `X(t) = g^{-1}(-t, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BohrSet {
    hom: CircleHom,
    t: BigRational,
}

impl BohrSet {
    pub fn new(hom: CircleHom, t: BigRational) -> Result<Self, RotationError> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if !t.is_positive() || t > half {
            return Err(RotationError::RadiusOutOfRange(format!("{}/{}", t.numer(), t.denom())));
        }
        Ok(BohrSet { hom, t })
    }

    /// `X_√d(t)` on `Z`.
    pub fn surd(d: u64, t: BigRational) -> Result<Self, RotationError> {
        Self::new(CircleHom::surd(d)?, t)
    }

    pub fn hom(&self) -> &CircleHom {
        &self.hom
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn with_t(&self, t: BigRational) -> Result<Self, RotationError> {
        Self::new(self.hom.clone(), t)
    }

    pub fn describe(&self) -> String {
        format!("X({}/{}) for {}", self.t.numer(), self.t.denom(), self.hom.describe())
    }

    pub fn member(&self, x: &FGAbelianElement) -> Result<bool, RotationError> {
        Ok(self.hom.value(x)?.abs_lt(&self.t))
    }

    pub fn member_big(&self, n: &BigInt) -> Result<bool, RotationError> {
        Ok(self.hom.value_int(n)?.abs_lt(&self.t))
    }

    /// Membership of an integer, with a machine-integer fast path for
    /// surd rotations.
    pub fn member_int(&self, n: i64) -> Result<bool, RotationError> {
        if let CircleHom::SurdRotation { d } = self.hom {
            if let Some(b) = self.surd_member_fast(n, d) {
                return Ok(b);
            }
        }
        self.member_big(&BigInt::from(n))
    }

    fn surd_member_fast(&self, n: i64, d: u64) -> Option<bool> {
        let p = self.t.numer().to_i128()?;
        let q = self.t.denom().to_i128()?;
        let n = n as i128;
        // nearest integer m = floor((1 + floor(2n√d)) / 2)
        let f = floor_surd_i128(n.checked_mul(2)?, d)?;
        let m = (1 + f).div_euclid(2);
        // -p/q < n√d - m < p/q
        let upper = sign_surd_i128(p.checked_add(q.checked_mul(m)?)?, -q.checked_mul(n)?, d)?;
        let lower = sign_surd_i128(p.checked_sub(q.checked_mul(m)?)?, q.checked_mul(n)?, d)?;
        Some(upper == Ordering::Greater && lower == Ordering::Greater)
    }

    /// The set as a thickness-calculus object on `Z`.
    pub fn to_symmetric_set(&self) -> SymmetricSet<BigInt> {
        let me = self.clone();
        SymmetricSet::from_oracle(
            move |n: &BigInt| me.member_big(n).map_err(|e| Undecided(e.to_string())),
            Symbolic::Bohr(self.describe()),
        )
    }
}

/// The literal integer inequality for `X_√d(p/q)`: some `m` with
/// `(qm - p)^2 < q^2 d n^2 < (qm + p)^2`, using `|n|`.
pub fn squares_criterion(n: &BigInt, d: u64, t: &BigRational) -> bool {
    if n.is_zero() {
        return true;
    }
    let (p, q) = (t.numer(), t.denom());
    let target = q * q * BigInt::from(d) * n * n;
    // m ranges over the integers within 1 of n√d
    let base = super::surd::floor_surd(&n.abs(), d);
    let lo = &base - 1;
    let mut m = lo;
    while m <= &base + 2 {
        let a: BigInt = q * &m - p;
        let b: BigInt = q * &m + p;
        let left = a.is_negative() || a.clone() * &a < target;
        let right = b.is_positive() && target < b.clone() * &b;
        if left && right {
            return true;
        }
        m += 1;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn membership_examples() {
        let x = BohrSet::surd(2, r(1, 3)).unwrap();
        assert!(x.member_int(0).unwrap());
        assert!(x.member_int(2).unwrap());
        assert!(!x.member_int(1).unwrap());
        assert!(!x.member_int(4).unwrap());
    }

    #[test]
    fn fast_path_matches_exact_path() {
        for (d, t) in [(2u64, r(1, 3)), (3, r(1, 4)), (5, r(2, 9)), (2, r(1, 2)), (7, r(1, 100))] {
            let x = BohrSet::surd(d, t).unwrap();
            for n in -3000i64..=3000 {
                assert_eq!(x.member_int(n).unwrap(), x.member_big(&BigInt::from(n)).unwrap(), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn squares_oracle_agrees() {
        for (d, t) in [(2u64, r(1, 3)), (3, r(1, 4)), (2, r(1, 6)), (5, r(3, 7))] {
            let x = BohrSet::surd(d, t.clone()).unwrap();
            for n in 1i64..=2000 {
                assert_eq!(x.member_int(n).unwrap(), squares_criterion(&BigInt::from(n), d, &t), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn symmetric_on_window() {
        let x = BohrSet::surd(2, r(1, 5)).unwrap();
        for n in 0..5000 {
            assert_eq!(x.member_int(n).unwrap(), x.member_int(-n).unwrap());
        }
    }

    #[test]
    fn radius_bounds_checked() {
        assert!(BohrSet::surd(2, r(0, 1)).is_err());
        assert!(BohrSet::surd(2, r(2, 3)).is_err());
        assert!(BohrSet::surd(4, r(1, 3)).is_err());
        assert!(BohrSet::surd(2, r(1, 2)).is_ok());
    }

    #[test]
    fn rational_images_relation() {
        let dom = AbelianGroup::torsion(&[4]);
        assert!(CircleHom::rational_images(dom.clone(), vec![r(1, 3)]).is_err());
        assert!(CircleHom::rational_images(dom, vec![r(3, 4)]).is_ok());
    }
}
