//! Window checks of the Bohr-set identities
//! `X(t1) + X(t2) = X(t1 + t2)`, `X(t/m) = X(t) ∩ {x : m·x ∈ X(t)}` and the
//! derived definition of `X(qt)` from `X(t)` alone.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{BohrSet, RotationError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityKind {
    Product { t1: BigRational, t2: BigRational },
    Divide { t: BigRational, m: u64 },
    DerivedPredicate { t: BigRational, q: BigRational },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub kind: String,
    pub window: (i64, i64),
    pub points_checked: u64,
    /// Pairs `(x, y)` of members checked for `x + y ∈ X(t1 + t2)`.
    pub pairs_checked: u64,
    /// Points where the two sides provably differ.
    pub mismatches: Vec<i64>,
    /// Points left undecided by the witness bound.
    pub inconclusive: Vec<i64>,
    /// Largest `|y|` needed for a decomposition `x = y + (x - y)`.
    pub max_witness: u64,
}

impl IdentityReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.inconclusive.is_empty()
    }
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn fmt_q(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn members(x: &BohrSet, lo: i64, hi: i64) -> Result<Vec<i64>, RotationError> {
    let mut out = Vec::new();
    for n in lo..=hi {
        if x.member_int(n)? {
            out.push(n);
        }
    }
    Ok(out)
}

/// Runs one identity check for a hom on `Z` over `[lo, hi]`.
pub fn verify_bohr_identity(
    base: &BohrSet,
    kind: &IdentityKind,
    lo: i64,
    hi: i64,
    witness_bound: u64,
) -> Result<IdentityReport, RotationError> {
    let mut report = IdentityReport {
        kind: String::new(),
        window: (lo, hi),
        points_checked: 0,
        pairs_checked: 0,
        mismatches: vec![],
        inconclusive: vec![],
        max_witness: 0,
    };
    match kind {
        IdentityKind::Product { t1, t2 } => {
            report.kind = format!("product t1={} t2={}", fmt_q(t1), fmt_q(t2));
            let sum = t1 + t2;
            if sum > q(1, 2) {
                return Err(RotationError::Precondition("t1 + t2 must be at most 1/2".into()));
            }
            let x1 = base.with_t(t1.clone())?;
            let x2 = base.with_t(t2.clone())?;
            let xs = base.with_t(sum)?;
            // X(t1) + X(t2) ⊆ X(t1 + t2) on window members
            let m1 = members(&x1, lo, hi)?;
            let m2 = members(&x2, lo, hi)?;
            for &a in &m1 {
                for &b in &m2 {
                    report.pairs_checked += 1;
                    if !xs.member_int(a + b)? {
                        report.mismatches.push(a + b);
                    }
                }
            }
            // X(t1 + t2) ⊆ X(t1) + X(t2) by witness search
            for x in lo..=hi {
                report.points_checked += 1;
                if !xs.member_int(x)? {
                    continue;
                }
                let mut found = false;
                'search: for k in 0..=witness_bound as i64 {
                    for y in if k == 0 { vec![0] } else { vec![k, -k] } {
                        if x1.member_int(y)? && x2.member_int(x - y)? {
                            report.max_witness = report.max_witness.max(k as u64);
                            found = true;
                            break 'search;
                        }
                    }
                }
                if !found {
                    report.inconclusive.push(x);
                }
            }
        }
        IdentityKind::Divide { t, m } => {
            report.kind = format!("divide t={} m={m}", fmt_q(t));
            if *m == 0 || t > &q(1, *m as i64 + 1) {
                return Err(RotationError::Precondition("need 0 < t <= 1/(m+1)".into()));
            }
            let xt = base.with_t(t.clone())?;
            let xd = base.with_t(t / BigRational::from_integer(BigInt::from(*m)))?;
            let mi = *m as i64;
            for x in lo..=hi {
                report.points_checked += 1;
                let direct = xd.member_int(x)?;
                let derived = xt.member_int(x)? && xt.member_int(mi * x)?;
                if direct != derived {
                    report.mismatches.push(x);
                }
            }
        }
        IdentityKind::DerivedPredicate { t, q: qq } => {
            report.kind = format!("derived t={} q={}", fmt_q(t), fmt_q(qq));
            derived_predicate(base, t, qq, lo, hi, witness_bound, &mut report)?;
        }
    }
    Ok(report)
}

/// Smallest `m` with `b | m!`.
fn factorial_reach(b: &BigInt) -> (u64, BigInt) {
    let mut m = 1u64;
    let mut f = BigInt::one();
    while !(&f % b).is_zero() {
        m += 1;
        f *= m;
    }
    (m, f)
}

fn derived_predicate(
    base: &BohrSet,
    t: &BigRational,
    qq: &BigRational,
    lo: i64,
    hi: i64,
    margin: u64,
    report: &mut IdentityReport,
) -> Result<(), RotationError> {
    if !qq.is_positive() || qq * t > q(1, 2) {
        return Err(RotationError::Precondition("need 0 < q <= 1/(2t)".into()));
    }
    let (m, mfact) = factorial_reach(qq.denom());
    // X(t/k!) from X(t/(k-1)!) needs t/(k-1)! <= 1/(k+1)
    let mut s = t.clone();
    for k in 2..=m {
        if s > q(1, k as i64 + 1) {
            return Err(RotationError::Precondition(format!("halving chain step {k} needs a smaller t")));
        }
        s /= BigRational::from_integer(BigInt::from(k));
    }
    let j = (qq * BigRational::from_integer(mfact)).to_integer().to_u64().expect("small fold count");
    let xt = base.with_t(t.clone())?;
    // membership in X(t/m!) using only the X(t) oracle
    fn chain(xt: &BohrSet, k: u64, x: i64) -> Result<bool, RotationError> {
        if k <= 1 {
            return xt.member_int(x);
        }
        Ok(chain(xt, k - 1, x)? && chain(xt, k - 1, x * k as i64)?)
    }
    let r = lo.unsigned_abs().max(hi.unsigned_abs()) as i64 + margin as i64;
    let jr = j as i64 * r;
    let width = (2 * jr + 1) as usize;
    let mut base_bits = vec![0u64; width.div_ceil(64)];
    let mut base_pts = Vec::new();
    for y in -r..=r {
        if chain(&xt, m, y)? {
            base_pts.push(y);
            let i = (y + jr) as usize;
            base_bits[i >> 6] |= 1 << (i & 63);
        }
    }
    let mut acc = base_bits.clone();
    for _ in 1..j {
        let mut next = vec![0u64; acc.len()];
        for &y in &base_pts {
            shifted_or(&acc, y, &mut next);
        }
        acc = next;
    }
    let direct = base.with_t(qq * t)?;
    for x in lo..=hi {
        report.points_checked += 1;
        let i = (x + jr) as usize;
        let derived = (acc[i >> 6] >> (i & 63)) & 1 == 1;
        let d = direct.member_int(x)?;
        if derived && !d {
            report.mismatches.push(x);
        } else if d && !derived {
            report.inconclusive.push(x);
        }
    }
    Ok(())
}

/// `out |= src shifted by s` (positive `s` moves bits up).
fn shifted_or(src: &[u64], s: i64, out: &mut [u64]) {
    let n = src.len();
    let ws = (s.unsigned_abs() / 64) as usize;
    let bs = (s.unsigned_abs() % 64) as u32;
    if s >= 0 {
        for i in (ws..n).rev() {
            let mut v = src[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= src[i - ws - 1] >> (64 - bs);
            }
            out[i] |= v;
        }
    } else {
        for i in 0..n.saturating_sub(ws) {
            let mut v = src[i + ws] >> bs;
            if bs > 0 && i + ws + 1 < n {
                v |= src[i + ws + 1] << (64 - bs);
            }
            out[i] |= v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(t: BigRational) -> BohrSet {
        BohrSet::surd(2, t).unwrap()
    }

    #[test]
    fn product_small_window() {
        let b = x(q(1, 3));
        let r = verify_bohr_identity(&b, &IdentityKind::Product { t1: q(1, 6), t2: q(1, 6) }, -300, 300, 100_000)
            .unwrap();
        assert!(r.is_clean(), "{r:?}");
        assert!(r.pairs_checked > 0);
    }

    #[test]
    fn divide_example_point() {
        let b = x(q(1, 3));
        assert!(b.member_int(2).unwrap());
        assert!(!b.member_int(4).unwrap());
        assert!(!x(q(1, 6)).member_int(2).unwrap());
        let r = verify_bohr_identity(&b, &IdentityKind::Divide { t: q(1, 3), m: 2 }, -2000, 2000, 0).unwrap();
        assert!(r.is_clean());
    }

    #[test]
    fn derived_identity_case() {
        let b = x(q(1, 4));
        let r = verify_bohr_identity(
            &b,
            &IdentityKind::DerivedPredicate { t: q(1, 4), q: q(1, 1) },
            -500,
            500,
            0,
        )
        .unwrap();
        assert!(r.is_clean());
    }

    #[test]
    fn derived_half_and_third() {
        let b = x(q(1, 4));
        for qq in [q(1, 2), q(1, 3)] {
            let r = verify_bohr_identity(&b, &IdentityKind::DerivedPredicate { t: q(1, 4), q: qq }, -300, 300, 20_000)
                .unwrap();
            assert!(r.is_clean(), "{r:?}");
        }
    }

    #[test]
    fn preconditions() {
        let b = x(q(1, 3));
        assert!(verify_bohr_identity(&b, &IdentityKind::Product { t1: q(1, 3), t2: q(1, 3) }, 0, 1, 1).is_err());
        assert!(verify_bohr_identity(&b, &IdentityKind::Divide { t: q(1, 2), m: 2 }, 0, 1, 1).is_err());
        assert!(verify_bohr_identity(
            &b,
            &IdentityKind::DerivedPredicate { t: q(1, 4), q: q(3, 1) },
            0,
            1,
            1
        )
        .is_err());
    }

    #[test]
    fn shift_helper() {
        let src = vec![0b1011u64, 1];
        let mut out = vec![0u64; 2];
        shifted_or(&src, 62, &mut out);
        assert_eq!(out[0], 0b11 << 62);
        assert_eq!(out[1], 0b10 | (1 << 62));
        let mut out = vec![0u64; 2];
        shifted_or(&src, -1, &mut out);
        assert_eq!(out[0], 0b101 | (1 << 63));
    }
}
