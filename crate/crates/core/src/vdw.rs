//! Coverings of `Z` by translates of a Bohr set whose difference sets
//! contain no nontrivial subgroup even after `n`-fold sums, and the
//! pigeonhole search for long progressions in `P − P`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rotation::surd::{format_rational, sign_surd};
use crate::rotation::{
    max_subgroup_witnesses, verify_bohr_identity, verify_witness_table, BohrSet, CircleHom, CircleValue,
    IdentityKind, IdentityReport, MultiSurdHom, RotationError, WitnessTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VdwError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no cover with translates in [-{bound}, {bound}]; best partial {best:?}")]
    SearchExhausted { bound: i64, best: Vec<i64> },
    #[error(transparent)]
    Rotation(#[from] RotationError),
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn half() -> BigRational {
    q(1, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `Q = X(1/(6n))`, `3n + 1` translates.
    ThreeNPlusOne,
    /// `Q = X(2/(8n+1))`, `2n + 1` translates.
    TwoNPlusOne,
}

impl Variant {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Variant::ThreeNPlusOne),
            2 => Some(Variant::TwoNPlusOne),
            _ => None,
        }
    }

    pub fn radius(self, n: u64) -> BigRational {
        let n = n as i64;
        match self {
            Variant::ThreeNPlusOne => q(1, 6 * n),
            Variant::TwoNPlusOne => q(2, 8 * n + 1),
        }
    }

    pub fn arcs(self, n: u64) -> usize {
        match self {
            Variant::ThreeNPlusOne => 3 * n as usize + 1,
            Variant::TwoNPlusOne => 2 * n as usize + 1,
        }
    }

    /// Factors after which the difference set fills the group.
    pub fn covering_power(self, n: u64) -> u64 {
        match self {
            Variant::ThreeNPlusOne => 3 * n / 2 + 1,
            Variant::TwoNPlusOne => n + 1,
        }
    }
}

/// Sign of `Σ c_j·v_j + r` for circle representatives `v_j` in one field.
fn sign_combo(terms: &[(i64, &CircleValue)], r: &BigRational, d: u64) -> Ordering {
    let mut u = r.clone();
    let mut v = BigRational::zero();
    for (c, x) in terms {
        let (a, b, den, _) = x.parts();
        u += BigRational::new(a * c, den.clone());
        v += BigRational::new(b * c, den.clone());
    }
    let un = u.numer() * v.denom();
    let vn = v.numer() * u.denom();
    sign_surd(&un, &vn, d)
}

/// `x + r` written exactly.
fn shifted(x: &CircleValue, r: &BigRational) -> String {
    let (a, b, den, d) = x.parts();
    let num = a * r.denom() + r.numer() * den;
    let den = den * r.denom();
    let g = num_integer::Integer::gcd(&num_integer::Integer::gcd(&num, &(b * r.denom())), &den);
    let (num, bb, den) = (num / &g, b * r.denom() / &g, den / &g);
    if bb.is_zero() {
        format!("{num}/{den}")
    } else {
        format!("({num}+{bb}*sqrt({d}))/{den}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub translate: i64,
    pub center: String,
    pub lo: String,
    pub hi: String,
}

/// Open arcs `(g(a_i) − t, g(a_i) + t)` sorted by center; they cover the
/// circle exactly when each gap between consecutive centers, the wrap
/// included, is below `2t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCoverCertificate {
    pub radicand: u64,
    pub t: String,
    pub arcs: Vec<Arc>,
    pub covers: bool,
}

fn arc_certificate(d: u64, t: &BigRational, translates: &[i64]) -> ArcCoverCertificate {
    let hom = CircleHom::SurdRotation { d };
    let mut centers: Vec<(i64, CircleValue)> = translates
        .iter()
        .map(|&a| (a, hom.value_int(&BigInt::from(a)).expect("hom on Z")))
        .collect();
    centers.sort_by(|x, y| x.1.cmp_value(&y.1).then(x.0.cmp(&y.0)));
    let two_t = t * BigInt::from(2);
    let k = centers.len();
    let covers = k > 0
        && (0..k).all(|i| {
            let (cur, next) = (&centers[i].1, &centers[(i + 1) % k].1);
            // next − cur − 2t (+1 across the wrap) < 0
            let r = if i + 1 == k { BigRational::one() - &two_t } else { -two_t.clone() };
            sign_combo(&[(1, next), (-1, cur)], &r, d) == Ordering::Less
        });
    let arcs = centers
        .iter()
        .map(|(a, c)| Arc { translate: *a, center: c.to_string(), lo: shifted(c, &-t), hi: shifted(c, t) })
        .collect();
    ArcCoverCertificate { radicand: d, t: format_rational(t), arcs, covers }
}

impl ArcCoverCertificate {
    /// Recomputes every arc from the translates and re-runs the gap check.
    pub fn verify(&self) -> bool {
        let Some(t) = crate::rotation::surd::parse_rational(&self.t) else { return false };
        let translates: Vec<i64> = self.arcs.iter().map(|a| a.translate).collect();
        let again = arc_certificate(self.radicand, &t, &translates);
        again == *self && self.covers
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Covering {
    pub n: u64,
    pub variant: Variant,
    #[serde(serialize_with = "ser_bohr")]
    pub base: BohrSet,
    pub translates: Vec<i64>,
    /// Largest `|k|` searched.
    pub search_bound: i64,
    pub certificate: ArcCoverCertificate,
    /// `g(Z) ∩ Q/Z = {0}` holds for every surd rotation.
    pub image_avoids_rationals: bool,
}

fn ser_bohr<S: serde::Serializer>(x: &BohrSet, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.describe())
}

impl Covering {
    /// The translates `A_i = Q + a_i` cover `Z`: checked at each point of
    /// the window.
    pub fn window_uncovered(&self, lo: i64, hi: i64) -> Result<Vec<i64>, RotationError> {
        let mut out = Vec::new();
        for x in lo..=hi {
            let mut hit = false;
            for &a in &self.translates {
                if self.base.member_int(x - a)? {
                    hit = true;
                    break;
                }
            }
            if !hit {
                out.push(x);
            }
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,a_i,lo,hi\n");
        for (i, a) in self.certificate.arcs.iter().enumerate() {
            out.push_str(&format!("{i},{},\"{}\",\"{}\"\n", a.translate, a.lo, a.hi));
        }
        out
    }
}

fn frac_dist(k: i64, alpha: f64, target: f64) -> f64 {
    let v = (k as f64 * alpha - target).rem_euclid(1.0);
    v.min(1.0 - v)
}

/// Translates whose images sit nearest the evenly spaced targets
/// `i / arcs`, widening the search window until the arcs cover.
pub fn build_covering(n: u64, variant: Variant, d: u64) -> Result<Covering, VdwError> {
    if n == 0 {
        return Err(VdwError::Precondition("n must be at least 1".into()));
    }
    let t = variant.radius(n);
    let base = BohrSet::surd(d, t.clone())?;
    let arcs = variant.arcs(n);
    let alpha = (d as f64).sqrt();
    let mut bound = 16i64;
    let mut best = vec![];
    while bound <= 1 << 20 {
        let translates: Vec<i64> = (0..arcs)
            .map(|i| {
                let target = i as f64 / arcs as f64;
                (0..=bound)
                    .flat_map(|k| [k, -k])
                    .min_by(|&a, &b| frac_dist(a, alpha, target).total_cmp(&frac_dist(b, alpha, target)))
                    .expect("nonempty range")
            })
            .collect();
        let certificate = arc_certificate(d, &t, &translates);
        if certificate.covers {
            return Ok(Covering {
                n,
                variant,
                base,
                translates,
                search_bound: bound,
                certificate,
                image_avoids_rationals: true,
            });
        }
        best = translates;
        bound *= 2;
    }
    Err(VdwError::SearchExhausted { bound: bound / 2, best })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceSet {
    /// `A_i − A_i = Q − Q = X(2t)`.
    #[serde(serialize_with = "ser_bohr")]
    pub set: BohrSet,
    pub check: IdentityReport,
}

/// `P = A_i − A_i`, with `Q − Q = Q + Q = X(2t)` checked on `[-w, w]`.
pub fn difference_set(c: &Covering, window: i64, witness_bound: u64) -> Result<DifferenceSet, VdwError> {
    let t = c.base.t().clone();
    let set = c.base.with_t(&t * BigInt::from(2))?;
    let check = verify_bohr_identity(&c.base, &IdentityKind::Product { t1: t.clone(), t2: t }, -window, window, witness_bound)?;
    Ok(DifferenceSet { set, check })
}

/// `P^n = X(n·s)` for `P = X(s)` while `n·s ≤ 1/2`, with the last step
/// `X((n−1)s) + X(s) = X(ns)` checked on `[-w, w]`.
pub fn sum_power(p: &BohrSet, n: u64, window: i64, witness_bound: u64) -> Result<(BohrSet, Option<IdentityReport>), VdwError> {
    let s = p.t().clone();
    let total = &s * BigInt::from(n);
    if n == 0 || total > half() {
        return Err(VdwError::Precondition(format!("{n}·{} exceeds 1/2", format_rational(&s))));
    }
    let out = p.with_t(total)?;
    if n == 1 {
        return Ok((out, None));
    }
    let first = &s * BigInt::from(n - 1);
    let report = verify_bohr_identity(p, &IdentityKind::Product { t1: first, t2: s }, -window, window, witness_bound)?;
    Ok((out, Some(report)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoSubgroupCertificate {
    pub set: String,
    pub table: WitnessTable,
    pub complete: bool,
    /// The rotation is by an irrational, so `g(m) ≠ 0` for `m ≠ 0` and a
    /// complete table leaves no `mZ` inside the set.
    pub kernel_trivial: bool,
}

/// `k_m·m ∉ X(s)` for each `m ≤ max_m`, `k_m ≤ max_k`.
pub fn certify_no_subgroup(p: &BohrSet, max_m: u64, max_k: u64) -> Result<NoSubgroupCertificate, VdwError> {
    if *p.t() >= half() {
        return Err(VdwError::Precondition("radius must be below 1/2".into()));
    }
    let table = max_subgroup_witnesses(p, max_m, max_k)?;
    let kernel_trivial = matches!(p.hom(), CircleHom::SurdRotation { .. });
    Ok(NoSubgroupCertificate { set: p.describe(), complete: table.is_complete(), table, kernel_trivial })
}

pub fn verify_no_subgroup(p: &BohrSet, cert: &NoSubgroupCertificate) -> Result<bool, VdwError> {
    Ok(cert.set == p.describe() && cert.complete == cert.table.is_complete() && verify_witness_table(p, &cert.table)?)
}

/// `P^k = G` for `P = X(s)`: with `k1·s, k2·s ≤ 1/2`, `P^k ⊇ X(k1 s) + X(k2 s)`,
/// and two open arcs of radii summing past `1/2` always meet, so every
/// `x` splits as `y + (x − y)` with `y ∈ X(k1 s)`, `x − y ∈ X(k2 s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCoverCertificate {
    pub set: String,
    pub k: u64,
    pub split: (u64, u64),
    pub radii: (String, String),
    /// Sampled `(x, y)` decompositions.
    pub decompositions: Vec<(i64, i64)>,
    /// The last step is the arc-overlap argument, not the product identity.
    pub final_step: String,
}

const ARC_OVERLAP: &str = "reconstructed: X(s1) + X(s2) = G by arc overlap, s1 + s2 > 1/2";

pub fn certify_power_covers(p: &BohrSet, k: u64, samples: usize, window: i64, witness_bound: i64) -> Result<PowerCoverCertificate, VdwError> {
    let s = p.t().clone();
    if &s * BigInt::from(k) <= half() {
        return Err(VdwError::Precondition(format!("{k}·{} does not exceed 1/2", format_rational(&s))));
    }
    let cap = (half() / &s).floor().to_u64().unwrap_or(u64::MAX);
    let k1 = cap.min(k - 1);
    let k2 = cap.min(k - k1);
    let (s1, s2) = (&s * BigInt::from(k1), &s * BigInt::from(k2));
    if &s1 + &s2 <= half() {
        return Err(VdwError::Precondition("no split of the factors reaches past 1/2".into()));
    }
    let (x1, x2) = (p.with_t(s1.clone())?, p.with_t(s2.clone())?);
    let mut decompositions = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = -window + (2 * window * i as i64) / samples.max(1) as i64;
        let y = (0..=witness_bound)
            .flat_map(|y| [y, -y])
            .find(|&y| x1.member_int(y).unwrap_or(false) && x2.member_int(x - y).unwrap_or(false));
        match y {
            Some(y) => decompositions.push((x, y)),
            None => return Err(VdwError::Precondition(format!("no decomposition of {x} within {witness_bound}"))),
        }
    }
    Ok(PowerCoverCertificate {
        set: p.describe(),
        k,
        split: (k1, k2),
        radii: (format_rational(&s1), format_rational(&s2)),
        decompositions,
        final_step: ARC_OVERLAP.into(),
    })
}

pub fn verify_power_cover(p: &BohrSet, cert: &PowerCoverCertificate) -> Result<bool, VdwError> {
    let s = p.t().clone();
    let (k1, k2) = cert.split;
    if k1 + k2 > cert.k || cert.set != p.describe() || cert.final_step != ARC_OVERLAP {
        return Ok(false);
    }
    let (s1, s2) = (&s * BigInt::from(k1), &s * BigInt::from(k2));
    if s1 > half() || s2 > half() || &s1 + &s2 <= half() {
        return Ok(false);
    }
    if cert.radii != (format_rational(&s1), format_rational(&s2)) {
        return Ok(false);
    }
    let (x1, x2) = (p.with_t(s1)?, p.with_t(s2)?);
    for &(x, y) in &cert.decompositions {
        if !(x1.member_int(y)? && x2.member_int(x - y)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coverage of sampled finitely supported rational vectors by the
/// translates `X(t) + a_i·e_1` under `e_i ↦ √p_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalSample {
    pub radicands: Vec<u64>,
    pub samples: usize,
    /// Index of a covering translate for each sample.
    pub assigned: Vec<usize>,
}

/// Runs the covering of `c` on `Q^3` samples: the translates lie on the
/// `√2` axis, so their images are the arc centers.
pub fn rational_cover_sample(c: &Covering, samples: usize, seed: u64, max_bits: u32) -> Result<RationalSample, VdwError> {
    let hom = MultiSurdHom::primes(3);
    if hom.radicands()[0] != c.certificate.radicand {
        return Err(VdwError::Precondition("covering must rotate by sqrt(2)".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = c.base.t();
    let mut assigned = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x: Vec<BigRational> =
            (0..3).map(|_| q(rng.gen_range(-500..=500), rng.gen_range(1..=12))).collect();
        let mut hit = None;
        for (i, &a) in c.translates.iter().enumerate() {
            let mut y = x.clone();
            y[0] -= BigRational::from_integer(BigInt::from(a));
            if hom.member(&y, t, max_bits)? {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => assigned.push(i),
            None => return Err(VdwError::Precondition(format!("sample {x:?} uncovered"))),
        }
    }
    Ok(RationalSample { radicands: hom.radicands().to_vec(), samples, assigned })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PigeonholeOutcome {
    /// `g`, `h` share a signature; `x = h − g` has `kx ∈ P − P` for `k ≤ K`,
    /// with `kx = (kh − s_k) − (kg − s_k)`.
    Collision { g: u64, h: u64, x: u64, signature: Vec<u64> },
    NoCollision { buckets: usize, universe: u64, largest_bucket: usize },
}

/// Signature search on `Z/modulus`: `s(g)_k` is the least `s ∈ S` with
/// `kg − s ∈ P`.
pub fn pigeonhole_difference(modulus: u64, p: &[u64], s: &[u64], k: usize) -> Result<PigeonholeOutcome, VdwError> {
    if k == 0 || modulus == 0 {
        return Err(VdwError::Precondition("need K >= 1 and a nonzero modulus".into()));
    }
    let mut in_p = vec![false; modulus as usize];
    for &x in p {
        in_p[(x % modulus) as usize] = true;
    }
    let mut s: Vec<u64> = s.iter().map(|x| x % modulus).collect();
    s.sort();
    s.dedup();
    let sig = |g: u64| -> Option<Vec<u64>> {
        (1..=k as u64)
            .map(|j| s.iter().copied().find(|&e| in_p[((j * g % modulus + modulus - e) % modulus) as usize]))
            .collect()
    };
    let mut buckets: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    for g in 0..modulus {
        let sg = sig(g).ok_or_else(|| VdwError::Precondition(format!("{g} is not in P + S")))?;
        buckets.entry(sg).or_default().push(g);
    }
    for (signature, members) in &buckets {
        if let [g, h, ..] = members[..] {
            let x = (h + modulus - g) % modulus;
            debug_assert!(verify_progression_in_difference(modulus, &in_p, x, k));
            return Ok(PigeonholeOutcome::Collision { g, h, x, signature: signature.clone() });
        }
    }
    let largest_bucket = buckets.values().map(Vec::len).max().unwrap_or(0);
    Ok(PigeonholeOutcome::NoCollision { buckets: buckets.len(), universe: modulus, largest_bucket })
}

fn verify_progression_in_difference(modulus: u64, in_p: &[bool], x: u64, k: usize) -> bool {
    let m = modulus as usize;
    (1..=k).all(|j| {
        let target = j * x as usize % m;
        (0..m).any(|a| in_p[a] && in_p[(a + m - target) % m])
    })
}

/// `kx ∈ P − P` for every `k ≤ K`, by search over `P`.
pub fn verify_progression(modulus: u64, p: &[u64], x: u64, k: usize) -> bool {
    let mut in_p = vec![false; modulus as usize];
    for &y in p {
        in_p[(y % modulus) as usize] = true;
    }
    verify_progression_in_difference(modulus, &in_p, x, k)
}

/// Quadratic residues mod a prime, with 0.
pub fn residues_with_zero(p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (0..p).map(|x| x * x % p).collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::thickset::{min_genericity, Side, SymmetricSet};

    #[test]
    fn coverings_have_the_right_size_and_verify() {
        for n in 1..=3 {
            for v in [Variant::ThreeNPlusOne, Variant::TwoNPlusOne] {
                let c = build_covering(n, v, 2).unwrap();
                assert_eq!(c.translates.len(), v.arcs(n));
                assert!(c.certificate.covers && c.certificate.verify());
                assert!(c.window_uncovered(-3000, 3000).unwrap().is_empty(), "{n} {v:?}");
            }
        }
        assert!(matches!(build_covering(0, Variant::ThreeNPlusOne, 2), Err(VdwError::Precondition(_))));
    }

    #[test]
    fn arc_check_rejects_gaps() {
        let c = build_covering(1, Variant::ThreeNPlusOne, 2).unwrap();
        let t = Variant::ThreeNPlusOne.radius(1);
        let short = arc_certificate(2, &t, &c.translates[..3]);
        assert!(!short.covers && !short.verify());
        let mut tampered = c.certificate.clone();
        tampered.arcs[0].translate += 1;
        assert!(!tampered.verify());
    }

    #[test]
    fn arc_endpoints_sorted() {
        let c = build_covering(2, Variant::TwoNPlusOne, 2).unwrap();
        let hom = CircleHom::surd(2).unwrap();
        let vals: Vec<CircleValue> = c.certificate.arcs.iter().map(|a| hom.value_int(&BigInt::from(a.translate)).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0].cmp_value(&w[1]) != Ordering::Greater));
        let f: Vec<f64> = vals.iter().map(CircleValue::to_f64).collect();
        for (a, x) in c.certificate.arcs.iter().zip(&f) {
            assert!(a.center.contains("sqrt(2)") || a.translate == 0);
            assert!((-0.5..0.5).contains(x));
        }
    }

    #[test]
    fn difference_and_power_sets() {
        let c = build_covering(1, Variant::ThreeNPlusOne, 2).unwrap();
        let p = difference_set(&c, 300, 100_000).unwrap();
        assert_eq!(*p.set.t(), q(1, 3));
        assert!(p.check.is_clean());
        assert!(p.set.member_int(0).unwrap());
        let c2 = build_covering(1, Variant::TwoNPlusOne, 2).unwrap();
        assert_eq!(*difference_set(&c2, 100, 100_000).unwrap().set.t(), q(4, 9));
        for n in 1..=3u64 {
            let c = build_covering(n, Variant::ThreeNPlusOne, 2).unwrap();
            let p = c.base.with_t(c.base.t() * BigInt::from(2)).unwrap();
            let (pn, report) = sum_power(&p, n, 200, 100_000).unwrap();
            assert_eq!(*pn.t(), q(1, 3));
            assert!(report.is_none_or(|r| r.is_clean()));
            let c = build_covering(n, Variant::TwoNPlusOne, 2).unwrap();
            let p = c.base.with_t(c.base.t() * BigInt::from(2)).unwrap();
            let (pn, _) = sum_power(&p, n, 200, 100_000).unwrap();
            assert_eq!(*pn.t(), q(4 * n as i64, 8 * n as i64 + 1));
        }
    }

    #[test]
    fn no_subgroup_tables() {
        let x = BohrSet::surd(2, q(1, 3)).unwrap();
        let c = certify_no_subgroup(&x, 1, 10).unwrap();
        assert_eq!(c.table.entries[0], crate::rotation::WitnessEntry::Witness { m: 1, k: 1 });
        let x = BohrSet::surd(2, q(4, 9)).unwrap();
        let c = certify_no_subgroup(&x, 100, 100_000).unwrap();
        assert!(c.complete && c.kernel_trivial);
        assert!(verify_no_subgroup(&x, &c).unwrap());
        assert!(certify_no_subgroup(&BohrSet::surd(2, half()).unwrap(), 5, 5).is_err());
    }

    #[test]
    fn power_covers() {
        let x = BohrSet::surd(2, q(1, 3)).unwrap();
        let c = certify_power_covers(&x, 2, 100, 10_000, 100_000).unwrap();
        assert_eq!(c.split, (1, 1));
        assert!(verify_power_cover(&x, &c).unwrap());
        let x = BohrSet::surd(2, q(4, 9)).unwrap();
        assert!(verify_power_cover(&x, &certify_power_covers(&x, 2, 100, 10_000, 100_000).unwrap()).unwrap());
        let x = BohrSet::surd(2, q(1, 4)).unwrap();
        assert!(matches!(certify_power_covers(&x, 2, 10, 100, 100), Err(VdwError::Precondition(_))));
        for n in 1..=3u64 {
            for v in [Variant::ThreeNPlusOne, Variant::TwoNPlusOne] {
                let p = BohrSet::surd(2, v.radius(n) * BigInt::from(2)).unwrap();
                let c = certify_power_covers(&p, v.covering_power(n), 100, 10_000, 100_000).unwrap();
                assert!(verify_power_cover(&p, &c).unwrap());
            }
        }
    }

    #[test]
    fn rational_points_are_covered() {
        let c = build_covering(1, Variant::ThreeNPlusOne, 2).unwrap();
        let r = rational_cover_sample(&c, 50, 7, 512).unwrap();
        assert_eq!(r.assigned.len(), 50);
    }

    #[test]
    fn pigeonhole_examples() {
        let all: Vec<u64> = (0..11).collect();
        match pigeonhole_difference(11, &all, &[0], 4).unwrap() {
            PigeonholeOutcome::Collision { x, .. } => assert_ne!(x, 0),
            o => panic!("{o:?}"),
        }
        let r = pigeonhole_difference(7, &[0], &(0..7).collect::<Vec<_>>(), 3).unwrap();
        assert!(matches!(r, PigeonholeOutcome::NoCollision { buckets: 7, .. }));
        assert!(pigeonhole_difference(7, &[0], &[0], 1).is_err());
    }

    #[test]
    fn pigeonhole_on_residues_mod_101() {
        let p = residues_with_zero(101);
        assert_eq!(p.len(), 51);
        let z = FiniteGroup::cyclic(101).unwrap();
        let set = SymmetricSet::finite(&z, &p.iter().map(|&x| x as usize).collect::<Vec<_>>());
        let universe: Vec<usize> = (0..101).collect();
        let cert = min_genericity(&z, &set, &universe, Side::Right, 1_000_000).unwrap();
        let s: Vec<u64> = cert.translates.iter().map(|&x| x as u64).collect();
        for k in 1..=6 {
            match pigeonhole_difference(101, &p, &s, k).unwrap() {
                PigeonholeOutcome::Collision { x, .. } => assert!(verify_progression(101, &p, x, k)),
                PigeonholeOutcome::NoCollision { .. } => {}
            }
        }
        assert!(matches!(pigeonhole_difference(101, &p, &s, 2).unwrap(), PigeonholeOutcome::Collision { .. }));
    }
}
