//! Power subgroups `⟨g^n⟩` of the integer Heisenberg group, their bounded
//! generation by `n`-th powers, and `n`-th roots.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::choose2;
use crate::groups::{ball, AbelianGroup, Group, Heisenberg, HeisenbergElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpowerError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("structural and BFS membership disagree at {0}")]
    Inconsistent(String),
}

/// A finite-index subgroup `H` of the Heisenberg group.
///
/// Its image in `Z²` has basis `(h11, h12), (0, h22)` in Hermite form, with
/// chosen lifts `u = (h11, h12, c1)` and `v = (0, h22, c2)`. Every element
/// is `u^a v^b (0, 0, k·d)`, so `H ∩ Z = dZ` and the admissible `z` over a
/// lattice point is a single residue mod `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct HeisSubgroup {
    pub hnf: [[i64; 2]; 2],
    pub center: i64,
    /// `c1, c2`, reduced mod `center`.
    pub lifts: [i64; 2],
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn small(e: &HeisenbergElement) -> Option<(i64, i64, i64)> {
    Some((e.x.to_i64()?, e.y.to_i64()?, e.z.to_i64()?))
}

/// Euclid on one coordinate: afterwards at most one element has it nonzero
/// (positive), and it is returned.
fn pivot(
    gens: &mut Vec<HeisenbergElement>,
    coord: fn(&HeisenbergElement) -> &BigInt,
) -> Option<HeisenbergElement> {
    let g = Heisenberg;
    loop {
        gens.retain(|e| *e != HeisenbergElement::identity());
        let live: Vec<usize> = (0..gens.len()).filter(|&i| !coord(&gens[i]).is_zero()).collect();
        let &p = live.iter().min_by_key(|&&i| coord(&gens[i]).abs())?;
        if live.len() == 1 {
            let mut e = gens.remove(p);
            if coord(&e).is_negative() {
                e = g.inverse(&e);
            }
            return Some(e);
        }
        let pe = gens[p].clone();
        for &i in &live {
            if i != p {
                let q = coord(&gens[i]).div_floor(coord(&pe));
                gens[i] = g.op(&gens[i], &g.power(&pe, &-q));
            }
        }
    }
}

impl HeisSubgroup {
    /// The subgroup generated by `gens`; fails unless it has finite index.
    pub fn generated_by(gens: &[HeisenbergElement]) -> Result<Self, NilpowerError> {
        let g = Heisenberg;
        let mut rest = gens.to_vec();
        let finite = || NilpowerError::Precondition("generators do not span a finite-index subgroup".into());
        let mut u = pivot(&mut rest, |e| &e.x).ok_or_else(finite)?;
        let v = pivot(&mut rest, |e| &e.y).ok_or_else(finite)?;
        // everything left is central
        let q = u.y.div_floor(&v.y);
        u = g.op(&u, &g.power(&v, &-q));
        let mut d = &u.x * &v.y;
        for e in &rest {
            d = d.gcd(&e.z);
        }
        let h = |b: &BigInt| b.to_i64().ok_or_else(|| NilpowerError::Precondition("coordinates overflow".into()));
        let d = h(&d)?;
        Ok(HeisSubgroup {
            hnf: [[h(&u.x)?, h(&u.y)?], [0, h(&v.y)?]],
            center: d,
            lifts: [h(&u.z.mod_floor(&big(d)))?, h(&v.z.mod_floor(&big(d)))?],
        })
    }

    pub fn whole() -> Self {
        HeisSubgroup { hnf: [[1, 0], [0, 1]], center: 1, lifts: [0, 0] }
    }

    pub fn index(&self) -> BigInt {
        big(self.hnf[0][0]) * big(self.hnf[1][1]) * big(self.center)
    }

    pub fn abelianized_index(&self) -> i64 {
        self.hnf[0][0] * self.hnf[1][1]
    }

    /// Coefficients `(a, b)` of a lattice point in the Hermite basis.
    fn coefficients(&self, x: &BigInt, y: &BigInt) -> Option<(BigInt, BigInt)> {
        let [[h11, h12], [_, h22]] = self.hnf;
        let (a, r) = x.div_mod_floor(&big(h11));
        if !r.is_zero() {
            return None;
        }
        let (b, r) = (y - &a * h12).div_mod_floor(&big(h22));
        r.is_zero().then_some((a, b))
    }

    /// The residue mod `center` of `z` over `(x, y)`, if that point is in
    /// the image.
    pub fn z_residue(&self, x: &BigInt, y: &BigInt) -> Option<BigInt> {
        let (a, b) = self.coefficients(x, y)?;
        let [[h11, h12], [_, h22]] = self.hnf;
        let z = &a * self.lifts[0] + choose2(&a) * h11 * h12 + &b * self.lifts[1] + &a * &b * h11 * h22;
        Some(z.mod_floor(&big(self.center)))
    }

    /// Admissible `z` residues over the lattice points `u^a v^b`,
    /// `0 ≤ a, b < 2·center` (the residue is periodic in `a` and `b`).
    pub fn corrections(&self) -> Vec<((i64, i64), i64)> {
        let m = 2 * self.center;
        let [[h11, h12], [_, h22]] = self.hnf;
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                let (x, y) = (big(a * h11), big(a * h12 + b * h22));
                let r = self.z_residue(&x, &y).expect("lattice point");
                out.push(((a, b), r.to_i64().expect("below center")));
            }
        }
        out
    }

    pub fn contains(&self, e: &HeisenbergElement) -> bool {
        self.z_residue(&e.x, &e.y).is_some_and(|r| (&e.z - r).mod_floor(&big(self.center)).is_zero())
    }

    /// Members with every coordinate in `[-radius, radius]`.
    pub fn box_members(&self, radius: i64) -> Vec<HeisenbergElement> {
        let mut out = Vec::new();
        for x in -radius..=radius {
            for y in -radius..=radius {
                let Some(r) = self.z_residue(&big(x), &big(y)) else { continue };
                let r = r.to_i64().expect("below center");
                let d = self.center;
                let mut z = r + d * Integer::div_ceil(&(-radius - r), &d);
                while z <= radius {
                    out.push(HeisenbergElement::new(x, y, z));
                    z += d;
                }
            }
        }
        out
    }
}

/// Elements reachable from the identity by right multiplication with
/// `gens` and their inverses, never leaving the box of radius `work`.
pub fn bfs_closure(gens: &[HeisenbergElement], work: i64) -> HashSet<(i64, i64, i64)> {
    let g = Heisenberg;
    let steps: Vec<(i64, i64, i64)> = gens
        .iter()
        .flat_map(|e| [e.clone(), g.inverse(e)])
        .filter_map(|e| small(&e))
        .filter(|&(x, y, z)| x.abs() <= work && y.abs() <= work && z.abs() <= 2 * work * work)
        .collect();
    let mut seen = HashSet::from([(0, 0, 0)]);
    let mut frontier = vec![(0i64, 0i64, 0i64)];
    while let Some((x, y, z)) = frontier.pop() {
        for &(a, b, c) in &steps {
            let next = (x + a, y + b, z + c + x * b);
            if next.0.abs() <= work && next.1.abs() <= work && next.2.abs() <= work && seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// `n`-th powers of the ball of the given radius, identity removed.
pub fn powers_of_ball(n: u64, radius: usize) -> Vec<HeisenbergElement> {
    let g = Heisenberg;
    let mut out: Vec<HeisenbergElement> =
        ball(&g, &Heisenberg::generators(), radius).iter().map(|e| g.power(e, &BigInt::from(n))).collect();
    out.sort();
    out.dedup();
    out.retain(|e| *e != HeisenbergElement::identity());
    out
}

fn bfs_work_box(n: u64, radius: i64) -> i64 {
    let n = n as i64;
    radius + 2 * n * n + 4 * n
}

/// Compares structural membership with a BFS closure of the `n`-th powers
/// of `ball(gens, 3)` on the box of the given radius.
pub fn cross_check(h: &HeisSubgroup, n: u64, radius: i64) -> Result<u64, NilpowerError> {
    let closure = bfs_closure(&powers_of_ball(n, 3), bfs_work_box(n, radius));
    let mut checked = 0;
    for x in -radius..=radius {
        for y in -radius..=radius {
            for z in -radius..=radius {
                let e = HeisenbergElement::new(x, y, z);
                if h.contains(&e) != closure.contains(&(x, y, z)) {
                    return Err(NilpowerError::Inconsistent(e.to_string()));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSubgroup {
    pub n: u64,
    pub subgroup: HeisSubgroup,
    #[serde(serialize_with = "crate::nilpower::ser_big")]
    pub index: BigInt,
    /// Box radius on which the BFS closure agreed.
    pub checked_radius: i64,
}

pub(crate) fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `⟨{g^n}⟩`: generated by the `n`-th powers of `ball(gens, 3)`, which
/// contain `(n, 0, 0)`, `(0, n, 0)` and powers differing only in `z`, so
/// they generate all of it; checked against BFS on the box of radius 2.
pub fn power_subgroup(n: u64) -> Result<PowerSubgroup, NilpowerError> {
    if n == 0 {
        return Err(NilpowerError::Precondition("n must be at least 1".into()));
    }
    let subgroup = HeisSubgroup::generated_by(&powers_of_ball(n, 3))?;
    let checked_radius = 2;
    cross_check(&subgroup, n, checked_radius)?;
    Ok(PowerSubgroup { n, index: subgroup.index(), subgroup, checked_radius })
}

pub fn subgroup_membership(h: &HeisSubgroup, e: &HeisenbergElement) -> bool {
    h.contains(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationProfile {
    pub n: u64,
    pub radius: i64,
    /// Partial products were kept inside the box of this radius.
    pub work_box: i64,
    pub step_cap: usize,
    /// `layers[k]`: box members first reached with `k` factors.
    pub layers: Vec<usize>,
    /// Largest factor count needed, when every member was reached.
    pub max_steps: Option<usize>,
    pub unresolved: Vec<HeisenbergElement>,
}

impl GenerationProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("factors,count\n");
        for (k, c) in self.layers.iter().enumerate() {
            out.push_str(&format!("{k},{c}\n"));
        }
        out
    }
}

/// Fewest `n`-th powers of elements of `ball(gens, radius + 2)` whose
/// product is each member of `⟨{g^n}⟩` in the box of the given radius.
pub fn steps_to_generate(n: u64, radius: i64) -> Result<GenerationProfile, NilpowerError> {
    steps_with_cap(n, radius, 12).map(|(p, _)| p)
}

/// As [`steps_to_generate`], also returning the factor count per member.
pub fn steps_with_cap(
    n: u64,
    radius: i64,
    step_cap: usize,
) -> Result<(GenerationProfile, HashMap<(i64, i64, i64), usize>), NilpowerError> {
    if !(2..=4).contains(&n) || !(0..=6).contains(&radius) {
        return Err(NilpowerError::Precondition(format!("need n in 2..=4 and radius <= 6, got {n}, {radius}")));
    }
    let h = power_subgroup(n)?.subgroup;
    let targets: HashSet<(i64, i64, i64)> =
        h.box_members(radius).iter().map(|e| small(e).expect("small box")).collect();
    let work = 3 * radius + (n * n) as i64;
    let factors: Vec<(i64, i64, i64)> = powers_of_ball(n, radius as usize + 2)
        .iter()
        .filter_map(small)
        .filter(|&(x, y, z)| x.abs() <= work && y.abs() <= work && z.abs() <= work)
        .collect();
    let mut dist: HashMap<(i64, i64, i64), usize> = HashMap::from([((0, 0, 0), 0)]);
    let mut layers = vec![1];
    let mut frontier = vec![(0i64, 0i64, 0i64)];
    let mut found = 1;
    let mut k = 0;
    while found < targets.len() && k < step_cap && !frontier.is_empty() {
        k += 1;
        let mut next = Vec::new();
        let mut reached = 0;
        for &(x, y, z) in &frontier {
            for &(a, b, c) in &factors {
                let e = (x + a, y + b, z + c + x * b);
                if e.0.abs() <= work && e.1.abs() <= work && e.2.abs() <= work && !dist.contains_key(&e) {
                    dist.insert(e, k);
                    next.push(e);
                    if targets.contains(&e) {
                        reached += 1;
                    }
                }
            }
        }
        found += reached;
        layers.push(reached);
        frontier = next;
    }
    let mut unresolved: Vec<HeisenbergElement> = targets
        .iter()
        .filter(|e| !dist.contains_key(e))
        .map(|&(x, y, z)| HeisenbergElement::new(x, y, z))
        .collect();
    unresolved.sort();
    let max_steps = unresolved.is_empty().then(|| layers.len() - 1);
    let per_target = targets.iter().filter_map(|e| dist.get(e).map(|&k| (*e, k))).collect();
    Ok((GenerationProfile { n, radius, work_box: work, step_cap, layers, max_steps, unresolved }, per_target))
}

/// The unique `x` with `x^n = e`, if any: `x = X/n`, `y = Y/n`,
/// `z = (Z − C(n,2)·x·y)/n`.
pub fn malcev_root(e: &HeisenbergElement, n: u64) -> Option<HeisenbergElement> {
    let nb = BigInt::from(n);
    let (x, r) = e.x.div_mod_floor(&nb);
    if !r.is_zero() {
        return None;
    }
    let (y, r) = e.y.div_mod_floor(&nb);
    if !r.is_zero() {
        return None;
    }
    let (z, r) = (&e.z - choose2(&nb) * &x * &y).div_mod_floor(&nb);
    r.is_zero().then(|| HeisenbergElement::from_big(x, y, z))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalcevReport {
    pub n: u64,
    /// `n^2`: the subgroup checked is `⟨{g^(n^2)}⟩`.
    pub exponent: u64,
    pub radius: i64,
    pub checked: u64,
    /// Members without an `n`-th root in the group.
    pub exceptions: Vec<HeisenbergElement>,
    /// A member whose root lies outside the subgroup itself.
    pub root_outside: Option<(HeisenbergElement, HeisenbergElement)>,
}

/// Every member of `⟨{g^(n^2)}⟩` in the box has an `n`-th root in the
/// whole group.
pub fn malcev_containment(n: u64, radius: i64) -> Result<MalcevReport, NilpowerError> {
    if n < 2 {
        return Err(NilpowerError::Precondition("n must be at least 2".into()));
    }
    let exponent = n * n;
    let h = power_subgroup(exponent)?.subgroup;
    let mut report = MalcevReport { n, exponent, radius, checked: 0, exceptions: vec![], root_outside: None };
    for e in h.box_members(radius) {
        report.checked += 1;
        match malcev_root(&e, n) {
            None => report.exceptions.push(e),
            Some(r) => {
                debug_assert_eq!(Heisenberg.power(&r, &BigInt::from(n)), e);
                if report.root_outside.is_none() && !h.contains(&r) {
                    report.root_outside = Some((e, r));
                }
            }
        }
    }
    Ok(report)
}

/// `[G : nG] = n^r · ∏ gcd(n, c_i)` for `G = Z^r ⊕ ⊕ Z/c_i`.
pub fn abelian_power_index(group: &AbelianGroup, n: u64) -> BigInt {
    let nb = BigInt::from(n);
    let mut index = num_traits::pow(nb.clone(), group.rank());
    for c in group.moduli() {
        index *= nb.gcd(c);
    }
    index
}

/// `|G / nG|` by listing `nG` inside the finite part, for tests.
#[cfg(test)]
fn abelian_power_index_by_count(rank: usize, moduli: &[u64], n: u64) -> BigInt {
    let mut index = num_traits::pow(BigInt::from(n), rank);
    for &c in moduli {
        let image: HashSet<u64> = (0..c).map(|x| x * n % c).collect();
        index *= BigInt::from(c as usize / image.len());
    }
    index
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(x: i64, y: i64, z: i64) -> HeisenbergElement {
        HeisenbergElement::new(x, y, z)
    }

    #[test]
    fn power_subgroup_indices() {
        let idx: Vec<BigInt> = (1..=4).map(|n| power_subgroup(n).unwrap().index).collect();
        assert_eq!(idx, [1, 4, 27, 32].map(BigInt::from));
        assert_eq!(power_subgroup(1).unwrap().subgroup, HeisSubgroup::whole());
        let h2 = power_subgroup(2).unwrap().subgroup;
        assert_eq!((h2.hnf, h2.center), ([[2, 0], [0, 2]], 1));
        let h4 = power_subgroup(4).unwrap().subgroup;
        assert_eq!((h4.hnf, h4.center, h4.lifts), ([[4, 0], [0, 4]], 2, [0, 0]));
        assert!(power_subgroup(0).is_err());
    }

    #[test]
    fn worked_products() {
        let g = Heisenberg;
        let p = g.op(&g.op(&e(2, 2, 1), &e(0, -2, 0)), &e(-2, 0, 0));
        assert_eq!(p, e(0, 0, -3));
        assert_eq!(g.power(&e(1, 1, 0), &BigInt::from(4)), e(4, 4, 6));
    }

    #[test]
    fn membership_examples() {
        let h2 = power_subgroup(2).unwrap().subgroup;
        let h4 = power_subgroup(4).unwrap().subgroup;
        assert!(subgroup_membership(&h2, &e(2, 0, 1)));
        assert!(!subgroup_membership(&h4, &e(4, 0, 1)));
        assert!(subgroup_membership(&h4, &e(4, 0, 2)));
        for n in 1..=5 {
            assert!(power_subgroup(n).unwrap().subgroup.contains(&HeisenbergElement::identity()));
        }
    }

    #[test]
    fn structure_matches_bfs_on_boxes() {
        for n in 1..=4 {
            let h = power_subgroup(n).unwrap().subgroup;
            for radius in [3, 5] {
                assert_eq!(cross_check(&h, n, radius).unwrap(), (2 * radius as u64 + 1).pow(3));
            }
        }
    }

    #[test]
    fn contains_every_small_power() {
        for n in 1..=4u64 {
            let h = power_subgroup(n).unwrap().subgroup;
            for g in ball(&Heisenberg, &Heisenberg::generators(), 4) {
                assert!(h.contains(&Heisenberg.power(&g, &BigInt::from(n))), "{g}^{n}");
            }
        }
    }

    #[test]
    fn closed_under_product_and_inverse() {
        let g = Heisenberg;
        for n in 2..=4 {
            let h = power_subgroup(n).unwrap().subgroup;
            let m = h.box_members(4);
            for a in m.iter().step_by(3) {
                assert!(h.contains(&g.inverse(a)));
                for b in m.iter().step_by(7) {
                    assert!(h.contains(&g.op(a, b)));
                }
            }
        }
    }

    #[test]
    fn index_divides_multiples() {
        for n in 1..=3u64 {
            for k in 1..=3u64 {
                let a = power_subgroup(n).unwrap().index;
                let b = power_subgroup(n * k).unwrap().index;
                assert!((b % a).is_zero(), "{n} {k}");
            }
        }
    }

    #[test]
    fn generated_by_rejects_infinite_index() {
        assert!(HeisSubgroup::generated_by(&[e(1, 0, 0)]).is_err());
        assert!(HeisSubgroup::generated_by(&[]).is_err());
        let h = HeisSubgroup::generated_by(&[e(1, 0, 0), e(0, 1, 0)]).unwrap();
        assert_eq!(h, HeisSubgroup::whole());
        // (2,0,0), (0,3,0) generate commutator 6
        let h = HeisSubgroup::generated_by(&[e(2, 0, 0), e(0, 3, 0)]).unwrap();
        assert_eq!((h.center, h.index()), (6, BigInt::from(36)));
    }

    #[test]
    fn corrections_agree_with_membership() {
        let h = HeisSubgroup::generated_by(&[e(2, 1, 1), e(0, 3, 2), e(0, 0, 4)]).unwrap();
        for ((a, b), r) in h.corrections() {
            let [[h11, h12], [_, h22]] = h.hnf;
            let x = a * h11;
            let y = a * h12 + b * h22;
            assert!(h.contains(&e(x, y, r)));
            assert!(h.center == 1 || !h.contains(&e(x, y, r + 1)));
        }
    }

    #[test]
    fn generation_profile_examples() {
        let (p, per) = steps_with_cap(2, 3, 12).unwrap();
        assert!(p.unresolved.is_empty());
        assert_eq!(per[&(0, 0, 0)], 0);
        assert_eq!(per[&(2, 0, 0)], 1);
        assert!(per[&(0, 0, 1)] >= 2);
        assert_eq!(p.layers.iter().sum::<usize>(), power_subgroup(2).unwrap().subgroup.box_members(3).len());
        assert_eq!(p.max_steps, Some(p.layers.len() - 1));
        assert!(p.to_csv().starts_with("factors,count\n0,1\n"));
        assert!(steps_to_generate(5, 2).is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(malcev_root(&e(4, 0, 0), 2), Some(e(2, 0, 0)));
        assert_eq!(malcev_root(&e(0, 0, 2), 2), Some(e(0, 0, 1)));
        assert_eq!(malcev_root(&e(1, 0, 0), 2), None);
        assert_eq!(malcev_root(&e(2, 2, 0), 2), None);
    }

    #[test]
    fn containment_holds_and_strict_reading_fails() {
        for n in [2, 3] {
            let r = malcev_containment(n, 5).unwrap();
            assert!(r.exceptions.is_empty(), "{:?}", r.exceptions);
            assert!(r.checked > 0);
        }
        let h4 = power_subgroup(4).unwrap().subgroup;
        let x = e(4, 0, 0);
        assert!(h4.contains(&x));
        let root = malcev_root(&x, 2).unwrap();
        assert_eq!(root, e(2, 0, 0));
        assert!(!h4.contains(&root));
        assert!(malcev_containment(2, 5).unwrap().root_outside.is_some());
    }

    #[test]
    fn abelian_indices() {
        assert_eq!(abelian_power_index(&AbelianGroup::free(2), 3), BigInt::from(9));
        let g = AbelianGroup::new(1, vec![BigInt::from(6)]).unwrap();
        assert_eq!(abelian_power_index(&g, 4), BigInt::from(8));
        assert_eq!(abelian_power_index(&AbelianGroup::torsion(&[5]), 5), BigInt::from(5));
    }

    proptest! {
        #[test]
        fn abelian_index_matches_count(rank in 0usize..3, moduli in proptest::collection::vec(1u64..30, 0..4), n in 1u64..12) {
            let g = AbelianGroup::new(rank, moduli.iter().map(|&c| BigInt::from(c)).collect()).unwrap();
            prop_assert_eq!(abelian_power_index(&g, n), abelian_power_index_by_count(rank, &moduli, n));
        }

        #[test]
        fn root_inverts_power(x in -30i64..30, y in -30i64..30, z in -30i64..30, n in 1u64..7) {
            let g = e(x, y, z);
            let p = Heisenberg.power(&g, &BigInt::from(n));
            prop_assert_eq!(malcev_root(&p, n), Some(g));
        }
    }
}
