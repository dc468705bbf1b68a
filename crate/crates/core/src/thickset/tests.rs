use super::*;
use crate::groups::{FiniteGroup, Integers};

fn ints(lo: i64, hi: i64) -> Vec<BigInt> {
    (lo..=hi).map(BigInt::from).collect()
}

fn multiples(k: i64) -> SymmetricSet<BigInt> {
    SymmetricSet::from_oracle(move |x: &BigInt| Ok(x % k == BigInt::from(0)), Symbolic::Other(format!("{k}Z")))
}

#[test]
fn whole_group_has_independence_one() {
    let r = max_independent_set(&Integers, &SymmetricSet::whole(), &ints(-5, 5), SearchLimits::default()).unwrap();
    assert_eq!(r.size(), 1);
    assert!(r.is_exact());
    let t = min_thickness(&Integers, &SymmetricSet::whole(), &ints(-5, 5), SearchLimits::default()).unwrap();
    assert_eq!(t.exact(), Some(2));
}

#[test]
fn odd_integers_admit_the_even_window_points() {
    let odd = SymmetricSet::from_oracle(|x: &BigInt| Ok(x % 2 != BigInt::from(0)), Symbolic::Other("odd".into()));
    // 0 is not odd, so the repeated-point sequence is already independent
    let r = max_independent_set(&Integers, &odd, &ints(-50, 50), SearchLimits::default()).unwrap();
    assert_eq!(r.maximality, Maximality::CapReached);
    // with the identity added back, evens form the largest independent set
    let odd0 = SymmetricSet::from_oracle(
        |x: &BigInt| Ok(x % 2 != BigInt::from(0) || *x == BigInt::from(0)),
        Symbolic::Other("odd+0".into()),
    );
    let r = max_independent_set(&Integers, &odd0, &ints(-50, 50), SearchLimits::default()).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.size(), 51);
    let r = max_independent_set(&Integers, &odd0, &ints(0, 50), SearchLimits::default()).unwrap();
    assert_eq!(r.size(), 26);
    let evens: Vec<BigInt> = (0..=25).map(|k| BigInt::from(2 * k)).collect();
    assert_eq!(r.witness.points, evens);
    assert!(r.witness.verify(&Integers, &odd0).unwrap());
}

#[test]
fn two_z_is_three_thick() {
    let t = min_thickness(&Integers, &multiples(2), &ints(-100, 100), SearchLimits::default()).unwrap();
    assert_eq!(t.exact(), Some(3));
    let tz = min_thickness_z(|d| Ok(d % 2 == 0), -100, 100, SearchLimits::default()).unwrap();
    assert_eq!(tz.exact(), Some(3));
    assert_eq!(tz.witness.points.len(), 2);
    assert_eq!((tz.witness.points[1] - tz.witness.points[0]) % 2, 1);
}

#[test]
fn window_and_explicit_engines_agree() {
    for k in 1..=9i64 {
        for extra in [0i64, 1, 5] {
            let member = move |d: i64| Ok(d % k == 0 || d.abs() == extra);
            let a = min_thickness_z(member, -40, 40, SearchLimits::default()).unwrap();
            let set = SymmetricSet::from_oracle(
                move |x: &BigInt| Ok(x % k == BigInt::from(0) || x.magnitude() == &BigInt::from(extra).magnitude().clone()),
                Symbolic::Other("t".into()),
            );
            let b = min_thickness(&Integers, &set, &ints(-40, 40), SearchLimits::default()).unwrap();
            assert_eq!(a.exact(), b.exact(), "k={k} extra={extra}");
        }
    }
}

#[test]
fn cap_reports_not_thick_up_to_cap() {
    let zero = SymmetricSet::from_oracle(|x: &BigInt| Ok(*x == BigInt::from(0)), Symbolic::Other("{0}".into()));
    let t = min_thickness(&Integers, &zero, &ints(0, 30), SearchLimits::with_cap(10)).unwrap();
    assert_eq!(t.upper, None);
    assert_eq!(t.witness.points.len(), 10);
}

#[test]
fn genericity_examples_in_z6() {
    let z6 = FiniteGroup::cyclic(6).unwrap();
    let p = SymmetricSet::finite(&z6, &[0, 1, 5]);
    let c = min_genericity(&z6, &p, &z6.elements(), Side::Right, 100_000).unwrap();
    assert_eq!(c.m(), 2);
    assert!(c.exact);
    assert!(c.verify(&z6, &p, &z6.elements()).unwrap());
    assert_eq!(c.translates, vec![0, 3]);

    let whole = SymmetricSet::whole();
    assert_eq!(min_genericity(&z6, &whole, &z6.elements(), Side::Right, 1000).unwrap().m(), 1);

    let z5 = FiniteGroup::cyclic(5).unwrap();
    let zero = SymmetricSet::finite(&z5, &[0]);
    assert_eq!(min_genericity(&z5, &zero, &z5.elements(), Side::Left, 1000).unwrap().m(), 5);

    let empty = SymmetricSet::finite(&z5, &[]);
    assert_eq!(min_genericity(&z5, &empty, &z5.elements(), Side::Right, 1000), Err(ThicksetError::NotGeneric));
}

#[test]
fn window_genericity_of_2z() {
    let c = min_genericity_z(|d| Ok(d % 2 == 0), -20, 20).unwrap();
    assert_eq!(c.m(), 2);
    assert!(c.exact);
}

#[test]
fn lemma23_examples() {
    let z6 = FiniteGroup::cyclic(6).unwrap();
    let whole = SymmetricSet::whole();
    let r = lemma23_subgroup(&whole, 1, &z6).unwrap();
    assert_eq!((r.exponent, r.index), (1, 1));

    let p = SymmetricSet::finite(&z6, &[0, 1, 5]);
    let r = lemma23_subgroup(&p, 2, &z6).unwrap();
    assert_eq!(r.exponent, 4);
    assert_eq!(r.elements, (0..6).collect::<Vec<_>>());
    assert_eq!(r.index, 1);

    let d6 = FiniteGroup::dihedral(6).unwrap();
    let rotations: Vec<usize> = (0..6).collect();
    let p = SymmetricSet::finite(&d6, &rotations);
    let r = lemma23_subgroup(&p, 2, &d6).unwrap();
    assert_eq!(r.elements, rotations);
    assert_eq!(r.index, 2);
}

#[test]
fn lemma23_rejects_bad_inputs() {
    let z6 = FiniteGroup::cyclic(6).unwrap();
    let asym = SymmetricSet::from_oracle(|x: &usize| Ok(*x <= 1), Symbolic::Other("{0,1}".into()));
    assert!(matches!(lemma23_subgroup(&asym, 3, &z6), Err(ThicksetError::Precondition(_))));
    let no_id = SymmetricSet::finite(&z6, &[1]);
    assert!(matches!(lemma23_subgroup(&no_id, 3, &z6), Err(ThicksetError::Precondition(_))));
    let small = SymmetricSet::finite(&z6, &[0]);
    assert!(matches!(lemma23_subgroup(&small, 2, &z6), Err(ThicksetError::Precondition(_))));
}

#[test]
fn intersection_of_2z_and_3z() {
    let r = check_thick_intersection(&Integers, &multiples(2), 3, &multiples(3), 4, &ints(-200, 200), 1_000_000).unwrap();
    assert_eq!(r.bound, 10);
    assert_eq!(r.min_thickness(), Some(7));
    let t = min_thickness_z(|d| Ok(d % 6 == 0), -200, 200, SearchLimits::default()).unwrap();
    assert_eq!(t.exact(), Some(7));
}

#[test]
fn intersection_with_whole() {
    let w = SymmetricSet::<BigInt>::whole();
    let r = check_thick_intersection(&Integers, &w, 2, &w, 2, &ints(-10, 10), 1000).unwrap();
    assert_eq!(r.bound, 2);
    assert_eq!(r.min_thickness(), Some(2));
}

#[test]
fn determinism() {
    let z = FiniteGroup::dihedral(7).unwrap();
    let p = SymmetricSet::finite(&z, &[0, 1, 7]);
    let a = max_independent_set(&z, &p, &z.elements(), SearchLimits::default()).unwrap();
    let b = max_independent_set(&z, &p, &z.elements(), SearchLimits::default()).unwrap();
    assert_eq!(a, b);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
        prop_oneof![
            (2usize..=24).prop_map(|k| FiniteGroup::cyclic(k).unwrap()),
            (3usize..=8).prop_map(|k| FiniteGroup::dihedral(k).unwrap()),
            Just(FiniteGroup::symmetric(3).unwrap()),
        ]
    }

    fn random_symmetric(g: &FiniteGroup, mask: u64) -> SymmetricSet<usize> {
        let mut elems = vec![g.identity_id()];
        elems.extend((0..g.order()).filter(|x| mask >> (x % 64) & 1 == 1));
        SymmetricSet::finite(g, &elems)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn thick_implies_generic(g in group_strategy(), mask in any::<u64>()) {
            let p = random_symmetric(&g, mask);
            let elems = g.elements();
            let t = min_thickness(&g, &p, &elems, SearchLimits::default()).unwrap();
            let n = t.exact().unwrap();
            prop_assert!(n >= 2);
            for side in [Side::Right, Side::Left] {
                let c = min_genericity(&g, &p, &elems, side, 200_000).unwrap();
                prop_assert!(c.m() <= n - 1, "thick {} but {}-generic", n, c.m());
            }
        }

        #[test]
        fn generic_implies_square_thick(g in group_strategy(), mask in any::<u64>()) {
            let p = random_symmetric(&g, mask);
            let elems = g.elements();
            let m = min_genericity(&g, &p, &elems, Side::Right, 200_000).unwrap().m();
            let members = p.members_in(&elems).unwrap();
            let mut sq: Vec<usize> = members.iter()
                .flat_map(|a| members.iter().map(|b| g.op(&g.inverse(a), b)).collect::<Vec<_>>())
                .collect();
            sq.sort();
            sq.dedup();
            let pp = SymmetricSet::finite(&g, &sq);
            let t = min_thickness(&g, &pp, &elems, SearchLimits::default()).unwrap();
            prop_assert!(t.exact().unwrap() <= m + 1);
        }

        #[test]
        fn restriction_to_subgroup_stays_thick(k in 2usize..=30, d in 1usize..=6, mask in any::<u64>()) {
            // H = dZ/k inside Z/k when d divides k
            prop_assume!(k % d == 0);
            let g = FiniteGroup::cyclic(k).unwrap();
            let p = random_symmetric(&g, mask);
            let h: Vec<usize> = (0..k).filter(|x| x % d == 0).collect();
            let t = min_thickness(&g, &p, &h, SearchLimits::default()).unwrap();
            prop_assert!(t.exact().is_some());
            prop_assert!(t.lower <= h.len() + 1);
        }

        #[test]
        fn witness_size_matches_thickness(k in 2usize..=40, mask in any::<u64>()) {
            let g = FiniteGroup::cyclic(k).unwrap();
            let p = random_symmetric(&g, mask);
            let r = max_independent_set(&g, &p, &g.elements(), SearchLimits::default()).unwrap();
            let t = min_thickness(&g, &p, &g.elements(), SearchLimits::default()).unwrap();
            prop_assert_eq!(t.lower, r.size() + 1);
            prop_assert!(r.witness.verify(&g, &p).unwrap());
        }
    }
}
