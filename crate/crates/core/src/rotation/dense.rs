//! Homomorphisms with dense image into `R/Z`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{CircleHom, RotationError};
use crate::groups::{AbelianGroup, FGAbelianElement};

/// How a torsion sequence continues past the listed moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionTail {
    /// Exactly the listed summands.
    Finite,
    /// The listed moduli repeat forever: bounded exponent.
    Repeating,
    /// Continue with `c_i = i·∏_{j<i} c_j + 1`, the least value allowed.
    Growth,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DenseSpec {
    /// A finitely generated abelian group with free rank at least one.
    FreeRank(AbelianGroup),
    /// `⊕ Z/c_i` subject to `c_i > i·∏_{j<i} c_j`.
    TorsionSum { moduli: Vec<u64>, tail: TorsionTail },
}

/// Growth-condition check; returns the first offending index.
pub fn check_growth(moduli: &[u64]) -> Result<(), RotationError> {
    let mut prod = BigInt::one();
    for (i, &c) in moduli.iter().enumerate() {
        if c < 2 {
            return Err(RotationError::Growth { index: i, value: c, bound: "2".into() });
        }
        let bound = BigInt::from(i) * &prod;
        if BigInt::from(c) <= bound {
            return Err(RotationError::Growth { index: i, value: c, bound: bound.to_string() });
        }
        prod *= c;
    }
    Ok(())
}

/// Extends a sequence satisfying the growth condition to length `len`.
pub fn extend_growth(moduli: &[u64], len: usize) -> Result<Vec<u64>, RotationError> {
    let mut out = moduli.to_vec();
    while out.len() < len {
        let i = out.len() as u64;
        let prod = out.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c));
        let next = prod
            .and_then(|p| p.checked_mul(i))
            .and_then(|p| p.checked_add(1))
            .ok_or_else(|| RotationError::Invalid("growth sequence leaves the machine range".into()))?;
        out.push(next);
    }
    Ok(out)
}

/// A dense homomorphism for the given group description.
///
/// Free rank: project onto the first free coordinate and multiply by √2.
/// Torsion sum: `g(e_i) = 1/c_i`, which is what the well-ordering recursion
/// produces when `⟨e_0, ..., e_{i-1}⟩ ∩ ⟨e_i⟩ = 0`.
pub fn build_dense_hom(spec: &DenseSpec) -> Result<CircleHom, RotationError> {
    match spec {
        DenseSpec::FreeRank(g) => {
            if g.rank() == 0 {
                return Err(RotationError::Invalid("free rank 0: use a torsion spec".into()));
            }
            let coeffs = (0..g.num_generators())
                .map(|i| if i == 0 { BigRational::one() } else { BigRational::zero() })
                .collect();
            CircleHom::scaled_rational(2, g.clone(), coeffs)
        }
        DenseSpec::TorsionSum { moduli, tail } => {
            if *tail == TorsionTail::Repeating {
                let exponent = moduli.iter().fold(1u64, |a, &c| num_integer::lcm(a, c));
                return Err(RotationError::BoundedExponent(exponent));
            }
            check_growth(moduli)?;
            let dom = AbelianGroup::torsion(moduli);
            let images = moduli.iter().map(|&c| BigRational::new(BigInt::one(), BigInt::from(c))).collect();
            CircleHom::rational_images(dom, images)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DensityWitness {
    /// Coordinates of `x` and the exact value `g(x)`.
    Found { coords: Vec<String>, value: String },
    Unresolved { searched: u64 },
}

/// Some `x` with `0 < |g(x)| < ε` among elements of max-norm at most `bound`,
/// scanning norms in increasing order.
pub fn density_witness(h: &CircleHom, eps: &BigRational, bound: u64) -> Result<DensityWitness, RotationError> {
    if *eps <= BigRational::zero() {
        return Err(RotationError::Precondition("epsilon must be positive".into()));
    }
    let dom = h.domain();
    // torsion generators first: 1/c_i < ε settles the torsion construction
    if let CircleHom::RationalImages { .. } = h {
        for i in 0..dom.num_generators() {
            let e = dom.generator(i);
            let v = h.value(&e)?;
            if !v.is_zero() && v.abs_lt(eps) {
                return Ok(found(&e, &v));
            }
        }
    }
    let k = dom.num_generators();
    let mut searched = 0u64;
    for r in 1..=bound as i64 {
        // vectors of max-norm exactly r, coordinates running from r down to -r
        let mut coords = vec![r; k];
        loop {
            if coords.iter().any(|c| c.abs() == r) {
                searched += 1;
                let x = element(&dom, &coords);
                let v = h.value(&x)?;
                if !v.is_zero() && v.abs_lt(eps) {
                    return Ok(found(&x, &v));
                }
            }
            match (0..k).rev().find(|&i| coords[i] > -r) {
                Some(i) => {
                    coords[i] -= 1;
                    for c in coords.iter_mut().skip(i + 1) {
                        *c = r;
                    }
                }
                None => break,
            }
        }
    }
    Ok(DensityWitness::Unresolved { searched })
}

fn element(dom: &AbelianGroup, coords: &[i64]) -> FGAbelianElement {
    let (f, t) = coords.split_at(dom.rank());
    dom.element(f.iter().map(|&c| BigInt::from(c)).collect(), t.iter().map(|&c| BigInt::from(c)).collect())
        .expect("coordinates match the domain")
}

fn found(x: &FGAbelianElement, v: &super::CircleValue) -> DensityWitness {
    DensityWitness::Found { coords: x.coordinates().iter().map(|c| c.to_string()).collect(), value: v.to_string() }
}

/// For a growth-condition torsion sequence, the first index `i` with
/// `1/c_i < ε`, extending the sequence by [`extend_growth`] if needed.
pub fn torsion_density_index(moduli: &[u64], eps: &BigRational, max_len: usize) -> Result<(Vec<u64>, usize), RotationError> {
    check_growth(moduli)?;
    let mut seq = moduli.to_vec();
    loop {
        if let Some(i) = seq.iter().position(|&c| BigRational::new(BigInt::one(), BigInt::from(c)) < *eps) {
            return Ok((seq, i));
        }
        if seq.len() >= max_len {
            return Err(RotationError::Unresolved(format!("no 1/c_i below epsilon within {max_len} terms")));
        }
        seq = extend_growth(&seq, seq.len() + 1)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::check_hom_law;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn spec() -> DenseSpec {
        DenseSpec::TorsionSum { moduli: vec![2, 3, 13, 235], tail: TorsionTail::Finite }
    }

    #[test]
    fn torsion_images() {
        let h = build_dense_hom(&spec()).unwrap();
        let dom = h.domain();
        assert_eq!(h.value(&dom.generator(2)).unwrap().as_rational(), Some(q(1, 13)));
        let x = dom.generator(0).add(&dom.generator(1));
        // 1/2 + 1/3 = 5/6 ≡ -1/6
        assert_eq!(h.value(&x).unwrap().as_rational(), Some(q(-1, 6)));
    }

    #[test]
    fn growth_violation() {
        let err = build_dense_hom(&DenseSpec::TorsionSum { moduli: vec![2, 3, 4], tail: TorsionTail::Finite })
            .unwrap_err();
        assert!(matches!(err, RotationError::Growth { index: 2, value: 4, .. }), "{err:?}");
        assert!(matches!(
            build_dense_hom(&DenseSpec::TorsionSum { moduli: vec![2, 3], tail: TorsionTail::Repeating }),
            Err(RotationError::BoundedExponent(6))
        ));
    }

    #[test]
    fn growth_extension() {
        assert_eq!(extend_growth(&[2, 3, 13, 235], 5).unwrap()[4], 4 * 2 * 3 * 13 * 235 + 1);
        let (seq, i) = torsion_density_index(&[2, 3, 13, 235], &q(1, 50000), 10).unwrap();
        assert_eq!(i, 4);
        assert_eq!(seq.len(), 5);
    }

    #[test]
    fn density_witnesses() {
        let h = build_dense_hom(&spec()).unwrap();
        match density_witness(&h, &q(1, 10), 3).unwrap() {
            DensityWitness::Found { coords, value } => {
                assert_eq!(coords, vec!["0", "0", "1", "0"]);
                assert_eq!(value, "1/13");
            }
            other => panic!("{other:?}"),
        }
        let s = CircleHom::surd(2).unwrap();
        match density_witness(&s, &q(1, 10), 100).unwrap() {
            DensityWitness::Found { coords, .. } => assert_eq!(coords, vec!["5"]),
            other => panic!("{other:?}"),
        }
        match density_witness(&s, &q(1, 2), 100).unwrap() {
            DensityWitness::Found { coords, .. } => assert_eq!(coords, vec!["1"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_rank_hom() {
        let g = AbelianGroup::new(2, vec![BigInt::from(6)]).unwrap();
        let h = build_dense_hom(&DenseSpec::FreeRank(g.clone())).unwrap();
        let x = g.element(vec![3.into(), 7.into()], vec![5.into()]).unwrap();
        assert_eq!(h.value(&x).unwrap(), h.value(&g.generator(0).scale(&BigInt::from(3))).unwrap());
        assert!(build_dense_hom(&DenseSpec::FreeRank(AbelianGroup::torsion(&[3]))).is_err());
    }

    #[test]
    fn hom_law_on_random_pairs() {
        let h = build_dense_hom(&spec()).unwrap();
        let dom = h.domain();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pairs: Vec<_> = (0..2000)
            .map(|_| {
                let mut pick = || {
                    let t: Vec<BigInt> = [2i64, 3, 13, 235].iter().map(|&c| BigInt::from(rng.gen_range(0..c))).collect();
                    dom.element(vec![], t).unwrap()
                };
                (pick(), pick())
            })
            .collect();
        assert_eq!(check_hom_law(&h, &pairs).unwrap(), None);
    }
}
