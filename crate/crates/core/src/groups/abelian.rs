use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Group, GroupError};
use crate::arith::rem_euclid_big;

/// The additive group of integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Group for Integers {
    type Elem = BigInt;

    fn identity(&self) -> BigInt {
        BigInt::zero()
    }

    fn op(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn inverse(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn power(&self, a: &BigInt, k: &BigInt) -> BigInt {
        a * k
    }
}

/// Z^rank ⊕ Z/c_1 ⊕ ... ⊕ Z/c_k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    moduli: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, moduli: Vec<BigInt>) -> Result<Self, GroupError> {
        if let Some(bad) = moduli.iter().find(|c| !c.is_positive()) {
            return Err(GroupError::Invalid(format!("torsion modulus {bad} must be positive")));
        }
        Ok(AbelianGroup { rank, moduli })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, moduli: Vec::new() }
    }

    pub fn torsion(moduli: &[u64]) -> Self {
        AbelianGroup { rank: 0, moduli: moduli.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// Number of generators: free ones first, then torsion ones.
    pub fn num_generators(&self) -> usize {
        self.rank + self.moduli.len()
    }

    pub fn zero(&self) -> FGAbelianElement {
        FGAbelianElement {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigInt::zero(); self.moduli.len()],
            moduli: self.moduli.clone(),
        }
    }

    /// The i-th standard generator.
    pub fn generator(&self, i: usize) -> FGAbelianElement {
        let mut e = self.zero();
        if i < self.rank {
            e.free[i] = BigInt::one();
        } else {
            let j = i - self.rank;
            e.torsion[j] = rem_euclid_big(&BigInt::one(), &self.moduli[j]);
        }
        e
    }

    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<FGAbelianElement, GroupError> {
        if free.len() != self.rank || torsion.len() != self.moduli.len() {
            return Err(GroupError::NotInGroup(format!("{free:?}/{torsion:?}")));
        }
        let torsion = torsion.iter().zip(&self.moduli).map(|(t, c)| rem_euclid_big(t, c)).collect();
        Ok(FGAbelianElement { free, torsion, moduli: self.moduli.clone() })
    }

    pub fn contains(&self, e: &FGAbelianElement) -> bool {
        e.free.len() == self.rank && e.moduli == self.moduli
    }

    /// Exponent of the torsion part (lcm of the moduli); `None` when the
    /// group has free rank.
    pub fn exponent(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.moduli.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c)))
    }

    pub fn signature(&self) -> String {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.moduli.iter().map(|c| format!("Z/{c}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// Element of Z^r ⊕ ⊕Z/c_i; torsion coordinate i is kept in [0, c_i).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FGAbelianElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
    moduli: Vec<BigInt>,
}

impl FGAbelianElement {
    pub fn new(free: Vec<i64>, torsion: Vec<i64>, moduli: Vec<i64>) -> Result<Self, GroupError> {
        let group = AbelianGroup::new(free.len(), moduli.into_iter().map(BigInt::from).collect())?;
        group.element(
            free.into_iter().map(BigInt::from).collect(),
            torsion.into_iter().map(BigInt::from).collect(),
        )
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup { rank: self.free.len(), moduli: self.moduli.clone() }
    }

    pub fn signature(&self) -> String {
        self.group().signature()
    }

    pub fn same_group(&self, other: &Self) -> bool {
        self.free.len() == other.free.len() && self.moduli == other.moduli
    }

    pub fn zero_like(&self) -> Self {
        self.group().zero()
    }

    /// Coordinates in generator order (free first).
    pub fn coordinates(&self) -> Vec<BigInt> {
        self.free.iter().chain(self.torsion.iter()).cloned().collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.same_group(other));
        FGAbelianElement {
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .zip(&self.moduli)
                .map(|((a, b), c)| rem_euclid_big(&(a + b), c))
                .collect(),
            moduli: self.moduli.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        FGAbelianElement {
            free: self.free.iter().map(|a| a * k).collect(),
            torsion: self.torsion.iter().zip(&self.moduli).map(|(a, c)| rem_euclid_big(&(a * k), c)).collect(),
            moduli: self.moduli.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(self.torsion.iter()).all(|v| v.is_zero())
    }
}

impl fmt::Display for FGAbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coordinates().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", coords.join(","))
    }
}

impl Group for AbelianGroup {
    type Elem = FGAbelianElement;

    fn identity(&self) -> FGAbelianElement {
        self.zero()
    }

    fn op(&self, a: &FGAbelianElement, b: &FGAbelianElement) -> FGAbelianElement {
        a.add(b)
    }

    fn inverse(&self, a: &FGAbelianElement) -> FGAbelianElement {
        a.neg()
    }

    fn power(&self, a: &FGAbelianElement, k: &BigInt) -> FGAbelianElement {
        a.scale(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_coordinates_stay_reduced() {
        let g = AbelianGroup::new(1, vec![BigInt::from(6), BigInt::from(4)]).unwrap();
        let a = g.element(vec![3.into()], vec![5.into(), 3.into()]).unwrap();
        let b = g.element(vec![(-1).into()], vec![4.into(), (-1).into()]).unwrap();
        let s = g.op(&a, &b);
        assert_eq!(s.free, vec![BigInt::from(2)]);
        assert_eq!(s.torsion, vec![BigInt::from(3), BigInt::from(2)]);
        assert_eq!(g.inverse(&a).torsion, vec![BigInt::from(1), BigInt::from(1)]);
        assert!(g.op(&a, &g.inverse(&a)).is_zero());
    }

    #[test]
    fn rejects_nonpositive_modulus() {
        assert!(AbelianGroup::new(0, vec![BigInt::zero()]).is_err());
    }

    #[test]
    fn exponent_only_for_torsion() {
        assert_eq!(AbelianGroup::torsion(&[4, 6]).exponent(), Some(BigInt::from(12)));
        assert_eq!(AbelianGroup::free(1).exponent(), None);
    }
}
