//! Exact element arithmetic for the concrete groups the rest of the crate
//! computes in: finite groups given by a multiplication table, the integers,
//! finitely generated abelian groups and the integer Heisenberg group.

mod abelian;
mod finite;
mod heisenberg;
mod hom;

pub use abelian::{AbelianGroup, FGAbelianElement, Integers};
pub use finite::FiniteGroup;
pub use heisenberg::{Heisenberg, HeisenbergElement};
pub use hom::{hom_apply, hom_preimage, GroupHom};

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("operands belong to different groups ({0} vs {1})")]
    MixedGroups(String, String),
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("homomorphism is not well defined: generator {generator} has order {order} but {order}*image != 0")]
    IllDefinedHom { generator: usize, order: BigInt },
    #[error("invalid group description: {0}")]
    Invalid(String),
}

/// A group with a canonical total order on its elements.
///
/// The order is used to make every enumeration and search in the crate
/// reproducible.
pub trait Group {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    /// `a^k` by square-and-multiply; negative exponents go through the inverse.
    fn power(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem {
        let mut base = if k.is_negative() {
            self.inverse(a)
        } else {
            a.clone()
        };
        let mut e = k.abs();
        let mut acc = self.identity();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = self.op(&acc, &base);
            }
            base = self.op(&base, &base);
            e /= &two;
        }
        acc
    }

    /// `a^{-1} b^{-1} a b`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ai = self.inverse(a);
        let bi = self.inverse(b);
        self.op(&self.op(&ai, &bi), &self.op(a, b))
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

/// All products of at most `radius` factors drawn from the generators, their
/// inverses and the identity, in the canonical element order.
pub fn ball<G: Group>(group: &G, generators: &[G::Elem], radius: usize) -> Vec<G::Elem> {
    let mut steps: Vec<G::Elem> = Vec::new();
    for g in generators {
        steps.push(g.clone());
        steps.push(group.inverse(g));
    }
    steps.sort();
    steps.dedup();
    let mut seen: BTreeSet<G::Elem> = BTreeSet::new();
    seen.insert(group.identity());
    let mut frontier = vec![group.identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &steps {
                let y = group.op(x, s);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// A tagged element of any of the supported groups. Used at the dynamic
/// boundary (CLI, reports) where operands arrive untyped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupElement {
    Integer(BigInt),
    Heisenberg(HeisenbergElement),
    Abelian(FGAbelianElement),
    Finite(Arc<FiniteGroup>, usize),
}

impl GroupElement {
    fn family(&self) -> String {
        match self {
            GroupElement::Integer(_) => "Z".into(),
            GroupElement::Heisenberg(_) => "H3(Z)".into(),
            GroupElement::Abelian(a) => a.signature(),
            GroupElement::Finite(g, _) => g.name().to_string(),
        }
    }

    fn same_group(&self, other: &Self) -> Result<(), GroupError> {
        let ok = match (self, other) {
            (GroupElement::Integer(_), GroupElement::Integer(_)) => true,
            (GroupElement::Heisenberg(_), GroupElement::Heisenberg(_)) => true,
            (GroupElement::Abelian(a), GroupElement::Abelian(b)) => a.same_group(b),
            (GroupElement::Finite(g, _), GroupElement::Finite(h, _)) => Arc::ptr_eq(g, h) || g == h,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GroupError::MixedGroups(self.family(), other.family()))
        }
    }

    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Integer(_) => GroupElement::Integer(BigInt::zero()),
            GroupElement::Heisenberg(_) => GroupElement::Heisenberg(HeisenbergElement::identity()),
            GroupElement::Abelian(a) => GroupElement::Abelian(a.zero_like()),
            GroupElement::Finite(g, _) => GroupElement::Finite(g.clone(), g.identity_id()),
        }
    }
}

pub fn multiply(a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
    a.same_group(b)?;
    Ok(match (a, b) {
        (GroupElement::Integer(x), GroupElement::Integer(y)) => GroupElement::Integer(x + y),
        (GroupElement::Heisenberg(x), GroupElement::Heisenberg(y)) => {
            GroupElement::Heisenberg(Heisenberg.op(x, y))
        }
        (GroupElement::Abelian(x), GroupElement::Abelian(y)) => GroupElement::Abelian(x.add(y)),
        (GroupElement::Finite(g, x), GroupElement::Finite(_, y)) => {
            GroupElement::Finite(g.clone(), g.op(x, y))
        }
        _ => unreachable!("same_group checked"),
    })
}

pub fn inverse(a: &GroupElement) -> GroupElement {
    match a {
        GroupElement::Integer(x) => GroupElement::Integer(-x),
        GroupElement::Heisenberg(x) => GroupElement::Heisenberg(Heisenberg.inverse(x)),
        GroupElement::Abelian(x) => GroupElement::Abelian(x.neg()),
        GroupElement::Finite(g, x) => GroupElement::Finite(g.clone(), g.inverse(x)),
    }
}

pub fn power(a: &GroupElement, k: &BigInt) -> GroupElement {
    match a {
        GroupElement::Integer(x) => GroupElement::Integer(x * k),
        GroupElement::Heisenberg(x) => GroupElement::Heisenberg(Heisenberg.power(x, k)),
        GroupElement::Abelian(x) => GroupElement::Abelian(x.scale(k)),
        GroupElement::Finite(g, x) => GroupElement::Finite(g.clone(), g.power(x, k)),
    }
}

pub fn commutator(a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
    a.same_group(b)?;
    Ok(match (a, b) {
        (GroupElement::Heisenberg(x), GroupElement::Heisenberg(y)) => {
            GroupElement::Heisenberg(Heisenberg.commutator(x, y))
        }
        (GroupElement::Finite(g, x), GroupElement::Finite(_, y)) => {
            GroupElement::Finite(g.clone(), g.commutator(x, y))
        }
        // abelian families
        _ => a.identity_like(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(x: i64, y: i64, z: i64) -> GroupElement {
        GroupElement::Heisenberg(HeisenbergElement::new(x, y, z))
    }

    #[test]
    fn heisenberg_square_and_inverse() {
        assert_eq!(power(&h(1, 1, 0), &BigInt::from(2)), h(2, 2, 1));
        assert_eq!(inverse(&h(3, 2, 5)), h(-3, -2, 1));
        assert_eq!(multiply(&h(3, 2, 5), &h(-3, -2, 1)).unwrap(), h(0, 0, 0));
    }

    #[test]
    fn zero_power_is_identity() {
        let d6 = Arc::new(FiniteGroup::dihedral(6).unwrap());
        for id in 0..d6.order() {
            let e = GroupElement::Finite(d6.clone(), id);
            assert_eq!(power(&e, &BigInt::zero()), e.identity_like());
        }
        assert_eq!(power(&h(7, -3, 2), &BigInt::zero()), h(0, 0, 0));
        let int = GroupElement::Integer(BigInt::from(9));
        assert_eq!(power(&int, &BigInt::zero()), GroupElement::Integer(BigInt::zero()));
    }

    #[test]
    fn commutators() {
        assert_eq!(commutator(&h(1, 0, 0), &h(0, 1, 0)).unwrap(), h(0, 0, 1));
        assert_eq!(commutator(&h(4, 0, 0), &h(0, 4, 0)).unwrap(), h(0, 0, 16));
        assert_eq!(commutator(&h(5, 3, 1), &h(5, 3, 1)).unwrap(), h(0, 0, 0));
    }

    #[test]
    fn mixed_operands_rejected() {
        let err = multiply(&h(1, 0, 0), &GroupElement::Integer(BigInt::one())).unwrap_err();
        assert!(matches!(err, GroupError::MixedGroups(_, _)));
        let z6 = Arc::new(FiniteGroup::cyclic(6).unwrap());
        let z5 = Arc::new(FiniteGroup::cyclic(5).unwrap());
        let a = GroupElement::Finite(z6, 1);
        let b = GroupElement::Finite(z5, 1);
        assert!(multiply(&a, &b).is_err());
        assert!(commutator(&a, &b).is_err());
        let p = GroupElement::Abelian(FGAbelianElement::new(vec![1], vec![1], vec![6]).unwrap());
        let q = GroupElement::Abelian(FGAbelianElement::new(vec![1], vec![1], vec![4]).unwrap());
        assert!(multiply(&p, &q).is_err());
    }

    #[test]
    fn ball_radius_zero_and_integers() {
        let gens = vec![HeisenbergElement::new(1, 0, 0), HeisenbergElement::new(0, 1, 0)];
        assert_eq!(ball(&Heisenberg, &gens, 0), vec![HeisenbergElement::identity()]);
        let b = ball(&Integers, &[BigInt::one()], 3);
        let expect: Vec<BigInt> = (-3..=3).map(BigInt::from).collect();
        assert_eq!(b, expect);
        assert_eq!(ball(&Integers, &[], 5), vec![BigInt::zero()]);
    }

    #[test]
    fn ball_radius_two_heisenberg() {
        let gens = vec![HeisenbergElement::new(1, 0, 0), HeisenbergElement::new(0, 1, 0)];
        let b = ball(&Heisenberg, &gens, 2);
        // (0,1,0)(1,0,0) = (1,1,0) and (1,0,0)(0,1,0) = (1,1,1)
        assert!(b.contains(&HeisenbergElement::new(1, 1, 0)));
        assert!(b.contains(&HeisenbergElement::new(1, 1, 1)));
        let mut sorted = b.clone();
        sorted.sort();
        assert_eq!(b, sorted);
    }
}
