use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Group;
use crate::arith::choose2;

/// The unitriangular matrix [[1, x, z], [0, 1, y], [0, 0, 1]].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeisenbergElement {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl HeisenbergElement {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        HeisenbergElement { x: x.into(), y: y.into(), z: z.into() }
    }

    pub fn from_big(x: BigInt, y: BigInt, z: BigInt) -> Self {
        HeisenbergElement { x, y, z }
    }

    pub fn identity() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn is_central(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn matrix(&self) -> [[BigInt; 3]; 3] {
        let (o, l) = (BigInt::zero(), BigInt::from(1));
        [
            [l.clone(), self.x.clone(), self.z.clone()],
            [o.clone(), l.clone(), self.y.clone()],
            [o.clone(), o, l],
        ]
    }

    /// Sup-norm of the coordinates.
    pub fn box_radius(&self) -> BigInt {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl serde::Serialize for HeisenbergElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The integer Heisenberg group with law
/// (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Heisenberg;

impl Heisenberg {
    pub fn generators() -> Vec<HeisenbergElement> {
        vec![HeisenbergElement::new(1, 0, 0), HeisenbergElement::new(0, 1, 0)]
    }
}

impl Group for Heisenberg {
    type Elem = HeisenbergElement;

    fn identity(&self) -> HeisenbergElement {
        HeisenbergElement::identity()
    }

    fn op(&self, a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement {
            x: &a.x + &b.x,
            y: &a.y + &b.y,
            z: &a.z + &b.z + &a.x * &b.y,
        }
    }

    fn inverse(&self, a: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement { x: -&a.x, y: -&a.y, z: &a.x * &a.y - &a.z }
    }

    /// Closed form (x,y,z)^n = (nx, ny, nz + C(n,2)xy); the binomial term is
    /// valid for negative n as well.
    fn power(&self, a: &HeisenbergElement, k: &BigInt) -> HeisenbergElement {
        HeisenbergElement {
            x: k * &a.x,
            y: k * &a.y,
            z: k * &a.z + choose2(k) * &a.x * &a.y,
        }
    }

    fn commutator(&self, a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement {
            x: BigInt::zero(),
            y: BigInt::zero(),
            z: &a.x * &b.y - &b.x * &a.y,
        }
    }
}
