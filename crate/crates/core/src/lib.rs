//! Exact computations with thick and generic subsets of groups: the
//! thickness calculus, Bohr sets of irrational rotations, Presburger
//! thickness decisions, power subgroups of the Heisenberg group and
//! van der Waerden coverings.

pub mod arith;
pub mod cli;
pub mod groups;
pub mod nilpower;
pub mod presburger;
pub mod rotation;
pub mod thickset;
pub mod vdw;
