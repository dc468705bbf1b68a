//! Bohr sets `X(t) = g^{-1}(-t, t)` for homomorphisms `g` into `R/Z`:
//! exact membership, the identity checks, subgroup-freeness witnesses,
//! thickness reports and dense homomorphisms on torsion groups.

mod dense;
mod hom;
mod identities;
mod interval;
pub mod surd;

pub use dense::{
    build_dense_hom, check_growth, density_witness, extend_growth, torsion_density_index, DenseSpec, DensityWitness,
    TorsionTail,
};
pub use hom::{check_hom_law, squares_criterion, BohrSet, CircleHom};
pub use identities::{verify_bohr_identity, IdentityKind, IdentityReport};
pub use interval::{MultiSurdHom, Tri};
pub use surd::CircleValue;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::thickset::{min_thickness_z, IndependentWitness, SearchLimits, ThicksetError, Thickness, Undecided};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("sqrt({0}) is rational")]
    SquareRadicand(u64),
    #[error("invalid homomorphism: {0}")]
    Invalid(String),
    #[error("not a homomorphism: generator {generator} has an image of the wrong order")]
    IllDefined { generator: usize },
    #[error("element {0} is not in the domain")]
    NotInDomain(String),
    #[error("radius {0} is not in (0, 1/2]")]
    RadiusOutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("growth condition fails at index {index}: {value} <= {bound}")]
    Growth { index: usize, value: u64, bound: String },
    #[error("torsion of bounded exponent {0} has no dense homomorphism into R/Z")]
    BoundedExponent(u64),
    #[error("membership undecided at {0} bits of precision")]
    PrecisionExhausted(u32),
    #[error("unresolved: {0}")]
    Unresolved(String),
    #[error(transparent)]
    Thickset(#[from] ThicksetError),
}

impl From<Undecided> for RotationError {
    fn from(u: Undecided) -> Self {
        RotationError::Thickset(ThicksetError::Undecided(u))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessEntry {
    /// `k·m ∉ X(t)`, so `mZ ⊄ X(t)`.
    Witness { m: u64, k: u64 },
    /// `g(m) = 0`.
    Kernel { m: u64 },
    Unresolved { m: u64, searched: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTable {
    pub t: String,
    pub hom: String,
    pub entries: Vec<WitnessEntry>,
}

impl WitnessTable {
    pub fn is_complete(&self) -> bool {
        !self.entries.iter().any(|e| matches!(e, WitnessEntry::Unresolved { .. }))
    }
}

/// For each `1 <= m <= max_m` outside the kernel, the least `k <= max_k` with
/// `k·m ∉ X(t)`.
pub fn max_subgroup_witnesses(x: &BohrSet, max_m: u64, max_k: u64) -> Result<WitnessTable, RotationError> {
    let mut entries = Vec::new();
    for m in 1..=max_m {
        if x.hom().value_int(&BigInt::from(m))?.is_zero() {
            entries.push(WitnessEntry::Kernel { m });
            continue;
        }
        let mut found = None;
        for k in 1..=max_k {
            let km = (k as i64).checked_mul(m as i64).ok_or_else(|| RotationError::Invalid("k*m overflow".into()))?;
            if !x.member_int(km)? {
                found = Some(k);
                break;
            }
        }
        entries.push(match found {
            Some(k) => WitnessEntry::Witness { m, k },
            None => WitnessEntry::Unresolved { m, searched: max_k },
        });
    }
    Ok(WitnessTable { t: surd::format_rational(x.t()), hom: x.hom().describe(), entries })
}

/// Re-checks every witness entry.
pub fn verify_witness_table(x: &BohrSet, table: &WitnessTable) -> Result<bool, RotationError> {
    for e in &table.entries {
        match e {
            WitnessEntry::Witness { m, k } => {
                if x.member_int((*m * *k) as i64)? {
                    return Ok(false);
                }
            }
            WitnessEntry::Kernel { m } => {
                if !x.hom().value_int(&BigInt::from(*m))?.is_zero() {
                    return Ok(false);
                }
            }
            WitnessEntry::Unresolved { .. } => {}
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BohrThickness {
    pub t: BigRational,
    /// `⌊1/t⌋ + 1`: any that many circle points have two closer than `t`.
    pub analytic: u64,
    /// `⌊1/(2t)⌋ + 1`, the constant as usually quoted.
    pub quoted_constant: u64,
    /// `⌈1/t⌉`: for an irrational rotation no `⌈1/t⌉` points can be pairwise
    /// at distance `>= t`, since equality would need rational spacing.
    pub irrational_bound: u64,
    /// `⌊1/t⌋` circle points spaced `1/⌊1/t⌋ >= t` apart.
    pub tight_configuration: Vec<String>,
    pub empirical: Thickness<i64>,
    /// An independent set with `quoted_constant` points, when one exists.
    pub quoted_refutation: Option<IndependentWitness<i64>>,
}

/// Analytic bound, quoted constant and window minimum of the thickness of
/// `X(t)` on `[lo, hi]`.
pub fn thickness_of_bohr(x: &BohrSet, lo: i64, hi: i64, limits: SearchLimits) -> Result<BohrThickness, RotationError> {
    let t = x.t().clone();
    let inv = t.recip();
    let fl = inv.floor().to_integer().to_u64().expect("t > 0");
    let ce = inv.ceil().to_integer().to_u64().expect("t > 0");
    let half_inv = (inv.clone() / BigRational::from_integer(BigInt::from(2))).floor().to_integer().to_u64().unwrap();
    let tight_configuration = (0..fl).map(|j| format!("{}/{}", BigRational::new(j.into(), fl.into()).numer(), BigRational::new(j.into(), fl.into()).denom())).collect();
    let empirical = min_thickness_z(|d| x.member_int(d).map_err(|e| Undecided(e.to_string())), lo, hi, limits)?;
    let quoted = half_inv + 1;
    let quoted_refutation = (empirical.witness.points.len() as u64 >= quoted).then(|| IndependentWitness {
        points: empirical.witness.points[..quoted as usize].to_vec(),
        checked_pairs: quoted * (quoted - 1) / 2,
    });
    Ok(BohrThickness {
        analytic: fl + 1,
        quoted_constant: quoted,
        irrational_bound: ce,
        tight_configuration,
        empirical,
        quoted_refutation,
        t,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BohrSweepRow {
    pub n: i64,
    pub value: String,
    pub distance: String,
    pub member: bool,
    pub approx_distance: f64,
}

/// One row per `n` in `[lo, hi]`.
pub fn bohr_sweep(x: &BohrSet, lo: i64, hi: i64) -> Result<Vec<BohrSweepRow>, RotationError> {
    let mut rows = Vec::new();
    for n in lo..=hi {
        let v = x.hom().value_int(&BigInt::from(n))?;
        rows.push(BohrSweepRow {
            n,
            value: v.to_string(),
            distance: v.abs_string(),
            member: x.member_int(n)?,
            approx_distance: v.to_f64().abs(),
        });
    }
    Ok(rows)
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_table_for_third() {
        let x = BohrSet::surd(2, rational(1, 3)).unwrap();
        let t = max_subgroup_witnesses(&x, 100, 100_000).unwrap();
        assert_eq!(t.entries[0], WitnessEntry::Witness { m: 1, k: 1 });
        assert!(t.is_complete());
        assert!(verify_witness_table(&x, &t).unwrap());
    }

    #[test]
    fn kernel_entries_for_rational_images() {
        let h = CircleHom::rational_images(crate::groups::AbelianGroup::free(1), vec![rational(1, 4)]).unwrap();
        let x = BohrSet::new(h, rational(1, 5)).unwrap();
        let t = max_subgroup_witnesses(&x, 8, 10).unwrap();
        assert_eq!(t.entries[3], WitnessEntry::Kernel { m: 4 });
        assert_eq!(t.entries[0], WitnessEntry::Witness { m: 1, k: 1 });
    }

    #[test]
    fn thickness_reports() {
        let x = BohrSet::surd(2, rational(1, 2)).unwrap();
        let r = thickness_of_bohr(&x, -200, 200, SearchLimits::default()).unwrap();
        assert_eq!(r.analytic, 3);
        assert_eq!(r.tight_configuration, vec!["0/1", "1/2"]);
        // every nonzero n√2 is at distance < 1/2 from Z
        assert_eq!(r.empirical.exact(), Some(2));

        let x = BohrSet::surd(2, rational(1, 6)).unwrap();
        let r = thickness_of_bohr(&x, -300, 300, SearchLimits::default()).unwrap();
        assert_eq!(r.analytic, 7);
        assert_eq!(r.irrational_bound, 6);
        assert_eq!(r.empirical.exact(), Some(6));
    }

    #[test]
    fn sweep_rows() {
        let x = BohrSet::surd(2, rational(1, 3)).unwrap();
        let rows = bohr_sweep(&x, -100, 100).unwrap();
        assert_eq!(rows.len(), 201);
        assert!(bohr_sweep(&x, 1, 0).unwrap().is_empty());
        let r2 = &rows[102];
        assert_eq!(r2.n, 2);
        assert!(r2.member);
        assert_eq!(r2.distance, "(3+-2*sqrt(2))/1");
    }
}
