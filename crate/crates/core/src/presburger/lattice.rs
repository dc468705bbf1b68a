use serde::Serialize;

use super::{PresburgerError, PresburgerSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    /// `bZ ∩ (threshold, ∞)` lies in the set, so `P + P ⊇ bZ`.
    pub b: u64,
    pub threshold: i64,
    /// Multiples of `b` in `[-window, window]` were each written as a sum
    /// of two members.
    pub window: i64,
    pub checked: u64,
}

impl LatticeReport {
    /// Two far members summing to `k·b`.
    pub fn representatives(&self, k: i64) -> (i64, i64) {
        let b = self.b as i64;
        let n = self.threshold / b + 1 + k.abs();
        (k * b + n * b, -n * b)
    }
}

/// The smallest `b` with `bZ ∩ (c, ∞) ⊆ P` for some `c`, verified by
/// writing every multiple of `b` near 0 as a sum of two members.
pub fn lattice_in_double(p: &PresburgerSet) -> Result<LatticeReport, PresburgerError> {
    let s = p.symmetrize();
    let tail = s.tail();
    if !s.contains(0) || !tail.plus_has(0) {
        return Err(PresburgerError::Precondition(format!("{s} is not thick")));
    }
    let q = tail.period;
    let b = (1..=q)
        .filter(|d| q % d == 0)
        .find(|&d| (0..q / d).all(|k| tail.plus[(k * d) as usize]))
        .expect("q itself qualifies");
    let t = s.eventual_data().threshold;
    let window = 10 * b as i64 * (t + 1);
    let mut report = LatticeReport { b, threshold: tail.threshold, window, checked: 0 };
    let kmax = window / b as i64;
    for k in -kmax..=kmax {
        let (x, y) = report.representatives(k);
        if !(s.contains(x) && s.contains(y) && x + y == k * b as i64) {
            return Err(PresburgerError::Verification(format!("{} is not {x} + {y}", k * b as i64)));
        }
        report.checked += 1;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiLatticeReport {
    /// `P^{exponent} ⊇ n·Z^m`.
    pub n: u64,
    pub per_axis: Vec<u64>,
    pub exponent: usize,
    /// Lattice vectors with coordinates `k·n`, `|k| ≤ radius`, were checked.
    pub radius: i64,
    pub checked: u64,
}

/// Per-axis lattices combined: every vector of `nZ^m` near 0 is a sum of
/// two members of each axis restriction, `2m` summands in all.
pub fn multidim_lattice(axes: &[PresburgerSet]) -> Result<MultiLatticeReport, PresburgerError> {
    if axes.is_empty() {
        return Err(PresburgerError::Precondition("no axes".into()));
    }
    let mut reports = Vec::with_capacity(axes.len());
    for (i, a) in axes.iter().enumerate() {
        match lattice_in_double(a) {
            Ok(r) => reports.push(r),
            Err(PresburgerError::Precondition(_)) => return Err(PresburgerError::AxisNotThick { axis: i + 1 }),
            Err(e) => return Err(e),
        }
    }
    let n = reports.iter().fold(1u64, |acc, r| num_integer::lcm(acc, r.b));
    let m = axes.len();
    let radius: i64 = if m <= 3 { 3 } else { 1 };
    let sym: Vec<PresburgerSet> = axes.iter().map(PresburgerSet::symmetrize).collect();
    let side = (2 * radius + 1) as u64;
    let total = side.checked_pow(m as u32).ok_or(PresburgerError::Precondition("too many axes".into()))?;
    let mut checked = 0;
    for idx in 0..total {
        let mut rest = idx;
        for (axis, r) in reports.iter().enumerate() {
            let k = (rest % side) as i64 - radius;
            rest /= side;
            let coord = k * n as i64;
            let (x, y) = r.representatives(coord / r.b as i64);
            if !(sym[axis].contains(x) && sym[axis].contains(y) && x + y == coord) {
                return Err(PresburgerError::Verification(format!("axis {}: {coord} is not {x} + {y}", axis + 1)));
            }
        }
        checked += 1;
    }
    Ok(MultiLatticeReport { n, per_axis: reports.iter().map(|r| r.b).collect(), exponent: 2 * m, radius, checked })
}
