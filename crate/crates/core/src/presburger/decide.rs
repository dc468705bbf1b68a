use serde::{Deserialize, Serialize};

use super::normal::{EventualData, Tail};
use super::PresburgerSet;
use crate::thickset::clique::{max_clique_above, set_bit, words, CliqueStatus, DenseGraph};
use crate::thickset::{max_independent_set_z, max_independent_set_z_periodic, Maximality, SearchLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideLimits {
    pub node_budget: u64,
    /// Largest search window; beyond it verdicts become ranges.
    pub max_window: i64,
    /// Largest number of translates tried by the exact cover search.
    pub max_m: usize,
    /// Bound on word operations in the thickness search; the node budget
    /// shrinks on wide windows to respect it.
    pub work_budget: u64,
    /// Node budget shared by all sizes tried in the cover search.
    pub cover_budget: u64,
    /// Whether `decide_thick` searches for the minimal thickness or only
    /// decides thickness.
    pub minimal: bool,
}

impl Default for DecideLimits {
    fn default() -> Self {
        DecideLimits { node_budget: 2_000_000, max_window: 200_000, max_m: 64, work_budget: 2_000_000_000, cover_budget: 100_000, minimal: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotThickWitness {
    /// 0 is missing, so a constant sequence has no good pair.
    IdentityMissing,
    /// `{0, s, 2s, ...}`: every difference is a multiple of `modulus`
    /// beyond the threshold, and residue 0 is not in the positive tail.
    Progression { modulus: u64, spacing: i64 },
}

impl NotThickWitness {
    /// Checks the first `len` members of the family pairwise.
    pub fn verify(&self, p: &PresburgerSet, len: usize) -> bool {
        match *self {
            NotThickWitness::IdentityMissing => !p.contains(0),
            NotThickWitness::Progression { spacing, .. } => {
                (1..len as i64).all(|k| !p.contains(k * spacing) && !p.contains(-k * spacing))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ThickOutcome {
    /// Minimal thickness lies in `[lower, upper]`; `witness` is an
    /// independent set of size `lower - 1` starting at 0.
    Thick { lower: usize, upper: usize, witness: Vec<i64>, window: i64 },
    NotThick(NotThickWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThicknessVerdict {
    pub input_symmetric: bool,
    #[serde(serialize_with = "crate::presburger::decide::ser_display")]
    pub symmetrized: PresburgerSet,
    pub eventual: EventualData,
    pub outcome: ThickOutcome,
}

pub(crate) fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ThicknessVerdict {
    pub fn is_thick(&self) -> bool {
        matches!(self.outcome, ThickOutcome::Thick { .. })
    }

    pub fn minimal(&self) -> Option<usize> {
        match self.outcome {
            ThickOutcome::Thick { lower, upper, .. } if lower == upper => Some(lower),
            _ => None,
        }
    }
}

/// Clique number of the Cayley graph on `Z/p` joining residues with a
/// difference, in one direction or the other, outside the positive tail (an upper bound if the budget
/// runs out).
fn residue_clique_bound(tail: &Tail, budget: u64) -> usize {
    let p = tail.period as usize;
    let mut g = DenseGraph::new(p);
    let mut allowed = vec![0u64; words(p)];
    // anchors come in some order, so either difference may be the positive one
    let joined = |k: usize| !tail.plus[k] || !tail.plus[p - k];
    for i in 0..p {
        for j in i + 1..p {
            if joined(j - i) {
                g.add_edge(i, j);
            }
        }
        if i > 0 && joined(i) {
            set_bit(&mut allowed, i);
        }
    }
    let r = max_clique_above(&g, &allowed, 0, usize::MAX, budget);
    1 + match r.status {
        CliqueStatus::Budget { upper } => upper,
        _ => r.clique.len(),
    }
}

/// Largest diameter an independent set needs after compaction, and the
/// largest size any independent set can have.
///
/// With `0` in the positive tail of period `p` beyond threshold `t`:
/// - for `q` dividing `p`, the points of one residue class mod `q` are
///   `q` times an independent set of `{k : qk ∈ P}`, a set of smaller
///   period whose thickness bounds the class size;
/// - any gap longer than `t + p` can be shortened by `p` without changing
///   which differences lie in the set;
/// - picking points greedily more than `t` apart gives anchors whose
///   residues form a clique of the residue graph, at most `omega` of them,
///   and every point lies within `t` after an anchor, at most `beta` per
///   anchor.
fn compaction_bounds(tail: &Tail, s: &PresburgerSet, limits: DecideLimits) -> Compaction {
    let p = tail.period as i64;
    let t = tail.threshold;
    let mut m = p * (t / p + 1);
    let mut period = p;
    for q in (2..=p).filter(|q| p % q == 0) {
        let sub = decide_thick(&s.divide(q), limits);
        if let ThickOutcome::Thick { upper, .. } = sub.outcome {
            let bound = q * (upper as i64 - 1);
            if bound < m {
                (m, period) = (bound, q);
            }
        }
    }
    let mut d = ((m - 1) * (t + p)).min((2 * p - 1) * t + (p - 1) * p);
    let omega = residue_clique_bound(tail, limits.node_budget) as i64;
    let near = max_independent_set_z(
        |x| Ok(s.contains(x)),
        0,
        t,
        SearchLimits { cap: m as usize, node_budget: limits.node_budget, floor: 0 },
    )
    .expect("membership is total");
    let beta = near.upper_bound().unwrap_or(m as usize) as i64;
    m = m.min(omega * beta);
    d = d.min((2 * omega - 1) * t + (omega - 1) * p).min((m - 1) * (t + p));
    Compaction { diameter: d, max_size: m as usize, period: period as usize }
}

struct Compaction {
    diameter: i64,
    max_size: usize,
    /// Modulus whose residue classes give the best size bound.
    period: usize,
}

/// Independent set built by taking each point of `[0, window]` in turn when
/// it is compatible with those already taken.
fn first_fit(s: &PresburgerSet, window: i64, cap: usize) -> Vec<i64> {
    let mut taken: Vec<i64> = Vec::new();
    for x in 0..=window {
        if taken.len() >= cap {
            break;
        }
        if taken.iter().all(|&y| !s.contains(x - y)) {
            taken.push(x);
        }
    }
    taken
}

/// Exact thickness decision for the symmetrization of `p`.
pub fn decide_thick(p: &PresburgerSet, limits: DecideLimits) -> ThicknessVerdict {
    let s = p.symmetrize();
    let input_symmetric = p.normalize() == s;
    let eventual = s.eventual_data();
    let tail = s.tail();
    let outcome = if !tail.plus_has(0) {
        let spacing = eventual.period as i64 * (eventual.threshold + 1);
        ThickOutcome::NotThick(NotThickWitness::Progression { modulus: eventual.period, spacing })
    } else if !s.contains(0) {
        ThickOutcome::NotThick(NotThickWitness::IdentityMissing)
    } else if !limits.minimal {
        let p = tail.period as usize;
        let max_size = p * (tail.threshold as usize / p + 1);
        ThickOutcome::Thick { lower: 2, upper: max_size + 1, witness: vec![0], window: 0 }
    } else {
        let Compaction { diameter: d, max_size, period } = compaction_bounds(&tail, &s, limits);
        let window = d.min(limits.max_window);
        let greedy = first_fit(&s, window, max_size);
        if greedy.len() >= max_size {
            ThickOutcome::Thick { lower: max_size + 1, upper: max_size + 1, witness: greedy, window }
        } else {
            let n = window as u64 + 1;
            let node_budget = (limits.work_budget / (n * n.div_ceil(64))).clamp(1, limits.node_budget);
            let r = max_independent_set_z_periodic(
                |x| Ok(s.contains(x)),
                0,
                window,
                Some(period),
                SearchLimits { cap: max_size, node_budget, floor: 0 },
            )
            .expect("membership is total");
            let found = if greedy.len() > r.size() { greedy } else { r.witness.points };
            let lower = found.len() + 1;
            let upper = match r.maximality {
                Maximality::CapReached => lower,
                Maximality::Exact if window == d => lower,
                Maximality::Budget { upper } | Maximality::Bounded { upper } if window == d => upper.min(max_size) + 1,
                _ => max_size + 1,
            };
            ThickOutcome::Thick { lower, upper: upper.max(lower), witness: found, window }
        }
    };
    ThicknessVerdict { input_symmetric, symmetrized: s, eventual, outcome }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GenericOutcome {
    NotGeneric,
    /// Minimal number of translates lies in `[lower, upper]`; `translates`
    /// is a cover of size `upper` when one was found.
    Generic { lower: usize, upper: Option<usize>, translates: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericVerdict {
    #[serde(serialize_with = "crate::presburger::decide::ser_display")]
    pub symmetrized: PresburgerSet,
    pub eventual: EventualData,
    pub outcome: GenericOutcome,
}

impl GenericVerdict {
    pub fn minimal(&self) -> Option<usize> {
        match self.outcome {
            GenericOutcome::Generic { lower, upper: Some(u), .. } if lower == u => Some(u),
            _ => None,
        }
    }
}

/// Whether the translates `g + P` cover `Z`. Outside
/// `[min g - t, max g + t]` only tail residues matter.
pub fn verify_cover(p: &PresburgerSet, translates: &[i64]) -> bool {
    let Some((&lo, &hi)) = translates.iter().min().zip(translates.iter().max()) else {
        return false;
    };
    let tail = p.tail();
    let q = tail.period as i64;
    let t = tail.threshold;
    let window_ok = (lo - t - 1..=hi + t + 1).all(|x| translates.iter().any(|g| p.contains(x - g)));
    let right = (0..q).all(|r| translates.iter().any(|g| tail.plus_has(r - g)));
    let left = (0..q).all(|r| translates.iter().any(|g| tail.minus_has(r - g)));
    window_ok && right && left
}

/// Covering problem for shifts in `[0, g_max]`: window points
/// `[-t, g_max + t]`, then far-right and far-left residues.
struct CoverInstance {
    rows: Vec<Vec<u64>>,
    /// `cols[e]`: shifts covering element `e`.
    cols: Vec<Vec<u64>>,
    /// Elements by increasing number of covering shifts.
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
    budget_hit: bool,
}

impl CoverInstance {
    fn new(s: &PresburgerSet, tail: &Tail, g_max: i64) -> Self {
        let t = tail.threshold;
        let q = tail.period as i64;
        let w = (g_max + 2 * t + 1) as usize;
        let n = w + 2 * q as usize;
        let nw = n.div_ceil(64);
        let shifts = g_max as usize + 1;
        let sw = shifts.div_ceil(64);
        let mut rows = Vec::with_capacity(shifts);
        let mut cols = vec![vec![0u64; sw]; n];
        let mut counts = vec![0u32; n];
        for g in 0..=g_max {
            let gi = g as usize;
            let mut row = vec![0u64; nw];
            let mut set = |e: usize| {
                row[e / 64] |= 1 << (e % 64);
                cols[e][gi / 64] |= 1 << (gi % 64);
                counts[e] += 1;
            };
            for (i, x) in (-t..=g_max + t).enumerate() {
                if s.contains(x - g) {
                    set(i);
                }
            }
            for r in 0..q {
                if tail.plus_has(r - g) {
                    set(w + r as usize);
                }
                if tail.minus_has(r - g) {
                    set(w + (q + r) as usize);
                }
            }
            rows.push(row);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&e| counts[e]);
        CoverInstance { rows, cols, order, nodes: 0, budget: 0, budget_hit: false }
    }

    /// Uncovered elements with pairwise disjoint sets of covering shifts,
    /// chosen greedily; each needs its own shift.
    fn packing_bound(&self, covered: &[u64], stop_at: usize) -> usize {
        let mut used = vec![0u64; self.cols.first().map_or(0, Vec::len)];
        let mut count = 0;
        for &e in &self.order {
            if covered[e / 64] >> (e % 64) & 1 == 1 {
                continue;
            }
            let c = &self.cols[e];
            if c.iter().zip(&used).all(|(a, b)| a & b == 0) {
                for (u, x) in used.iter_mut().zip(c) {
                    *u |= x;
                }
                count += 1;
                if count > stop_at {
                    break;
                }
            }
        }
        count
    }

    /// The uncovered element with fewest covering shifts.
    fn uncovered(&self, covered: &[u64]) -> Option<usize> {
        self.order.iter().copied().find(|&e| covered[e / 64] >> (e % 64) & 1 == 0)
    }

    fn dfs(&mut self, covered: &[u64], k: usize, chosen: &mut Vec<usize>) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.budget_hit = true;
            return false;
        }
        let Some(e) = self.uncovered(covered) else { return true };
        if k == 0 || self.packing_bound(covered, k) > k {
            return false;
        }
        for g in 0..self.rows.len() {
            if self.cols[e][g / 64] >> (g % 64) & 1 == 0 {
                continue;
            }
            let next: Vec<u64> = covered.iter().zip(&self.rows[g]).map(|(a, b)| a | b).collect();
            chosen.push(g);
            if self.dfs(&next, k - 1, chosen) {
                return true;
            }
            chosen.pop();
            if self.budget_hit {
                return false;
            }
        }
        false
    }

    fn greedy(&self) -> Option<Vec<usize>> {
        let mut covered = self.rows[0].clone();
        let mut chosen = vec![0];
        loop {
            if self.uncovered(&covered).is_none() {
                return Some(chosen);
            }
            let (g, gain) = (0..self.rows.len())
                .map(|g| (g, self.rows[g].iter().zip(&covered).map(|(r, c)| (r & !c).count_ones()).sum::<u32>()))
                .max_by_key(|&(g, gain)| (gain, std::cmp::Reverse(g)))?;
            if gain == 0 {
                return None;
            }
            for (c, r) in covered.iter_mut().zip(&self.rows[g]) {
                *c |= r;
            }
            chosen.push(g);
        }
    }
}

/// Minimal number of translates of the symmetrization of `p` covering `Z`.
///
/// Translating a cover keeps it a cover, so the smallest shift is 0; a gap
/// between consecutive shifts longer than `2t + p` can be shortened by `p`,
/// so a cover of size `m` lies in `[0, (m - 1)(2t + p)]`.
pub fn decide_generic(p: &PresburgerSet, limits: DecideLimits) -> GenericVerdict {
    let s = p.symmetrize();
    let eventual = s.eventual_data();
    let tail = s.tail();
    let plus = tail.plus.iter().filter(|&&b| b).count();
    let minus = tail.minus.iter().filter(|&&b| b).count();
    if plus == 0 || minus == 0 {
        return GenericVerdict { symmetrized: s, eventual, outcome: GenericOutcome::NotGeneric };
    }
    let q = tail.period as usize;
    let step = 2 * tail.threshold + q as i64;
    let mut lower = q.div_ceil(plus).max(q.div_ceil(minus)).max(1);
    let mut m = lower;
    let mut spent = 0;
    while m <= limits.max_m {
        let g_max = (m as i64 - 1) * step;
        if g_max + 2 * tail.threshold > limits.max_window {
            break;
        }
        let mut inst = CoverInstance::new(&s, &tail, g_max);
        inst.budget = limits.cover_budget.saturating_sub(spent);
        let mut chosen = vec![0];
        let start = inst.rows[0].clone();
        if inst.dfs(&start, m - 1, &mut chosen) {
            let translates = sorted(&chosen);
            return GenericVerdict {
                symmetrized: s,
                eventual,
                outcome: GenericOutcome::Generic { lower: m, upper: Some(m), translates },
            };
        }
        spent += inst.nodes;
        if inst.budget_hit {
            break;
        }
        lower = m + 1;
        m += 1;
    }
    let g_max = ((lower as i64 + 3) * step).min(limits.max_window);
    let greedy = CoverInstance::new(&s, &tail, g_max).greedy().map(|c| sorted(&c));
    let (upper, translates) = match greedy {
        Some(c) if verify_cover(&s, &c) => (Some(c.len().max(lower)), c),
        _ => (None, vec![]),
    };
    GenericVerdict { symmetrized: s, eventual, outcome: GenericOutcome::Generic { lower, upper, translates } }
}

fn sorted(c: &[usize]) -> Vec<i64> {
    let mut v: Vec<i64> = c.iter().map(|&g| g as i64).collect();
    v.sort_unstable();
    v
}
