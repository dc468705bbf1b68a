//! Russian-doll search on `Z` windows. The conflict graph is translation
//! invariant, so the best set inside any window of width `k` is known once
//! `k` has been processed, and it bounds what the remaining candidates of a
//! branch can add.

use super::clique::{count, first_bit, set_bit, shl_into, shr_or_into, words};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum DollStatus {
    Complete,
    CapReached,
    /// Stopped while processing the given width.
    Budget { width: usize },
}

#[derive(Debug, Clone)]
pub(crate) struct DollResult {
    /// `profile[k]`: largest independent set inside `{0, ..., k}`.
    pub profile: Vec<usize>,
    /// Positions of a largest set found, starting at 0.
    pub witness: Vec<usize>,
    pub status: DollStatus,
    pub nodes: u64,
}

struct Doll<'a> {
    gap: &'a [u64],
    /// The points of one residue class mod `period` inside a window of
    /// width `period * k` number at most `class_profile[k]`.
    period: usize,
    class_profile: Vec<usize>,
    /// Per class: candidates, then taken points, with the lowest and
    /// highest position of either.
    counts: Vec<(usize, usize, usize, usize)>,
    /// Right endpoint of the window being searched.
    width: usize,
    profile: Vec<usize>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

fn last_bit(b: &[u64]) -> Option<usize> {
    b.iter().enumerate().rev().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}

impl Doll<'_> {
    fn class_bound(&self, k: usize) -> usize {
        let last = self.class_profile.len() - 1;
        self.class_profile[k.min(last)] + k.saturating_sub(last)
    }

    fn classes_allow(&mut self, cands: &[u64], need: usize, chosen: &[usize]) -> bool {
        let q = self.period;
        self.counts.iter_mut().for_each(|c| *c = (0, 0, usize::MAX, 0));
        let taken = [0, self.width];
        for &x in taken.iter().chain(chosen) {
            let c = &mut self.counts[x % q];
            (c.1, c.2, c.3) = (c.1 + 1, c.2.min(x), c.3.max(x));
        }
        for (i, &w) in cands.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let x = i * 64 + w.trailing_zeros() as usize;
                let c = &mut self.counts[x % q];
                (c.0, c.2, c.3) = (c.0 + 1, c.2.min(x), c.3.max(x));
                w &= w - 1;
            }
        }
        let mut total = 0;
        for &(cands, taken, lo, hi) in &self.counts {
            if cands > 0 {
                total += cands.min(self.class_bound((hi - lo) / q).saturating_sub(taken));
            }
        }
        total >= need
    }

    fn search(&mut self, cands: &mut [u64], need: usize, chosen: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
            return false;
        }
        let nw = cands.len();
        let mut next = vec![0u64; nw];
        loop {
            let (Some(x), Some(last)) = (first_bit(cands), last_bit(cands)) else {
                return false;
            };
            if self.profile[last - x] < need || count(cands) < need {
                return false;
            }
            if self.period > 0 && !self.classes_allow(cands, need, chosen) {
                return false;
            }
            shl_into(&self.gap[..nw], x, &mut next);
            for (n, c) in next.iter_mut().zip(cands.iter()) {
                *n &= c;
            }
            chosen.push(x);
            if self.search(&mut next, need - 1, chosen) {
                return true;
            }
            chosen.pop();
            if self.out_of_budget {
                return false;
            }
            cands[x / 64] &= !(1u64 << (x % 64));
        }
    }
}

/// The modulus `q ≤ 32` whose residue classes give the smallest bound
/// `q * (largest class)` on the whole window.
fn best_period(gaps: &[bool], budget: u64) -> Option<usize> {
    let d = gaps.len() - 1;
    (2..=32.min(d / 2))
        .filter_map(|q| {
            let sub: Vec<bool> = gaps.iter().step_by(q).copied().collect();
            let r = russian_doll(&sub, Some(0), usize::MAX, budget / 64);
            (r.status == DollStatus::Complete).then(|| (q * r.profile[sub.len() - 1], q))
        })
        .min()
        .map(|(_, q)| q)
}

/// `gaps[d]`: whether two points at distance `d` may both be in the set.
/// A `period` adds a per-residue-class bound to the pruning; any value is
/// sound, one matching the structure of `gaps` prunes best.
pub(crate) fn russian_doll(gaps: &[bool], period: Option<usize>, cap: usize, budget: u64) -> DollResult {
    let d = gaps.len() - 1;
    let period = period.or_else(|| best_period(gaps, budget)).filter(|&p| p > 1 && p <= d).unwrap_or(0);
    let class_profile = if period > 0 {
        let sub: Vec<bool> = gaps.iter().step_by(period).copied().collect();
        russian_doll(&sub, None, usize::MAX, budget).profile
    } else {
        vec![]
    };
    let nw = words(d + 1);
    let mut gap = vec![0u64; nw];
    let mut rev = vec![0u64; nw];
    for (k, &g) in gaps.iter().enumerate().skip(1) {
        if g {
            set_bit(&mut gap, k);
            set_bit(&mut rev, d - k);
        }
    }
    let mut doll = Doll {
        gap: &gap,
        period,
        class_profile,
        counts: vec![(0, 0, 0, 0); period],
        width: 0,
        profile: vec![1], nodes: 0, budget, out_of_budget: false };
    let mut witness = vec![0];
    let mut status = DollStatus::Complete;
    let mut cands = vec![0u64; nw];
    for w in 1..=d {
        let prev = doll.profile[w - 1];
        if prev >= cap {
            status = DollStatus::CapReached;
            break;
        }
        if !gaps[w] {
            doll.profile.push(prev);
            continue;
        }
        // bit x: both x and w - x are allowed distances
        let used = words(w + 1);
        cands[..used].iter_mut().for_each(|c| *c = 0);
        shr_or_into(&rev, d - w, &mut cands[..used]);
        for (c, g) in cands[..used].iter_mut().zip(&gap) {
            *c &= g;
        }
        cands[w / 64] &= !(u64::MAX << (w % 64));
        let mut chosen = Vec::new();
        doll.width = w;
        if doll.search(&mut cands[..used], prev - 1, &mut chosen) {
            doll.profile.push(prev + 1);
            witness = std::iter::once(0).chain(chosen).chain(std::iter::once(w)).collect();
        } else if doll.out_of_budget {
            status = DollStatus::Budget { width: w };
            break;
        } else {
            doll.profile.push(prev);
        }
    }
    DollResult { profile: doll.profile, witness, status, nodes: doll.nodes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(gaps: &[bool]) -> usize {
        let n = gaps.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let pts: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if pts.iter().enumerate().all(|(i, a)| pts[i + 1..].iter().all(|b| gaps[b - a])) {
                best = best.max(pts.len());
            }
        }
        best
    }

    #[test]
    fn profile_matches_brute_force() {
        let mut state = 12345u64;
        for _ in 0..200 {
            let n = 1 + (state % 14) as usize;
            let gaps: Vec<bool> = (0..n)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    state >> 40 & 3 != 0
                })
                .collect();
            let r = russian_doll(&gaps, None, usize::MAX, u64::MAX);
            let q = russian_doll(&gaps, Some(3), usize::MAX, u64::MAX);
            assert_eq!(q.profile, r.profile);
            assert_eq!(r.status, DollStatus::Complete);
            for k in 0..n {
                assert_eq!(r.profile[k], brute(&gaps[..=k]), "{gaps:?} {k}");
            }
            let w = &r.witness;
            assert_eq!(w.len(), r.profile[n - 1]);
            assert!(w.iter().enumerate().all(|(i, a)| w[i + 1..].iter().all(|b| gaps[b - a])));
        }
    }

    #[test]
    fn cap_and_budget() {
        let gaps = vec![true; 40];
        let r = russian_doll(&gaps, None, 5, u64::MAX);
        assert_eq!((r.status, r.witness.len()), (DollStatus::CapReached, 5));
        let r = russian_doll(&gaps, None, usize::MAX, 3);
        assert!(matches!(r.status, DollStatus::Budget { .. }));
    }
}
