use serde::Serialize;

use super::clique::{count, get_bit, set_bit, words};
use super::{SymmetricSet, ThicksetError, Undecided};
use crate::groups::Group;

/// `Right` translates are `g·P`, `Left` translates are `P·g`. For symmetric
/// `P` the two notions give the same minimal count (invert the cover).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityCertificate<E> {
    pub translates: Vec<E>,
    pub side: Side,
    /// Whether `translates.len()` is proven minimal.
    pub exact: bool,
    pub lower_bound: usize,
}

impl<E: Clone + Ord + Send + Sync + 'static> GenericityCertificate<E> {
    pub fn m(&self) -> usize {
        self.translates.len()
    }

    /// Checks that the translates cover every element of `universe`.
    pub fn verify<G: Group<Elem = E>>(&self, group: &G, p: &SymmetricSet<E>, universe: &[E]) -> Result<bool, Undecided> {
        for x in universe {
            let mut hit = false;
            for g in &self.translates {
                if p.contains(&quotient(group, self.side, g, x))? {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The element that must lie in `P` for `x` to be in the `g`-translate.
fn quotient<G: Group>(group: &G, side: Side, g: &G::Elem, x: &G::Elem) -> G::Elem {
    match side {
        Side::Right => group.op(&group.inverse(g), x),
        Side::Left => group.op(x, &group.inverse(g)),
    }
}

struct Cover {
    sets: Vec<Vec<u64>>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Cover {
    fn dfs(&mut self, chosen: &mut Vec<usize>, uncovered: &[u64]) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let left = count(uncovered);
        if left == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let max_gain = self
            .sets
            .iter()
            .map(|s| s.iter().zip(uncovered).map(|(a, b)| (a & b).count_ones() as usize).sum::<usize>())
            .max()
            .unwrap_or(0);
        if max_gain == 0 || chosen.len() + left.div_ceil(max_gain) >= self.best.len() {
            return;
        }
        // branch on the uncovered element with the fewest covering sets
        let n = uncovered.len() * 64;
        let mut pick = None;
        let mut fewest = usize::MAX;
        for x in 0..n {
            if !get_bit(uncovered, x) {
                continue;
            }
            let c = self.sets.iter().filter(|s| get_bit(s, x)).count();
            if c < fewest {
                fewest = c;
                pick = Some(x);
            }
        }
        let x = pick.expect("uncovered element");
        for i in 0..self.sets.len() {
            if !get_bit(&self.sets[i], x) {
                continue;
            }
            let next: Vec<u64> = uncovered.iter().zip(&self.sets[i]).map(|(a, b)| a & !b).collect();
            chosen.push(i);
            self.dfs(chosen, &next);
            chosen.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

fn greedy(sets: &[Vec<u64>], all: &[u64]) -> Vec<usize> {
    let mut uncovered = all.to_vec();
    let mut out = Vec::new();
    while count(&uncovered) > 0 {
        let (i, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.iter().zip(&uncovered).map(|(a, b)| (a & b).count_ones()).sum::<u32>()))
            .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if gain == 0 {
            break;
        }
        out.push(i);
        for (u, s) in uncovered.iter_mut().zip(&sets[i]) {
            *u &= !s;
        }
    }
    out
}

/// Minimal number of translates of `P` covering a finite group, by exact set
/// cover. `universe` must list the whole group.
pub fn min_genericity<G: Group>(
    group: &G,
    p: &SymmetricSet<G::Elem>,
    universe: &[G::Elem],
    side: Side,
    node_budget: u64,
) -> Result<GenericityCertificate<G::Elem>, ThicksetError>
where
    G::Elem: Send + Sync + 'static,
{
    let mut elems = universe.to_vec();
    elems.sort();
    elems.dedup();
    let n = elems.len();
    if p.members_in(&elems)?.is_empty() {
        return Err(ThicksetError::NotGeneric);
    }
    let mut sets = Vec::with_capacity(n);
    for g in &elems {
        let mut s = vec![0u64; words(n)];
        for (j, x) in elems.iter().enumerate() {
            if p.contains(&quotient(group, side, g, x))? {
                set_bit(&mut s, j);
            }
        }
        sets.push(s);
    }
    let mut all = vec![0u64; words(n)];
    for j in 0..n {
        set_bit(&mut all, j);
    }
    let g0 = greedy(&sets, &all);
    let max_cover = sets.iter().map(|s| count(s)).max().unwrap_or(1).max(1);
    let trivial_lb = n.div_ceil(max_cover);
    let mut cov = Cover { sets, best: g0, nodes: 0, budget: node_budget, exhausted: false };
    if cov.best.len() > trivial_lb {
        let mut chosen = Vec::new();
        cov.dfs(&mut chosen, &all);
    }
    let exact = !cov.exhausted || cov.best.len() == trivial_lb;
    let mut translates: Vec<G::Elem> = cov.best.iter().map(|&i| elems[i].clone()).collect();
    translates.sort();
    Ok(GenericityCertificate {
        lower_bound: if exact { translates.len() } else { trivial_lb },
        translates,
        side,
        exact,
    })
}

/// Greedy cover of the window `[lo, hi]` by shifts `P + s`, together with the
/// counting lower bound. The certificate is exact only when the two meet.
pub fn min_genericity_z<F>(member: F, lo: i64, hi: i64) -> Result<GenericityCertificate<i64>, ThicksetError>
where
    F: Fn(i64) -> Result<bool, Undecided>,
{
    let w = (hi - lo) as usize;
    let n = w + 1;
    // P ∩ [-w, w] as a bitset indexed by d + w
    let mut pbits = vec![false; 2 * w + 1];
    let mut any = false;
    for (i, slot) in pbits.iter_mut().enumerate() {
        *slot = member(i as i64 - w as i64)?;
        any |= *slot;
    }
    if !any {
        return Err(ThicksetError::NotGeneric);
    }
    // shift s covers x iff x - s ∈ P; useful shifts lie in [lo - w, hi + w]
    let mut sets = Vec::with_capacity(3 * n);
    let mut shifts = Vec::with_capacity(3 * n);
    for s in (lo - w as i64)..=(hi + w as i64) {
        let mut b = vec![0u64; words(n)];
        let mut nonempty = false;
        for j in 0..n {
            let d = lo + j as i64 - s;
            if d.unsigned_abs() as usize <= w && pbits[(d + w as i64) as usize] {
                set_bit(&mut b, j);
                nonempty = true;
            }
        }
        if nonempty {
            sets.push(b);
            shifts.push(s);
        }
    }
    let mut all = vec![0u64; words(n)];
    for j in 0..n {
        set_bit(&mut all, j);
    }
    let chosen = greedy(&sets, &all);
    let max_cover = sets.iter().map(|s| count(s)).max().unwrap_or(1);
    let lower_bound = n.div_ceil(max_cover);
    let mut translates: Vec<i64> = chosen.iter().map(|&i| shifts[i]).collect();
    translates.sort();
    Ok(GenericityCertificate { exact: translates.len() == lower_bound, lower_bound, translates, side: Side::Right })
}
