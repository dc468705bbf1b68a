//! Bitset branch-and-bound maximum clique search with a greedy colouring
//! bound. Independent sets for `P` are cliques in the graph whose edges are
//! the pairs with quotient outside `P`.

pub(crate) type Bits = Vec<u64>;

pub(crate) fn words(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn set_bit(b: &mut [u64], i: usize) {
    b[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub(crate) fn clear_bit(b: &mut [u64], i: usize) {
    b[i >> 6] &= !(1u64 << (i & 63));
}

#[inline]
pub(crate) fn get_bit(b: &[u64], i: usize) -> bool {
    (b[i >> 6] >> (i & 63)) & 1 == 1
}

pub(crate) fn count(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn first_bit(b: &[u64]) -> Option<usize> {
    b.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn is_empty(b: &[u64]) -> bool {
    b.iter().all(|w| *w == 0)
}

/// Graph access for the search: vertex count and adjacency rows.
pub(crate) trait Adjacency {
    fn len(&self) -> usize;
    /// Writes the neighbourhood of `v` into `out` (length `words(len)`).
    fn row(&self, v: usize, out: &mut [u64]);
}

/// Explicit adjacency rows.
pub(crate) struct DenseGraph {
    n: usize,
    rows: Vec<Bits>,
}

impl DenseGraph {
    pub(crate) fn new(n: usize) -> Self {
        DenseGraph { n, rows: vec![vec![0; words(n)]; n] }
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        set_bit(&mut self.rows[a], b);
        set_bit(&mut self.rows[b], a);
    }
}

impl Adjacency for DenseGraph {
    fn len(&self) -> usize {
        self.n
    }

    fn row(&self, v: usize, out: &mut [u64]) {
        out.copy_from_slice(&self.rows[v]);
    }
}

/// The graph on `{0, ..., w}` where `u ~ v` iff `gap[|u - v|]`, with
/// `gap[0]` ignored. Rows are produced by shifting, so memory stays `O(w)`.
pub(crate) struct ShiftGraph {
    w: usize,
    gap: Bits,
    rev: Bits,
}

impl ShiftGraph {
    pub(crate) fn new(gaps: &[bool]) -> Self {
        let n = gaps.len();
        let mut gap = vec![0; words(n)];
        let mut rev = vec![0; words(n)];
        for (d, &g) in gaps.iter().enumerate() {
            if g && d > 0 {
                set_bit(&mut gap, d);
                set_bit(&mut rev, n - 1 - d);
            }
        }
        ShiftGraph { w: n - 1, gap, rev }
    }
}

pub(crate) fn shl_into(src: &[u64], s: usize, out: &mut [u64]) {
    let ws = s / 64;
    let bs = s % 64;
    for i in (0..out.len()).rev() {
        let mut v = 0;
        if i >= ws {
            v = src[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= src[i - ws - 1] >> (64 - bs);
            }
        }
        out[i] = v;
    }
}

pub(crate) fn shr_or_into(src: &[u64], s: usize, out: &mut [u64]) {
    let ws = s / 64;
    let bs = s % 64;
    for i in 0..out.len() {
        let j = i + ws;
        if j >= src.len() {
            break;
        }
        let mut v = src[j] >> bs;
        if bs > 0 && j + 1 < src.len() {
            v |= src[j + 1] << (64 - bs);
        }
        out[i] |= v;
    }
}

impl Adjacency for ShiftGraph {
    fn len(&self) -> usize {
        self.w + 1
    }

    fn row(&self, v: usize, out: &mut [u64]) {
        // u >= v: gap[u - v]; u < v: gap[v - u] = rev[w - v + u]
        shl_into(&self.gap, v, out);
        shr_or_into(&self.rev, self.w - v, out);
        let n = self.w + 1;
        if n % 64 != 0 {
            let last = out.len() - 1;
            out[last] &= (1u64 << (n % 64)) - 1;
        }
        clear_bit(out, v);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CliqueStatus {
    /// The clique is maximum.
    Exact,
    /// A clique of the target size was found; larger ones were not sought.
    TargetReached,
    /// The node budget ran out; `upper` bounds the clique number.
    Budget { upper: usize },
    /// No clique reaches the floor; the clique found is only a lower bound.
    BelowFloor,
}

pub(crate) struct CliqueResult {
    pub clique: Vec<usize>,
    pub status: CliqueStatus,
    pub nodes: u64,
}

struct Search<'a, A: Adjacency> {
    g: &'a A,
    nw: usize,
    best: Vec<usize>,
    floor: usize,
    target: usize,
    budget: u64,
    nodes: u64,
    stop: bool,
    budget_hit: bool,
}

impl<A: Adjacency> Search<'_, A> {
    /// Greedy sequential colouring of `cand`; returns vertices with their
    /// colour numbers in non-decreasing colour order.
    fn colour(&self, cand: &[u64], row: &mut [u64]) -> Vec<(usize, usize)> {
        let mut order = Vec::with_capacity(count(cand));
        let mut uncoloured = cand.to_vec();
        let mut colour = 0;
        let mut q = vec![0u64; self.nw];
        while !is_empty(&uncoloured) {
            colour += 1;
            q.copy_from_slice(&uncoloured);
            while let Some(v) = first_bit(&q) {
                clear_bit(&mut q, v);
                clear_bit(&mut uncoloured, v);
                order.push((v, colour));
                self.g.row(v, row);
                for (qw, rw) in q.iter_mut().zip(row.iter()) {
                    *qw &= !rw;
                }
            }
        }
        order
    }

    fn expand(&mut self, current: &mut Vec<usize>, cand: &mut Bits) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.stop = true;
            self.budget_hit = true;
            return;
        }
        let mut row = vec![0u64; self.nw];
        let order = self.colour(cand, &mut row);
        for &(v, c) in order.iter().rev() {
            if self.stop || current.len() + c <= self.best.len().max(self.floor.saturating_sub(1)) {
                return;
            }
            self.g.row(v, &mut row);
            let mut next: Bits = cand.iter().zip(&row).map(|(a, b)| a & b).collect();
            current.push(v);
            if is_empty(&next) {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                    if self.best.len() >= self.target {
                        self.stop = true;
                    }
                }
            } else {
                self.expand(current, &mut next);
            }
            current.pop();
            clear_bit(cand, v);
        }
    }
}

/// Maximum clique among the vertices in `allowed`, stopping early once a
/// clique of size `target` exists or after `budget` search nodes.
#[cfg(test)]
pub(crate) fn max_clique<A: Adjacency>(g: &A, allowed: &[u64], target: usize, budget: u64) -> CliqueResult {
    max_clique_above(g, allowed, 0, target, budget)
}

/// Maximum clique search, but branches are pruned unless they can reach
/// `floor` vertices, so a search that finds nothing of that size proves
/// the clique number is below `floor`.
pub(crate) fn max_clique_above<A: Adjacency>(
    g: &A,
    allowed: &[u64],
    floor: usize,
    target: usize,
    budget: u64,
) -> CliqueResult {
    let nw = words(g.len());
    let mut s = Search { g, nw, best: Vec::new(), floor, target, budget, nodes: 0, stop: false, budget_hit: false };
    let mut cand = allowed.to_vec();
    let root_bound = {
        let mut row = vec![0u64; nw];
        s.colour(&cand, &mut row).last().map(|x| x.1).unwrap_or(0)
    };
    if target > 0 && count(&cand) > 0 {
        let mut cur = Vec::new();
        s.expand(&mut cur, &mut cand);
    }
    let mut clique = s.best;
    clique.sort_unstable();
    let status = if clique.len() >= target {
        CliqueStatus::TargetReached
    } else if s.budget_hit {
        CliqueStatus::Budget { upper: root_bound.max(clique.len()) }
    } else if clique.len() < floor {
        CliqueStatus::BelowFloor
    } else {
        CliqueStatus::Exact
    };
    CliqueResult { clique, status, nodes: s.nodes }
}
