use serde::Serialize;

use super::{PresburgerSet, Term};

/// Periodic skeleton: for `|x| > threshold`, membership of `x` is decided
/// by `x mod period` through `rplus` (x > 0) or `rminus` (x < 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EventualData {
    pub threshold: i64,
    pub period: u64,
    pub rplus: Vec<u64>,
    pub rminus: Vec<u64>,
}

impl EventualData {
    pub fn symmetric_tails(&self) -> bool {
        let l = self.period;
        let mut neg: Vec<u64> = self.rplus.iter().map(|&r| (l - r) % l).collect();
        neg.sort_unstable();
        neg == self.rminus
    }
}

/// The same skeleton with the smallest period and threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tail {
    pub period: u64,
    pub threshold: i64,
    pub plus: Vec<bool>,
    pub minus: Vec<bool>,
}

impl Tail {
    pub fn plus_has(&self, x: i64) -> bool {
        self.plus[x.rem_euclid(self.period as i64) as usize]
    }

    pub fn minus_has(&self, x: i64) -> bool {
        self.minus[x.rem_euclid(self.period as i64) as usize]
    }

    /// Tail membership of `x`, meaningful for `|x| > threshold`.
    pub fn predicts(&self, x: i64) -> bool {
        if x > 0 {
            self.plus_has(x)
        } else {
            self.minus_has(x)
        }
    }
}

fn pattern(l: u64, residues: &[u64]) -> Vec<bool> {
    let mut v = vec![false; l as usize];
    for &r in residues {
        v[r as usize] = true;
    }
    v
}

/// Smallest `d | len` with every pattern invariant under a shift by `d`.
fn min_period(len: usize, pats: &[&[bool]]) -> usize {
    (1..=len)
        .filter(|d| len % d == 0)
        .find(|&d| pats.iter().all(|p| (0..len).all(|i| p[i] == p[i % d])))
        .unwrap_or(len)
}

fn fold(p: &[bool], d: usize) -> Vec<bool> {
    p[..d].to_vec()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Class {
    q: i64,
    r: i64,
}

/// Maximal runs of consecutive progression elements `r + qZ` in
/// `[from, to]` satisfying `keep`; `None` ends mark runs touching the
/// window edge when `open_ends` allows.
fn runs(c: Class, from: i64, to: i64, keep: &dyn Fn(i64) -> bool, open_ends: bool, out: &mut Vec<Term>) {
    let first = from + (c.r - from).rem_euclid(c.q);
    let mut x = first;
    let mut start: Option<i64> = None;
    let mut last = first;
    while x <= to {
        if keep(x) {
            if start.is_none() {
                start = Some(x);
            }
            last = x;
        } else if let Some(s) = start.take() {
            out.push(run_term(c, s, last, open_ends && s == first, false));
        }
        x += c.q;
    }
    if let Some(s) = start {
        out.push(run_term(c, s, last, open_ends && s == first, open_ends));
    }
}

fn run_term(c: Class, s: i64, e: i64, open_lo: bool, open_hi: bool) -> Term {
    if s == e && !open_lo && !open_hi {
        return Term::point(s);
    }
    let lo = (!open_lo).then(|| s - c.q + 1);
    let hi = (!open_hi).then(|| e + c.q);
    Term::progression(c.r, c.q as u64, lo, hi)
}

impl PresburgerSet {
    /// `L` = lcm of moduli, `T` = largest finite magnitude + `L`; residues
    /// read off one full period beyond `±T`.
    pub fn eventual_data(&self) -> EventualData {
        let l = self.period();
        let t = self.max_magnitude() + l as i64;
        let li = l as i64;
        let mut rplus: Vec<u64> = (t + 1..=t + li).filter(|&x| self.contains(x)).map(|x| x.rem_euclid(li) as u64).collect();
        let mut rminus: Vec<u64> = (-t - li..-t).filter(|&x| self.contains(x)).map(|x| x.rem_euclid(li) as u64).collect();
        rplus.sort_unstable();
        rminus.sort_unstable();
        EventualData { threshold: t, period: l, rplus, rminus }
    }

    /// Eventual data with the period and threshold made minimal.
    pub fn tail(&self) -> Tail {
        let ed = self.eventual_data();
        let l = ed.period as usize;
        let plus = pattern(ed.period, &ed.rplus);
        let minus = pattern(ed.period, &ed.rminus);
        let d = min_period(l, &[&plus, &minus]);
        let mut tail = Tail { period: d as u64, threshold: ed.threshold, plus: fold(&plus, d), minus: fold(&minus, d) };
        while tail.threshold > 0 {
            let t = tail.threshold;
            if self.contains(t) != tail.plus_has(t) || self.contains(-t) != tail.minus_has(-t) {
                break;
            }
            tail.threshold -= 1;
        }
        tail
    }

    /// Canonical form: one term per maximal run of each tail class (the
    /// residues in both tails, then the positive-only and negative-only
    /// ones, each at its own smallest period), then the remaining finite
    /// part split into runs at the modulus giving fewest terms.
    pub fn normalize(&self) -> PresburgerSet {
        let ed = self.eventual_data();
        let l = ed.period as usize;
        let t = ed.threshold;
        let plus = pattern(ed.period, &ed.rplus);
        let minus = pattern(ed.period, &ed.rminus);
        let parts: [Vec<bool>; 3] = [
            (0..l).map(|i| plus[i] && minus[i]).collect(),
            (0..l).map(|i| plus[i] && !minus[i]).collect(),
            (0..l).map(|i| !plus[i] && minus[i]).collect(),
        ];
        let folded: Vec<Vec<bool>> = parts
            .iter()
            .map(|p| {
                let d = min_period(l, &[p]);
                fold(p, d)
            })
            .collect();
        let in_tail_class = |x: i64| folded.iter().any(|f| f[x.rem_euclid(f.len() as i64) as usize]);

        let mut terms = Vec::new();
        for f in &folded {
            let q = f.len() as i64;
            for r in (0..q).filter(|&r| f[r as usize]) {
                let c = Class { q, r };
                runs(c, -t - q, t + q, &|x| self.contains(x), true, &mut terms);
            }
        }

        let leftover = |x: i64| self.contains(x) && !in_tail_class(x);
        let mut best: Option<Vec<Term>> = None;
        for q in (1..=l as i64).filter(|q| l as i64 % q == 0) {
            let mut cand = Vec::new();
            for r in 0..q {
                runs(Class { q, r }, -t, t, &leftover, false, &mut cand);
            }
            if best.as_ref().is_none_or(|b| cand.len() < b.len()) {
                best = Some(cand);
            }
        }
        terms.extend(best.unwrap_or_default());
        terms.sort_by_key(|t| (t.b == 0, t.b, t.a, t.lo, t.hi));
        PresburgerSet { terms }
    }

    /// `A + B`, exact: a far pair `(y, x - y)` is decided by residues, so
    /// only a bounded range of `y` needs direct checks.
    pub fn sumset(&self, other: &PresburgerSet) -> PresburgerSet {
        let (ta, tb) = (self.tail(), other.tail());
        let q = num_integer::lcm(ta.period, tb.period) as i64;
        let far = |x: i64| {
            (0..q).any(|r| {
                (ta.plus_has(r) && tb.minus_has(x - r)) || (ta.minus_has(r) && tb.plus_has(x - r))
            })
        };
        let member = |x: i64| {
            if far(x) {
                return true;
            }
            let range = ta.threshold + tb.threshold + x.abs() + q;
            (-range..=range).any(|y| self.contains(y) && other.contains(x - y))
        };
        let x0 = ta.threshold + tb.threshold + q;
        let mut terms = Vec::new();
        for x in x0 + 1..=x0 + q {
            if member(x) {
                terms.push(Term::progression(x, q as u64, Some(x0 + 1), None));
            }
            if member(-x) {
                terms.push(Term::progression(-x, q as u64, None, Some(-x0)));
            }
        }
        terms.extend((-x0..=x0).filter(|&x| member(x)).map(Term::point));
        PresburgerSet { terms }.normalize()
    }
}
