use serde::Serialize;

use super::ThicksetError;
use crate::arith::binomial;

/// `C(n+m-2, n-1)`, the classical upper bound for `R(n, m)`.
pub fn ramsey_bound(n: u64, m: u64) -> Result<u64, ThicksetError> {
    if n < 2 || m < 2 {
        return Err(ThicksetError::Precondition(format!("R({n},{m}) needs n, m >= 2")));
    }
    Ok(binomial(n + m - 2, n - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyResult {
    pub n: usize,
    pub m: usize,
    pub value: usize,
    /// A 2-colouring of `K_{value-1}` with no red `K_n` and no blue `K_m`,
    /// as rows of `true` = red.
    pub lower_witness: Vec<Vec<bool>>,
    /// Colourings of `K_value` examined (complete or partial) to rule out
    /// such a colouring.
    pub colorings_checked: u64,
    pub exhaustive: bool,
}

fn combinations(pool: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            if rec(pool, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(pool, k, 0, &mut Vec::new(), f)
}

/// Whether the colouring (red = true) has a red `K_n` or a blue `K_m`.
pub(crate) fn has_mono_clique(col: &[Vec<bool>], n: usize, m: usize) -> bool {
    let verts: Vec<usize> = (0..col.len()).collect();
    for (size, colour) in [(n, true), (m, false)] {
        let found = combinations(&verts, size, &mut |s| {
            s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| col[a][b] == colour))
        });
        if found {
            return true;
        }
    }
    false
}

fn edges(v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..v {
        for i in 0..j {
            out.push((i, j));
        }
    }
    out
}

/// Literal enumeration of all `2^{C(v,2)}` colourings.
fn exhaustive_avoider(v: usize, n: usize, m: usize) -> (Option<Vec<Vec<bool>>>, u64) {
    let es = edges(v);
    let mut checked = 0;
    for mask in 0u64..(1u64 << es.len()) {
        checked += 1;
        let mut col = vec![vec![false; v]; v];
        for (k, &(i, j)) in es.iter().enumerate() {
            let red = mask >> k & 1 == 1;
            col[i][j] = red;
            col[j][i] = red;
        }
        if !has_mono_clique(&col, n, m) {
            return (Some(col), checked);
        }
    }
    (None, checked)
}

struct Backtrack {
    v: usize,
    n: usize,
    m: usize,
    es: Vec<(usize, usize)>,
    col: Vec<Vec<Option<bool>>>,
    nodes: u64,
}

impl Backtrack {
    /// Does the edge `(i, j)`, just coloured `c`, close a monochromatic clique?
    /// Other vertices are below `j` and joined to `j` already.
    fn closes(&self, i: usize, j: usize, c: bool) -> bool {
        let k = if c { self.n } else { self.m };
        if k == 2 {
            return true;
        }
        let pool: Vec<usize> = (0..i)
            .filter(|&x| self.col[x][j] == Some(c) && self.col[x][i] == Some(c))
            .collect();
        combinations(&pool, k - 2, &mut |s| {
            s.iter().enumerate().all(|(a, &x)| s[a + 1..].iter().all(|&y| self.col[x][y] == Some(c)))
        })
    }

    fn run(&mut self, e: usize) -> bool {
        self.nodes += 1;
        if e == self.es.len() {
            return true;
        }
        let (i, j) = self.es[e];
        for c in [true, false] {
            self.col[i][j] = Some(c);
            self.col[j][i] = Some(c);
            if !self.closes(i, j, c) && self.run(e + 1) {
                return true;
            }
        }
        self.col[i][j] = None;
        self.col[j][i] = None;
        false
    }
}

fn backtrack_avoider(v: usize, n: usize, m: usize) -> (Option<Vec<Vec<bool>>>, u64) {
    let mut b = Backtrack { v, n, m, es: edges(v), col: vec![vec![None; v]; v], nodes: 0 };
    if b.run(0) {
        let col = (0..b.v).map(|i| (0..b.v).map(|j| b.col[i][j].unwrap_or(false)).collect()).collect();
        (Some(col), b.nodes)
    } else {
        (None, b.nodes)
    }
}

fn avoider(v: usize, n: usize, m: usize) -> (Option<Vec<Vec<bool>>>, u64, bool) {
    if v * v.saturating_sub(1) / 2 <= 15 {
        let (c, k) = exhaustive_avoider(v, n, m);
        (c, k, true)
    } else {
        let (c, k) = backtrack_avoider(v, n, m);
        (c, k, false)
    }
}

/// `R(n, m)` by search: the smallest `v` such that no 2-colouring of `K_v`
/// avoids both a red `K_n` and a blue `K_m`. Supported for
/// `max(n, m) <= 4` and `n + m <= 7`.
pub fn exact_small_ramsey(n: usize, m: usize) -> Result<RamseyResult, ThicksetError> {
    if n < 2 || m < 2 {
        return Err(ThicksetError::Precondition(format!("R({n},{m}) needs n, m >= 2")));
    }
    if n.max(m) > 4 || n + m > 7 {
        return Err(ThicksetError::Unsupported(format!("exact R({n},{m}) is outside the searched range")));
    }
    let mut witness = vec![vec![false; 1]; 1];
    for v in 2.. {
        let (found, checked, exhaustive) = avoider(v, n, m);
        match found {
            Some(c) => witness = c,
            None => {
                return Ok(RamseyResult { n, m, value: v, lower_witness: witness, colorings_checked: checked, exhaustive })
            }
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(ramsey_bound(3, 3).unwrap(), 6);
        assert_eq!(ramsey_bound(4, 3).unwrap(), 10);
        assert_eq!(ramsey_bound(3, 4).unwrap(), 10);
        assert!(ramsey_bound(1, 3).is_err());
    }

    #[test]
    fn r33_is_six() {
        let r = exact_small_ramsey(3, 3).unwrap();
        assert_eq!(r.value, 6);
        assert!(r.exhaustive);
        assert_eq!(r.colorings_checked, 1 << 15);
        assert_eq!(r.lower_witness.len(), 5);
        assert!(!has_mono_clique(&r.lower_witness, 3, 3));
    }

    #[test]
    fn r2m_is_m() {
        for m in 2..=4 {
            assert_eq!(exact_small_ramsey(2, m).unwrap().value, m);
            assert_eq!(exact_small_ramsey(m, 2).unwrap().value, m);
        }
    }

    #[test]
    fn r34_is_nine() {
        let r = exact_small_ramsey(3, 4).unwrap();
        assert_eq!(r.value, 9);
        assert!(!has_mono_clique(&r.lower_witness, 3, 4));
        assert_eq!(exact_small_ramsey(4, 3).unwrap().value, 9);
    }

    #[test]
    fn outside_range_is_unsupported() {
        assert!(matches!(exact_small_ramsey(4, 4), Err(ThicksetError::Unsupported(_))));
        assert!(matches!(exact_small_ramsey(3, 5), Err(ThicksetError::Unsupported(_))));
    }
}
