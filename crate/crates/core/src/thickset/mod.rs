//! Thick and generic sets: independent-set search, minimal thickness and
//! genericity, Ramsey bounds for intersections and the product-set subgroup
//! construction on finite groups.

pub(crate) mod clique;
pub(crate) mod doll;
mod cover;
mod lemma23;
mod ramsey;

pub use cover::{min_genericity, min_genericity_z, GenericityCertificate, Side};
pub use lemma23::{lemma23_subgroup, Lemma23Subgroup};
pub use ramsey::{exact_small_ramsey, ramsey_bound, RamseyResult};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::groups::Group;
use clique::{max_clique_above, set_bit, words, CliqueStatus, DenseGraph, ShiftGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("membership undecided: {0}")]
pub struct Undecided(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThicksetError {
    #[error("set is empty on the universe, so it is not generic")]
    NotGeneric,
    #[error(transparent)]
    Undecided(#[from] Undecided),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Oracle<E> = Arc<dyn Fn(&E) -> Result<bool, Undecided> + Send + Sync>;

/// Where a set came from, kept for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Symbolic {
    Whole,
    Finite,
    Bohr(String),
    Presburger(String),
    Preimage(String),
    Intersection(Box<Symbolic>, Box<Symbolic>),
    Other(String),
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbolic::Whole => write!(f, "G"),
            Symbolic::Finite => write!(f, "finite"),
            Symbolic::Bohr(s) | Symbolic::Presburger(s) | Symbolic::Other(s) => write!(f, "{s}"),
            Symbolic::Preimage(s) => write!(f, "preimage[{s}]"),
            Symbolic::Intersection(a, b) => write!(f, "({a}) & ({b})"),
        }
    }
}

/// A symmetric subset of a group, given by a membership oracle.
pub struct SymmetricSet<E> {
    oracle: Oracle<E>,
    window: Option<Arc<Vec<E>>>,
    symbolic: Symbolic,
}

impl<E> Clone for SymmetricSet<E> {
    fn clone(&self) -> Self {
        SymmetricSet { oracle: self.oracle.clone(), window: self.window.clone(), symbolic: self.symbolic.clone() }
    }
}

impl<E> fmt::Debug for SymmetricSet<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricSet({})", self.symbolic)
    }
}

impl<E: Clone + Ord + Send + Sync + 'static> SymmetricSet<E> {
    /// Wraps an oracle the caller knows to be symmetric.
    pub fn from_oracle<F>(f: F, symbolic: Symbolic) -> Self
    where
        F: Fn(&E) -> Result<bool, Undecided> + Send + Sync + 'static,
    {
        SymmetricSet { oracle: Arc::new(f), window: None, symbolic }
    }

    /// `raw ∪ raw^{-1}`.
    pub fn symmetrize<G, F>(group: &G, raw: F, symbolic: Symbolic) -> Self
    where
        G: Group<Elem = E> + Clone + Send + Sync + 'static,
        F: Fn(&E) -> Result<bool, Undecided> + Send + Sync + 'static,
    {
        let g = group.clone();
        Self::from_oracle(move |x| Ok(raw(x)? || raw(&g.inverse(x))?), symbolic)
    }

    /// The symmetrization of a finite list of elements.
    pub fn finite<G>(group: &G, elems: &[E]) -> Self
    where
        G: Group<Elem = E>,
    {
        let mut all: Vec<E> = elems.iter().cloned().chain(elems.iter().map(|e| group.inverse(e))).collect();
        all.sort();
        all.dedup();
        let members = Arc::new(all);
        let m = members.clone();
        SymmetricSet {
            oracle: Arc::new(move |x| Ok(m.binary_search(x).is_ok())),
            window: Some(members),
            symbolic: Symbolic::Finite,
        }
    }

    pub fn whole() -> Self {
        Self::from_oracle(|_| Ok(true), Symbolic::Whole)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (self.oracle.clone(), other.oracle.clone());
        SymmetricSet {
            oracle: Arc::new(move |x| Ok(a(x)? && b(x)?)),
            window: None,
            symbolic: Symbolic::Intersection(Box::new(self.symbolic.clone()), Box::new(other.symbolic.clone())),
        }
    }

    pub fn with_window(mut self, window: Vec<E>) -> Self {
        self.window = Some(Arc::new(window));
        self
    }

    pub fn contains(&self, x: &E) -> Result<bool, Undecided> {
        (self.oracle)(x)
    }

    pub fn symbolic(&self) -> &Symbolic {
        &self.symbolic
    }

    pub fn window(&self) -> Option<&[E]> {
        self.window.as_deref().map(|v| v.as_slice())
    }

    /// First element of `universe` whose membership differs from that of its
    /// inverse.
    pub fn asymmetry_on<G: Group<Elem = E>>(&self, group: &G, universe: &[E]) -> Result<Option<E>, Undecided> {
        for x in universe {
            if self.contains(x)? != self.contains(&group.inverse(x))? {
                return Ok(Some(x.clone()));
            }
        }
        Ok(None)
    }

    /// Members of `universe`, in order.
    pub fn members_in(&self, universe: &[E]) -> Result<Vec<E>, Undecided> {
        let mut out = Vec::new();
        for x in universe {
            if self.contains(x)? {
                out.push(x.clone());
            }
        }
        Ok(out)
    }
}

impl SymmetricSet<BigInt> {
    /// Membership of a machine integer.
    pub fn contains_i64(&self, n: i64) -> Result<bool, Undecided> {
        self.contains(&BigInt::from(n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest independent set sought; reaching it ends the search.
    pub cap: usize,
    pub node_budget: u64,
    /// Sets smaller than this are not worth finding: the search only proves
    /// or refutes that one of size `floor` exists. 0 asks for the maximum.
    pub floor: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { cap: 64, node_budget: 2_000_000, floor: 0 }
    }
}

impl SearchLimits {
    pub fn with_cap(cap: usize) -> Self {
        SearchLimits { cap, ..Self::default() }
    }
}

/// Points whose pairwise quotients avoid `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentWitness<E> {
    pub points: Vec<E>,
    pub checked_pairs: u64,
}

impl<E: Clone + Ord + Send + Sync + 'static> IndependentWitness<E> {
    /// Re-checks every pair `(i, j)`, `i < j`.
    pub fn verify<G: Group<Elem = E>>(&self, group: &G, p: &SymmetricSet<E>) -> Result<bool, Undecided> {
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                if p.contains(&group.op(&group.inverse(a), b))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Maximality {
    /// No larger independent set exists in the universe.
    Exact,
    /// The witness has `cap` points; larger ones were not sought.
    CapReached,
    /// Node budget exhausted; the maximum lies in `[witness size, upper]`.
    Budget { upper: usize },
    /// The search proved the maximum is at most `upper`; the witness is
    /// the best set met on the way.
    Bounded { upper: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxIndependent<E> {
    pub witness: IndependentWitness<E>,
    pub maximality: Maximality,
    pub nodes: u64,
}

impl<E> MaxIndependent<E> {
    pub fn size(&self) -> usize {
        self.witness.points.len()
    }

    pub fn is_exact(&self) -> bool {
        self.maximality == Maximality::Exact
    }

    /// Proven bound on the maximum, when the search gives one.
    pub fn upper_bound(&self) -> Option<usize> {
        match self.maximality {
            Maximality::Exact => Some(self.size()),
            Maximality::CapReached => None,
            Maximality::Budget { upper } | Maximality::Bounded { upper } => Some(upper),
        }
    }
}

fn from_clique_status(status: CliqueStatus, offset: usize, floor: usize) -> Maximality {
    match status {
        CliqueStatus::Exact => Maximality::Exact,
        CliqueStatus::TargetReached => Maximality::CapReached,
        CliqueStatus::Budget { upper } => Maximality::Budget { upper: upper + offset },
        CliqueStatus::BelowFloor => Maximality::Bounded { upper: floor - 1 + offset },
    }
}

/// Maximum independent set of `P` inside a finite universe.
///
/// If the identity is not in `P`, repeating one point is already an
/// independent sequence of any length; the witness then repeats the
/// identity `cap` times.
pub fn max_independent_set<G: Group>(
    group: &G,
    p: &SymmetricSet<G::Elem>,
    universe: &[G::Elem],
    limits: SearchLimits,
) -> Result<MaxIndependent<G::Elem>, Undecided>
where
    G::Elem: Send + Sync + 'static,
{
    let e = group.identity();
    if !p.contains(&e)? {
        return Ok(MaxIndependent {
            witness: IndependentWitness { points: vec![e; limits.cap], checked_pairs: 1 },
            maximality: Maximality::CapReached,
            nodes: 0,
        });
    }
    let mut verts: Vec<G::Elem> = universe.to_vec();
    verts.sort();
    verts.dedup();
    let n = verts.len();
    let mut adj = vec![vec![false; n]; n];
    let mut checked = 0u64;
    for a in 0..n {
        let ia = group.inverse(&verts[a]);
        for b in a + 1..n {
            checked += 1;
            if !p.contains(&group.op(&ia, &verts[b]))? {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    // highest degree first tightens the colouring bound
    let mut order: Vec<usize> = (0..n).collect();
    let deg: Vec<usize> = adj.iter().map(|r| r.iter().filter(|x| **x).count()).collect();
    order.sort_by(|&x, &y| deg[y].cmp(&deg[x]).then(x.cmp(&y)));
    let mut g = DenseGraph::new(n);
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate().skip(i + 1) {
            if adj[a][b] {
                g.add_edge(i, j);
            }
        }
    }
    let mut all = vec![0u64; words(n)];
    for v in 0..n {
        set_bit(&mut all, v);
    }
    let r = max_clique_above(&g, &all, limits.floor, limits.cap, limits.node_budget);
    let mut points: Vec<G::Elem> = r.clique.iter().map(|&i| verts[order[i]].clone()).collect();
    points.sort();
    points.truncate(limits.cap);
    Ok(MaxIndependent {
        witness: IndependentWitness { points, checked_pairs: checked },
        maximality: from_clique_status(r.status, 0, limits.floor),
        nodes: r.nodes,
    })
}

/// Maximum independent set of a symmetric `P ⊆ Z` inside `[lo, hi]`, given
/// membership of differences. Translation invariance lets the smallest
/// point sit at `lo`, so only differences in `[0, hi - lo]` are queried.
pub fn max_independent_set_z<F>(
    member: F,
    lo: i64,
    hi: i64,
    limits: SearchLimits,
) -> Result<MaxIndependent<i64>, Undecided>
where
    F: Fn(i64) -> Result<bool, Undecided>,
{
    max_independent_set_z_periodic(member, lo, hi, None, limits)
}

/// As [`max_independent_set_z`], with a modulus whose residue classes are
/// used to bound branches. Periodic sets should pass their period.
pub fn max_independent_set_z_periodic<F>(
    member: F,
    lo: i64,
    hi: i64,
    period: Option<usize>,
    limits: SearchLimits,
) -> Result<MaxIndependent<i64>, Undecided>
where
    F: Fn(i64) -> Result<bool, Undecided>,
{
    if hi < lo {
        return Ok(MaxIndependent {
            witness: IndependentWitness { points: vec![], checked_pairs: 0 },
            maximality: Maximality::Exact,
            nodes: 0,
        });
    }
    if !member(0)? {
        return Ok(MaxIndependent {
            witness: IndependentWitness { points: vec![lo; limits.cap], checked_pairs: 1 },
            maximality: Maximality::CapReached,
            nodes: 0,
        });
    }
    let w = (hi - lo) as usize;
    let mut gaps = vec![false; w + 1];
    for (d, slot) in gaps.iter_mut().enumerate().skip(1) {
        *slot = !member(d as i64)?;
    }
    let mut doll_result = None;
    if limits.floor <= 1 {
        let r = doll::russian_doll(&gaps, period, limits.cap, limits.node_budget);
        let maximality = match r.status {
            doll::DollStatus::Complete => Maximality::Exact,
            doll::DollStatus::CapReached => Maximality::CapReached,
            doll::DollStatus::Budget { width } => Maximality::Budget { upper: r.profile[width - 1] + w + 1 - width },
        };
        let points = r.witness.iter().map(|&d| lo + d as i64).collect();
        let found = MaxIndependent { witness: IndependentWitness { points, checked_pairs: w as u64 }, maximality, nodes: r.nodes };
        if !matches!(found.maximality, Maximality::Budget { .. }) {
            return Ok(found);
        }
        doll_result = Some(found);
    }
    // the clique search with colouring bounds suits sets without periodic structure
    let mut allowed = vec![0u64; words(w + 1)];
    for (d, &g) in gaps.iter().enumerate() {
        if g {
            set_bit(&mut allowed, d);
        }
    }
    let g = ShiftGraph::new(&gaps);
    let target = limits.cap.saturating_sub(1);
    let floor = limits.floor.saturating_sub(1);
    let r = max_clique_above(&g, &allowed, floor, target, limits.node_budget);
    let mut points = vec![lo];
    points.extend(r.clique.iter().map(|&d| lo + d as i64));
    points.truncate(limits.cap);
    let mut maximality = from_clique_status(r.status, 1, floor);
    if points.len() >= limits.cap {
        maximality = Maximality::CapReached;
    }
    let found = MaxIndependent { witness: IndependentWitness { points, checked_pairs: w as u64 }, maximality, nodes: r.nodes };
    Ok(match doll_result {
        Some(d) => combine(d, found),
        None => found,
    })
}

/// Best of two searches of the same window: the larger witness and the
/// smaller upper bound.
fn combine<E>(a: MaxIndependent<E>, b: MaxIndependent<E>) -> MaxIndependent<E> {
    let nodes = a.nodes + b.nodes;
    let upper = match (a.upper_bound(), b.upper_bound()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    let mut best = if a.size() >= b.size() { a } else { b };
    best.nodes = nodes;
    if !matches!(best.maximality, Maximality::CapReached) {
        if let Some(u) = upper {
            best.maximality = if u <= best.size() { Maximality::Exact } else { Maximality::Budget { upper: u } };
        }
    }
    best
}

/// `1 + (largest independent set)`: `P` is n-thick on the universe exactly
/// for `n >= lower` when `upper == Some(lower)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thickness<E> {
    pub lower: usize,
    /// `None` when the cap was reached ("not thick up to cap").
    pub upper: Option<usize>,
    pub witness: IndependentWitness<E>,
}

impl<E> Thickness<E> {
    pub fn exact(&self) -> Option<usize> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }

    fn from_search(r: MaxIndependent<E>) -> Self {
        let upper = r.upper_bound().map(|u| u + 1);
        Thickness { lower: r.size() + 1, upper, witness: r.witness }
    }
}

pub fn min_thickness<G: Group>(
    group: &G,
    p: &SymmetricSet<G::Elem>,
    universe: &[G::Elem],
    limits: SearchLimits,
) -> Result<Thickness<G::Elem>, Undecided>
where
    G::Elem: Send + Sync + 'static,
{
    Ok(Thickness::from_search(max_independent_set(group, p, universe, limits)?))
}

pub fn min_thickness_z<F>(member: F, lo: i64, hi: i64, limits: SearchLimits) -> Result<Thickness<i64>, Undecided>
where
    F: Fn(i64) -> Result<bool, Undecided>,
{
    Ok(Thickness::from_search(max_independent_set_z(member, lo, hi, limits)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionReport<E> {
    pub n: usize,
    pub m: usize,
    /// `C(n+m-2, n-1)`; no independent set of this size exists.
    pub bound: u64,
    /// Search that rules out an independent set of size `bound`.
    pub exclusion: MaxIndependent<E>,
    /// Unrestricted maximum search, run only on universes of at most
    /// [`LARGEST_SEARCH_LIMIT`] points.
    pub largest: Option<MaxIndependent<E>>,
}

pub const LARGEST_SEARCH_LIMIT: usize = 4096;

impl<E> IntersectionReport<E> {
    /// `1 + max independent set` when the second search ran and finished.
    pub fn min_thickness(&self) -> Option<usize> {
        self.largest.as_ref().filter(|l| l.is_exact()).map(|l| l.size() + 1)
    }
}

fn intersection_check<E: fmt::Debug>(
    n: usize,
    m: usize,
    bound: u64,
    exclusion: MaxIndependent<E>,
    largest: Option<MaxIndependent<E>>,
) -> Result<IntersectionReport<E>, ThicksetError> {
    match exclusion.maximality {
        Maximality::Bounded { upper } if (upper as u64) < bound => {}
        Maximality::Exact if (exclusion.size() as u64) < bound => {}
        Maximality::Budget { upper } => {
            return Err(ThicksetError::Budget(format!("could not exclude size {bound} (upper bound {upper})")));
        }
        _ => {
            return Err(ThicksetError::Internal(format!(
                "independent set {:?} in an intersection of {n}- and {m}-thick sets",
                exclusion.witness.points
            )));
        }
    }
    Ok(IntersectionReport { n, m, bound, exclusion, largest })
}

/// Checks that `P ∩ Q` has no independent set of size `C(n+m-2, n-1)` in
/// the universe, where `P` is n-thick and `Q` is m-thick.
pub fn check_thick_intersection<G: Group>(
    group: &G,
    p: &SymmetricSet<G::Elem>,
    n: usize,
    q: &SymmetricSet<G::Elem>,
    m: usize,
    universe: &[G::Elem],
    node_budget: u64,
) -> Result<IntersectionReport<G::Elem>, ThicksetError>
where
    G::Elem: Send + Sync + 'static,
{
    let bound = ramsey_bound(n as u64, m as u64)?;
    let pq = p.intersection(q);
    let b = bound as usize;
    let ex = max_independent_set(group, &pq, universe, SearchLimits { cap: b, node_budget, floor: b })?;
    let largest = if universe.len() <= LARGEST_SEARCH_LIMIT {
        Some(max_independent_set(group, &pq, universe, SearchLimits { cap: b, node_budget, floor: 0 })?)
    } else {
        None
    };
    intersection_check(n, m, bound, ex, largest)
}

/// Window version of [`check_thick_intersection`] over `Z`.
pub fn check_thick_intersection_z<F, H>(
    p: F,
    n: usize,
    q: H,
    m: usize,
    lo: i64,
    hi: i64,
    node_budget: u64,
) -> Result<IntersectionReport<i64>, ThicksetError>
where
    F: Fn(i64) -> Result<bool, Undecided>,
    H: Fn(i64) -> Result<bool, Undecided>,
{
    let bound = ramsey_bound(n as u64, m as u64)?;
    let b = bound as usize;
    let both = |d: i64| Ok(p(d)? && q(d)?);
    let ex = max_independent_set_z(both, lo, hi, SearchLimits { cap: b, node_budget, floor: b })?;
    let largest = if hi - lo < LARGEST_SEARCH_LIMIT as i64 {
        Some(max_independent_set_z(both, lo, hi, SearchLimits { cap: b, node_budget, floor: 0 })?)
    } else {
        None
    };
    intersection_check(n, m, bound, ex, largest)
}

#[cfg(test)]
mod tests;
