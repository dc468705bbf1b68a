//! Presburger-definable subsets of `Z`: finite unions of arithmetic
//! progressions cut by intervals, with exact thickness and genericity
//! decisions.

mod decide;
mod lattice;
mod normal;
pub mod random;
mod syntax;

pub use decide::{
    decide_generic, decide_thick, verify_cover, DecideLimits, GenericOutcome, GenericVerdict, NotThickWitness,
    ThickOutcome, ThicknessVerdict,
};
pub use lattice::{lattice_in_double, multidim_lattice, LatticeReport, MultiLatticeReport};
pub use normal::{EventualData, Tail};
pub use syntax::parse;

use num_integer::Integer;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresburgerError {
    #[error("syntax error at column {}: {msg}", pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("modulus 0 at column {}: write the bare integer instead", pos + 1)]
    ZeroModulus { pos: usize },
    #[error("empty interval at column {}", pos + 1)]
    EmptyInterval { pos: usize },
    #[error("integer out of range at column {}", pos + 1)]
    Overflow { pos: usize },
    #[error("axis {axis} is not thick")]
    AxisNotThick { axis: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Byte range of a term in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// `(a + bZ) ∩ [lo, hi)`, or the point `a` when `b = 0`. Missing bounds are
/// infinite.
#[derive(Debug, Clone)]
pub struct Term {
    pub a: i64,
    pub b: u64,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub span: Option<Span>,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        (self.a, self.b, self.lo, self.hi) == (other.a, other.b, other.lo, other.hi)
    }
}

impl Eq for Term {}

impl Term {
    /// Progression term; the residue is reduced into `[0, b)`.
    pub fn progression(a: i64, b: u64, lo: Option<i64>, hi: Option<i64>) -> Term {
        let a = if b == 0 { a } else { a.rem_euclid(b as i64) };
        Term { a, b, lo, hi, span: None }
    }

    pub fn point(a: i64) -> Term {
        Term { a, b: 0, lo: None, hi: None, span: None }
    }

    pub fn contains(&self, x: i64) -> bool {
        if self.lo.is_some_and(|lo| x < lo) || self.hi.is_some_and(|hi| x >= hi) {
            return false;
        }
        if self.b == 0 {
            x == self.a
        } else {
            (x - self.a).rem_euclid(self.b as i64) == 0
        }
    }

    pub fn negate(&self) -> Term {
        Term {
            a: if self.b == 0 { -self.a } else { (-self.a).rem_euclid(self.b as i64) },
            b: self.b,
            lo: self.hi.map(|h| 1 - h),
            hi: self.lo.map(|l| 1 - l),
            span: self.span,
        }
    }

    /// Image under `x ↦ n·x`; open bounds scale as open bounds.
    pub fn scale(&self, n: i64) -> Option<Term> {
        let a = self.a.checked_mul(n)?;
        let b = (self.b as i64).checked_mul(n)? as u64;
        let lo = match self.lo {
            Some(l) => Some((l - 1).checked_mul(n)?.checked_add(1)?),
            None => None,
        };
        let hi = match self.hi {
            Some(h) => Some(h.checked_mul(n)?),
            None => None,
        };
        Some(Term { a, b, lo, hi, span: self.span })
    }

    /// `{k : q·k ∈ term}`, or `None` when that is empty.
    pub fn divide(&self, q: i64) -> Option<Term> {
        let lo = self.lo.map(|l| Integer::div_ceil(&l, &q));
        let hi = self.hi.map(|h| Integer::div_ceil(&h, &q));
        if self.b == 0 {
            return (self.a % q == 0).then(|| Term { a: self.a / q, b: 0, lo, hi, span: self.span });
        }
        let b = self.b as i64;
        let g = q.gcd(&b);
        if self.a % g != 0 {
            return None;
        }
        let m = b / g;
        let inv = ((q / g).extended_gcd(&m).x).rem_euclid(m);
        let a = ((self.a / g) as i128 * inv as i128).rem_euclid(m as i128) as i64;
        Some(Term { a, b: m as u64, lo, hi, span: self.span })
    }

    /// Largest finite magnitude appearing in the term.
    pub fn magnitude(&self) -> i64 {
        let mut m = 0i64;
        if self.b == 0 {
            m = self.a.abs();
        }
        for v in [self.lo, self.hi].into_iter().flatten() {
            m = m.max(v.abs());
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PresburgerSet {
    pub terms: Vec<Term>,
}

impl PresburgerSet {
    pub fn new(terms: Vec<Term>) -> Self {
        PresburgerSet { terms }
    }

    pub fn empty() -> Self {
        PresburgerSet { terms: vec![] }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.terms.iter().any(|t| t.contains(x))
    }

    pub fn negate(&self) -> PresburgerSet {
        PresburgerSet { terms: self.terms.iter().map(Term::negate).collect() }
    }

    pub fn union(&self, other: &PresburgerSet) -> PresburgerSet {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        PresburgerSet { terms }
    }

    /// `P ∪ -P`, normalized.
    pub fn symmetrize(&self) -> PresburgerSet {
        self.union(&self.negate()).normalize()
    }

    pub fn is_symmetric(&self) -> bool {
        self.normalize() == self.symmetrize()
    }

    /// lcm of the positive moduli, 1 if there are none.
    pub fn period(&self) -> u64 {
        self.terms.iter().filter(|t| t.b > 0).fold(1u64, |acc, t| num_integer::lcm(acc, t.b))
    }

    pub fn max_magnitude(&self) -> i64 {
        self.terms.iter().map(Term::magnitude).max().unwrap_or(0)
    }

    /// Termwise image `(a + bZ) ∩ I ↦ (na + nbZ) ∩ nI`.
    /// `{k : q·k ∈ P}` for `q ≥ 1`.
    pub fn divide(&self, q: i64) -> PresburgerSet {
        assert!(q >= 1, "divisor {q} must be positive");
        PresburgerSet { terms: self.terms.iter().filter_map(|t| t.divide(q)).collect() }
    }

    pub fn scale_set(&self, n: i64) -> Result<PresburgerSet, PresburgerError> {
        if n < 1 {
            return Err(PresburgerError::Precondition(format!("scale factor {n} must be at least 1")));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| t.scale(n).ok_or(PresburgerError::Overflow { pos: t.span.map_or(0, |s| s.start) }))
            .collect::<Result<_, _>>()?;
        Ok(PresburgerSet { terms })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.b, self.a) {
            (0, a) => write!(f, "{a}")?,
            (1, _) => write!(f, "Z")?,
            (b, 0) => write!(f, "{b}Z")?,
            (b, a) => write!(f, "{a}+{b}Z")?,
        }
        if self.lo.is_some() || self.hi.is_some() {
            f.write_str(" & (")?;
            match self.lo {
                Some(l) => write!(f, "{}", l - 1)?,
                None => f.write_str("-inf")?,
            }
            f.write_str(", ")?;
            match self.hi {
                Some(h) => write!(f, "{h}")?,
                None => f.write_str("inf")?,
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for PresburgerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("{}");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PresburgerSet {
    type Err = PresburgerError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
