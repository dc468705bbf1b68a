use serde::Serialize;

use super::{min_genericity, Side, SymmetricSet, ThicksetError};
use crate::groups::{FiniteGroup, Group};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma23Subgroup {
    /// `3m - 2`.
    pub exponent: usize,
    /// Elements of `P^{3m-2}`, sorted.
    pub elements: Vec<usize>,
    pub index: usize,
    /// Translates witnessing that `P` is m-generic.
    pub translates: Vec<usize>,
}

fn product_set(g: &FiniteGroup, a: &[bool], b: &[bool]) -> Vec<bool> {
    let n = g.order();
    let mut out = vec![false; n];
    for x in (0..n).filter(|&x| a[x]) {
        for y in (0..n).filter(|&y| b[y]) {
            out[g.op(&x, &y)] = true;
        }
    }
    out
}

/// Computes `P^{3m-2}` for a symmetric, identity-containing, m-generic `P`
/// and checks that it is a subgroup of index at most `m`.
pub fn lemma23_subgroup(p: &SymmetricSet<usize>, m: usize, g: &FiniteGroup) -> Result<Lemma23Subgroup, ThicksetError> {
    if m == 0 {
        return Err(ThicksetError::Precondition("m must be at least 1".into()));
    }
    let elems = g.elements();
    if let Some(x) = p.asymmetry_on(g, &elems)? {
        return Err(ThicksetError::Precondition(format!("P is not symmetric at {}", g.label(x))));
    }
    if !p.contains(&g.identity_id())? {
        return Err(ThicksetError::Precondition("identity is not in P".into()));
    }
    let cert = min_genericity(g, p, &elems, Side::Right, 1_000_000)?;
    if cert.lower_bound > m {
        return Err(ThicksetError::Precondition(format!("P is not {m}-generic (needs {})", cert.lower_bound)));
    }
    if cert.m() > m {
        return Err(ThicksetError::Budget(format!("could not decide {m}-genericity")));
    }
    let base: Vec<bool> = elems.iter().map(|x| p.contains(x)).collect::<Result<_, _>>()?;
    let exponent = 3 * m - 2;
    let mut power = base.clone();
    for _ in 1..exponent {
        power = product_set(g, &power, &base);
    }
    let sq = product_set(g, &power, &power);
    if sq != power {
        return Err(ThicksetError::Internal(format!("P^{exponent} is not closed under products")));
    }
    if (0..g.order()).any(|x| power[x] && !power[g.inverse(&x)]) {
        return Err(ThicksetError::Internal(format!("P^{exponent} is not closed under inverses")));
    }
    let elements: Vec<usize> = (0..g.order()).filter(|&x| power[x]).collect();
    let index = g.order() / elements.len();
    if index > m {
        return Err(ThicksetError::Internal(format!("P^{exponent} has index {index} > {m}")));
    }
    Ok(Lemma23Subgroup { exponent, elements, index, translates: cert.translates })
}
