use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Group, GroupError};

/// A finite group given by its full multiplication table. Elements are the
/// ids `0..order`, numbered in the canonical order of their labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

pub const MAX_FINITE_ORDER: usize = 120;

impl FiniteGroup {
    /// Builds a group from a table, checking the Latin-square property,
    /// the identity, inverses and associativity on all triples.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self, GroupError> {
        let order = labels.len();
        if order == 0 || table.len() != order * order {
            return Err(GroupError::Invalid("table shape does not match label count".into()));
        }
        if table.iter().any(|&v| v >= order) {
            return Err(GroupError::Invalid("table entry out of range".into()));
        }
        for r in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for c in 0..order {
                row[table[r * order + c]] = true;
                col[table[c * order + r]] = true;
            }
            if row.iter().chain(col.iter()).any(|seen| !seen) {
                return Err(GroupError::Invalid(format!("row/column {r} is not a permutation")));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| GroupError::Invalid("no identity element".into()))?;
        let mut inverses = vec![0; order];
        for (x, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&y| table[x * order + y] == identity)
                .ok_or_else(|| GroupError::Invalid(format!("element {x} has no inverse")))?;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(GroupError::Invalid(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), order, table, inverses, identity, labels })
    }

    /// The cyclic group Z/k, elements labelled by their residue.
    pub fn cyclic(k: usize) -> Result<Self, GroupError> {
        if k == 0 || k > MAX_FINITE_ORDER {
            return Err(GroupError::Invalid(format!("cyclic order {k} outside 1..=120")));
        }
        let table = (0..k * k).map(|i| (i / k + i % k) % k).collect();
        let labels = (0..k).map(|i| i.to_string()).collect();
        Self::from_table(format!("Z/{k}"), table, labels)
    }

    /// The dihedral group D_k of order 2k: ids `0..k` are the rotations r^i,
    /// ids `k..2k` the reflections s r^i.
    pub fn dihedral(k: usize) -> Result<Self, GroupError> {
        if k == 0 || 2 * k > MAX_FINITE_ORDER {
            return Err(GroupError::Invalid(format!("dihedral parameter {k} outside 1..=60")));
        }
        let n = 2 * k;
        let decode = |id: usize| (id / k, id % k);
        let encode = |f: usize, i: usize| f * k + i;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (fa, ia) = decode(a);
                let (fb, ib) = decode(b);
                // (s^fa r^ia)(s^fb r^ib) = s^(fa+fb) r^((-1)^fb ia + ib)
                let twisted = if fb == 1 { (k - ia) % k } else { ia };
                table[a * n + b] = encode((fa + fb) % 2, (twisted + ib) % k);
            }
        }
        let labels = (0..n)
            .map(|id| {
                let (f, i) = decode(id);
                if f == 0 {
                    format!("r{i}")
                } else {
                    format!("sr{i}")
                }
            })
            .collect();
        Self::from_table(format!("D{k}"), table, labels)
    }

    /// The symmetric group S_n (n <= 5) on permutations in lexicographic order,
    /// composed right-to-left: (p q)(x) = p(q(x)).
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 5 {
            return Err(GroupError::Invalid(format!("symmetric degree {n} outside 1..=5")));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let m = perms.len();
        let mut table = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                let comp: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
                table[a * m + b] = index(&comp);
            }
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Self::from_table(format!("S{n}"), table, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_id(&self) -> usize {
        self.identity
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.order).collect()
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Order of an element.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity {
            acc = self.op(&acc, &x);
            k += 1;
        }
        k
    }
}

fn permutations(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.table[a * self.order + b]
    }

    fn inverse(&self, a: &usize) -> usize {
        self.inverses[*a]
    }

    fn power(&self, a: &usize, k: &BigInt) -> usize {
        let ord = BigInt::from(self.element_order(*a));
        let e = k.mod_floor(&ord).to_usize().expect("reduced exponent fits");
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.op(&acc, a);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(g: &FiniteGroup) {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.op(&a, &g.inverse(&a)), g.identity());
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.op(&g.op(&a, &b), &c), g.op(&a, &g.op(&b, &c)));
                }
            }
        }
    }

    #[test]
    fn builtin_groups_satisfy_axioms() {
        for k in [1, 2, 6, 12, 60] {
            check_axioms(&FiniteGroup::cyclic(k).unwrap());
        }
        for k in [1, 2, 3, 6, 10] {
            check_axioms(&FiniteGroup::dihedral(k).unwrap());
        }
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert_eq!(s4.order(), 24);
        check_axioms(&s4);
    }

    #[test]
    fn largest_builtins_are_valid() {
        // construction itself checks all triples
        assert_eq!(FiniteGroup::cyclic(120).unwrap().order(), 120);
        assert_eq!(FiniteGroup::dihedral(60).unwrap().order(), 120);
        assert_eq!(FiniteGroup::symmetric(5).unwrap().order(), 120);
    }

    #[test]
    fn dihedral_is_nonabelian() {
        let d6 = FiniteGroup::dihedral(6).unwrap();
        let r = 1;
        let s = 6;
        assert_ne!(d6.op(&r, &s), d6.op(&s, &r));
        assert_eq!(d6.element_order(r), 6);
        assert_eq!(d6.element_order(s), 2);
    }

    #[test]
    fn rejects_bad_tables() {
        // not a Latin square
        let err = FiniteGroup::from_table("bad", vec![0, 0, 0, 1], vec!["a".into(), "b".into()]);
        assert!(err.is_err());
        assert!(FiniteGroup::cyclic(0).is_err());
        assert!(FiniteGroup::cyclic(121).is_err());
    }

    #[test]
    fn power_reduces_exponent() {
        let z7 = FiniteGroup::cyclic(7).unwrap();
        assert_eq!(z7.power(&3, &BigInt::from(-1)), 4);
        assert_eq!(z7.power(&3, &BigInt::from(1_000_000_007i64)), (3 * (1_000_000_007usize % 7)) % 7);
    }
}
