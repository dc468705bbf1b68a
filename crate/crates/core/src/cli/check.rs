//! Replays the verification recorded in a report without redoing searches.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde_json::Value;

use super::{input_hash, parse_alpha, Config};
use crate::groups::{AbelianGroup, HeisenbergElement};
use crate::nilpower::{cross_check, HeisSubgroup};
use crate::presburger::{lattice_in_double, parse, verify_cover, NotThickWitness, PresburgerSet};
use crate::rotation::surd::{format_rational, parse_rational};
use crate::rotation::{build_dense_hom, check_growth, verify_witness_table, BohrSet, DenseSpec, TorsionTail, WitnessTable};
use crate::vdw::{verify_no_subgroup, verify_power_cover, ArcCoverCertificate, NoSubgroupCertificate, PowerCoverCertificate, Variant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckError {
    /// The report cannot be read.
    Malformed(String),
    /// The report reads fine but a claim fails.
    Rejected(String),
}

type Check = Result<(), CheckError>;

fn bad(m: impl Into<String>) -> CheckError {
    CheckError::Malformed(m.into())
}

fn reject(m: impl Into<String>) -> CheckError {
    CheckError::Rejected(m.into())
}

fn ensure(cond: bool, m: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(reject(m))
    }
}

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, CheckError> {
    serde_json::from_value(v.get(key).cloned().ok_or_else(|| bad(format!("missing {key}")))?)
        .map_err(|e| bad(format!("{key}: {e}")))
}

fn input<'a>(inputs: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str, CheckError> {
    inputs.get(key).map(String::as_str).ok_or_else(|| bad(format!("missing input {key}")))
}

fn set_of(inputs: &BTreeMap<String, String>) -> Result<PresburgerSet, CheckError> {
    parse(input(inputs, "set")?).map_err(|e| bad(e.to_string()))
}

fn bohr(alpha: &str, t: &str) -> Result<BohrSet, CheckError> {
    let d = parse_alpha(alpha).ok_or_else(|| bad("alpha"))?;
    let t = parse_rational(t).ok_or_else(|| bad("t"))?;
    BohrSet::surd(d, t).map_err(|e| bad(e.to_string()))
}

fn rot(e: crate::rotation::RotationError) -> CheckError {
    reject(e.to_string())
}

/// Points pairwise at differences outside the set.
fn independent(points: &[i64], outside: impl Fn(i64) -> Result<bool, CheckError>) -> Check {
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            ensure(outside(b - a)?, &format!("{b} - {a} lies in the set"))?;
        }
    }
    Ok(())
}

pub fn check_report(text: &str) -> Check {
    let r: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let command: String = field(&r, "command")?;
    let inputs: BTreeMap<String, String> = field(&r, "inputs")?;
    let config: Config = field(&r, "config")?;
    let hash: String = field(&r, "input_hash")?;
    ensure(hash == input_hash(&command, &inputs, &config), "input hash does not match the inputs")?;
    let cert = r.get("cert").ok_or_else(|| bad("missing cert"))?;
    let kind: String = field(cert, "type")?;
    let payload = cert.get("payload").ok_or_else(|| bad("missing payload"))?;
    match kind.as_str() {
        "normal_form" => normal_form(&inputs, payload),
        "thickness" => thickness(&inputs, payload),
        "cover" => cover(&inputs, payload),
        "bohr_member" => bohr_member(&inputs, payload),
        "no_subgroup" => {
            let x = bohr(input(&inputs, "alpha")?, input(&inputs, "t")?)?;
            let table: WitnessTable = field(payload, "table")?;
            let complete: bool = field(payload, "complete")?;
            ensure(complete == table.is_complete(), "completeness flag")?;
            ensure(verify_witness_table(&x, &table).map_err(rot)?, "witness table fails")
        }
        "bohr_thickness" => {
            let x = bohr(input(&inputs, "alpha")?, input(&inputs, "t")?)?;
            let points: Vec<i64> = field(payload, "witness")?;
            let lower: usize = field(payload, "lower")?;
            ensure(lower == points.len() + 1, "lower bound and witness size disagree")?;
            independent(&points, |d| Ok(!x.member_int(d).map_err(rot)?))
        }
        "arc_cover" => arc_cover(payload),
        "heisenberg_power" => heisenberg(payload),
        "dense_hom" => dense_hom(&inputs, payload),
        "unresolved" => Err(reject("unresolved reports carry no certificate")),
        other => Err(bad(format!("unknown certificate type {other}"))),
    }
}

fn normal_form(inputs: &BTreeMap<String, String>, payload: &Value) -> Check {
    let p = set_of(inputs)?;
    let nf: String = field(payload, "normal_form")?;
    ensure(nf == p.normalize().to_string(), "normal form differs")?;
    ensure(payload["eventual"] == serde_json::to_value(p.eventual_data()).expect("serializes"), "eventual data differs")
}

fn thickness(inputs: &BTreeMap<String, String>, payload: &Value) -> Check {
    let s = set_of(inputs)?.symmetrize();
    let printed: String = field(payload, "set")?;
    ensure(printed == s.to_string(), "symmetrization differs")?;
    ensure(payload["eventual"] == serde_json::to_value(s.eventual_data()).expect("serializes"), "eventual data differs")?;
    if payload.get("not_thick").is_some() {
        let w: NotThickWitness = field(payload, "not_thick")?;
        if let NotThickWitness::Progression { modulus, spacing } = w {
            let tail = s.tail();
            ensure(spacing > 0 && spacing % modulus as i64 == 0 && tail.period % modulus == 0, "progression shape")?;
            ensure(spacing > tail.threshold && !tail.plus_has(0), "progression leaves the tail")?;
        }
        return ensure(w.verify(&s, 64), "witness family meets the set");
    }
    let witness: Vec<i64> = field(payload, "witness")?;
    let lower: usize = field(payload, "lower")?;
    let upper: usize = field(payload, "upper")?;
    let minimal: Option<usize> = field(payload, "minimal")?;
    ensure(lower == witness.len() + 1 && upper >= lower, "bounds and witness disagree")?;
    ensure(minimal == (lower == upper).then_some(lower), "minimal flag")?;
    independent(&witness, |d| Ok(!s.contains(d)))?;
    if let Some(l) = payload.get("lattice").filter(|l| !l.is_null()) {
        let b: u64 = field(l, "b")?;
        let again = lattice_in_double(&s).map_err(|e| reject(e.to_string()))?;
        ensure(again.b == b, "lattice differs")?;
        for k in -20..=20i64 {
            let (x, y) = again.representatives(k);
            ensure(s.contains(x) && s.contains(y) && x + y == k * b as i64, "lattice representative")?;
        }
    }
    Ok(())
}

fn cover(inputs: &BTreeMap<String, String>, payload: &Value) -> Check {
    let s = set_of(inputs)?.symmetrize();
    let tail = s.tail();
    let has = |v: &[bool]| v.iter().any(|&b| b);
    if payload.get("translates").is_none() {
        return ensure(!has(&tail.plus) || !has(&tail.minus), "both tails are nonempty");
    }
    ensure(has(&tail.plus) && has(&tail.minus), "a tail is empty")?;
    let translates: Vec<i64> = field(payload, "translates")?;
    let upper: Option<usize> = field(payload, "upper")?;
    match upper {
        Some(u) => {
            ensure(translates.len() == u, "cover size")?;
            ensure(verify_cover(&s, &translates), "translates do not cover")
        }
        None => ensure(translates.is_empty(), "unexpected translates"),
    }
}

fn bohr_member(inputs: &BTreeMap<String, String>, payload: &Value) -> Check {
    let x = bohr(input(inputs, "alpha")?, input(inputs, "t")?)?;
    let n: i64 = field(payload, "n")?;
    let member: bool = field(payload, "member")?;
    let value: String = field(payload, "value")?;
    ensure(value == x.hom().value_int(&BigInt::from(n)).map_err(rot)?.to_string(), "value differs")?;
    ensure(member == x.member_int(n).map_err(rot)?, "membership differs")
}

fn arc_cover(payload: &Value) -> Check {
    let n: u64 = field(payload, "n")?;
    let variant: Variant = field(payload, "variant")?;
    let arcs: ArcCoverCertificate = field(payload, "arc_cover")?;
    ensure(arcs.verify(), "arc cover fails")?;
    ensure(arcs.arcs.len() == variant.arcs(n), "arc count")?;
    let t = variant.radius(n);
    ensure(arcs.t == format_rational(&t), "arc radius")?;
    let base = BohrSet::surd(arcs.radicand, t.clone()).map_err(rot)?;
    let p = base.with_t(&t * BigInt::from(2)).map_err(rot)?;
    let pn = base.with_t(&t * BigInt::from(2 * n)).map_err(rot)?;
    let no_sub: NoSubgroupCertificate = field(payload, "no_subgroup")?;
    ensure(no_sub.complete && verify_no_subgroup(&pn, &no_sub).map_err(|e| reject(e.to_string()))?, "no-subgroup table fails")?;
    let pc: PowerCoverCertificate = field(payload, "power_cover")?;
    ensure(pc.k == variant.covering_power(n), "covering power")?;
    ensure(verify_power_cover(&p, &pc).map_err(|e| reject(e.to_string()))?, "power cover fails")
}

fn heisenberg(payload: &Value) -> Check {
    let n: u64 = field(payload, "n")?;
    let h: HeisSubgroup = field(payload, "subgroup")?;
    let index: String = field(payload, "index")?;
    let radius: i64 = field(payload, "checked_radius")?;
    ensure(index == h.index().to_string(), "index")?;
    cross_check(&h, n, radius).map_err(|e| reject(e.to_string()))?;
    if let Some(q) = payload.get("query") {
        let q: String = serde_json::from_value(q.clone()).map_err(|e| bad(e.to_string()))?;
        let c: Vec<i64> =
            q.trim_matches(|c| c == '(' || c == ')').split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad("query"))?;
        let [x, y, z] = c[..] else { return Err(bad("query")) };
        let member: bool = field(payload, "member")?;
        ensure(member == h.contains(&HeisenbergElement::new(x, y, z)), "membership differs")?;
    }
    Ok(())
}

fn dense_hom(inputs: &BTreeMap<String, String>, payload: &Value) -> Check {
    if payload.get("reason").is_some() {
        let moduli: Vec<u64> = field(payload, "moduli")?;
        let tail = match input(inputs, "tail")? {
            "finite" => TorsionTail::Finite,
            "repeating" => TorsionTail::Repeating,
            _ => TorsionTail::Growth,
        };
        return ensure(build_dense_hom(&DenseSpec::TorsionSum { moduli, tail }).is_err(), "construction succeeds");
    }
    let seq: Vec<u64> = field(payload, "moduli")?;
    let index: usize = field(payload, "index")?;
    let eps = parse_rational(&field::<String>(payload, "eps")?).ok_or_else(|| bad("eps"))?;
    check_growth(&seq).map_err(rot)?;
    ensure(index < seq.len() && BigRational::new(1.into(), seq[index].into()) < eps, "index")?;
    let h = build_dense_hom(&DenseSpec::TorsionSum { moduli: seq.clone(), tail: TorsionTail::Finite }).map_err(rot)?;
    let w = &payload["witness"]["Found"];
    let coords: Vec<String> = field(w, "coords")?;
    let coords: Vec<BigInt> = coords.iter().map(|c| c.parse()).collect::<Result<_, _>>().map_err(|_| bad("coords"))?;
    let x = AbelianGroup::torsion(&seq).element(vec![], coords).map_err(|e| bad(e.to_string()))?;
    let v = h.value(&x).map_err(rot)?;
    ensure(!v.is_zero() && v.abs_lt(&eps), "witness is not below eps")?;
    ensure(field::<String>(w, "value")? == v.to_string(), "witness value")
}

#[cfg(test)]
mod tests {
    use super::super::run;
    use super::*;

    fn report(args: &[&str]) -> String {
        let o = run(std::iter::once("thickcalc").chain(args.iter().copied()));
        assert!(o.code <= 1, "{} {}", o.code, o.stderr);
        o.stdout
    }

    #[test]
    fn replays_accept_genuine_reports() {
        for args in [
            &["parse", "--set", "2Z & (-5, inf) | 3"][..],
            &["thick", "--set", "2Z"],
            &["thick", "--set", "1+2Z | -1+2Z"],
            &["thick", "--set", "7Z | 1+7Z | 2+7Z | 3+7Z | 4+7Z | 5+7Z"],
            &["generic", "--set", "2Z | 3Z"],
            &["generic", "--set", "2Z & (-inf, 0)"],
            &["rotation", "--t", "1/3", "--member", "3"],
            &["rotation", "--t", "4/9", "--witnesses", "20"],
            &["vdw", "--n", "1", "--variant", "2"],
            &["heis", "--n", "3", "--member", "3,3,1"],
            &["hom", "--moduli", "2,3,13,235", "--pairs", "50"],
            &["hom", "--moduli", "2,3,5"],
        ] {
            assert_eq!(check_report(&report(args)), Ok(()), "{args:?}");
        }
    }

    #[test]
    fn replays_reject_tampering() {
        let text = report(&["thick", "--set", "2Z"]);
        let forged = text.replacen("\"witness\": [\n        0,\n        1\n      ]", "\"witness\": [\n        0,\n        2\n      ]", 1);
        assert_ne!(forged, text);
        assert!(matches!(check_report(&forged), Err(CheckError::Rejected(_))));
        let moved = text.replace("\"2Z\"", "\"3Z\"");
        assert!(matches!(check_report(&moved), Err(CheckError::Rejected(_))));
        let text = report(&["vdw", "--n", "1", "--variant", "1"]);
        let mut v: Value = serde_json::from_str(&text).unwrap();
        v["cert"]["payload"]["arc_cover"]["arcs"].as_array_mut().unwrap().pop();
        assert!(matches!(check_report(&v.to_string()), Err(CheckError::Rejected(_))));
        assert!(matches!(check_report("{"), Err(CheckError::Malformed(_))));
    }
}
