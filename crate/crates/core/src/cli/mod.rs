//! Command-line front end: argument parsing, dispatch, JSON reports, CSV
//! sweeps and certificate replay.

mod check;
mod config;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use check::check_report;
pub use config::{Config, CONFIG_ENV};

use crate::groups::{AbelianGroup, FGAbelianElement, HeisenbergElement};
use crate::nilpower::{power_subgroup, steps_to_generate};
use crate::presburger::{
    decide_generic, decide_thick, lattice_in_double, parse, DecideLimits, GenericOutcome, PresburgerSet, ThickOutcome,
};
use crate::rotation::surd::{format_rational, parse_rational};
use crate::rotation::{
    bohr_sweep, build_dense_hom, check_hom_law, density_witness, max_subgroup_witnesses, thickness_of_bohr,
    torsion_density_index, BohrSet, DenseSpec, DensityWitness, RotationError, TorsionTail, WitnessEntry,
};
use crate::thickset::SearchLimits;
use crate::vdw::{
    build_covering, certify_no_subgroup, certify_power_covers, difference_set, sum_power, Variant, VdwError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "thickcalc", version, about = "Exact thick-set, Bohr-set, Presburger and Heisenberg computations")]
#[command(arg_required_else_help = true, args_conflicts_with_subcommands = true)]
struct Cli {
    /// Replay the verification recorded in a JSON report.
    #[arg(long, value_name = "FILE")]
    check_cert: Option<String>,
    /// Config file (`key = value`); defaults to $THICKCALC_CONFIG.
    #[arg(long, value_name = "FILE", global = true)]
    config: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TailArg {
    Finite,
    Repeating,
    Growth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepKind {
    BohrMembership,
    GenerationProfile,
    WitnessTable,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form and eventual data of a Presburger set.
    Parse {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Thickness of the symmetrization of a Presburger set.
    Thick {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        /// Decide thickness without pinning the minimal value.
        #[arg(long)]
        decide_only: bool,
    },
    /// Least number of translates covering Z.
    Generic {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Bohr sets `X(t)` of the rotation by `alpha`.
    Rotation {
        #[arg(long, default_value = "sqrt2")]
        alpha: String,
        #[arg(long)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        member: Option<i64>,
        /// Subgroup-freeness witnesses for `m` up to this bound.
        #[arg(long)]
        witnesses: Option<u64>,
        /// Minimal thickness on `[-window_radius, window_radius]`.
        #[arg(long)]
        thickness: bool,
    },
    /// Covering of Z whose difference-set powers contain no subgroup.
    Vdw {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        variant: u8,
        #[arg(long, default_value = "sqrt2")]
        alpha: String,
    },
    /// Subgroup generated by `n`-th powers in the Heisenberg group.
    Heis {
        #[arg(long)]
        n: u64,
        /// Membership query `x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        member: Option<String>,
    },
    /// Dense homomorphism on a torsion sum `⊕ Z/c_i`.
    Hom {
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        #[arg(long, value_enum, default_value_t = TailArg::Growth)]
        tail: TailArg,
        #[arg(long, default_value = "1/100")]
        eps: String,
        /// Random pairs for the homomorphism law.
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
    },
    /// CSV rows for plotting.
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKind,
        #[arg(long, default_value = "sqrt2")]
        alpha: String,
        #[arg(long)]
        t: Option<String>,
        #[arg(long, default_value_t = -100, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 100, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[arg(long, default_value_t = 100)]
        max_m: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cert {
    #[serde(rename = "type")]
    pub kind: String,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub input_hash: String,
    pub verdict: String,
    pub cert: Cert,
    pub seed: u64,
    pub version: String,
    pub config: Config,
    pub timings: Timings,
}

struct Done {
    code: i32,
    verdict: String,
    cert: Cert,
    summary: Vec<String>,
}

fn done(code: i32, verdict: &str, kind: &str, payload: Value, summary: Vec<String>) -> Done {
    Done { code, verdict: verdict.into(), cert: Cert { kind: kind.into(), payload }, summary }
}

fn unresolved(reason: String) -> Done {
    done(EXIT_UNRESOLVED, "unresolved", "unresolved", json!({ "reason": reason }), vec![reason.clone()])
}

enum Fail {
    Usage(String),
}

impl From<RotationError> for Fail {
    fn from(e: RotationError) -> Self {
        Fail::Usage(e.to_string())
    }
}

/// `sqrt2`, `sqrt(2)`, `√2` or a bare radicand.
pub fn parse_alpha(s: &str) -> Option<u64> {
    let t = s.trim();
    let t = t.strip_prefix("sqrt").or_else(|| t.strip_prefix('√')).unwrap_or(t).trim();
    let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
    t.trim().parse().ok()
}

fn radicand(s: &str) -> Result<u64, Fail> {
    parse_alpha(s).ok_or_else(|| Fail::Usage(format!("cannot read alpha {s:?}; expected sqrtD")))
}

fn rational_arg(s: &str) -> Result<BigRational, Fail> {
    parse_rational(s).ok_or_else(|| Fail::Usage(format!("cannot read rational {s:?}")))
}

fn presburger(s: &str) -> Result<PresburgerSet, Fail> {
    parse(s).map_err(|e| Fail::Usage(e.to_string()))
}

pub fn input_hash(command: &str, inputs: &BTreeMap<String, String>, config: &Config) -> String {
    let canonical = json!({ "command": command, "inputs": inputs, "config": config }).to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome::usage(text),
            };
        }
    };
    let mut config = match Config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(format!("config: {e}")),
    };
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(path) = cli.check_cert {
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return Outcome::usage(format!("{path}: {e}")),
        };
        return match check_report(&text) {
            Ok(()) => Outcome { code: EXIT_OK, stdout: "certificate verified\n".into(), stderr: String::new() },
            Err(check::CheckError::Malformed(m)) => Outcome::usage(format!("malformed report: {m}")),
            Err(check::CheckError::Rejected(m)) => {
                Outcome { code: EXIT_REFUTED, stdout: format!("certificate rejected: {m}\n"), stderr: String::new() }
            }
        };
    }
    let Some(command) = cli.command else {
        return Outcome::usage("no subcommand given");
    };
    if let Command::Sweep { kind, alpha, t, lo, hi, n, radius, max_m } = &command {
        return match sweep(*kind, alpha, t.as_deref(), *lo, *hi, *n, *radius, *max_m, &config) {
            Ok(csv) => Outcome { code: EXIT_OK, stdout: csv, stderr: String::new() },
            Err(Fail::Usage(m)) => Outcome::usage(m),
        };
    }
    let (name, inputs) = describe(&command);
    let start = Instant::now();
    let result = match dispatch(&command, &config) {
        Ok(d) => d,
        Err(Fail::Usage(m)) => return Outcome::usage(m),
    };
    let report = Report {
        input_hash: input_hash(&name, &inputs, &config),
        command: name,
        inputs,
        verdict: result.verdict,
        cert: result.cert,
        seed: config.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        config,
        timings: Timings { elapsed_ms: start.elapsed().as_millis() as u64 },
    };
    let stdout = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => {
            let mut s = format!("command: {}\nverdict: {}\n", report.command, report.verdict);
            for line in &result.summary {
                s.push_str(line);
                s.push('\n');
            }
            s
        }
    };
    Outcome { code: result.code, stdout, stderr: String::new() }
}

fn describe(c: &Command) -> (String, BTreeMap<String, String>) {
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        m.insert(k.to_string(), v);
    };
    let name = match c {
        Command::Parse { set } => {
            put("set", set.clone());
            "parse"
        }
        Command::Thick { set, decide_only } => {
            put("set", set.clone());
            put("decide_only", decide_only.to_string());
            "thick"
        }
        Command::Generic { set } => {
            put("set", set.clone());
            "generic"
        }
        Command::Rotation { alpha, t, member, witnesses, thickness } => {
            put("alpha", alpha.clone());
            put("t", t.clone());
            if let Some(x) = member {
                put("member", x.to_string());
            }
            if let Some(x) = witnesses {
                put("witnesses", x.to_string());
            }
            if *thickness {
                put("thickness", "true".into());
            }
            "rotation"
        }
        Command::Vdw { n, variant, alpha } => {
            put("n", n.to_string());
            put("variant", variant.to_string());
            put("alpha", alpha.clone());
            "vdw"
        }
        Command::Heis { n, member } => {
            put("n", n.to_string());
            if let Some(x) = member {
                put("member", x.clone());
            }
            "heis"
        }
        Command::Hom { moduli, tail, eps, pairs } => {
            put("moduli", moduli.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            put("tail", format!("{tail:?}").to_lowercase());
            put("eps", eps.clone());
            put("pairs", pairs.to_string());
            "hom"
        }
        Command::Sweep { .. } => "sweep",
    };
    (name.to_string(), m)
}

fn limits(config: &Config, minimal: bool) -> DecideLimits {
    DecideLimits { max_m: config.dfs_cap, minimal, ..DecideLimits::default() }
}

fn dispatch(c: &Command, config: &Config) -> Result<Done, Fail> {
    match c {
        Command::Parse { set } => {
            let p = presburger(set)?;
            let n = p.normalize();
            let payload = json!({
                "normal_form": n.to_string(),
                "symmetric": p.is_symmetric(),
                "eventual": p.eventual_data(),
            });
            Ok(done(EXIT_OK, "parsed", "normal_form", payload, vec![format!("normal form: {n}")]))
        }
        Command::Thick { set, decide_only } => thick(&presburger(set)?, config, !decide_only),
        Command::Generic { set } => generic(&presburger(set)?, config),
        Command::Rotation { alpha, t, member, witnesses, thickness } => {
            let x = BohrSet::surd(radicand(alpha)?, rational_arg(t)?)?;
            rotation(&x, *member, *witnesses, *thickness, config)
        }
        Command::Vdw { n, variant, alpha } => {
            let v = Variant::from_index(*variant).expect("clap restricts the range");
            vdw(*n, v, radicand(alpha)?, config)
        }
        Command::Heis { n, member } => heis(*n, member.as_deref()),
        Command::Hom { moduli, tail, eps, pairs } => hom(moduli, *tail, &rational_arg(eps)?, *pairs, config),
        Command::Sweep { .. } => unreachable!("handled before dispatch"),
    }
}

fn thick(p: &PresburgerSet, config: &Config, minimal: bool) -> Result<Done, Fail> {
    let v = decide_thick(p, limits(config, minimal));
    let set = v.symmetrized.to_string();
    Ok(match &v.outcome {
        ThickOutcome::Thick { lower, upper, witness, window } => {
            let lattice = lattice_in_double(&v.symmetrized).ok().map(|l| json!({ "b": l.b, "threshold": l.threshold }));
            let payload = json!({
                "set": set,
                "input_symmetric": v.input_symmetric,
                "eventual": v.eventual,
                "minimal": v.minimal(),
                "lower": lower,
                "upper": upper,
                "witness": witness,
                "window": window,
                "lattice": lattice,
            });
            let line = match v.minimal() {
                Some(m) => format!("minimal: {m}"),
                None => format!("minimal in [{lower}, {upper}]"),
            };
            done(EXIT_OK, "thick", "thickness", payload, vec![line, format!("independent set: {witness:?}")])
        }
        ThickOutcome::NotThick(w) => {
            let payload = json!({ "set": set, "input_symmetric": v.input_symmetric, "eventual": v.eventual, "not_thick": w });
            done(EXIT_REFUTED, "not_thick", "thickness", payload, vec![format!("witness family: {w:?}")])
        }
    })
}

fn generic(p: &PresburgerSet, config: &Config) -> Result<Done, Fail> {
    let v = decide_generic(p, limits(config, true));
    let set = v.symmetrized.to_string();
    Ok(match &v.outcome {
        GenericOutcome::NotGeneric => {
            let payload = json!({ "set": set, "eventual": v.eventual });
            done(EXIT_REFUTED, "not_generic", "cover", payload, vec!["a tail has no residues".into()])
        }
        GenericOutcome::Generic { lower, upper, translates } => {
            let payload = json!({
                "set": set,
                "eventual": v.eventual,
                "minimal": v.minimal(),
                "lower": lower,
                "upper": upper,
                "translates": translates,
            });
            let line = match (v.minimal(), upper) {
                (Some(m), _) => format!("minimal: {m}"),
                (None, Some(u)) => format!("minimal in [{lower}, {u}]"),
                (None, None) => format!("minimal at least {lower}"),
            };
            done(EXIT_OK, "generic", "cover", payload, vec![line, format!("translates: {translates:?}")])
        }
    })
}

fn rotation(x: &BohrSet, member: Option<i64>, witnesses: Option<u64>, thickness: bool, config: &Config) -> Result<Done, Fail> {
    let base = json!({ "alpha": format!("sqrt({})", x.hom().radicand()), "t": format_rational(x.t()) });
    match (member, witnesses, thickness) {
        (Some(n), None, false) => {
            let v = x.hom().value_int(&BigInt::from(n))?;
            let inside = x.member_int(n)?;
            let mut payload = base;
            payload["n"] = json!(n);
            payload["value"] = json!(v.to_string());
            payload["distance"] = json!(v.abs_string());
            payload["member"] = json!(inside);
            let (code, verdict) = if inside { (EXIT_OK, "member") } else { (EXIT_REFUTED, "not a member") };
            Ok(done(code, verdict, "bohr_member", payload, vec![format!("|{n}·alpha| = {}", v.abs_string())]))
        }
        (None, Some(m), false) => {
            let table = max_subgroup_witnesses(x, m, config.witness_bound)?;
            let complete = table.is_complete();
            let open = table.entries.iter().filter(|e| matches!(e, WitnessEntry::Unresolved { .. })).count();
            let payload = json!({ "set": x.describe(), "table": table, "complete": complete });
            let (code, verdict) = if complete { (EXIT_OK, "no_subgroup") } else { (EXIT_UNRESOLVED, "unresolved") };
            Ok(done(code, verdict, "no_subgroup", payload, vec![format!("unresolved moduli: {open}")]))
        }
        (None, None, true) => {
            let r = config.window_radius;
            let lim = SearchLimits { cap: config.dfs_cap, ..SearchLimits::default() };
            let b = thickness_of_bohr(x, -r, r, lim)?;
            let mut payload = base;
            payload["window"] = json!(r);
            payload["analytic"] = json!(b.analytic);
            payload["quoted_constant"] = json!(b.quoted_constant);
            payload["lower"] = json!(b.empirical.lower);
            payload["upper"] = json!(b.empirical.upper);
            payload["witness"] = json!(b.empirical.witness.points);
            let summary = vec![format!("empirical minimal thickness in [{}, {:?}]", b.empirical.lower, b.empirical.upper)];
            Ok(match b.empirical.exact() {
                Some(_) => done(EXIT_OK, "thick", "bohr_thickness", payload, summary),
                None => done(EXIT_UNRESOLVED, "unresolved", "bohr_thickness", payload, summary),
            })
        }
        _ => Err(Fail::Usage("rotation needs exactly one of --member, --witnesses, --thickness".into())),
    }
}

fn vdw(n: u64, v: Variant, d: u64, config: &Config) -> Result<Done, Fail> {
    let c = match build_covering(n, v, d) {
        Ok(c) => c,
        Err(VdwError::Precondition(m)) => return Err(Fail::Usage(m)),
        Err(VdwError::Rotation(e)) => return Err(e.into()),
        Err(e @ VdwError::SearchExhausted { .. }) => return Ok(unresolved(e.to_string())),
    };
    let window = config.window_radius.min(2_000);
    let bound = config.witness_bound;
    let run = || -> Result<Done, VdwError> {
        let p = difference_set(&c, window, bound)?;
        let (pn, step) = sum_power(&p.set, n, window, bound)?;
        let no_sub = certify_no_subgroup(&pn, 100, bound)?;
        let k = v.covering_power(n);
        let cover = certify_power_covers(&p.set, k, 100, config.window_radius, bound as i64)?;
        let identities_clean = p.check.is_clean() && step.as_ref().is_none_or(|r| r.is_clean());
        let payload = json!({
            "n": n,
            "variant": v,
            "base": c.base.describe(),
            "translates": c.translates,
            "search_bound": c.search_bound,
            "image_avoids_rationals": c.image_avoids_rationals,
            "arc_cover": c.certificate,
            "difference_set": p.set.describe(),
            "power": n,
            "power_set": pn.describe(),
            "identities_clean": identities_clean,
            "no_subgroup": no_sub,
            "covering_power": k,
            "power_cover": cover,
        });
        let verified = c.certificate.covers && no_sub.complete && identities_clean;
        let summary = vec![
            format!("{} translates: {:?}", c.translates.len(), c.translates),
            format!("P = {}, P^{n} = {}", p.set.describe(), pn.describe()),
            format!("P^{k} = G"),
        ];
        Ok(if verified {
            done(EXIT_OK, "verified", "arc_cover", payload, summary)
        } else {
            done(EXIT_UNRESOLVED, "unresolved", "arc_cover", payload, summary)
        })
    };
    match run() {
        Ok(d) => Ok(d),
        Err(VdwError::Rotation(e)) => Ok(unresolved(e.to_string())),
        Err(e) => Ok(unresolved(e.to_string())),
    }
}

fn parse_heis(s: &str) -> Result<HeisenbergElement, Fail> {
    let parts: Vec<i64> = s
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Fail::Usage(format!("cannot read element {s:?}: {e}")))?;
    match parts[..] {
        [x, y, z] => Ok(HeisenbergElement::new(x, y, z)),
        _ => Err(Fail::Usage(format!("element {s:?} needs three coordinates"))),
    }
}

fn heis(n: u64, member: Option<&str>) -> Result<Done, Fail> {
    let h = power_subgroup(n).map_err(|e| Fail::Usage(e.to_string()))?;
    let mut payload = serde_json::to_value(&h).expect("serializes");
    let mut summary = vec![format!("index: {}", h.index)];
    let (code, verdict) = match member {
        None => (EXIT_OK, "index".to_string()),
        Some(s) => {
            let e = parse_heis(s)?;
            let inside = h.subgroup.contains(&e);
            payload["query"] = json!(e.to_string());
            payload["member"] = json!(inside);
            summary.push(format!("{e} member: {inside}"));
            if inside {
                (EXIT_OK, "member".into())
            } else {
                (EXIT_REFUTED, "not a member".into())
            }
        }
    };
    Ok(done(code, &verdict, "heisenberg_power", payload, summary))
}

fn hom(moduli: &[u64], tail: TailArg, eps: &BigRational, pairs: usize, config: &Config) -> Result<Done, Fail> {
    if *eps <= BigRational::zero() {
        return Err(Fail::Usage("eps must be positive".into()));
    }
    let tail = match tail {
        TailArg::Finite => TorsionTail::Finite,
        TailArg::Repeating => TorsionTail::Repeating,
        TailArg::Growth => TorsionTail::Growth,
    };
    let moduli_json = json!(moduli);
    let refuted = |e: RotationError| {
        let payload = json!({ "moduli": moduli_json, "reason": e.to_string() });
        done(EXIT_REFUTED, "refuted", "dense_hom", payload, vec![e.to_string()])
    };
    if let Err(e) = build_dense_hom(&DenseSpec::TorsionSum { moduli: moduli.to_vec(), tail: tail.clone() }) {
        return Ok(refuted(e));
    }
    let (seq, index) = match tail {
        TorsionTail::Growth => match torsion_density_index(moduli, eps, 12) {
            Ok(x) => x,
            Err(RotationError::Unresolved(m)) => return Ok(unresolved(m)),
            Err(e) => return Ok(refuted(e)),
        },
        _ => match moduli.iter().position(|&c| BigRational::new(1.into(), c.into()) < *eps) {
            Some(i) => (moduli.to_vec(), i),
            None => {
                let h = build_dense_hom(&DenseSpec::TorsionSum { moduli: moduli.to_vec(), tail })?;
                let w = density_witness(&h, eps, 2)?;
                return Ok(match w {
                    DensityWitness::Found { .. } => unreachable!("torsion generators are tried first"),
                    DensityWitness::Unresolved { searched } => unresolved(format!("no element below eps among {searched}")),
                });
            }
        },
    };
    let h = build_dense_hom(&DenseSpec::TorsionSum { moduli: seq.clone(), tail: TorsionTail::Finite })?;
    let dom = AbelianGroup::torsion(&seq);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut random = || -> FGAbelianElement {
        let coords: Vec<BigInt> = seq.iter().map(|&c| BigInt::from(rng.gen_range(0..c))).collect();
        dom.element(vec![], coords).expect("in range")
    };
    let sample: Vec<_> = (0..pairs).map(|_| (random(), random())).collect();
    let failure = check_hom_law(&h, &sample)?;
    let witness = density_witness(&h, eps, 1)?;
    let payload = json!({
        "moduli": seq,
        "eps": format_rational(eps),
        "index": index,
        "witness": witness,
        "hom_law_pairs": pairs,
        "hom_law_failure": failure.as_ref().map(|(x, y)| format!("{:?} {:?}", x.coordinates(), y.coordinates())),
    });
    let summary = vec![format!("1/c_{index} = 1/{} < {}", seq[index], format_rational(eps))];
    Ok(if failure.is_none() {
        done(EXIT_OK, "dense", "dense_hom", payload, summary)
    } else {
        done(EXIT_REFUTED, "refuted", "dense_hom", payload, summary)
    })
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    kind: SweepKind,
    alpha: &str,
    t: Option<&str>,
    lo: i64,
    hi: i64,
    n: Option<u64>,
    radius: i64,
    max_m: u64,
    config: &Config,
) -> Result<String, Fail> {
    let mut w = csv::Writer::from_writer(vec![]);
    let t_or = |t: Option<&str>| t.ok_or_else(|| Fail::Usage("--t is required".into())).and_then(rational_arg);
    let io = |e: csv::Error| Fail::Usage(e.to_string());
    match kind {
        SweepKind::BohrMembership => {
            let x = BohrSet::surd(radicand(alpha)?, t_or(t)?)?;
            w.write_record(["n", "value", "distance", "member", "approx_distance"]).map_err(io)?;
            if lo <= hi {
                for r in bohr_sweep(&x, lo, hi)? {
                    w.write_record([
                        r.n.to_string(),
                        r.value,
                        r.distance,
                        r.member.to_string(),
                        format!("{:.12}", r.approx_distance),
                    ])
                    .map_err(io)?;
                }
            }
        }
        SweepKind::GenerationProfile => {
            let n = n.ok_or_else(|| Fail::Usage("--n is required".into()))?;
            let p = steps_to_generate(n, radius).map_err(|e| Fail::Usage(e.to_string()))?;
            w.write_record(["factors", "count"]).map_err(io)?;
            for (k, c) in p.layers.iter().enumerate() {
                w.write_record([k.to_string(), c.to_string()]).map_err(io)?;
            }
        }
        SweepKind::WitnessTable => {
            let x = BohrSet::surd(radicand(alpha)?, t_or(t)?)?;
            w.write_record(["m", "status", "k", "approx_distance"]).map_err(io)?;
            let table = max_subgroup_witnesses(&x, max_m, config.witness_bound)?;
            for e in table.entries {
                let (m, status, k) = match e {
                    WitnessEntry::Witness { m, k } => (m, "witness", Some(k)),
                    WitnessEntry::Kernel { m } => (m, "kernel", None),
                    WitnessEntry::Unresolved { m, .. } => (m, "unresolved", None),
                };
                let approx = match k {
                    Some(k) => format!("{:.12}", x.hom().value_int(&BigInt::from(k * m))?.to_f64().abs()),
                    None => String::new(),
                };
                w.write_record([m.to_string(), status.to_string(), k.map(|k| k.to_string()).unwrap_or_default(), approx])
                    .map_err(io)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Fail::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("thickcalc").chain(args.iter().copied()))
    }

    fn report(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn thick_2z() {
        let o = go(&["thick", "--set", "2Z"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let r = report(&o);
        assert_eq!(r["verdict"], "thick");
        assert_eq!(r["cert"]["type"], "thickness");
        assert_eq!(r["cert"]["payload"]["minimal"], 3);
        assert_eq!(r["input_hash"].as_str().unwrap().len(), 64);
    }

    #[test]
    fn odds_refuted() {
        let o = go(&["thick", "--set", "1+2Z | -1+2Z"]);
        assert_eq!(o.code, 1);
        assert_eq!(report(&o)["verdict"], "not_thick");
    }

    #[test]
    fn rotation_member() {
        let o = go(&["rotation", "--alpha", "sqrt2", "--t", "1/3", "--member", "1"]);
        assert_eq!(o.code, 1);
        assert_eq!(report(&o)["verdict"], "not a member");
        let o = go(&["rotation", "--t", "1/3", "--member", "-5", "--format", "text"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("verdict: member"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(go(&["thick", "--bogus"]).code, 64);
        assert_eq!(go(&[]).code, 64);
        assert_eq!(go(&["thick", "--set", "2Z &"]).code, 64);
        assert_eq!(go(&["rotation", "--alpha", "sqrt4", "--t", "1/3", "--member", "1"]).code, 64);
        assert_eq!(go(&["vdw", "--n", "1", "--variant", "3"]).code, 64);
        assert_eq!(go(&["rotation", "--t", "1/3"]).code, 64);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn alpha_forms() {
        assert_eq!(parse_alpha("sqrt2"), Some(2));
        assert_eq!(parse_alpha("sqrt(3)"), Some(3));
        assert_eq!(parse_alpha("√5"), Some(5));
        assert_eq!(parse_alpha("pi"), None);
    }

    #[test]
    fn sweeps() {
        let o = go(&["sweep", "--kind", "bohr-membership", "--t", "1/3", "--lo", "-100", "--hi", "100"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.lines().count(), 202);
        let o = go(&["sweep", "--kind", "bohr-membership", "--t", "1/3", "--lo", "1", "--hi", "0"]);
        assert_eq!(o.stdout.lines().count(), 1);
        let o = go(&["sweep", "--kind", "generation-profile", "--n", "2", "--radius", "3"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("factors,count\n"));
        let o = go(&["sweep", "--kind", "witness-table", "--t", "4/9", "--max-m", "10"]);
        assert_eq!(o.stdout.lines().count(), 11);
    }

    #[test]
    fn hom_verdicts() {
        let o = go(&["hom", "--moduli", "2,3,13,235", "--eps", "1/100", "--pairs", "200"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(report(&o)["cert"]["payload"]["index"], 3);
        let o = go(&["hom", "--moduli", "2,3,5"]);
        assert_eq!(o.code, 1);
        let o = go(&["hom", "--moduli", "2,3", "--tail", "repeating"]);
        assert_eq!(o.code, 1);
    }

    #[test]
    fn heis_index_and_member() {
        let o = go(&["heis", "--n", "2"]);
        assert_eq!(o.code, 0);
        assert_eq!(report(&o)["cert"]["payload"]["index"], "4");
        assert_eq!(go(&["heis", "--n", "2", "--member", "1,0,0"]).code, 1);
        assert_eq!(go(&["heis", "--n", "2", "--member", "2,0,1"]).code, 0);
    }
}
