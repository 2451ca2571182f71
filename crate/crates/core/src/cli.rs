//! Command dispatch for the `pvoa` binary.
//!
//! Every command writes one JSON document to `out`; `--pretty` adds a
//! plain-text rendering on `err`. Exit codes: 0 when every check passes,
//! 1 on a verification failure, 2 on usage or configuration errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::SessionConfig;
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, RawQuad, Rational};
use crate::fock::{mode_word, Ambient};
use crate::lattice::{HVec, LatVec};
use crate::modrep::{
    c1_decide, c1_quotient_dims, character, check_fusion_group, check_tensor_character, fusion_table, irreducibles, line_data,
    module_character, C1Target, CharacterTarget, ModuleLabel, SampleParams,
};
use crate::monoid::{borel_in, check_borel_axioms, check_saturation, classify, saturate_witnesses, saturation_closure_is_full, MonoidDescriptor};
use crate::vertexops::{check_derivative, check_ideal, check_phi_hom, check_vacuum, check_vp_decomposition, commutator_suite, alpha_commutation_suite, CheckReport, Engine};
use crate::zhu::{check_star_opposite, nilpotency_certificate, Congruence, OSpan};

#[derive(Debug, Parser)]
#[command(name = "pvoa", version, about = "Exact computations for rank-two parabolic-type lattice vertex algebras")]
pub struct Cli {
    /// Session configuration (JSON).
    #[arg(long, short, global = true)]
    pub config: Option<PathBuf>,
    /// Also print a readable summary on standard error.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Override the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Override the configured truncation degree.
    #[arg(long, global = true)]
    pub max_degree: Option<i64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a named (or inline JSON) descriptor.
    Classify { desc: String },
    /// Borel-type submonoid for a normal vector, with its axioms checked in the box.
    Borel {
        #[arg(allow_hyphen_values = true)]
        gamma: String,
    },
    /// Saturation witnesses for `alpha` on the negative side of `gamma`.
    Saturate {
        #[arg(allow_hyphen_values = true)]
        gamma: String,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
    /// Graded dimensions: VL, VP, VH, HEIS, M1, VZA or MOD.
    Character {
        target: String,
        #[arg(long)]
        cap: i64,
        #[arg(long)]
        desc: Option<String>,
        /// Module parameter `t` (MOD, type II).
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Module coset index `i` (MOD, type II).
        #[arg(long)]
        i: Option<i64>,
        /// Module weight `λ` as `x,y` (MOD, type I).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// The splitting of the Cartan part along `alpha`: commutation of `β(m)`
    /// with `α`-word fields, homomorphism check and character identity.
    VerifyIso {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        cap: i64,
        #[arg(long, default_value_t = 12)]
        char_cap: i64,
    },
    /// Ideal property of the positive part and the degree-wise basis partition.
    VerifyIdeal {
        desc: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        cap: i64,
    },
    /// Vacuum, derivative and commutator identities of the engine.
    VerifyCommutators {
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        axiom_cap: i64,
    },
    /// Nilpotency certificate for `beta` in the positive part.
    ZhuNil {
        desc: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Module registry and fusion table; type-II labels are `t:i`, type-I labels `x,y`.
    Fusion {
        desc: String,
        #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
        labels: Vec<String>,
    },
    /// C₁-cofiniteness decision.
    C1 { desc: String },
    /// Dimensions of the C₁-quotient of VH or VP per degree.
    C1Dims {
        target: String,
        #[arg(long)]
        cap: i64,
        #[arg(long)]
        desc: Option<String>,
    },
}

/// Parse `args` (including the program name) and run.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    run(&cli, out, err)
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Usage("--config is required".into()))
        .and_then(|p| SessionConfig::load(p))
        .and_then(|mut cfg| {
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(d) = cli.max_degree {
                if d < 0 {
                    return Err(Error::Usage("--max-degree must be >= 0".into()));
                }
                cfg.truncation.max_degree = d;
            }
            execute(&cfg, &cli.command)
        });
    match result {
        Ok(outcome) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&outcome.json).expect("serializable"));
            if cli.pretty {
                let _ = render(&outcome.json, err);
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TruncationOverflow { .. } | Error::SearchBudgetExceeded(_) | Error::Inconclusive(_) => 1,
        _ => 2,
    }
}

struct Outcome {
    json: Value,
    passed: bool,
}

fn ok<T: Serialize>(v: T) -> Result<Outcome> {
    Ok(Outcome { json: serde_json::to_value(v).expect("serializable"), passed: true })
}

fn checked<T: Serialize>(v: T, passed: bool) -> Result<Outcome> {
    let mut json = serde_json::to_value(v).expect("serializable");
    if let Value::Object(m) = &mut json {
        m.insert("passed".into(), Value::Bool(passed));
    }
    Ok(Outcome { json, passed })
}

/// `m,n`, `[m,n]` or `(m,n)`.
pub fn parse_latvec(s: &str) -> Result<LatVec> {
    let t = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(x), Ok(y)) => Ok(LatVec(x, y)),
            _ => Err(Error::Usage(format!("cannot read lattice vector {s:?}"))),
        },
        _ => Err(Error::Usage(format!("lattice vector {s:?} needs two coordinates"))),
    }
}

/// `x,y` with rational coordinates, or JSON `[q0, q1]` with field elements.
pub fn parse_hvec(cfg: &SessionConfig, s: &str) -> Result<HVec> {
    if let Ok(raw) = serde_json::from_str::<[RawQuad; 2]>(s) {
        return Ok(cfg.hvec(&raw));
    }
    let t = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let x = parse_rational(a).map_err(|_| Error::Usage(format!("cannot read {a:?}")))?;
            let y = parse_rational(b).map_err(|_| Error::Usage(format!("cannot read {b:?}")))?;
            Ok(HVec::from_rationals(x, y))
        }
        _ => Err(Error::Usage(format!("cannot read vector {s:?}"))),
    }
}

fn descriptor(cfg: &SessionConfig, s: &str) -> Result<MonoidDescriptor> {
    if s.trim_start().starts_with('{') {
        let raw: crate::config::RawDescriptor = serde_json::from_str(s).map_err(|e| Error::Usage(format!("descriptor: {e}")))?;
        return crate::config::build_descriptor(&cfg.lattice, &cfg.field, &raw);
    }
    cfg.descriptor(s).cloned()
}

fn desc_or_type_ii(cfg: &SessionConfig, name: &Option<String>) -> Result<MonoidDescriptor> {
    match name {
        Some(n) => descriptor(cfg, n),
        None => cfg
            .first_type_ii()
            .map(|(_, d)| d.clone())
            .ok_or_else(|| Error::Usage("no type-II descriptor in the config; pass --desc".into())),
    }
}

fn boundary(cfg: &SessionConfig, d: &MonoidDescriptor) -> Result<LatVec> {
    d.parabolic(&cfg.lattice)?.alpha.ok_or_else(|| Error::Usage("descriptor has no boundary line".into()))
}

fn report_json(r: &CheckReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn execute(cfg: &SessionConfig, cmd: &Command) -> Result<Outcome> {
    let l = &cfg.lattice;
    let ctx = &cfg.truncation;
    match cmd {
        Command::Classify { desc } => ok(classify(l, &descriptor(cfg, desc)?)?),
        Command::Borel { gamma } => {
            let g = parse_hvec(cfg, gamma)?;
            let b = borel_in(l, &g)?;
            let axioms = check_borel_axioms(l, &g, &b, cfg.box_radius)?;
            let passed = axioms.passed();
            checked(json!({"descriptor": b, "axioms": axioms}), passed)
        }
        Command::Saturate { gamma, alpha } => {
            let g = parse_hvec(cfg, gamma)?;
            let a = parse_latvec(alpha)?;
            let w = saturate_witnesses(l, &g, a)?;
            let c = check_saturation(l, &g, a, &w)?;
            let full = saturation_closure_is_full(l, &g, a, 5)?;
            let passed = c.passed() && full;
            checked(json!({"witness": w, "conditions": c, "closureIsFullBox": full}), passed)
        }
        Command::Character { target, cap, desc, t, i, lambda } => {
            if *cap < 0 {
                return Err(Error::Usage("--cap must be >= 0".into()));
            }
            let series = match target.to_ascii_uppercase().as_str() {
                "VL" => character(l, &CharacterTarget::VL, *cap)?,
                "VP" => character(l, &CharacterTarget::VP(desc_or_type_ii(cfg, desc)?), *cap)?,
                "VH" => character(l, &CharacterTarget::VH(desc_or_type_ii(cfg, desc)?), *cap)?,
                "HEIS" => character(l, &CharacterTarget::Heis, *cap)?,
                "M1" => character(l, &CharacterTarget::M1(boundary(cfg, &desc_or_type_ii(cfg, desc)?)?), *cap)?,
                "VZA" => character(l, &CharacterTarget::VZA(boundary(cfg, &desc_or_type_ii(cfg, desc)?)?), *cap)?,
                "MOD" => {
                    let d = desc_or_type_ii(cfg, desc)?;
                    let par = d.parabolic(l)?;
                    match (lambda, par.alpha) {
                        (Some(lam), _) => {
                            let label = ModuleLabel::TypeI { lambda: parse_hvec(cfg, lam)? };
                            module_character(l, None, &label, *cap)?
                        }
                        (None, Some(alpha)) if par.kind == crate::monoid::ParabolicKind::TypeII => {
                            let line = line_data(l, alpha)?;
                            let t = parse_rational(t.as_deref().unwrap_or("0")).map_err(|_| Error::Usage("bad --t".into()))?;
                            let i = i.unwrap_or(0);
                            if !(0..2 * line.n).contains(&i) {
                                return Err(Error::Usage(format!("--i must lie in 0..{}", 2 * line.n)));
                            }
                            module_character(l, Some(&line), &ModuleLabel::TypeII { t, i, n: line.n }, *cap)?
                        }
                        _ => return Err(Error::Usage("MOD needs --lambda for type I or a type-II descriptor".into())),
                    }
                }
                other => return Err(Error::Usage(format!("unknown character target {other:?}"))),
            };
            ok(json!({"target": target, "cap": cap, "series": series}))
        }
        Command::VerifyIso { alpha, cap, char_cap } => {
            let a = parse_latvec(alpha)?;
            let e = Engine::lattice(l);
            let beta = l.orthogonal_primitive(a)?;
            let lemma = alpha_commutation_suite(&e, a, &beta.to_hvec(), -3..=3, *cap, ctx)?;
            let phi = check_phi_hom(l, a, *cap, ctx)?;
            let ch = check_tensor_character(l, a, *char_cap)?;
            let passed = lemma.passed() && phi.report.passed() && ch.equal;
            checked(json!({"alpha": a, "beta": beta, "commutation": report_json(&lemma), "homomorphism": report_json(&phi.report), "character": ch}), passed)
        }
        Command::VerifyIdeal { desc, samples, cap } => {
            let d = descriptor(cfg, desc)?;
            let ideal = check_ideal(l, &d, *samples, cfg.seed, ctx)?;
            let (part, rows) = check_vp_decomposition(l, &d, *cap)?;
            let passed = ideal.passed() && part.passed();
            let rows: Vec<Value> = rows.iter().map(|r| json!({"degree": r[0], "VP": r[1], "VH": r[2], "Vplus": r[3]})).collect();
            checked(json!({"ideal": report_json(&ideal), "partition": report_json(&part), "dims": rows}), passed)
        }
        Command::VerifyCommutators { samples, axiom_cap } => {
            let e = Engine::lattice(l);
            let comm = commutator_suite(&e, *samples, cfg.seed, ctx)?;
            let vac = check_vacuum(&e, *axiom_cap, ctx)?;
            let der = check_derivative(&e, *axiom_cap, ctx)?;
            let passed = comm.passed() && vac.passed() && der.passed();
            checked(json!({"seed": cfg.seed, "commutator": report_json(&comm), "vacuum": report_json(&vac), "derivative": report_json(&der)}), passed)
        }
        Command::ZhuNil { desc, beta } => {
            let d = descriptor(cfg, desc)?;
            let b = parse_latvec(beta)?;
            let cert = nilpotency_certificate(l, &d, b, ctx)?;
            let passed = cert.passed;
            let congruences = star_opposite_samples(cfg, &d, b)?;
            checked(json!({"certificate": cert, "congruences": congruences}), passed)
        }
        Command::Fusion { desc, labels } => {
            let d = descriptor(cfg, desc)?;
            let par = d.parabolic(l)?;
            let line = match par.kind {
                crate::monoid::ParabolicKind::TypeII => Some(line_data(l, boundary(cfg, &d)?)?),
                crate::monoid::ParabolicKind::TypeI => None,
            };
            let parsed = labels.iter().map(|s| parse_module_label(cfg, line.as_ref(), s)).collect::<Result<Vec<_>>>()?;
            let table = fusion_table(&parsed)?;
            let mut samples = SampleParams::default();
            for m in &parsed {
                match m {
                    ModuleLabel::TypeI { lambda } => samples.lambdas.push(lambda.clone()),
                    ModuleLabel::TypeII { t, .. } if !samples.ts.contains(t) => samples.ts.push(t.clone()),
                    _ => {}
                }
            }
            let registry = irreducibles(l, &d, &samples)?;
            match line {
                Some(_) => {
                    let group = check_fusion_group(&parsed)?;
                    let passed = group.passed();
                    checked(json!({"registry": registry, "table": table, "group": group}), passed)
                }
                None => ok(json!({"registry": registry, "table": table})),
            }
        }
        Command::C1 { desc } => ok(c1_decide(l, &descriptor(cfg, desc)?)?),
        Command::C1Dims { target, cap, desc } => {
            let d = desc_or_type_ii(cfg, desc)?;
            let t = match target.to_ascii_uppercase().as_str() {
                "VH" => C1Target::VH(d),
                "VP" => C1Target::VP(d),
                other => return Err(Error::Usage(format!("unknown c1-dims target {other:?}"))),
            };
            let dims = c1_quotient_dims(l, &t, *cap, ctx)?;
            ok(json!({"target": target, "cap": cap, "dims": dims}))
        }
    }
}

fn parse_module_label(cfg: &SessionConfig, line: Option<&crate::modrep::LineData>, s: &str) -> Result<ModuleLabel> {
    match line {
        Some(line) => {
            let (t, i) = s.split_once(':').ok_or_else(|| Error::Usage(format!("type-II label {s:?} must be t:i")))?;
            let t: Rational = parse_rational(t.trim()).map_err(|_| Error::Usage(format!("bad t in {s:?}")))?;
            let i: i64 = i.trim().parse().map_err(|_| Error::Usage(format!("bad i in {s:?}")))?;
            if !(0..2 * line.n).contains(&i) {
                return Err(Error::Usage(format!("i in {s:?} must lie in 0..{}", 2 * line.n)));
            }
            Ok(ModuleLabel::TypeII { t, i, n: line.n })
        }
        None => Ok(ModuleLabel::TypeI { lambda: parse_hvec(cfg, s)? }),
    }
}

/// `a ∗ b ≡ Σ C(wt b - 1, j) b_{j-1} a` for `a = e^β` and `b = h(-1)1`,
/// decided against residues of low-weight `V_P` words.
fn star_opposite_samples(cfg: &SessionConfig, d: &MonoidDescriptor, beta: LatVec) -> Result<Value> {
    let l = &cfg.lattice;
    let par = d.parabolic(l)?;
    let e = Engine::lattice(l);
    let member = |v: LatVec| par.member(l, v);
    let ospan = OSpan::build(&e, Ambient::Filter(&member), 1, &cfg.truncation)?;
    let mut rows = Vec::new();
    let eb = crate::fock::FockState::exp(beta);
    for dir in 0..2u8 {
        let h = mode_word(&[(1, dir)], LatVec::ZERO);
        for (name, a, b) in [("e^beta * h", &eb, &h), ("h * e^beta", &h, &eb)] {
            let status = match check_star_opposite(&e, a, b, &ospan, &cfg.truncation)? {
                Congruence::Resolved { terms } => json!({"status": "RESOLVED", "residues": terms.len()}),
                Congruence::Unresolved => json!({"status": "UNRESOLVED"}),
            };
            rows.push(json!({"pair": name, "dir": dir, "result": status}));
        }
    }
    Ok(Value::Array(rows))
}

/// Plain-text rendering: scalars as `key: value`, arrays of flat objects as
/// aligned tables.
fn render(v: &Value, w: &mut dyn Write) -> std::io::Result<()> {
    render_at(v, "", w)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some("-".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_))) => {
            Some(format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_at(v: &Value, path: &str, w: &mut dyn Write) -> std::io::Result<()> {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match scalar(x) {
                    Some(s) => writeln!(w, "{p}: {s}")?,
                    None => render_at(x, &p, w)?,
                }
            }
        }
        Value::Array(a) => {
            let flat: Option<Vec<&serde_json::Map<String, Value>>> = a
                .iter()
                .map(|x| x.as_object().filter(|m| m.values().all(|y| scalar(y).is_some())))
                .collect();
            match flat {
                Some(rows) if !rows.is_empty() => {
                    let cols: Vec<&String> = rows[0].keys().collect();
                    let cells: Vec<Vec<String>> =
                        rows.iter().map(|r| cols.iter().map(|c| r.get(*c).and_then(scalar).unwrap_or_default()).collect()).collect();
                    let widths: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
                        .collect();
                    writeln!(w, "{path}:")?;
                    let head: Vec<String> = cols.iter().zip(&widths).map(|(c, n)| format!("{c:>n$}")).collect();
                    writeln!(w, "  {}", head.join("  "))?;
                    for r in &cells {
                        let line: Vec<String> = r.iter().zip(&widths).map(|(c, n)| format!("{c:>n$}")).collect();
                        writeln!(w, "  {}", line.join("  "))?;
                    }
                }
                _ => writeln!(w, "{path}: {} entries", a.len())?,
            }
        }
        other => writeln!(w, "{path}: {}", scalar(other).unwrap_or_default())?,
    }
    Ok(())
}
