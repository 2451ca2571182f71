//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the verdicts are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use parabolic_voa::config::{SessionConfig, A2, DIAG22};
use parabolic_voa::exactnum::{int, QuadField, QuadScalar, Rational};
use parabolic_voa::fock::FockState;
use parabolic_voa::lattice::{det2, GramLattice, HVec, LatVec};
use parabolic_voa::modrep::{
    c1_decide, c1_quotient_dims, check_fusion_group, check_tensor_character, fusion, irreducibles, C1Target, C1Verdict, ModuleLabel,
    SampleParams,
};
use parabolic_voa::monoid::{
    borel_in, classify, closure_box, saturate_witnesses, saturation_closure_is_full, MonoidDescriptor, MonoidType,
};
use parabolic_voa::vertexops::{
    check_derivative, check_ideal, check_phi_hom, check_vacuum, check_vp_decomposition, commutator_suite, alpha_commutation_suite, Engine,
    TruncationCtx,
};
use parabolic_voa::zhu::{nilpotency_certificate, CertificateStep};

const SEED: u64 = 0x5eed_2024;

// ---------------------------------------------------------------- oracles

/// Sign of `(γ|v)` from the rational and `√D` parts, compared by squaring.
fn side_oracle(l: &GramLattice, gamma: &HVec, v: LatVec) -> i8 {
    let g = l.gram();
    let gv = [g[0][0] * v.0 + g[0][1] * v.1, g[1][0] * v.0 + g[1][1] * v.1];
    let mut p = Rational::zero();
    let mut q = Rational::zero();
    let mut d = 1u64;
    for (c, w) in [(&gamma.0, gv[0]), (&gamma.1, gv[1])] {
        p += c.rational_part() * int(w);
        q += c.irrational_part() * int(w);
        if !c.irrational_part().is_zero() {
            d = c.d();
        }
    }
    let sgn = |x: &Rational| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 };
    let (sp, sq) = (sgn(&p), sgn(&q));
    if sq == 0 || sp == sq {
        return if sp != 0 { sp } else { sq };
    }
    if sp == 0 {
        return sq;
    }
    let a = &p * &p;
    let b = &q * &q * int(d as i64);
    if a > b {
        sp
    } else if a < b {
        sq
    } else {
        0
    }
}

fn closed_form_member(l: &GramLattice, gamma: &HVec, type_ii: bool, alpha: Option<LatVec>, v: LatVec) -> bool {
    match side_oracle(l, gamma, v) {
        1 => true,
        -1 => false,
        _ => {
            type_ii || v == LatVec(0, 0) || alpha.is_some_and(|a| det2(a, v) == 0 && a.0 * v.0 + a.1 * v.1 > 0)
        }
    }
}

fn box_points(r: i64) -> Vec<LatVec> {
    (-r..=r).flat_map(|x| (-r..=r).map(move |y| LatVec(x, y))).collect()
}

fn lattices() -> Vec<(&'static str, SessionConfig)> {
    vec![("diag(2,2)", SessionConfig::from_json(DIAG22).unwrap()), ("A2", SessionConfig::from_json(A2).unwrap())]
}

fn random_gamma(rng: &mut ChaCha8Rng, irrational: bool) -> HVec {
    let f = QuadField::new(2).unwrap();
    loop {
        let (a, b) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        let (c, d) = if irrational { (rng.gen_range(-3..=3), rng.gen_range(-3..=3)) } else { (0, 0) };
        if irrational && c == 0 && d == 0 {
            continue;
        }
        let g = HVec(f.elem(int(a), int(c)), f.elem(int(b), int(d)));
        if !g.is_zero() {
            return g;
        }
    }
}

// --------------------------------------------------------------- criteria

fn criterion_1() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for (name, cfg) in lattices() {
        let l = &cfg.lattice;
        let mut cases: Vec<(MonoidDescriptor, HVec, bool)> = Vec::new();
        for d in cfg.descriptors.values() {
            let (gamma, t2) = match d {
                MonoidDescriptor::TypeI { gamma, .. } => (gamma.clone(), false),
                MonoidDescriptor::TypeII { gamma, .. } => (gamma.clone(), true),
                _ => unreachable!(),
            };
            cases.push((d.clone(), gamma, t2));
        }
        while cases.len() < 22 {
            let kind = rng.gen_range(0..4);
            let gamma = random_gamma(&mut rng, kind == 1);
            match kind {
                0 | 1 => cases.push((MonoidDescriptor::type_i(l, gamma.clone()).unwrap(), gamma, false)),
                2 => cases.push((MonoidDescriptor::type_ii(l, gamma.clone()).unwrap(), gamma, true)),
                _ => {
                    // finite generators {α, -α, β} of a closed half-plane
                    let alpha = l.line_intersection(&gamma).unwrap().unwrap();
                    let beta = box_points(3)
                        .into_iter()
                        .find(|&b| det2(alpha, b).abs() == 1 && side_oracle(l, &gamma, b) == 1)
                        .unwrap();
                    cases.push((MonoidDescriptor::generators(vec![alpha, -alpha, beta]), gamma, true));
                }
            }
        }
        for (desc, gamma, t2) in &cases {
            let rep = classify(l, desc).map_err(|e| format!("{name}: classify failed: {e}"))?;
            let want = if *t2 { MonoidType::TypeII } else { MonoidType::TypeI };
            if rep.kind != want {
                return Err(format!("{name}: {desc:?} classified {:?}", rep.kind));
            }
            let alpha = match desc {
                MonoidDescriptor::TypeI { alpha, .. } => *alpha,
                _ => rep.alpha,
            };
            if let Some(a) = alpha {
                if side_oracle(l, gamma, a) != 0 || a.gcd() != 1 {
                    return Err(format!("{name}: boundary {a} is not a primitive vector on the line"));
                }
            }
            let par = desc.parabolic(l).unwrap();
            for v in box_points(8) {
                let oracle = closed_form_member(l, gamma, *t2, alpha, v);
                let by_desc = desc.member_within(l, v, 8).unwrap();
                if oracle != by_desc || oracle != par.member(l, v) {
                    return Err(format!("{name}: membership of {v} disagrees for {desc:?}"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} descriptors, every point of the R=8 box"))
}

fn criterion_2() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let cfgs = lattices();
    for k in 0..20 {
        let l = &cfgs[k % 2].1.lattice;
        let gamma = random_gamma(&mut rng, k % 3 == 0);
        let alpha = loop {
            let v = LatVec(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
            if v.gcd() == 1 && side_oracle(l, &gamma, v) == -1 {
                break v;
            }
        };
        let w = saturate_witnesses(l, &gamma, alpha).map_err(|e| format!("instance {k}: {e}"))?;
        // (1) both in P+, (2) both complete α to a basis, on opposite sides of Rα
        let ok1 = side_oracle(l, &gamma, w.beta) == 1 && side_oracle(l, &gamma, w.beta_prime) == 1;
        let (d1, d2) = (det2(alpha, w.beta), det2(alpha, w.beta_prime));
        let ok2 = d1.abs() == 1 && d2.abs() == 1 && d1 == -d2;
        // (3) α = m b1 + n b2 with m y - n x = 1 for β = x b1 + y b2
        let (b1, b2) = w.basis;
        let (x, y) = w.beta_coeffs;
        let ok3 = w.m * b1.0 + w.n * b2.0 == alpha.0
            && w.m * b1.1 + w.n * b2.1 == alpha.1
            && w.m * y - w.n * x == 1
            && x * b1.0 + y * b2.0 == w.beta.0
            && x * b1.1 + y * b2.1 == w.beta.1
            && side_oracle(l, &gamma, b1) == 1
            && side_oracle(l, &gamma, b2) == 1
            && det2(b1, b2).abs() == 1;
        if !(ok1 && ok2 && ok3) {
            return Err(format!("instance {k}: conditions ({ok1}, {ok2}, {ok3}) for α={alpha}"));
        }
        let mut gens = vec![alpha];
        gens.extend(box_points(15).into_iter().filter(|&v| side_oracle(l, &gamma, v) == 1));
        let closure = closure_box(&gens, 5);
        let lib = saturation_closure_is_full(l, &gamma, alpha, 5).map_err(|e| e.to_string())?;
        if !lib || box_points(5).iter().any(|v| !closure.contains(v)) {
            return Err(format!("instance {k}: closure misses box points (α={alpha}, γ={gamma})"));
        }
    }
    Ok("20 instances, closure = box at R=5".into())
}

fn criterion_3() -> Result<String, String> {
    let f = QuadField::new(2).unwrap();
    let s = |a: i64, b: i64| f.elem(int(a), int(b));
    let gammas = vec![
        HVec(s(1, 0), s(2, 0)),
        HVec(s(2, 0), s(-1, 0)),
        HVec(s(0, 0), s(1, 0)),
        HVec(s(1, 0), s(0, 1)),
        HVec(s(0, 1), s(-1, 0)),
        HVec(s(-1, 1), s(3, 0)),
        HVec(s(2, -1), s(0, 1)),
    ];
    let mut n = 0;
    for (name, cfg) in lattices() {
        let l = &cfg.lattice;
        for g in &gammas {
            let b = borel_in(l, g).map_err(|e| e.to_string())?;
            let members: std::collections::BTreeSet<LatVec> =
                box_points(8).into_iter().filter(|&v| b.member_within(l, v, 8).unwrap()).collect();
            for v in box_points(8) {
                let (p, q) = (members.contains(&v), members.contains(&-v));
                if !(p || q) || (p && q && v != LatVec(0, 0)) || (p && side_oracle(l, g, v) < 0) {
                    return Err(format!("{name}: γ={g}: axiom fails at {v}"));
                }
            }
            n += 1;
        }
    }
    Ok(format!("{n} Borel submonoids, R=8"))
}

fn criterion_4() -> Result<String, String> {
    let ctx = TruncationCtx::new(6);
    let mut total = 0;
    for (name, cfg) in lattices() {
        let e = Engine::lattice(&cfg.lattice);
        for r in [
            check_vacuum(&e, 3, &ctx).map_err(|x| x.to_string())?,
            check_derivative(&e, 2, &ctx).map_err(|x| x.to_string())?,
            commutator_suite(&e, 50, SEED, &ctx).map_err(|x| x.to_string())?,
        ] {
            if !r.passed() {
                return Err(format!("{name}: {} failed: {:?}", r.check, &r.failures[..r.failures.len().min(2)]));
            }
            total += r.instances;
        }
    }
    Ok(format!("{total} identities incl. 2×50 commutator triples"))
}

fn criterion_5() -> Result<String, String> {
    let l = GramLattice::diag(2, 2);
    let e = Engine::lattice(&l);
    let r = alpha_commutation_suite(&e, LatVec(1, 0), &LatVec(0, 1).to_hvec(), -3..=3, 3, &TruncationCtx::new(6)).map_err(|x| x.to_string())?;
    if !r.passed() || r.instances == 0 {
        return Err(format!("{} failures", r.failures.len()));
    }
    Ok(format!("{} residuals, all zero", r.instances))
}

fn criterion_6() -> Result<String, String> {
    let ctx = TruncationCtx::new(6);
    let mut n = 0;
    for (l, alpha) in [(GramLattice::diag(2, 2), LatVec(1, 0)), (GramLattice::a2(), LatVec(1, 0))] {
        let r = check_phi_hom(&l, alpha, 3, &ctx).map_err(|x| x.to_string())?;
        if !r.report.passed() {
            return Err(format!("φ fails: {:?}", &r.report.failures[..r.report.failures.len().min(2)]));
        }
        n += r.report.instances;
        let c = check_tensor_character(&l, alpha, 12).map_err(|x| x.to_string())?;
        if !c.equal {
            return Err(format!("characters differ: {:?} vs {:?}", c.vh, c.product));
        }
    }
    Ok(format!("{n} mode identities, characters equal to q^12"))
}

fn criterion_7() -> Result<String, String> {
    let ctx = TruncationCtx::new(6);
    let mut n = 0;
    for (name, cfg) in lattices() {
        for (dn, d) in &cfg.descriptors {
            let r = check_ideal(&cfg.lattice, d, 100, SEED, &ctx).map_err(|x| x.to_string())?;
            let (p, _) = check_vp_decomposition(&cfg.lattice, d, 8).map_err(|x| x.to_string())?;
            if !r.passed() || !p.passed() {
                return Err(format!("{name} {dn}: ideal {:?} partition {:?}", r.failures.first(), p.failures.first()));
            }
            n += r.instances;
        }
    }
    Ok(format!("{n} products over 4 monoids, partitions to degree 8"))
}

fn criterion_8() -> Result<String, String> {
    let ctx = TruncationCtx::new(6);
    let diag = SessionConfig::from_json(DIAG22).unwrap();
    let a2 = SessionConfig::from_json(A2).unwrap();
    let cases = [(&diag, "P2", LatVec(0, 1)), (&a2, "P1", LatVec(1, 0))];
    for (cfg, dn, beta) in cases {
        let d = cfg.descriptor(dn).unwrap();
        let cert = nilpotency_certificate(&cfg.lattice, d, beta, &ctx).map_err(|x| x.to_string())?;
        let n = cfg.lattice.norm(beta) / 2;
        let top = FockState::exp(beta + beta);
        let mut vanish = 0;
        let mut top_ok = false;
        let mut o_ok = false;
        for s in &cert.steps {
            match s {
                CertificateStep::ExpModeVanish { m, result } if *m <= 2 * n && result.is_zero() => vanish += 1,
                CertificateStep::ExpModeTop { m, result, .. } => {
                    top_ok = *m == 2 * n + 1 && (*result == top || *result == top.scaled(&int(-1)));
                }
                CertificateStep::Residue { result, .. } => o_ok = *result == top || *result == top.scaled(&int(-1)),
                _ => {}
            }
        }
        if !(cert.passed && vanish == 4 * n && top_ok && o_ok) {
            return Err(format!("{dn} β={beta}: passed={} vanish={vanish} top={top_ok} O={o_ok}", cert.passed));
        }
    }
    Ok("two certificates: e^{2β} ∈ O(V_P)".into())
}

fn criterion_9() -> Result<String, String> {
    let cfg = SessionConfig::from_json(DIAG22).unwrap();
    let l = &cfg.lattice;
    let d = cfg.descriptor("P2").unwrap();
    let ts: Vec<Rational> = (-2..=2).map(|k| Rational::new(k.into(), 2.into())).collect();
    let reg = irreducibles(l, d, &SampleParams { lambdas: vec![], ts: ts.clone() }).map_err(|x| x.to_string())?;
    let line = reg.line.ok_or("no boundary data")?;
    if line.n != 1 {
        return Err(format!("N = {}", line.n));
    }
    let beta_norm = l.norm(line.beta);
    for m in &reg.modules {
        let ModuleLabel::TypeII { t, i, .. } = &m.label else { return Err("wrong label kind".into()) };
        if !(0..2).contains(i) {
            return Err(format!("i = {i}"));
        }
        let offset = t * t * int(beta_norm) / int(2);
        let want = offset + if *i == 0 { int(0) } else { Rational::new(1.into(), 4.into()) };
        if m.h != QuadScalar::from_rational(want) {
            return Err(format!("h({t}, {i}) = {}", m.h));
        }
    }
    if reg.modules.len() != 2 * ts.len() {
        return Err("family count".into());
    }
    let labels: Vec<ModuleLabel> = reg.modules.iter().map(|m| m.label.clone()).collect();
    let g = check_fusion_group(&labels).map_err(|x| x.to_string())?;
    if !g.passed() {
        return Err(format!("{g:?}"));
    }
    for x in &labels {
        for y in &labels {
            let outs = labels.iter().filter(|z| fusion(x, y, z) == Ok(1)).count();
            let (ModuleLabel::TypeII { t: a, .. }, ModuleLabel::TypeII { t: b, .. }) = (x, y) else { unreachable!() };
            let closed = ts.contains(&(a + b));
            if (closed && outs != 1) || (!closed && outs != 0) {
                return Err(format!("{x:?} × {y:?}: {outs} outputs"));
            }
        }
    }
    Ok(format!("{} modules, bottom weights t² + {{0, 1/4}}, group law holds", labels.len()))
}

fn criterion_10() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    for (name, cfg) in lattices() {
        let l = &cfg.lattice;
        let mut type_i = vec![cfg.descriptor("P1").unwrap().clone()];
        for k in 0..10 {
            type_i.push(MonoidDescriptor::type_i(l, random_gamma(&mut rng, k % 2 == 0)).unwrap());
        }
        for d in &type_i {
            let r = c1_decide(l, d).map_err(|x| x.to_string())?;
            if r.verdict != C1Verdict::NotCofinite {
                return Err(format!("{name}: type-I verdict {:?}", r.verdict));
            }
        }
    }
    let a2 = SessionConfig::from_json(A2).unwrap();
    let r = c1_decide(&a2.lattice, a2.descriptor("P2").unwrap()).map_err(|x| x.to_string())?;
    let c = r.condition_values.ok_or("no condition values")?;
    if r.verdict != C1Verdict::Cofinite || r.witness_basis != Some((LatVec(1, 0), LatVec(0, 1))) || c.value != -2 {
        return Err(format!("A2 type-II: {r:?}"));
    }
    let diag = SessionConfig::from_json(DIAG22).unwrap();
    let dims = c1_quotient_dims(&diag.lattice, &C1Target::VH(diag.descriptor("P2").unwrap().clone()), 6, &TruncationCtx::new(6))
        .map_err(|x| x.to_string())?;
    if dims[0] != 1 || dims[2..].iter().any(|&x| x != 0) {
        return Err(format!("V_H quotient dims {dims:?}"));
    }
    Ok(format!("type-I never cofinite; A2 witness value -2; V_H quotient {dims:?}"))
}

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: Vec<(u32, &str, Criterion, u64)> = vec![
        (1, "classification dichotomy", criterion_1, 5),
        (2, "saturation witnesses", criterion_2, 30),
        (3, "Borel axioms", criterion_3, 5),
        (4, "vertex-operator engine", criterion_4, 120),
        (5, "β(m) commutes with α-word fields", criterion_5, 60),
        (6, "Cartan-part tensor splitting", criterion_6, 120),
        (7, "ideal and V_H ⊕ V_+ split", criterion_7, 120),
        (8, "nilpotency certificates", criterion_8, 10),
        (9, "module registry and fusion", criterion_9, 5),
        (10, "C1 decisions", criterion_10, 120),
    ];
    let mut failed = 0;
    for (n, name, f, bound) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(bound);
        let verdict = match (&outcome, within) {
            (Ok(_), true) => "PASS",
            _ => "FAIL",
        };
        let detail = match &outcome {
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        println!("criterion {n:>2} {verdict} [{name}] {:.2}s (bound {bound}s): {detail}", elapsed.as_secs_f64());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
