//! Verifications of vertex-algebra identities on the truncated engine.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{l_minus_one, Engine, TruncationCtx};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, int, Rational};
use crate::fock::{enumerate_basis, enumerate_up_to, Ambient, BasisWord, FockState, Form};
use crate::lattice::{GramLattice, HVec, LatVec};
use crate::monoid::{MonoidDescriptor, ParabolicKind};

/// Outcome of a batch verification: how many instances were checked and a
/// description of each failure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str) -> Self {
        CheckReport { check: check.into(), instances: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
    }
}

fn homogeneous(e: &Engine, a: &FockState) -> Result<i64> {
    a.homogeneous_weight(e.form())
        .ok_or_else(|| Error::PreconditionViolated("operand must be a nonzero homogeneous state".into()))
}

/// `a_m(b_n v) - b_n(a_m v) - Σ_j C(m, j) (a_j b)_{m+n-j} v`.
pub fn check_commutator(
    e: &Engine,
    a: &FockState,
    b: &FockState,
    m: i64,
    n: i64,
    v: &FockState,
    ctx: &TruncationCtx,
) -> Result<FockState> {
    let wa = homogeneous(e, a)?;
    let wb = homogeneous(e, b)?;
    let mut r = e.mode(a, m, &e.mode(b, n, v, ctx)?, ctx)?;
    r.add_scaled(&e.mode(b, n, &e.mode(a, m, v, ctx)?, ctx)?, &int(-1));
    for j in 0..(wa + wb) {
        let c = binomial(m, j);
        if c == int(0) {
            continue;
        }
        let ajb = e.mode(a, j, b, ctx)?;
        if ajb.is_zero() {
            continue;
        }
        r.add_scaled(&e.mode(&ajb, m + n - j, v, ctx)?, &-c);
    }
    Ok(r)
}

/// Randomised commutator identity on homogeneous triples whose
/// intermediate weights all stay within the truncation.
pub fn commutator_suite(e: &Engine, samples: usize, seed: u64, ctx: &TruncationCtx) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = ctx.max_degree;
    let by_weight: Vec<Vec<BasisWord>> = (0..=2).map(|w| enumerate_basis(e.form(), Ambient::FullL, w)).collect::<Result<_>>()?;
    let mut report = CheckReport::new("commutator");
    let pick = |rng: &mut ChaCha8Rng| -> (FockState, i64) {
        loop {
            let w = rng.gen_range(0..=2usize);
            let words = &by_weight[w];
            if words.is_empty() {
                continue;
            }
            // one or two words of the same weight with small coefficients
            let mut s = FockState::zero();
            for _ in 0..rng.gen_range(1..=2) {
                let x = words.choose(rng).unwrap().clone();
                s.add_term(x, int(rng.gen_range(1..=3)));
            }
            if !s.is_zero() {
                return (s, w as i64);
            }
        }
    };
    while report.instances < samples {
        let (a, wa) = pick(&mut rng);
        let (b, wb) = pick(&mut rng);
        let (v, wv) = pick(&mut rng);
        if wa + wb - 1 > d {
            continue;
        }
        // feasible (m, n): every intermediate weight in range and a nonzero target
        let mut feasible = Vec::new();
        for m in -4..=4 {
            for n in -4..=4 {
                let final_w = wa + wb + wv - m - n - 2;
                let ok = wb + wv - n - 1 <= d && wa + wv - m - 1 <= d && final_w <= d && final_w >= 0;
                if ok {
                    feasible.push((m, n));
                }
            }
        }
        let Some(&(m, n)) = feasible.choose(&mut rng) else { continue };
        let r = check_commutator(e, &a, &b, m, n, &v, ctx)?;
        report.record(r.is_zero(), || format!("a={a} b={b} m={m} n={n} v={v}: residual {r}"));
    }
    Ok(report)
}

/// Vacuum and creation axioms on every basis word up to `cap`.
pub fn check_vacuum(e: &Engine, cap: i64, ctx: &TruncationCtx) -> Result<CheckReport> {
    let mut report = CheckReport::new("vacuum");
    let one = FockState::vacuum();
    for u in enumerate_up_to(e.form(), Ambient::FullL, cap)? {
        let wu = e.weight(&u);
        let us = FockState::word(u.clone());
        // Y(1, z) = id
        for n in (wu - 1 - ctx.max_degree).max(-6)..=(wu + 2) {
            if wu - n - 1 > ctx.max_degree {
                continue;
            }
            let r = e.mode(&one, n, &us, ctx)?;
            let expect = if n == -1 { us.clone() } else { FockState::zero() };
            report.record(r == expect, || format!("1_{n} {u} = {r}"));
        }
        // u_{-1} 1 = u and u_n 1 = 0 for n >= 0
        let r = e.mode(&us, -1, &one, ctx)?;
        report.record(r == us, || format!("{u}_(-1) 1 = {r}"));
        for n in 0..=wu {
            let r = e.mode(&us, n, &one, ctx)?;
            report.record(r.is_zero(), || format!("{u}_({n}) 1 = {r}"));
        }
    }
    Ok(report)
}

/// `(L(-1)u)_n v = -n u_{n-1} v` with `L(-1)` computed as a derivation,
/// plus `ω_0 = L(-1)` and `ω_1 = L(0)` on the same words.
pub fn check_derivative(e: &Engine, cap: i64, ctx: &TruncationCtx) -> Result<CheckReport> {
    let mut report = CheckReport::new("derivative");
    let omega = e.virasoro();
    let words = enumerate_up_to(e.form(), Ambient::FullL, cap)?;
    let targets: Vec<BasisWord> = words.iter().filter(|w| e.weight(w) <= 1).cloned().collect();
    for u in &words {
        let wu = e.weight(u);
        let us = FockState::word(u.clone());
        let du = l_minus_one(e.form(), &us);
        if wu < ctx.max_degree {
            let w0 = e.mode(&omega, 0, &us, ctx)?;
            report.record(w0 == du, || format!("ω_0 {u} = {w0}, expected {du}"));
        }
        let w1 = e.mode(&omega, 1, &us, ctx)?;
        report.record(w1 == us.scaled(&int(wu)), || format!("ω_1 {u} = {w1}"));
        for v in &targets {
            let vs = FockState::word(v.clone());
            let wv = e.weight(v);
            for n in (wu + wv + 1 - ctx.max_degree)..=(wu + wv + 1) {
                let lhs = e.mode(&du, n, &vs, ctx)?;
                let rhs = e.mode(&us, n - 1, &vs, ctx)?.scaled(&int(-n));
                report.record(lhs == rhs, || format!("(L(-1){u})_{n} {v}"));
            }
        }
    }
    Ok(report)
}

/// `β(m)(u_n v) - u_n(β(m) v)` for every `n` whose intermediate states fit
/// the truncation. Requires `β(j) u = 0` for all `j >= 0`.
pub fn check_alpha_commutation(
    e: &Engine,
    beta: &HVec,
    m: i64,
    u: &FockState,
    v: &FockState,
    ctx: &TruncationCtx,
) -> Result<Vec<(i64, FockState)>> {
    let wu = homogeneous(e, u)?;
    let wv = homogeneous(e, v)?;
    for j in 0..=wu {
        if !e.heis_mode(beta, j, u, ctx)?.is_zero() {
            return Err(Error::PreconditionViolated(format!("β({j}) does not annihilate u: β is not orthogonal to u's modes")));
        }
    }
    let d = ctx.max_degree;
    let mut out = Vec::new();
    if wv - m > d {
        return Ok(out);
    }
    let lo = (wu + wv - 1 - d).max(wu + wv - m - 1 - d);
    let hi = wu + wv - m - 1;
    let bv = e.heis_mode(beta, m, v, ctx)?;
    for n in lo..=hi {
        let unv = e.mode(u, n, v, ctx)?;
        let lhs = e.heis_mode(beta, m, &unv, ctx)?;
        let rhs = e.mode(u, n, &bv, ctx)?;
        out.push((n, lhs.minus(&rhs)));
    }
    Ok(out)
}

/// The commutation check over all `m` in `ms`, all `α`-words `u` up to `cap` and all
/// basis words `v` up to `cap`. `u` ranges over words whose modes lie in
/// direction `alpha_dir` with labels in `Z alpha`.
pub fn alpha_commutation_suite(
    e: &Engine,
    alpha: LatVec,
    beta: &HVec,
    ms: std::ops::RangeInclusive<i64>,
    cap: i64,
    ctx: &TruncationCtx,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("alpha_commutation");
    let words = enumerate_up_to(e.form(), Ambient::FullL, cap)?;
    let alpha_words = alpha_words(e.form(), alpha, cap)?;
    for u in &alpha_words {
        for v in &words {
            for m in ms.clone() {
                let res = check_alpha_commutation(e, beta, m, u, &FockState::word(v.clone()), ctx)?;
                for (n, r) in res {
                    report.record(r.is_zero(), || format!("β({m}) vs ({u})_{n} on {v}: {r}"));
                }
            }
        }
    }
    Ok(report)
}

/// States `α(-k1)...α(-ks) e^{pα}` of weight at most `cap`, written in the
/// fixed basis (a single word when `α` is a basis direction).
pub fn alpha_words(form: &Form, alpha: LatVec, cap: i64) -> Result<Vec<FockState>> {
    let rank_one = Form::rank_one(form.norm(alpha));
    let mut out = Vec::new();
    for w in enumerate_up_to(&rank_one, Ambient::FullL, cap)? {
        let mut s = FockState::word(BasisWord::exp(w.label().0 * alpha));
        for m in w.modes() {
            let mut next = FockState::zero();
            for (x, c) in s.terms() {
                for (d, coord) in [(0u8, alpha.0), (1u8, alpha.1)] {
                    if coord == 0 {
                        continue;
                    }
                    let mut modes = x.modes().to_vec();
                    modes.push(crate::fock::Mode::new(m.level, d));
                    next.add_term(BasisWord::new(modes, x.label()), c * int(coord));
                }
            }
            s = next;
        }
        out.push(s);
    }
    Ok(out)
}

/// Label additivity and the ideal property: for sampled `a ∈ V_P` and
/// `b ∈ V⁺`, every nonzero `a_n b` carries the single label `a + b ∈ S`.
pub fn check_ideal(
    l: &GramLattice,
    p: &MonoidDescriptor,
    samples: usize,
    seed: u64,
    ctx: &TruncationCtx,
) -> Result<CheckReport> {
    let par = p.parabolic(l)?;
    let e = Engine::lattice(l);
    let form = Form::from(l);
    let cap = (ctx.max_degree / 2).max(1);
    let member = |v: LatVec| par.member(l, v);
    let in_s = |v: LatVec| par.in_s(l, v);
    let vp = enumerate_up_to(&form, Ambient::Filter(&member), cap)?;
    let vplus = enumerate_up_to(&form, Ambient::Filter(&in_s), cap)?;
    let mut report = CheckReport::new("ideal");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if vp.is_empty() || vplus.is_empty() {
        return Err(Error::PreconditionViolated("no basis words within the truncation".into()));
    }
    let mut pairs = vec![(BasisWord::vacuum(), vplus[0].clone())];
    while pairs.len() < samples {
        pairs.push((vp.choose(&mut rng).unwrap().clone(), vplus.choose(&mut rng).unwrap().clone()));
    }
    for (a, b) in pairs {
        let (wa, wb) = (e.weight(&a), e.weight(&b));
        let a_s = FockState::word(a.clone());
        let b_s = FockState::word(b.clone());
        for n in (wa + wb - 1 - ctx.max_degree)..=(wa + wb - 1) {
            let r = e.mode(&a_s, n, &b_s, ctx)?;
            let labels = r.labels();
            let target = a.label() + b.label();
            let ok = labels.iter().all(|&x| x == target && in_s(x));
            let vac_ok = !a.label().is_zero() || !a.modes().is_empty() || r == if n == -1 { b_s.clone() } else { FockState::zero() };
            report.record(ok && vac_ok, || format!("{a}_({n}) {b} has labels {labels:?}"));
        }
    }
    Ok(report)
}

/// Per degree: the basis of `V_P` is the disjoint union of the bases of
/// `V_H` and `V⁺`. Returns `(degree, dim V_P, dim V_H, dim V⁺)` rows.
pub fn check_vp_decomposition(l: &GramLattice, p: &MonoidDescriptor, cap: i64) -> Result<(CheckReport, Vec<[usize; 4]>)> {
    let par = p.parabolic(l)?;
    let form = Form::from(l);
    let member = |v: LatVec| par.member(l, v);
    let in_s = |v: LatVec| par.in_s(l, v);
    let h_ambient = match par.kind {
        ParabolicKind::TypeI => Ambient::Single(LatVec::ZERO),
        ParabolicKind::TypeII => Ambient::Line(par.alpha.expect("type-II boundary")),
    };
    let mut report = CheckReport::new("decomposition");
    let mut rows = Vec::new();
    for d in 0..=cap {
        let vp = enumerate_basis(&form, Ambient::Filter(&member), d)?;
        let vh = enumerate_basis(&form, h_ambient, d)?;
        let vplus = enumerate_basis(&form, Ambient::Filter(&in_s), d)?;
        let disjoint = vh.iter().all(|w| !vplus.contains(w));
        let mut union: Vec<BasisWord> = vh.iter().chain(vplus.iter()).cloned().collect();
        union.sort();
        report.record(disjoint && union == vp, || format!("degree {d}: V_P != V_H ⊔ V+"));
        rows.push([d as usize, vp.len(), vh.len(), vplus.len()]);
    }
    Ok((report, rows))
}

/// `Σ_j C(m, j) x^j`-style helper used by callers that expand binomials.
pub fn binomial_row(top: i64, len: i64) -> Vec<Rational> {
    (0..len).map(|j| binomial(top, j)).collect()
}
