//! Truncated mode actions of lattice vertex operators.
//!
//! `Y(u, z)` for `u = h_{d1}(-k1)...h_{ds}(-ks) e^a` is the normally ordered
//! product of the fields `∂^{(k-1)} h_d(z)` with
//! `Y(e^a, z) = E^-(-a, z) E^+(-a, z) e_a z^a`. Annihilation parts (including
//! `h(0)`, which reads the label of the operand) act first, then `e_a z^a`,
//! then the creation parts. Only one coefficient of `z` is ever extracted,
//! so every sum below is finite.

mod checks;
mod tensor;

pub use checks::*;
pub use tensor::*;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, int, Rational};
use crate::fock::{virasoro, BasisWord, FockState, Form, Mode};
use crate::lattice::{GramLattice, HVec, LatVec};

/// Degree ceiling for every state produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TruncationCtx {
    pub max_degree: i64,
}

impl TruncationCtx {
    pub fn new(max_degree: i64) -> Self {
        assert!(max_degree >= 0);
        TruncationCtx { max_degree }
    }
}

/// `ε(a, b) = (-1)^{aᵀ E b}` for an integer exponent table `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    pub exponents: [[i64; 2]; 2],
}

impl Cocycle {
    /// The upper-triangular choice `E[i][j] = G[i][j]` for `i > j`.
    pub fn for_gram(g: [[i64; 2]; 2]) -> Self {
        Cocycle { exponents: [[0, 0], [g[1][0], 0]] }
    }

    pub fn trivial() -> Self {
        Cocycle { exponents: [[0, 0], [0, 0]] }
    }

    pub fn eval(&self, a: LatVec, b: LatVec) -> i8 {
        let e = &self.exponents;
        let x = a.0 * (e[0][0] * b.0 + e[0][1] * b.1) + a.1 * (e[1][0] * b.0 + e[1][1] * b.1);
        if x.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn cocycle_eval(eps: &Cocycle, a: LatVec, b: LatVec) -> i8 {
    eps.eval(a, b)
}

/// A lattice (or Heisenberg) vertex algebra: a form plus a cocycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Engine {
    form: Form,
    cocycle: Cocycle,
}

type Mono = Vec<Mode>;

/// Polynomial in creation modes.
type Poly = BTreeMap<Mono, Rational>;

fn poly_add(p: &mut Poly, m: Mono, c: Rational) {
    if c.is_zero() {
        return;
    }
    match p.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn mono_mul(a: &[Mode], b: &[Mode]) -> Mono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort();
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            poly_add(&mut out, mono_mul(ma, mb), ca * cb);
        }
    }
    out
}

/// Distinct modes of a sorted monomial with their multiplicities.
fn groups(m: &[Mode]) -> Vec<(Mode, usize)> {
    let mut out: Vec<(Mode, usize)> = Vec::new();
    for &x in m {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

fn remove_one(m: &[Mode], x: Mode) -> Mono {
    let mut out = m.to_vec();
    let i = out.iter().position(|&y| y == x).expect("mode present");
    out.remove(i);
    out
}

fn sign(r: i64) -> Rational {
    if r % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl Engine {
    pub fn new(form: Form, cocycle: Cocycle) -> Self {
        Engine { form, cocycle }
    }

    /// `V_L` with the upper-triangular cocycle.
    pub fn lattice(l: &GramLattice) -> Self {
        Engine { form: Form::from(l), cocycle: Cocycle::for_gram(l.gram()) }
    }

    /// `V_{Zα}` for `(α|α) = norm`, with `ε(α, α) = (-1)^{parity}`.
    pub fn rank_one_lattice(norm: i64, parity: i64) -> Self {
        Engine { form: Form::rank_one(norm), cocycle: Cocycle { exponents: [[parity, 0], [0, 0]] } }
    }

    /// The rank-one Heisenberg algebra `M(1, 0)` on a vector of norm `norm`.
    pub fn heisenberg(norm: i64) -> Self {
        Self::rank_one_lattice(norm, 0)
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn virasoro(&self) -> FockState {
        virasoro(&self.form)
    }

    fn dirs(&self) -> u8 {
        self.form.directions()
    }

    /// `(h_d | label)` in the fixed basis.
    fn pair_dir(&self, d: u8, label: LatVec) -> i64 {
        let e = if d == 0 { LatVec(1, 0) } else { LatVec(0, 1) };
        self.form.inner(e, label)
    }

    fn gram(&self, i: u8, j: u8) -> i64 {
        self.form.gram[i as usize][j as usize]
    }

    pub fn weight(&self, w: &BasisWord) -> i64 {
        w.weight(&self.form)
    }

    fn out_weight(&self, wt_u: i64, w: &BasisWord, n: i64, ctx: &TruncationCtx) -> Result<Option<i64>> {
        let out = wt_u + self.weight(w) - n - 1;
        if out < 0 {
            return Ok(None);
        }
        if out > ctx.max_degree {
            return Err(Error::TruncationOverflow { needed: out, max: ctx.max_degree });
        }
        Ok(Some(out))
    }

    /// `h(m) v` for `h` with rational coordinates in the fixed basis.
    pub fn heis_mode(&self, h: &HVec, m: i64, v: &FockState, ctx: &TruncationCtx) -> Result<FockState> {
        let [h0, h1] = h.to_rational().ok_or(Error::NotRational)?;
        let hs = [h0, h1];
        let mut out = FockState::zero();
        for (w, c) in v.terms() {
            if m < 0 {
                let wt = self.weight(w) - m;
                if wt > ctx.max_degree {
                    return Err(Error::TruncationOverflow { needed: wt, max: ctx.max_degree });
                }
                for d in 0..self.dirs() {
                    let hd = &hs[d as usize];
                    if hd.is_zero() {
                        continue;
                    }
                    let mut modes = w.modes().to_vec();
                    modes.push(Mode::new((-m) as u32, d));
                    out.add_term(BasisWord::new(modes, w.label()), c * hd);
                }
            } else if m == 0 {
                let mut s = Rational::zero();
                for d in 0..self.dirs() {
                    s += &hs[d as usize] * int(self.pair_dir(d, w.label()));
                }
                out.add_term(w.clone(), c * s);
            } else {
                for (x, mult) in groups(w.modes()) {
                    if x.level as i64 != m {
                        continue;
                    }
                    let mut s = Rational::zero();
                    for d in 0..self.dirs() {
                        s += &hs[d as usize] * int(self.gram(d, x.dir));
                    }
                    let coef = s * int(mult as i64 * m);
                    out.add_term(BasisWord::new(remove_one(w.modes(), x), w.label()), c * coef);
                }
            }
        }
        Ok(out)
    }

    /// `h_d(m)` for a basis direction.
    pub fn dir_mode(&self, d: u8, m: i64, v: &FockState, ctx: &TruncationCtx) -> Result<FockState> {
        let h = if d == 0 { LatVec(1, 0) } else { LatVec(0, 1) };
        self.heis_mode(&h.to_hvec(), m, v, ctx)
    }

    /// `e^a_n v`, expanding `E^±(-a, z)` as operator exponentials of
    /// Heisenberg modes.
    pub fn exp_mode(&self, a: LatVec, n: i64, v: &FockState, ctx: &TruncationCtx) -> Result<FockState> {
        let ah = a.to_hvec();
        let wt_a = self.form.norm(a) / 2;
        let mut out = FockState::zero();
        for (w, c) in v.terms() {
            let Some(_) = self.out_weight(wt_a, w, n, ctx)? else { continue };
            // E^+(-a, z) = exp(-Σ_k a(k) z^{-k} / k), as a series in z^{-1}.
            let mut series: BTreeMap<i64, FockState> = BTreeMap::new();
            let mut power: BTreeMap<i64, FockState> = BTreeMap::from([(0, FockState::word(w.clone()))]);
            let mut i = 0i64;
            while !power.is_empty() {
                let fact = (1..=i).fold(Rational::one(), |f, j| f * int(j));
                for (e, s) in &power {
                    series.entry(*e).or_default().add_scaled(s, &(Rational::one() / &fact));
                }
                let mut next: BTreeMap<i64, FockState> = BTreeMap::new();
                for (e, s) in &power {
                    let top = s.max_weight(&self.form).unwrap_or(0);
                    for k in 1..=top {
                        let t = self.heis_mode(&ah, k, s, ctx)?;
                        if !t.is_zero() {
                            next.entry(e - k).or_default().add_scaled(&t, &(-Rational::one() / int(k)));
                        }
                    }
                }
                next.retain(|_, s| !s.is_zero());
                power = next;
                i += 1;
            }
            let shift = self.form.inner(a, w.label());
            let eps = int(self.cocycle.eval(a, w.label()) as i64);
            for (e, s) in series {
                let need = -n - 1 - (e + shift);
                if need < 0 || s.is_zero() {
                    continue;
                }
                let moved: FockState = s.terms().map(|(x, y)| (x.with_label(x.label() + a), y * &eps)).collect();
                // E^-(-a, z) = exp(Σ_k a(-k) z^k / k): T_m = (1/m) Σ_k a(-k) T_{m-k}.
                let mut t: Vec<FockState> = vec![moved];
                for m in 1..=need {
                    let mut acc = FockState::zero();
                    for k in 1..=m {
                        let prev = &t[(m - k) as usize];
                        if prev.is_zero() {
                            continue;
                        }
                        acc.add_scaled(&self.heis_mode(&ah, -k, prev, ctx)?, &Rational::one());
                    }
                    t.push(acc.scaled(&(Rational::one() / int(m))));
                }
                out.add_scaled(&t[need as usize], c);
            }
        }
        Ok(out)
    }

    /// Coefficient of `z^{-n-1}` in `Y(u, z) v` for a basis word `u`.
    pub fn general_mode(&self, u: &BasisWord, n: i64, v: &FockState, ctx: &TruncationCtx) -> Result<FockState> {
        let wt_u = self.weight(u);
        let mut out = FockState::zero();
        for (w, c) in v.terms() {
            let Some(out_wt) = self.out_weight(wt_u, w, n, ctx)? else { continue };
            let r = self.mode_on_word(u, n, w, out_wt);
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    /// `a_n v` for an arbitrary state `a`.
    pub fn mode(&self, a: &FockState, n: i64, v: &FockState, ctx: &TruncationCtx) -> Result<FockState> {
        let mut out = FockState::zero();
        for (u, c) in a.terms() {
            out.add_scaled(&self.general_mode(u, n, v, ctx)?, c);
        }
        Ok(out)
    }

    fn mode_on_word(&self, u: &BasisWord, n: i64, w: &BasisWord, out_wt: i64) -> FockState {
        let a = u.label();
        // Field types (r, d) with multiplicities; r = level - 1.
        let fields: Vec<((i64, u8), usize)> =
            groups(u.modes()).into_iter().map(|(m, k)| ((m.level as i64 - 1, m.dir), k)).collect();
        let emin = self.e_minus_series(a, out_wt);
        let mut out = FockState::zero();
        // Each split chooses how many copies of each field type are annihilators.
        let mut choice = vec![0usize; fields.len()];
        loop {
            let mut mult = Rational::one();
            let mut ann: Vec<(i64, u8)> = Vec::new();
            let mut cre: Vec<(i64, u8)> = Vec::new();
            for (i, &(f, k)) in fields.iter().enumerate() {
                mult *= binomial(k as i64, choice[i] as i64);
                ann.extend(std::iter::repeat_n(f, choice[i]));
                cre.extend(std::iter::repeat_n(f, k - choice[i]));
            }
            self.split_term(&ann, &cre, a, w, n, out_wt, &emin, &mult, &mut out);
            // next choice
            let mut i = 0;
            loop {
                if i == fields.len() {
                    return out;
                }
                if choice[i] < fields[i].1 {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn split_term(
        &self,
        ann: &[(i64, u8)],
        cre: &[(i64, u8)],
        a: LatVec,
        w: &BasisWord,
        n: i64,
        out_wt: i64,
        emin: &[Poly],
        mult: &Rational,
        out: &mut FockState,
    ) {
        let b = w.label();
        // Stage 1: annihilation parts of the fields; entries (monomial, coeff, z-exponent).
        let mut cur: Vec<(Mono, Rational, i64)> = vec![(w.modes().to_vec(), mult.clone(), 0)];
        for &(r, d) in ann {
            let sg = sign(r);
            let mut next = Vec::new();
            for (mono, c, e) in &cur {
                let zero = self.pair_dir(d, b);
                if zero != 0 {
                    next.push((mono.clone(), c * int(zero) * &sg, e - 1 - r));
                }
                for (x, mu) in groups(mono) {
                    let k = x.level as i64;
                    let g = self.gram(d, x.dir);
                    if g == 0 {
                        continue;
                    }
                    let coef = int(mu as i64 * k * g) * &sg * binomial(k + r, r);
                    next.push((remove_one(mono, x), c * coef, e - k - 1 - r));
                }
            }
            cur = next;
            if cur.is_empty() {
                return;
            }
        }
        // Stage 2: E^+(-a, z) substitutes x_{k,j} -> x_{k,j} - (a|h_j) z^{-k}.
        let p: Vec<i64> = (0..self.dirs()).map(|j| self.pair_dir(j, a)).collect();
        let mut after: Vec<(Mono, Rational, i64)> = Vec::new();
        for (mono, c, e) in cur {
            let gs = groups(&mono);
            let mut partial: Vec<(Mono, Rational, i64)> = vec![(Vec::new(), c, e)];
            for (x, mu) in gs {
                let pj = p[x.dir as usize];
                let mut next = Vec::new();
                for (kept, c, e) in &partial {
                    for t in 0..=mu {
                        if t > 0 && pj == 0 {
                            break;
                        }
                        let coef = binomial(mu as i64, t as i64) * pow(-pj, t);
                        let mut k2 = kept.clone();
                        k2.extend(std::iter::repeat_n(x, mu - t));
                        next.push((k2, c * coef, e - x.level as i64 * t as i64));
                    }
                }
                partial = next;
            }
            for (mut m, c, e) in partial {
                m.sort();
                after.push((m, c, e));
            }
        }
        // Stage 3: e_a z^a.
        let eps = int(self.cocycle.eval(a, b) as i64);
        let shift = self.form.inner(a, b);
        let label = a + b;
        // Stages 4-5: creation parts, coefficient of z^{need}.
        let cre_series = self.creation_series(cre, emin, out_wt);
        for (mono, c, e) in after {
            let need = -n - 1 - (e + shift);
            if need < 0 || need as usize >= cre_series.len() {
                continue;
            }
            for (cm, cc) in &cre_series[need as usize] {
                let word = BasisWord::new(mono_mul(&mono, cm), label);
                out.add_term(word, &c * cc * &eps);
            }
        }
    }

    /// Coefficients `E_m` of `E^-(-a, z) = Σ_m E_m z^m` for `m <= top`.
    fn e_minus_series(&self, a: LatVec, top: i64) -> Vec<Poly> {
        let mut e: Vec<Poly> = vec![Poly::from([(Vec::new(), Rational::one())])];
        let coords = [a.0, a.1];
        for m in 1..=top {
            let mut acc = Poly::new();
            for k in 1..=m {
                let mut ak = Poly::new();
                for d in 0..self.dirs() {
                    poly_add(&mut ak, vec![Mode::new(k as u32, d)], int(coords[d as usize]));
                }
                for (mono, c) in poly_mul(&ak, &e[(m - k) as usize]) {
                    poly_add(&mut acc, mono, c);
                }
            }
            let inv = Rational::one() / int(m);
            e.push(acc.into_iter().map(|(k, v)| (k, v * &inv)).collect());
        }
        e
    }

    /// `E^-(-a, z) Π (∂^{(r)} h_d)_-(z)` as a series truncated at `z^top`.
    fn creation_series(&self, cre: &[(i64, u8)], emin: &[Poly], top: i64) -> Vec<Poly> {
        let mut s: Vec<Poly> = emin.to_vec();
        for &(r, d) in cre {
            let mut next: Vec<Poly> = vec![Poly::new(); (top + 1) as usize];
            for (i, pi) in s.iter().enumerate() {
                for j in 0..=(top - i as i64) {
                    let coef = binomial(r + j, r);
                    let x = Mode::new((r + 1 + j) as u32, d);
                    for (m, c) in pi {
                        poly_add(&mut next[i + j as usize], mono_mul(m, &[x]), c * &coef);
                    }
                }
            }
            s = next;
        }
        s
    }
}

fn pow(x: i64, t: usize) -> Rational {
    let mut r = Rational::one();
    for _ in 0..t {
        r *= int(x);
    }
    r
}

/// `L(-1)` as the derivation `h(-k) ↦ k h(-k-1)`, `e^a ↦ a(-1) e^a`.
pub fn l_minus_one(form: &Form, v: &FockState) -> FockState {
    let mut out = FockState::zero();
    for (w, c) in v.terms() {
        let modes = w.modes();
        for i in 0..modes.len() {
            let mut m = modes.to_vec();
            let k = m[i].level;
            m[i] = Mode::new(k + 1, m[i].dir);
            out.add_term(BasisWord::new(m, w.label()), c * int(k as i64));
        }
        let a = w.label();
        let coords = [a.0, a.1];
        for d in 0..form.directions() {
            if coords[d as usize] == 0 {
                continue;
            }
            let mut m = modes.to_vec();
            m.push(Mode::new(1, d));
            out.add_term(BasisWord::new(m, a), c * int(coords[d as usize]));
        }
    }
    out
}
