//! The splitting `V_H ≅ M(1) ⊗ V_{Zα}` for a type-II boundary line.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{CheckReport, Engine, TruncationCtx};
use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};
use crate::fock::{enumerate_up_to, Ambient, BasisWord, FockState, Form, Mode};
use crate::lattice::{det2, GramLattice, LatVec};

/// Re-expand every mode: `h_d(-k) ↦ Σ_e mat[d][e] h_e(-k)`. Labels are kept.
pub fn change_basis(state: &FockState, mat: &[[Rational; 2]; 2]) -> FockState {
    let mut out = FockState::zero();
    for (w, c) in state.terms() {
        let mut partial: Vec<(Vec<Mode>, Rational)> = vec![(Vec::new(), c.clone())];
        for m in w.modes() {
            let mut next = Vec::with_capacity(partial.len() * 2);
            for (modes, coef) in &partial {
                for (e, x) in mat[m.dir as usize].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let mut ms = modes.clone();
                    ms.push(Mode::new(m.level, e as u8));
                    next.push((ms, coef * x));
                }
            }
            partial = next;
        }
        for (modes, coef) in partial {
            out.add_term(BasisWord::new(modes, w.label()), coef);
        }
    }
    out
}

/// Heisenberg directions `(β, α)` with `β ⊥ α` primitive; direction 0 is `β`,
/// direction 1 is `α`. Labels stay in lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub alpha: LatVec,
    pub beta: LatVec,
    to_lattice: [[Rational; 2]; 2],
    to_adapted: [[Rational; 2]; 2],
}

impl AdaptedBasis {
    pub fn new(l: &GramLattice, alpha: LatVec) -> Result<Self> {
        let beta = l.orthogonal_primitive(alpha)?;
        let rows = [[beta.0, beta.1], [alpha.0, alpha.1]];
        let det = det2(beta, alpha);
        let to_lattice = rows.map(|r| r.map(int));
        // inverse of [[b0, b1], [a0, a1]]
        let q = |x: i64| Rational::new(x.into(), det.into());
        let to_adapted = [[q(alpha.1), q(-beta.1)], [q(-alpha.0), q(beta.0)]];
        Ok(AdaptedBasis { alpha, beta, to_lattice, to_adapted })
    }

    pub fn to_lattice(&self, s: &FockState) -> FockState {
        change_basis(s, &self.to_lattice)
    }

    pub fn to_adapted(&self, s: &FockState) -> FockState {
        change_basis(s, &self.to_adapted)
    }

    /// The multiple `p` with `label = p α`, if any.
    pub fn alpha_multiple(&self, label: LatVec) -> Option<i64> {
        if det2(self.alpha, label) != 0 {
            return None;
        }
        let (a, b) = (self.alpha, label);
        Some(if a.0 != 0 { b.0 / a.0 } else { b.1 / a.1 })
    }
}

/// Finite sums of `u1 ⊗ u2`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorState {
    terms: BTreeMap<(BasisWord, BasisWord), Rational>,
}

impl TensorState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(BasisWord, BasisWord), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, left: BasisWord, right: BasisWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_product(&mut self, a: &FockState, b: &FockState, c: &Rational) {
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                self.add_term(x.clone(), y.clone(), c * cx * cy);
            }
        }
    }

    pub fn product(a: &FockState, b: &FockState) -> Self {
        let mut t = Self::zero();
        t.add_product(a, b, &int(1));
        t
    }

    pub fn plus(&self, o: &TensorState) -> TensorState {
        let mut t = self.clone();
        for ((a, b), c) in &o.terms {
            t.add_term(a.clone(), b.clone(), c.clone());
        }
        t
    }
}

impl std::fmt::Display for TensorState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("({c}) {a} ⊗ {b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `φ`: adapted `V_H` words to `M(1) ⊗ V_{Zα}`. `β`-modes go left, `α`-modes
/// go right as the single rank-one direction, and `e^{pα} ↦ 1 ⊗ e^{p}`.
pub fn phi_map(basis: &AdaptedBasis, adapted: &FockState) -> Result<TensorState> {
    let mut out = TensorState::zero();
    for (w, c) in adapted.terms() {
        let p = basis
            .alpha_multiple(w.label())
            .ok_or_else(|| Error::BadLabel(format!("{} is not a multiple of {}", w.label(), basis.alpha)))?;
        let left: Vec<Mode> = w.modes().iter().filter(|m| m.dir == 0).copied().collect();
        let right: Vec<Mode> = w.modes().iter().filter(|m| m.dir == 1).map(|m| Mode::new(m.level, 0)).collect();
        out.add_term(BasisWord::new(left, LatVec::ZERO), BasisWord::new(right, LatVec(p, 0)), c.clone());
    }
    Ok(out)
}

/// Inverse of [`phi_map`].
pub fn phi_inverse(basis: &AdaptedBasis, t: &TensorState) -> FockState {
    let mut out = FockState::zero();
    for ((a, b), c) in t.terms() {
        let mut modes = a.modes().to_vec();
        modes.extend(b.modes().iter().map(|m| Mode::new(m.level, 1)));
        out.add_term(BasisWord::new(modes, b.label().0 * basis.alpha), c.clone());
    }
    out
}

/// `M(1)` on `β` and `V_{Zα}` with the restricted cocycle.
pub fn tensor_factors(l: &GramLattice, basis: &AdaptedBasis) -> (Engine, Engine) {
    let left = Engine::heisenberg(l.norm(basis.beta));
    let parity = if Engine::lattice(l).cocycle().eval(basis.alpha, basis.alpha) == 1 { 0 } else { 1 };
    let right = Engine::rank_one_lattice(l.norm(basis.alpha), parity);
    (left, right)
}

/// `(u1 ⊗ u2)_n (v1 ⊗ v2) = Σ_i (u1)_i v1 ⊗ (u2)_{n-1-i} v2`.
pub fn tensor_mode(
    left: &Engine,
    right: &Engine,
    u: &TensorState,
    n: i64,
    v: &TensorState,
    ctx: &TruncationCtx,
) -> Result<TensorState> {
    let mut out = TensorState::zero();
    for ((u1, u2), cu) in u.terms() {
        for ((v1, v2), cv) in v.terms() {
            let (wu1, wu2) = (left.weight(u1), right.weight(u2));
            let (wv1, wv2) = (left.weight(v1), right.weight(v2));
            let total = wu1 + wu2 + wv1 + wv2 - n - 1;
            if total < 0 {
                continue;
            }
            if total > ctx.max_degree {
                return Err(Error::TruncationOverflow { needed: total, max: ctx.max_degree });
            }
            let (s1, s2) = (FockState::word(u1.clone()), FockState::word(u2.clone()));
            let (t1, t2) = (FockState::word(v1.clone()), FockState::word(v2.clone()));
            for i in (n - wu2 - wv2)..=(wu1 + wv1 - 1) {
                let a = left.mode(&s1, i, &t1, ctx)?;
                if a.is_zero() {
                    continue;
                }
                let b = right.mode(&s2, n - 1 - i, &t2, ctx)?;
                out.add_product(&a, &b, &(cu * cv));
            }
        }
    }
    Ok(out)
}

/// Adapted basis words of `V_H` up to weight `cap`.
pub fn adapted_vh_words(l: &GramLattice, basis: &AdaptedBasis, cap: i64) -> Result<Vec<BasisWord>> {
    let (left, right) = tensor_factors(l, basis);
    let lw = enumerate_up_to(left.form(), Ambient::Single(LatVec::ZERO), cap)?;
    let rw = enumerate_up_to(right.form(), Ambient::FullL, cap)?;
    let mut out = Vec::new();
    for a in &lw {
        for b in &rw {
            if left.weight(a) + right.weight(b) <= cap {
                let t = TensorState::product(&FockState::word(a.clone()), &FockState::word(b.clone()));
                let s = phi_inverse(basis, &t);
                out.extend(s.terms().map(|(w, _)| w.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiReport {
    pub alpha: LatVec,
    pub beta: LatVec,
    pub report: CheckReport,
}

/// `φ(u_n v) = φ(u)_n φ(v)` for all adapted `V_H` words up to `cap` and all
/// `n` inside the truncation, plus `φ(ω) = ω₁ ⊗ 1 + 1 ⊗ ω₂`.
pub fn check_phi_hom(l: &GramLattice, alpha: LatVec, cap: i64, ctx: &TruncationCtx) -> Result<PhiReport> {
    let basis = AdaptedBasis::new(l, alpha)?;
    let vl = Engine::lattice(l);
    let (left, right) = tensor_factors(l, &basis);
    let mut report = CheckReport::new("phi");
    let one = FockState::vacuum();
    let omega = phi_map(&basis, &basis.to_adapted(&vl.virasoro()))?;
    let expect = TensorState::product(&left.virasoro(), &one).plus(&TensorState::product(&one, &right.virasoro()));
    report.record(omega == expect, || format!("φ(ω) = {omega}"));
    let words = adapted_vh_words(l, &basis, cap)?;
    let form = Form::from(l);
    for u in &words {
        let us = FockState::word(u.clone());
        let ul = basis.to_lattice(&us);
        let pu = phi_map(&basis, &us)?;
        let wu = ul.homogeneous_weight(&form).unwrap_or(0);
        for v in &words {
            let vs = FockState::word(v.clone());
            let vlat = basis.to_lattice(&vs);
            let pv = phi_map(&basis, &vs)?;
            let wv = vlat.homogeneous_weight(&form).unwrap_or(0);
            for n in (wu + wv - 1 - ctx.max_degree)..=(wu + wv - 1) {
                let lhs = phi_map(&basis, &basis.to_adapted(&vl.mode(&ul, n, &vlat, ctx)?))?;
                let rhs = tensor_mode(&left, &right, &pu, n, &pv, ctx)?;
                report.record(lhs == rhs, || format!("{u}_({n}) {v}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(PhiReport { alpha, beta: basis.beta, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_round_trip() {
        let l = GramLattice::a2();
        let b = AdaptedBasis::new(&l, LatVec(1, 0)).unwrap();
        assert_eq!(l.inner_lat(b.beta, b.alpha), 0);
        let s = FockState::word(BasisWord::from_pairs(&[(2, 0), (1, 1), (1, 0)], LatVec(2, 0)));
        assert_eq!(b.to_adapted(&b.to_lattice(&s)), s);
        let t = phi_map(&b, &s).unwrap();
        assert_eq!(phi_inverse(&b, &t), s);
        assert!(matches!(phi_map(&b, &FockState::exp(LatVec(0, 1))), Err(Error::BadLabel(_))));
    }

    #[test]
    fn phi_is_a_homomorphism() {
        let ctx = TruncationCtx::new(3);
        for (l, a) in [(GramLattice::diag(2, 2), LatVec(1, 0)), (GramLattice::a2(), LatVec(1, 0)), (GramLattice::a2(), LatVec(1, 1))] {
            let r = check_phi_hom(&l, a, 2, &ctx).unwrap();
            assert!(r.report.passed(), "{:?}", &r.report.failures[..r.report.failures.len().min(3)]);
        }
    }
}
