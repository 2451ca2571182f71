//! Graded bases of Heisenberg Fock modules `M(1, λ)` and lattice summands,
//! and exact sparse states over them.
//!
//! A mode `(k, d)` stands for `h_d(-k)` where `h_0, h_1` is the fixed basis of
//! the Cartan space (for lattices: the lattice basis itself, so commutators
//! pick up Gram entries). A rank-one form only uses direction 0.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{QuadScalar, Rational};
use crate::lattice::{GramLattice, LatVec};
use crate::monoid::MonoidDescriptor;

/// An integral symmetric form on the Cartan space, rank one or two.
/// In rank one only the `[0][0]` entry is used and labels are `(k, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Form {
    pub gram: [[i64; 2]; 2],
    pub rank: u8,
}

impl Form {
    pub fn rank_two(gram: [[i64; 2]; 2]) -> Self {
        Form { gram, rank: 2 }
    }

    pub fn rank_one(norm: i64) -> Self {
        Form { gram: [[norm, 0], [0, 0]], rank: 1 }
    }

    pub fn inner(&self, u: LatVec, v: LatVec) -> i64 {
        let g = &self.gram;
        u.0 * (g[0][0] * v.0 + g[0][1] * v.1) + u.1 * (g[1][0] * v.0 + g[1][1] * v.1)
    }

    pub fn norm(&self, v: LatVec) -> i64 {
        self.inner(v, v)
    }

    pub fn directions(&self) -> u8 {
        self.rank
    }

    pub fn det(&self) -> i64 {
        self.gram[0][0] * self.gram[1][1] - self.gram[0][1] * self.gram[1][0]
    }
}

impl From<&GramLattice> for Form {
    fn from(l: &GramLattice) -> Form {
        Form::rank_two(l.gram())
    }
}

/// `h_dir(-level)` with `level >= 1`. Sorted by descending level, then
/// ascending direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    pub level: u32,
    pub dir: u8,
}

impl Mode {
    pub fn new(level: u32, dir: u8) -> Self {
        assert!(level >= 1, "creation modes have level >= 1");
        Mode { level, dir }
    }
}

impl Ord for Mode {
    fn cmp(&self, o: &Self) -> Ordering {
        o.level.cmp(&self.level).then(self.dir.cmp(&o.dir))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// `h_{d1}(-k1) ... h_{dr}(-kr) e^label` with modes in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisWord {
    modes: Vec<Mode>,
    label: LatVec,
}

impl BasisWord {
    pub fn new(mut modes: Vec<Mode>, label: LatVec) -> Self {
        modes.sort();
        BasisWord { modes, label }
    }

    pub fn vacuum() -> Self {
        BasisWord { modes: Vec::new(), label: LatVec::ZERO }
    }

    pub fn exp(label: LatVec) -> Self {
        BasisWord { modes: Vec::new(), label }
    }

    /// Build from `(level, dir)` pairs.
    pub fn from_pairs(pairs: &[(u32, u8)], label: LatVec) -> Self {
        Self::new(pairs.iter().map(|&(k, d)| Mode::new(k, d)).collect(), label)
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn label(&self) -> LatVec {
        self.label
    }

    pub fn level(&self) -> i64 {
        self.modes.iter().map(|m| m.level as i64).sum()
    }

    /// `Σ levels + (label|label)/2`.
    pub fn weight(&self, form: &Form) -> i64 {
        self.level() + form.norm(self.label) / 2
    }

    /// Exact weight as a field element.
    pub fn weight_quad(&self, form: &Form) -> QuadScalar {
        QuadScalar::from_int(self.weight(form))
    }

    pub fn with_label(&self, label: LatVec) -> Self {
        BasisWord { modes: self.modes.clone(), label }
    }

    /// Concatenate the modes of two words; labels add.
    pub fn concat(&self, o: &BasisWord) -> Self {
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&o.modes);
        BasisWord::new(modes, self.label + o.label)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        let mut s = String::new();
        for m in &self.modes {
            s.push_str(&format!("{}(-{})", names[m.dir as usize], m.level));
        }
        s.push_str(&format!("e[{},{}]", self.label.0, self.label.1));
        s
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&["a1", "a2"]))
    }
}

impl Serialize for BasisWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finite linear combination of basis words with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct FockState {
    terms: BTreeMap<BasisWord, Rational>,
}

impl FockState {
    pub fn zero() -> Self {
        FockState::default()
    }

    pub fn vacuum() -> Self {
        Self::word(BasisWord::vacuum())
    }

    pub fn word(w: BasisWord) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: BasisWord, c: Rational) -> Self {
        let mut s = FockState::zero();
        s.add_term(w, c);
        s
    }

    pub fn exp(label: LatVec) -> Self {
        Self::word(BasisWord::exp(label))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &BasisWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: BasisWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FockState, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> FockState {
        let mut out = FockState::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn minus(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// Weights of the words present, ascending.
    pub fn weights(&self, form: &Form) -> Vec<i64> {
        let mut w: Vec<i64> = self.terms.keys().map(|b| b.weight(form)).collect();
        w.sort();
        w.dedup();
        w
    }

    /// The common weight, if the state is nonzero and homogeneous.
    pub fn homogeneous_weight(&self, form: &Form) -> Option<i64> {
        match self.weights(form).as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn max_weight(&self, form: &Form) -> Option<i64> {
        self.terms.keys().map(|b| b.weight(form)).max()
    }

    pub fn labels(&self) -> Vec<LatVec> {
        let mut l: Vec<LatVec> = self.terms.keys().map(|w| w.label).collect();
        l.sort();
        l.dedup();
        l
    }

    /// Keep only words of weight at most `d`.
    pub fn truncated(&self, form: &Form, d: i64) -> FockState {
        FockState { terms: self.terms.iter().filter(|(w, _)| w.weight(form) <= d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if c.is_one() { w.display_with(names) } else { format!("({c})*{}", w.display_with(names)) })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&["a1", "a2"]))
    }
}

impl FromIterator<(BasisWord, Rational)> for FockState {
    fn from_iter<I: IntoIterator<Item = (BasisWord, Rational)>>(iter: I) -> Self {
        let mut s = FockState::zero();
        for (w, c) in iter {
            s.add_term(w, c);
        }
        s
    }
}

#[derive(Serialize)]
struct TermJson {
    word: String,
    coeff: String,
}

impl Serialize for FockState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&TermJson { word: w.to_string(), coeff: c.to_string() })?;
        }
        seq.end()
    }
}

/// `x + c y`; the scalar must be rational since states are over Q.
pub fn state_arith(x: &FockState, y: &FockState, c: &QuadScalar) -> Result<FockState> {
    let c = c.to_rational().ok_or(Error::NotRational)?;
    let mut out = x.clone();
    out.add_scaled(y, &c);
    Ok(out)
}

/// `ω = ½ Σ (G⁻¹)_{ij} h_i(-1) h_j(-1) 1`.
pub fn virasoro(form: &Form) -> FockState {
    let mut s = FockState::zero();
    if form.rank == 1 {
        s.add_term(BasisWord::from_pairs(&[(1, 0), (1, 0)], LatVec::ZERO), Rational::new(1.into(), (2 * form.gram[0][0]).into()));
        return s;
    }
    let det = form.det();
    let inv = [[form.gram[1][1], -form.gram[0][1]], [-form.gram[1][0], form.gram[0][0]]];
    for i in 0..2u8 {
        for j in 0..2u8 {
            let c = Rational::new(inv[i as usize][j as usize].into(), (2 * det).into());
            s.add_term(BasisWord::from_pairs(&[(1, i), (1, j)], LatVec::ZERO), c);
        }
    }
    s
}

/// Which labels an enumeration ranges over.
#[derive(Clone, Copy)]
pub enum Ambient<'a> {
    FullL,
    Single(LatVec),
    /// Labels in `Z alpha`.
    Line(LatVec),
    Monoid(&'a GramLattice, &'a MonoidDescriptor),
    /// Labels satisfying a predicate.
    Filter(&'a dyn Fn(LatVec) -> bool),
}

/// Lattice points with `(λ|λ)/2 <= d`, sorted.
pub fn short_vectors(form: &Form, d: i64) -> Vec<LatVec> {
    if d < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let g = form.gram;
    if form.rank == 1 {
        let b = isqrt_ceil(2 * d, g[0][0]);
        for k in -b..=b {
            if form.norm(LatVec(k, 0)) <= 2 * d {
                out.push(LatVec(k, 0));
            }
        }
        return out;
    }
    let det = form.det();
    let b0 = isqrt_ceil(2 * d * g[1][1], det);
    let b1 = isqrt_ceil(2 * d * g[0][0], det);
    for x in -b0..=b0 {
        for y in -b1..=b1 {
            let v = LatVec(x, y);
            if form.norm(v) <= 2 * d {
                out.push(v);
            }
        }
    }
    out
}

/// Smallest `b >= 0` with `b^2 >= num/den`.
fn isqrt_ceil(num: i64, den: i64) -> i64 {
    let mut b = 0;
    while b * b * den < num {
        b += 1;
    }
    b
}

/// Multisets of modes with levels summing to `n`, canonical order.
pub fn colored_partitions(n: u32, colors: u8) -> Vec<Vec<Mode>> {
    fn rec(rem: u32, max: Mode, colors: u8, cur: &mut Vec<Mode>, out: &mut Vec<Vec<Mode>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        // Modes not preceding `max` in canonical order: level < max.level, or equal level with dir >= max.dir.
        for level in (1..=rem.min(max.level)).rev() {
            for dir in 0..colors {
                let m = Mode { level, dir };
                if m < max {
                    continue;
                }
                cur.push(m);
                rec(rem - level, m, colors, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, Mode { level: n.max(1), dir: 0 }, colors, &mut Vec::new(), &mut out);
    out
}

/// All basis words of weight exactly `degree` over the given labels.
pub fn enumerate_basis(form: &Form, ambient: Ambient<'_>, degree: i64) -> Result<Vec<BasisWord>> {
    if degree < 0 {
        return Ok(Vec::new());
    }
    let labels: Vec<LatVec> = match ambient {
        Ambient::Single(l) => vec![l],
        Ambient::FullL => short_vectors(form, degree),
        Ambient::Line(a) => short_vectors(form, degree).into_iter().filter(|v| crate::lattice::det2(a, *v) == 0).collect(),
        Ambient::Monoid(l, p) => {
            let mut out = Vec::new();
            for v in short_vectors(form, degree) {
                if p.member_within(l, v, v.max_abs().max(1))? {
                    out.push(v);
                }
            }
            out
        }
        Ambient::Filter(f) => short_vectors(form, degree).into_iter().filter(|v| f(*v)).collect(),
    };
    let mut words = Vec::new();
    for lab in labels {
        let rest = degree - form.norm(lab) / 2;
        if rest < 0 {
            continue;
        }
        for modes in colored_partitions(rest as u32, form.directions()) {
            words.push(BasisWord { modes, label: lab });
        }
    }
    words.sort();
    Ok(words)
}

/// Basis words of every weight `0..=max_degree`.
pub fn enumerate_up_to(form: &Form, ambient: Ambient<'_>, max_degree: i64) -> Result<Vec<BasisWord>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        out.extend(enumerate_basis(form, ambient, d)?);
    }
    Ok(out)
}

/// Helper for tests and examples: `h(-k)` applied as a coefficient-one word.
pub fn mode_word(pairs: &[(u32, u8)], label: LatVec) -> FockState {
    FockState::word(BasisWord::from_pairs(pairs, label))
}
