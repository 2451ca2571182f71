//! Truncated graded-dimension series and characters.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::exactnum::{int, QuadScalar, Rational};
use crate::fock::{colored_partitions, enumerate_basis, Ambient, Form};
use crate::lattice::{GramLattice, LatVec};
use crate::monoid::MonoidDescriptor;

/// `Σ dim · q^exp` with exponents `<= cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<QuadScalar, u64>,
    cap: Rational,
}

impl QSeries {
    pub fn new(cap: Rational) -> Self {
        QSeries { terms: BTreeMap::new(), cap }
    }

    pub fn cap(&self) -> &Rational {
        &self.cap
    }

    /// Adds `dim · q^exp`; exponents above the cap are dropped.
    pub fn add(&mut self, exp: QuadScalar, dim: u64) {
        if dim == 0 || exp > QuadScalar::from_rational(self.cap.clone()) {
            return;
        }
        *self.terms.entry(exp).or_insert(0) += dim;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QuadScalar, &u64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &QuadScalar) -> u64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    /// Coefficients at `0, 1, ..., cap` for integer-graded series.
    pub fn integer_dims(&self) -> Vec<u64> {
        let top = self.cap.floor().to_integer();
        let top: i64 = top.try_into().unwrap_or(0);
        (0..=top).map(|k| self.coeff(&QuadScalar::from_int(k))).collect()
    }

    /// Truncated product.
    pub fn times(&self, o: &QSeries) -> QSeries {
        let cap = self.cap.clone().min(o.cap.clone());
        let mut out = QSeries::new(cap);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add(a + b, x * y);
            }
        }
        out
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            exp: String,
            dim: u64,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, d) in &self.terms {
            seq.serialize_element(&Term { exp: e.to_string(), dim: *d })?;
        }
        seq.end()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(e, d)| format!("{d} q^({e})")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Count of colored partitions of `n` for every `n <= cap`.
pub fn partition_counts(cap: i64, colors: u8) -> Vec<u64> {
    (0..=cap.max(0)).map(|n| colored_partitions(n as u32, colors).len() as u64).collect()
}

/// `q^h · Π (1 - q^n)^{-colors}` to `cap`.
pub fn heisenberg_series(h: QuadScalar, colors: u8, cap: i64) -> QSeries {
    let mut s = QSeries::new(int(cap));
    for (n, c) in partition_counts(cap, colors).into_iter().enumerate() {
        s.add(&h + &QuadScalar::from_int(n as i64), c);
    }
    s
}

/// Graded dimensions of the span of basis words with labels in `ambient`.
pub fn enumerated_series(form: &Form, ambient: Ambient<'_>, cap: i64) -> Result<QSeries> {
    let mut s = QSeries::new(int(cap));
    for d in 0..=cap {
        s.add(QuadScalar::from_int(d), enumerate_basis(form, ambient, d)?.len() as u64);
    }
    Ok(s)
}

/// What a character is taken of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterTarget {
    VL,
    VP(MonoidDescriptor),
    VH(MonoidDescriptor),
    /// Rank-two Heisenberg `M(1, 0)`.
    Heis,
    /// Rank-one Heisenberg on the complement of `α`.
    M1(LatVec),
    /// `V_{Zα}`.
    VZA(LatVec),
}

pub fn character(l: &GramLattice, target: &CharacterTarget, cap: i64) -> Result<QSeries> {
    let form = Form::from(l);
    match target {
        CharacterTarget::VL => enumerated_series(&form, Ambient::FullL, cap),
        CharacterTarget::VP(p) => {
            let par = p.parabolic(l)?;
            let f = |v: LatVec| par.member(l, v);
            enumerated_series(&form, Ambient::Filter(&f), cap)
        }
        CharacterTarget::VH(p) => {
            let par = p.parabolic(l)?;
            let f = |v: LatVec| par.in_h(l, v);
            enumerated_series(&form, Ambient::Filter(&f), cap)
        }
        CharacterTarget::Heis => enumerated_series(&form, Ambient::Single(LatVec::ZERO), cap),
        CharacterTarget::M1(alpha) => {
            let beta = l.orthogonal_primitive(*alpha)?;
            enumerated_series(&Form::rank_one(l.norm(beta)), Ambient::Single(LatVec::ZERO), cap)
        }
        CharacterTarget::VZA(alpha) => enumerated_series(&Form::rank_one(l.norm(*alpha)), Ambient::FullL, cap),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorCharacterReport {
    pub alpha: LatVec,
    pub cap: i64,
    pub equal: bool,
    #[serde(rename = "VH")]
    pub vh: Vec<u64>,
    #[serde(rename = "M1")]
    pub m1: Vec<u64>,
    #[serde(rename = "VZA")]
    pub vza: Vec<u64>,
    pub product: Vec<u64>,
}

/// `ch V_H = ch M(1) · ch V_{Zα}` coefficientwise up to `cap`, the left side
/// enumerated on `L` and the factors enumerated separately.
pub fn check_tensor_character(l: &GramLattice, alpha: LatVec, cap: i64) -> Result<TensorCharacterReport> {
    let form = Form::from(l);
    let vh = enumerated_series(&form, Ambient::Line(alpha), cap)?;
    let m1 = character(l, &CharacterTarget::M1(alpha), cap)?;
    let vza = character(l, &CharacterTarget::VZA(alpha), cap)?;
    let product = m1.times(&vza);
    Ok(TensorCharacterReport {
        alpha,
        cap,
        equal: product == vh,
        vh: vh.integer_dims(),
        m1: m1.integer_dims(),
        vza: vza.integer_dims(),
        product: product.integer_dims(),
    })
}
