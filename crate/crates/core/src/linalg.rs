//! Exact incremental row reduction over sparse rational vectors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactnum::Rational;
use crate::fock::{BasisWord, FockState};

type Vector = BTreeMap<BasisWord, Rational>;
type Combo = BTreeMap<usize, Rational>;

fn add_scaled<K: Ord + Clone>(y: &mut BTreeMap<K, Rational>, x: &BTreeMap<K, Rational>, c: &Rational) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Rational::zero);
        *e += c * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Echelon basis of the span of inserted states, tracking each basis row
/// as a combination of the inserted generators.
#[derive(Debug, Clone, Default)]
pub struct Span {
    rows: BTreeMap<BasisWord, (Vector, Combo)>,
    generators: usize,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    fn state_vector(s: &FockState) -> Vector {
        s.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
    }

    /// Reduce `v` against the current rows; returns the remainder and the
    /// combination subtracted so far.
    fn reduce(&self, mut v: Vector, mut combo: Combo) -> (Vector, Combo) {
        loop {
            let pivot = v.keys().find(|k| self.rows.contains_key(*k)).cloned();
            let Some(k) = pivot else { return (v, combo) };
            let (row, rc) = &self.rows[&k];
            let f = -(&v[&k] / &row[&k]);
            add_scaled(&mut v, row, &f);
            add_scaled(&mut combo, rc, &f);
        }
    }

    /// Insert a generator; returns whether it enlarged the span.
    pub fn insert(&mut self, s: &FockState) -> bool {
        let id = self.generators;
        self.generators += 1;
        let (v, combo) = self.reduce(Self::state_vector(s), Combo::from([(id, Rational::from_integer(1.into()))]));
        match v.keys().next().cloned() {
            None => false,
            Some(k) => {
                self.rows.insert(k, (v, combo));
                true
            }
        }
    }

    /// Coefficients `c_i` with `target = Σ c_i g_i`, if `target` lies in the span.
    pub fn express(&self, target: &FockState) -> Option<Vec<(usize, Rational)>> {
        let (v, combo) = self.reduce(Self::state_vector(target), Combo::new());
        if !v.is_empty() {
            return None;
        }
        Some(combo.into_iter().map(|(i, c)| (i, -c)).collect())
    }
}
