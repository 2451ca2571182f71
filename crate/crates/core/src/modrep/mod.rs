//! Irreducible `V_P`-modules, their characters and fusion rules, and
//! C₁-cofiniteness.

mod c1;
mod series;

pub use c1::*;
pub use series::*;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, QuadScalar, Rational};
use crate::lattice::{GramLattice, HVec, LatVec};
use crate::monoid::{MonoidDescriptor, ParabolicKind};

/// An irreducible `V_P`-module: `M(1, λ)` in type I, `L^{(tβ, i)}` in type II.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum ModuleLabel {
    #[serde(rename = "TYPE_I_MOD")]
    TypeI { lambda: HVec },
    #[serde(rename = "TYPE_II_MOD")]
    TypeII {
        #[serde(serialize_with = "crate::exactnum::serialize_rational")]
        t: Rational,
        i: i64,
        #[serde(rename = "N")]
        n: i64,
    },
}

/// Boundary data of a type-II monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineData {
    pub alpha: LatVec,
    pub beta: LatVec,
    #[serde(rename = "N")]
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleEntry {
    pub label: ModuleLabel,
    /// Conformal weight of the bottom degree.
    pub h: QuadScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Registry {
    pub kind: ParabolicKind,
    pub line: Option<LineData>,
    /// Type I is a continuum, type II has `2N` families in `t`; only the
    /// requested samples are listed.
    pub sampled: bool,
    pub modules: Vec<ModuleEntry>,
}

/// Which parameters to instantiate.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SampleParams {
    pub lambdas: Vec<HVec>,
    pub ts: Vec<Rational>,
}

pub fn line_data(l: &GramLattice, alpha: LatVec) -> Result<LineData> {
    Ok(LineData { alpha, beta: l.orthogonal_primitive(alpha)?, n: l.norm(alpha) / 2 })
}

/// Bottom weight of `L^{(tβ, i)}`: `t²(β|β)/2` plus the least weight
/// `min(i, 2N-i)² / 4N` of the coset `Zα + iα/2N`.
pub fn type_ii_weight(l: &GramLattice, line: &LineData, t: &Rational, i: i64) -> Rational {
    let two_n = 2 * line.n;
    let r = i.rem_euclid(two_n);
    let m = r.min(two_n - r);
    t * t * int(l.norm(line.beta)) / int(2) + Rational::new((m * m).into(), (4 * line.n).into())
}

pub fn type_i_weight(l: &GramLattice, lambda: &HVec) -> QuadScalar {
    let n = l.inner(lambda, lambda);
    n.scale(&Rational::new(1.into(), 2.into()))
}

pub fn irreducibles(l: &GramLattice, p: &MonoidDescriptor, samples: &SampleParams) -> Result<Registry> {
    let par = p.parabolic(l)?;
    match par.kind {
        ParabolicKind::TypeI => {
            let modules = samples
                .lambdas
                .iter()
                .map(|lam| ModuleEntry { label: ModuleLabel::TypeI { lambda: lam.clone() }, h: type_i_weight(l, lam) })
                .collect();
            Ok(Registry { kind: par.kind, line: None, sampled: true, modules })
        }
        ParabolicKind::TypeII => {
            let line = line_data(l, par.alpha.ok_or(Error::NotParabolic)?)?;
            let mut modules = Vec::new();
            for t in &samples.ts {
                for i in 0..2 * line.n {
                    let h = QuadScalar::from_rational(type_ii_weight(l, &line, t, i));
                    modules.push(ModuleEntry { label: ModuleLabel::TypeII { t: t.clone(), i, n: line.n }, h });
                }
            }
            Ok(Registry { kind: par.kind, line: Some(line), sampled: true, modules })
        }
    }
}

/// Character of an irreducible module, anchored at its bottom weight.
pub fn module_character(l: &GramLattice, line: Option<&LineData>, m: &ModuleLabel, cap: i64) -> Result<QSeries> {
    match m {
        ModuleLabel::TypeI { lambda } => Ok(heisenberg_series(type_i_weight(l, lambda), 2, cap)),
        ModuleLabel::TypeII { t, i, n } => {
            let line = line.ok_or(Error::MixedTypes)?;
            let two_n = 2 * n;
            let base = t * t * int(l.norm(line.beta)) / int(2);
            let mut lattice_part = QSeries::new(int(cap));
            // weights (k + i/2N)² N over the coset
            let mut k = -(cap + 1);
            while k <= cap + 1 {
                let x = Rational::new((two_n * k + i).into(), two_n.into());
                let w = &x * &x * int(*n);
                lattice_part.add(QuadScalar::from_rational(base.clone() + w), 1);
                k += 1;
            }
            Ok(lattice_part.times(&heisenberg_series(QuadScalar::zero(), 2, cap)))
        }
    }
}

/// Fusion rule `N(m3 | m1, m2)`.
pub fn fusion(m1: &ModuleLabel, m2: &ModuleLabel, m3: &ModuleLabel) -> Result<u32> {
    use ModuleLabel::*;
    match (m1, m2, m3) {
        (TypeI { lambda: a }, TypeI { lambda: b }, TypeI { lambda: c }) => {
            let sum = a + b;
            Ok(u32::from(sum == *c))
        }
        (TypeII { t: t1, i, n: n1 }, TypeII { t: t2, i: j, n: n2 }, TypeII { t: t3, i: k, n: n3 }) => {
            if n1 != n2 || n2 != n3 {
                return Err(Error::MixedTypes);
            }
            Ok(u32::from(t1 + t2 == *t3 && (i + j - k).rem_euclid(2 * n1) == 0))
        }
        _ => Err(Error::MixedTypes),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionTable {
    /// `[m1, m2, m3]` index triples with fusion 1.
    pub triples: Vec<[usize; 3]>,
    pub labels: Vec<ModuleLabel>,
}

pub fn fusion_table(labels: &[ModuleLabel]) -> Result<FusionTable> {
    let mut triples = Vec::new();
    for (a, x) in labels.iter().enumerate() {
        for (b, y) in labels.iter().enumerate() {
            for (c, z) in labels.iter().enumerate() {
                if fusion(x, y, z)? == 1 {
                    triples.push([a, b, c]);
                }
            }
        }
    }
    Ok(FusionTable { triples, labels: labels.to_vec() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FusionGroupReport {
    /// Pairs whose product stays in the sample, each with exactly one output.
    pub pairs_checked: usize,
    pub unique_outputs: bool,
    pub identity: bool,
    pub inverses: bool,
    pub associative: bool,
    pub commutative: bool,
}

impl FusionGroupReport {
    pub fn passed(&self) -> bool {
        self.unique_outputs && self.identity && self.inverses && self.associative && self.commutative
    }
}

/// Group axioms for the simple-current fusion on a symmetric sample of
/// type-II labels, restricted to pairs whose product lies in the sample.
pub fn check_fusion_group(labels: &[ModuleLabel]) -> Result<FusionGroupReport> {
    let set: BTreeSet<&ModuleLabel> = labels.iter().collect();
    let product = |x: &ModuleLabel, y: &ModuleLabel| -> Result<Vec<ModuleLabel>> {
        let mut out = Vec::new();
        for z in labels {
            if fusion(x, y, z)? == 1 {
                out.push(z.clone());
            }
        }
        Ok(out)
    };
    let mut pairs_checked = 0;
    let mut unique_outputs = true;
    let mut commutative = true;
    for x in labels {
        for y in labels {
            let xy = product(x, y)?;
            if let Some(z) = expected_product(x, y) {
                if set.contains(&z) {
                    pairs_checked += 1;
                    unique_outputs &= xy == vec![z];
                } else {
                    unique_outputs &= xy.is_empty();
                }
            }
            commutative &= xy == product(y, x)?;
        }
    }
    let zero = labels.iter().find(|x| matches!(x, ModuleLabel::TypeII { t, i: 0, .. } if *t == int(0)));
    let identity = match zero {
        Some(e) => labels.iter().map(|x| Ok(product(e, x)? == vec![x.clone()])).collect::<Result<Vec<_>>>()?.iter().all(|b| *b),
        None => false,
    };
    let mut inverses = true;
    for x in labels {
        let found = labels.iter().any(|y| zero.is_some_and(|e| fusion(x, y, e) == Ok(1)));
        inverses &= found;
    }
    let mut associative = true;
    for x in labels {
        for y in labels {
            for z in labels {
                let (Some(xy), Some(yz)) = (expected_product(x, y), expected_product(y, z)) else { continue };
                let (Some(l), Some(r)) = (expected_product(&xy, z), expected_product(x, &yz)) else { continue };
                if set.contains(&xy) && set.contains(&yz) && set.contains(&l) {
                    associative &= fusion(&xy, z, &l)? == 1 && fusion(x, &yz, &r)? == 1 && l == r;
                }
            }
        }
    }
    Ok(FusionGroupReport { pairs_checked, unique_outputs, identity, inverses, associative, commutative })
}

/// `(t1 + t2, i + j mod 2N)`.
fn expected_product(x: &ModuleLabel, y: &ModuleLabel) -> Option<ModuleLabel> {
    match (x, y) {
        (ModuleLabel::TypeII { t: t1, i, n }, ModuleLabel::TypeII { t: t2, i: j, n: n2 }) if n == n2 => {
            Some(ModuleLabel::TypeII { t: t1 + t2, i: (i + j).rem_euclid(2 * n), n: *n })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1.into(), 2.into())
    }

    #[test]
    fn registry_weights() {
        let l = GramLattice::diag(2, 2);
        let p = MonoidDescriptor::type_ii(&l, LatVec(0, 1).to_hvec()).unwrap();
        let r = irreducibles(&l, &p, &SampleParams { lambdas: vec![], ts: vec![int(0), half()] }).unwrap();
        let hs: Vec<String> = r.modules.iter().map(|m| m.h.to_string()).collect();
        // (tβ|tβ)/2 = t² for (β|β) = 2
        assert_eq!(hs, vec!["0", "1/4", "1/4", "1/2"]);
        assert_eq!(r.line.unwrap(), LineData { alpha: LatVec(1, 0), beta: LatVec(0, 1), n: 1 });

        let p = MonoidDescriptor::type_i(&l, LatVec(0, 1).to_hvec()).unwrap();
        let r = irreducibles(&l, &p, &SampleParams { lambdas: vec![LatVec(0, 0).to_hvec()], ts: vec![] }).unwrap();
        assert!(r.modules[0].h.is_zero());
    }

    #[test]
    fn type_ii_weights_use_the_nearest_coset_point() {
        let l = GramLattice::diag(4, 2);
        let line = line_data(&l, LatVec(1, 0)).unwrap();
        assert_eq!(line.n, 2);
        let w: Vec<Rational> = (0..4).map(|i| type_ii_weight(&l, &line, &int(0), i)).collect();
        assert_eq!(w, vec![int(0), Rational::new(1.into(), 8.into()), half(), Rational::new(1.into(), 8.into())]);
    }

    #[test]
    fn fusion_rules() {
        let m = |t: i64, i: i64| ModuleLabel::TypeII { t: int(t), i, n: 1 };
        assert_eq!(fusion(&m(0, 1), &m(0, 1), &m(0, 0)).unwrap(), 1);
        assert_eq!(fusion(&m(0, 1), &m(1, 1), &m(0, 0)).unwrap(), 0);
        let a = ModuleLabel::TypeI { lambda: LatVec(1, 0).to_hvec() };
        let b = ModuleLabel::TypeI { lambda: LatVec(0, 2).to_hvec() };
        let c = ModuleLabel::TypeI { lambda: LatVec(1, 2).to_hvec() };
        assert_eq!(fusion(&a, &b, &c).unwrap(), 1);
        assert_eq!(fusion(&a, &b, &a).unwrap(), 0);
        assert_eq!(fusion(&a, &m(0, 0), &a), Err(Error::MixedTypes));
    }

    #[test]
    fn fusion_group() {
        let labels: Vec<ModuleLabel> =
            (-2..=2).flat_map(|t| (0..2).map(move |i| ModuleLabel::TypeII { t: Rational::new(t.into(), 2.into()), i, n: 1 })).collect();
        let r = check_fusion_group(&labels).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn module_characters() {
        let l = GramLattice::diag(2, 2);
        let line = line_data(&l, LatVec(1, 0)).unwrap();
        let vh = module_character(&l, Some(&line), &ModuleLabel::TypeII { t: int(0), i: 0, n: 1 }, 6).unwrap();
        let p = MonoidDescriptor::type_ii(&l, LatVec(0, 1).to_hvec()).unwrap();
        assert_eq!(vh, character(&l, &CharacterTarget::VH(p), 6).unwrap());
        let twisted = module_character(&l, Some(&line), &ModuleLabel::TypeII { t: int(0), i: 1, n: 1 }, 2).unwrap();
        // e^{±α/2} at weight 1/4, then two modes each
        assert_eq!(twisted.coeff(&QuadScalar::from_rational(Rational::new(1.into(), 4.into()))), 2);
        assert_eq!(twisted.coeff(&QuadScalar::from_rational(Rational::new(5.into(), 4.into()))), 4);
    }
}
