//! C₁-cofiniteness: the basis-cone criterion and exact quotient dimensions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, Ambient, BasisWord, FockState, Form};
use crate::lattice::{det2, GramLattice, LatVec};
use crate::linalg::Span;
use crate::monoid::{MonoidDescriptor, ParabolicKind};
use crate::vertexops::{l_minus_one, Engine, TruncationCtx};

pub const C1_BOX: i64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum C1Verdict {
    Cofinite,
    NotCofinite,
    ConditionFailed,
    Unknown,
}

/// `(n, k, ℓ, n² + ℓ² - 4ℓk)` with `n = |(α|β)|` and `ℓ <= k` the half-norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionValues {
    pub n: i64,
    pub k: i64,
    pub l: i64,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct C1Report {
    pub verdict: C1Verdict,
    pub witness_basis: Option<(LatVec, LatVec)>,
    pub condition_values: Option<ConditionValues>,
}

pub fn condition_values(l: &GramLattice, alpha: LatVec, beta: LatVec) -> ConditionValues {
    let n = l.inner_lat(alpha, beta).abs();
    let (a, b) = (l.norm(alpha) / 2, l.norm(beta) / 2);
    let (lo, hi) = (a.min(b), a.max(b));
    ConditionValues { n, k: hi, l: lo, value: n * n + lo * lo - 4 * lo * hi }
}

/// Both cones `Cone(±α, β)` are C₁-cofinite: one pairing is `>= 0` and the
/// other needs the condition unless `n = 0`.
fn cone_pair_ok(c: &ConditionValues) -> bool {
    c.n == 0 || c.value <= 0
}

pub fn c1_decide(l: &GramLattice, p: &MonoidDescriptor) -> Result<C1Report> {
    let par = p.parabolic(l)?;
    if par.kind == ParabolicKind::TypeI {
        return Ok(C1Report { verdict: C1Verdict::NotCofinite, witness_basis: None, condition_values: None });
    }
    let alpha = par.alpha.ok_or(Error::NotParabolic)?;
    let mut cands: Vec<LatVec> = GramLattice::box_points(C1_BOX)
        .filter(|&b| det2(alpha, b).abs() == 1 && par.member(l, b))
        .collect();
    cands.sort_by_key(|b| (l.norm(*b), b.0.abs() + b.1.abs(), *b));
    let mut first_failure = None;
    for beta in cands {
        let c = condition_values(l, alpha, beta);
        if cone_pair_ok(&c) {
            return Ok(C1Report { verdict: C1Verdict::Cofinite, witness_basis: Some((alpha, beta)), condition_values: Some(c) });
        }
        first_failure.get_or_insert((beta, c));
    }
    Ok(match first_failure {
        Some((beta, c)) => C1Report { verdict: C1Verdict::ConditionFailed, witness_basis: Some((alpha, beta)), condition_values: Some(c) },
        None => C1Report { verdict: C1Verdict::Unknown, witness_basis: None, condition_values: None },
    })
}

/// The subalgebra whose C₁-quotient is measured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum C1Target {
    VH(MonoidDescriptor),
    VP(MonoidDescriptor),
}

/// `dim (V / C₁(V))_d` for `d = 0..=cap`, where
/// `C₁ = span{a_{-1}b : a, b ∈ V₊} + span{L(-1)v : v ∈ V₊}`.
pub fn c1_quotient_dims(l: &GramLattice, target: &C1Target, cap: i64, ctx: &TruncationCtx) -> Result<Vec<usize>> {
    let (desc, cartan) = match target {
        C1Target::VH(p) => (p, true),
        C1Target::VP(p) => (p, false),
    };
    let par = desc.parabolic(l)?;
    let keep = |v: LatVec| if cartan { par.in_h(l, v) } else { par.member(l, v) };
    let form = Form::from(l);
    let e = Engine::lattice(l);
    let by_degree: Vec<Vec<BasisWord>> = (0..=cap).map(|d| enumerate_basis(&form, Ambient::Filter(&keep), d)).collect::<Result<_>>()?;
    let mut dims = Vec::new();
    for d in 0..=cap {
        let full = by_degree[d as usize].len();
        let mut span = Span::new();
        if d >= 2 {
            'gens: for v in &by_degree[(d - 1) as usize] {
                span.insert(&l_minus_one(&form, &FockState::word(v.clone())));
                if span.rank() == full {
                    break 'gens;
                }
            }
            'pairs: for wa in 1..d {
                for a in &by_degree[wa as usize] {
                    let a_s = FockState::word(a.clone());
                    for b in &by_degree[(d - wa) as usize] {
                        if span.rank() == full {
                            break 'pairs;
                        }
                        span.insert(&e.mode(&a_s, -1, &FockState::word(b.clone()), ctx)?);
                    }
                }
            }
        }
        dims.push(full - span.rank());
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decisions() {
        let a2 = GramLattice::a2();
        let p = MonoidDescriptor::type_ii(&a2, LatVec(1, 2).to_hvec()).unwrap();
        let r = c1_decide(&a2, &p).unwrap();
        assert_eq!(r.verdict, C1Verdict::Cofinite);
        assert_eq!(r.witness_basis, Some((LatVec(1, 0), LatVec(0, 1))));
        assert_eq!(r.condition_values.unwrap(), ConditionValues { n: 1, k: 1, l: 1, value: -2 });

        let d = GramLattice::diag(2, 2);
        let p = MonoidDescriptor::type_ii(&d, LatVec(0, 1).to_hvec()).unwrap();
        let r = c1_decide(&d, &p).unwrap();
        assert_eq!(r.verdict, C1Verdict::Cofinite);
        assert_eq!(r.condition_values.unwrap().n, 0);

        let p = MonoidDescriptor::type_i(&d, LatVec(0, 1).to_hvec()).unwrap();
        assert_eq!(c1_decide(&d, &p).unwrap().verdict, C1Verdict::NotCofinite);
    }

    #[test]
    fn condition_can_fail() {
        // the value is positive exactly when ℓ² exceeds det = 4ℓk - n²
        let l = GramLattice::new([[8, -7], [-7, 8]]).unwrap();
        assert_eq!(condition_values(&l, LatVec(1, 0), LatVec(0, 1)), ConditionValues { n: 7, k: 4, l: 4, value: 1 });
        let l = GramLattice::new([[4, 3], [3, 6]]).unwrap();
        assert_eq!(condition_values(&l, LatVec(1, 0), LatVec(0, 1)).value, -11);
    }

    #[test]
    fn quotient_dims_small() {
        let d = GramLattice::diag(2, 2);
        let p = MonoidDescriptor::type_ii(&d, LatVec(0, 1).to_hvec()).unwrap();
        let dims = c1_quotient_dims(&d, &C1Target::VH(p), 3, &TruncationCtx::new(3)).unwrap();
        assert_eq!(dims, vec![1, 4, 0, 0]);
    }
}
