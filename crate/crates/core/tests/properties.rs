use proptest::prelude::*;

use parabolic_voa::exactnum::{int, QuadField, QuadScalar, Rational};
use parabolic_voa::fock::{enumerate_basis, Ambient, FockState, Form};
use parabolic_voa::lattice::{GramLattice, HVec, LatVec};
use parabolic_voa::modrep::{c1_decide, character, fusion, partition_counts, C1Verdict, CharacterTarget, ModuleLabel};
use parabolic_voa::monoid::MonoidDescriptor;
use parabolic_voa::vertexops::{Engine, TruncationCtx};
use parabolic_voa::zhu::{circle, star};

/// Coefficients of `Π (1 - q^n)^{-2}` by repeated series division.
fn two_colour_oracle(cap: usize) -> Vec<u64> {
    let mut c = vec![0u64; cap + 1];
    c[0] = 1;
    for _ in 0..2 {
        for n in 1..=cap {
            for k in n..=cap {
                c[k] += c[k - n];
            }
        }
    }
    c
}

#[test]
fn two_colour_partitions() {
    let oracle = two_colour_oracle(20);
    assert_eq!(partition_counts(20, 2), oracle);
    assert_eq!(&oracle[..13], &[1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481, 752, 1165]);
}

#[test]
fn cartan_dims_from_theta_times_partitions() {
    // V_H = ⊕_k M(1) e^{kα} with (α|α) = 2, so dim_n = Σ_k p₂(n - k²)
    let p2 = two_colour_oracle(12);
    let oracle: Vec<u64> = (0..=12i64)
        .map(|n| (-4..=4i64).filter(|k| k * k <= n).map(|k| p2[(n - k * k) as usize]).sum())
        .collect();
    assert_eq!(&oracle[..6], &[1, 4, 9, 20, 42, 80]);
    for (l, gamma) in [(GramLattice::diag(2, 2), LatVec(0, 1)), (GramLattice::a2(), LatVec(1, 2))] {
        let p = MonoidDescriptor::type_ii(&l, gamma.to_hvec()).unwrap();
        let dims = character(&l, &CharacterTarget::VH(p), 12).unwrap().integer_dims();
        assert_eq!(dims, oracle);
    }
}

fn quad(d: u64) -> impl Strategy<Value = QuadScalar> {
    (-9i64..=9, 1i64..=4, -9i64..=9, 1i64..=4)
        .prop_map(move |(a, b, c, e)| QuadField::new(d).unwrap().elem(Rational::new(a.into(), b.into()), Rational::new(c.into(), e.into())))
}

fn three_quads() -> impl Strategy<Value = (QuadScalar, QuadScalar, QuadScalar)> {
    prop_oneof![Just(2u64), Just(3), Just(5)].prop_flat_map(|d| (quad(d), quad(d), quad(d)))
}

proptest! {
    #[test]
    fn field_laws((x, y, z) in three_quads()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), QuadScalar::one());
        }
        // the order agrees with the sign of the difference and with floats
        prop_assert_eq!(x.cmp(&y) as i8, (&x - &y).sign());
        let gap = x.approx() - y.approx();
        if gap.abs() > 1e-9 {
            prop_assert_eq!(x > y, gap > 0.0);
        }
    }
}

fn small_state(weight: i64) -> impl Strategy<Value = FockState> {
    let l = GramLattice::diag(2, 2);
    let words = enumerate_basis(&Form::from(&l), Ambient::FullL, weight).unwrap();
    proptest::collection::vec((0..words.len(), -3i64..=3), 1..=3).prop_map(move |picks| {
        let mut s = FockState::zero();
        for (k, c) in picks {
            s.add_term(words[k].clone(), int(c));
        }
        s
    })
    .prop_filter("nonzero", |s| !s.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn circle_and_star_are_bilinear(
        (a1, a2) in (0i64..=2).prop_flat_map(|w| (small_state(w), small_state(w))),
        b in (0i64..=2).prop_flat_map(small_state),
        c in -3i64..=3,
    ) {
        let l = GramLattice::diag(2, 2);
        let e = Engine::lattice(&l);
        let ctx = TruncationCtx::new(6);
        let a = a1.plus(&a2.scaled(&int(c)));
        prop_assume!(!a.is_zero() && !b.plus(&a2.scaled(&int(c))).is_zero());
        for op in [circle, star] {
            let lhs = op(&e, &a, &b, &ctx).unwrap();
            let rhs = op(&e, &a1, &b, &ctx).unwrap().plus(&op(&e, &a2, &b, &ctx).unwrap().scaled(&int(c)));
            prop_assert_eq!(lhs, rhs);
            let lhs = op(&e, &a1, &b.plus(&a2.scaled(&int(c))), &ctx).unwrap();
            let rhs = op(&e, &a1, &b, &ctx).unwrap().plus(&op(&e, &a1, &a2, &ctx).unwrap().scaled(&int(c)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

fn label(t: (i64, i64), i: i64, n: i64) -> ModuleLabel {
    ModuleLabel::TypeII { t: Rational::new(t.0.into(), t.1.into()), i: i.rem_euclid(2 * n), n }
}

proptest! {
    #[test]
    fn fusion_is_a_group_law(
        n in 1i64..=4,
        t1 in (-6i64..=6, 1i64..=3), t2 in (-6i64..=6, 1i64..=3),
        i in 0i64..8, j in 0i64..8, k in 0i64..8,
    ) {
        let (x, y) = (label(t1, i, n), label(t2, j, n));
        let sum = Rational::new(t1.0.into(), t1.1.into()) + Rational::new(t2.0.into(), t2.1.into());
        let z = ModuleLabel::TypeII { t: sum.clone(), i: k.rem_euclid(2 * n), n };
        let want = u32::from((i + j - k).rem_euclid(2 * n) == 0);
        prop_assert_eq!(fusion(&x, &y, &z).unwrap(), want);
        prop_assert_eq!(fusion(&y, &x, &z).unwrap(), want);
        // the vacuum label is a unit
        let unit = label((0, 1), 0, n);
        prop_assert_eq!(fusion(&unit, &x, &x).unwrap(), 1);
        // and every label has an inverse
        let ModuleLabel::TypeII { t, i: ix, .. } = &x else { unreachable!() };
        let inv = ModuleLabel::TypeII { t: -t.clone(), i: (-ix).rem_euclid(2 * n), n };
        prop_assert_eq!(fusion(&x, &inv, &unit).unwrap(), 1);
    }

    #[test]
    fn type_i_is_never_cofinite(a in -5i64..=5, b in -5i64..=5, c in -3i64..=3, d in -3i64..=3, a2 in any::<bool>()) {
        prop_assume!((a, b, c, d) != (0, 0, 0, 0));
        let l = if a2 { GramLattice::a2() } else { GramLattice::diag(2, 2) };
        let f = QuadField::new(2).unwrap();
        let gamma = HVec(f.elem(int(a), int(c)), f.elem(int(b), int(d)));
        let p = MonoidDescriptor::type_i(&l, gamma).unwrap();
        prop_assert_eq!(c1_decide(&l, &p).unwrap().verdict, C1Verdict::NotCofinite);
    }
}
