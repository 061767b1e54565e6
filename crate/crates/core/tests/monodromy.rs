use std::f64::consts::PI;

use monodromy_core::dynamics::{harmonic_frequency, well_bottom, RegularValue, SystemSpec};
use monodromy_core::exact_int::{primitive_kernel_vector, IntMatrix};
use monodromy_core::monodromy::{
    actions, caustic_count, continue_loop, first_return, maslov_winding, radial_action, Cycle, LoopSpec, Orientation,
    Traversal,
};
use monodromy_core::normal_forms::{MaslovVector, TheoremVerdict};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn cb() -> SystemSpec {
    SystemSpec::champagne_bottle()
}

fn regular_value() -> impl Strategy<Value = RegularValue> {
    (-0.4f64..0.4, 0.02f64..0.6).prop_map(|(j, lift)| RegularValue::new(j, well_bottom(j, &cb()) + lift))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn winding_matches_caustic_count(v in regular_value()) {
        let sys = cb();
        let w = maslov_winding(v, Cycle::Gamma2, Traversal::Forward, &sys).unwrap();
        prop_assert_eq!(w.round() as i64, caustic_count(v, Traversal::Forward, &sys).unwrap());
        prop_assert!((w - w.round()).abs() < 1e-6);
    }

    #[test]
    fn reversal_negates_winding(v in regular_value()) {
        let sys = cb();
        for cycle in [Cycle::Gamma1, Cycle::Gamma2] {
            let f = maslov_winding(v, cycle, Traversal::Forward, &sys).unwrap();
            let b = maslov_winding(v, cycle, Traversal::Reversed, &sys).unwrap();
            prop_assert!((f + b).abs() < 1e-6);
        }
    }

    #[test]
    fn reflection_flips_rotation(v in regular_value()) {
        let sys = cb();
        prop_assume!(v.j.abs() > 1e-3);
        let a = first_return(v, &sys).unwrap();
        let b = first_return(RegularValue::new(-v.j, v.h), &sys).unwrap();
        prop_assert!((a.theta + b.theta).abs() < 1e-8);
    }

    #[test]
    fn quadrature_refinement(v in regular_value()) {
        let sys = cb();
        let coarse = radial_action(v, &sys, 1e-10).unwrap();
        let fine = radial_action(v, &sys, 1e-13).unwrap();
        prop_assert!((coarse - fine).abs() < 1e-8);
    }
}

#[test]
fn radial_period_near_the_bottom() {
    let sys = cb();
    let omega = harmonic_frequency(0.0, &sys);
    assert!((omega - 2.0).abs() < 1e-12);
    for eps in [1e-3, 1e-4] {
        let fr = first_return(RegularValue::new(0.0, -0.25 + eps), &sys).unwrap();
        assert!((fr.t_rad - 2.0 * PI / omega).abs() < 5.0 * eps, "{eps}: {}", fr.t_rad);
    }
}

#[test]
fn harmonic_action_oracle() {
    let sys = cb();
    for eps in [1e-3, 5e-3, 1e-2] {
        let a = actions(RegularValue::new(0.0, -0.25 + eps), &sys).unwrap();
        let oracle = eps / 2.0;
        assert!((a.i2 - oracle).abs() < 0.01 * oracle, "{eps}: {} vs {oracle}", a.i2);
    }
}

#[test]
fn homotopic_loops_agree() {
    let sys = cb();
    let mut reports = Vec::new();
    for (radii, samples) in [([0.1, 0.1], 64), ([0.05, 0.2], 64), ([0.2, 0.05], 96), ([0.15, 0.15], 48)] {
        reports
            .push(continue_loop(&LoopSpec::new([0.0, 0.0], radii, samples, Orientation::Ccw).unwrap(), &sys).unwrap());
    }
    for r in &reports {
        assert_eq!(r.monodromy, reports[0].monodromy);
        assert_eq!(r.maslov, reports[0].maslov);
        assert_eq!(r.theorem, TheoremVerdict::Holds);
    }
}

#[test]
fn maslov_vector_spans_the_fixed_line() {
    let r = continue_loop(&LoopSpec::around_focus_focus(), &cb()).unwrap();
    let fixed = primitive_kernel_vector(&r.monodromy.shift_diagonal(&BigInt::from(1))).unwrap();
    let mu = &r.maslov.0;
    // μ = c · fixed with c a nonzero integer
    let idx = fixed.entries().iter().position(|x| !x.is_zero()).unwrap();
    let c = &mu[idx] / &fixed.entries()[idx];
    assert!(!c.is_zero());
    let scaled: Vec<BigInt> = fixed.entries().iter().map(|x| x * &c).collect();
    assert_eq!(&scaled, mu);
}

#[test]
fn actions_transform_with_monodromy() {
    let r = continue_loop(&LoopSpec::around_focus_focus(), &cb()).unwrap();
    let start = r.actions_start().0;
    let end = r.actions_end().0;
    let m = r.monodromy.to_i64_rows().unwrap();
    for i in 0..2 {
        let predicted = m[i][0] as f64 * start[0] + m[i][1] as f64 * start[1];
        assert!((end[i] - predicted).abs() < 1e-6 * (1.0 + predicted.abs()));
    }
}

#[test]
fn runs_are_reproducible() {
    let spec = LoopSpec::around_focus_focus();
    let a = continue_loop(&spec, &cb()).unwrap();
    let b = continue_loop(&spec, &cb()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn elliptical_loops_keep_the_theorem() {
    let sys = cb();
    for orientation in [Orientation::Ccw, Orientation::Cw] {
        for radii in [[0.05, 0.05], [0.2, 0.2], [0.05, 0.2], [0.2, 0.05]] {
            let r = continue_loop(&LoopSpec::new([0.0, 0.0], radii, 64, orientation).unwrap(), &sys).unwrap();
            assert_eq!(r.winding_k.abs(), 1);
            assert_eq!(r.maslov, MaslovVector::from_i64(&[0, 2]));
            assert_eq!(r.theorem, TheoremVerdict::Holds);
        }
    }
}

#[test]
fn loops_away_from_the_focus_are_trivial() {
    let sys = cb();
    for center in [[0.5, 0.5], [-0.3, 0.4], [0.0, 0.5]] {
        let r = continue_loop(&LoopSpec::new(center, [0.05, 0.05], 32, Orientation::Ccw).unwrap(), &sys).unwrap();
        assert_eq!(r.winding_k, 0);
        assert_eq!(r.monodromy, IntMatrix::identity(2));
    }
}
