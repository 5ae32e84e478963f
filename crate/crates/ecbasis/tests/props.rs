mod common;

use common::ode;
use ecbasis::bbasis::{doolittle_lu, BBasis};
use ecbasis::geometry::{convert_curve, eval_bcurve, eval_rational, rationalize_curve, IntegralCurveSpec};
use ecbasis::space::SpaceSpec;
use ecbasis::transform::{sample_grid, transform_for};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn space_strategy() -> impl Strategy<Value = SpaceSpec> {
    prop_oneof![
        (1usize..=10, -2.0f64..2.0, 0.2f64..3.0).prop_map(|(n, a, len)| SpaceSpec::polynomial(n, a, a + len).unwrap()),
        (1usize..=5, 0.2f64..2.8).prop_map(|(m, b)| SpaceSpec::trigonometric(2 * m, b).unwrap()),
        (1usize..=5, 0.2f64..3.0).prop_map(|(m, b)| SpaceSpec::hyperbolic(2 * m, b).unwrap()),
        (0.3f64..5.5).prop_map(|b| SpaceSpec::algebraic_trigonometric4(0.0, b).unwrap()),
        (0.3f64..2.6, 0.01f64..0.3).prop_map(|(b, w)| SpaceSpec::exponential_trigonometric4(w, 0.0, b).unwrap()),
        (0.3f64..1.5, 0.2f64..1.5).prop_map(|(b, r)| ode(&[(0.0, 0.0, 2), (r, 0.0, 1), (-r, 0.0, 1)], 0.0, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn bbasis_is_a_nonnegative_partition(s in space_strategy()) {
        let b = BBasis::new(&s).unwrap();
        for u in sample_grid(s.alpha(), s.beta(), 101) {
            let v = b.eval_all(u);
            prop_assert!((v.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
            prop_assert!(v.iter().all(|x| *x >= -1e-10), "{v:?}");
        }
    }

    #[test]
    fn reflection_symmetry(s in space_strategy()) {
        prop_assume!(s.is_reflection_invariant());
        let b = BBasis::new(&s).unwrap();
        let n = s.n();
        for u in sample_grid(s.alpha(), s.beta(), 41) {
            let mirror = s.alpha() + s.beta() - u;
            for i in 0..=n {
                prop_assert!((b.eval(i, 0, u) - b.eval(n - i, 0, mirror)).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn curves_keep_their_shape(s in space_strategy(), seed in prop::collection::vec(-3.0f64..3.0, 33)) {
        let n = s.n();
        let lambdas: Vec<Vec<f64>> = (0..=n).map(|i| seed[3 * i..3 * i + 3].to_vec()).collect();
        let spec = IntegralCurveSpec::new(s.clone(), lambdas).unwrap();
        let poly = convert_curve(&spec, &transform_for(&s).unwrap()).unwrap();
        let b = BBasis::new(&s).unwrap();
        for u in sample_grid(s.alpha(), s.beta(), 31) {
            let (got, want) = (eval_bcurve(&poly, &b, u), spec.eval(u));
            let scale = want.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for l in 0..3 {
                prop_assert!((got[l] - want[l]).abs() <= 1e-7 * scale);
            }
        }
    }

    #[test]
    fn rational_curves_keep_their_shape(s in space_strategy(), seed in prop::collection::vec(-1.0f64..1.0, 22), lift in 0.5f64..2.0) {
        let n = s.n();
        // Denominator: a positive constant plus a small perturbation.
        let mut lambdas: Vec<Vec<f64>> = (0..=n).map(|i| vec![seed[2 * i], seed[2 * i + 1], 0.0]).collect();
        lambdas[0][2] = lift * 10.0;
        let sup: f64 = sample_grid(s.alpha(), s.beta(), 50).iter().map(|&u| s.phi_all(0, u).iter().fold(0.0f64, |m, v| m.max(v.abs()))).fold(0.0, f64::max);
        lambdas[1][2] = lift / sup.max(1.0);
        let spec = IntegralCurveSpec::new(s.clone(), lambdas).unwrap();
        let rep = rationalize_curve(&spec, &transform_for(&s).unwrap()).unwrap();
        let b = BBasis::new(&s).unwrap();
        for u in sample_grid(s.alpha(), s.beta(), 31) {
            let pre = spec.eval(u);
            if let Ok(got) = eval_rational(&rep, &b, u) {
                for l in 0..2 {
                    let want = pre[l] / pre[2];
                    prop_assert!((got[l] - want).abs() <= 1e-7 * want.abs().max(1.0));
                }
            } else {
                prop_assert!(!rep.all_nonneg);
            }
        }
    }

    #[test]
    fn doolittle_reproduces_the_matrix(entries in prop::collection::vec(-1.0f64..1.0, 36)) {
        let a = DMatrix::from_row_slice(6, 6, &entries) + DMatrix::identity(6, 6) * 6.0;
        let (l, u) = doolittle_lu(&a).unwrap();
        prop_assert!((&l * &u - &a).norm() <= 1e-10 * a.norm());
        for r in 0..6 {
            prop_assert_eq!(l[(r, r)], 1.0);
            for c in r + 1..6 {
                prop_assert_eq!(l[(r, c)], 0.0);
                prop_assert_eq!(u[(c, r)], 0.0);
            }
        }
    }

    #[test]
    fn space_json_round_trips(s in space_strategy()) {
        let text = serde_json::to_string(&s).unwrap();
        let back: SpaceSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }
}
