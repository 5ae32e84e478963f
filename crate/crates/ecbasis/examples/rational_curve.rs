//! A rational trigonometric curve whose order-2 control points need a
//! negative weight. Raising the order fixes that: order 3 has a vanishing
//! weight, order 4 is the first with all weights nonnegative.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use ecbasis::bbasis::BBasis;
use ecbasis::geometry::{eval_rational, rationalize_curve, rationalize_with_elevation, IntegralCurveSpec};
use ecbasis::space::SpaceSpec;
use ecbasis::transform::transform_for;

fn main() {
    // Pre-image ((sin u + cos u)/√2, 3/2 cos 2u, 5/8 - 1/2 sin 2u) over the basis 1, sin u, cos u, sin 2u, cos 2u.
    let space = SpaceSpec::trigonometric(4, FRAC_PI_2).unwrap();
    let pre = IntegralCurveSpec::new(
        space.clone(),
        vec![
            vec![0.0, 0.0, 0.625],
            vec![FRAC_1_SQRT_2, 0.0, 0.0],
            vec![FRAC_1_SQRT_2, 0.0, 0.0],
            vec![0.0, 0.0, -0.5],
            vec![0.0, 1.5, 0.0],
        ],
    )
    .unwrap();

    let low = rationalize_curve(&pre, &transform_for(&space).unwrap()).unwrap();
    println!("order 2 weights: {:?}", low.weights);

    let report = rationalize_with_elevation(&pre, 8).unwrap();
    for (order, why) in &report.rejected {
        println!("order {order} rejected: {why}");
    }
    println!("order {} weights: {:?}", report.order, report.rep.weights);

    let b = BBasis::new(&report.rep.space).unwrap();
    for u in [0.0, 0.4, 0.8, 1.2, FRAC_PI_2] {
        let p = eval_rational(&report.rep, &b, u).unwrap();
        let w = 0.625 - 0.5 * (2.0 * u).sin();
        println!("u = {u:.3}: ({:.6}, {:.6}) vs ({:.6}, {:.6})", p[0], p[1], FRAC_1_SQRT_2 * (u.sin() + u.cos()) / w, 1.5 * (2.0 * u).cos() / w);
    }
}
