//! Exponential-trigonometric space without closed forms: particular
//! integrals, Doolittle factorization of the reversed Wronskian, and the
//! control polygon of a logarithmic spiral arc.

use std::f64::consts::PI;

use ecbasis::bbasis::construct_mixed_bbasis;
use ecbasis::geometry::{convert_curve, eval_bcurve, IntegralCurveSpec};
use ecbasis::space::{Shape, SpaceSpec};
use ecbasis::transform::{sample_grid, transform_for};

fn show(name: &str, m: &nalgebra::DMatrix<f64>) {
    println!("{name}:");
    for r in m.row_iter() {
        println!("  {}", r.iter().map(|v| format!("{v:8.4}")).collect::<Vec<_>>().join(" "));
    }
}

fn main() {
    let omega = 1.0 / (3.0 * PI);
    let space = SpaceSpec::exponential_trigonometric4(omega, 0.0, 5.0 * PI / 6.0).unwrap();
    let b = construct_mixed_bbasis(&space).unwrap();
    let m = b.mixed().unwrap();
    show("rho", &m.rho);
    show("L", &m.l);
    show("U", &m.u);
    println!("lambda_i0 = {:?}", m.lambda0.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>());

    let t = transform_for(&space).unwrap();
    show("t", &t.t);

    // e^{ωu}(cos u, sin u)
    let grow = |shape| space.terms().iter().position(|t| t.rate > 0.0 && t.shape == shape).unwrap();
    let mut lambdas = vec![vec![0.0; 2]; 5];
    lambdas[grow(Shape::Cos)] = vec![1.0, 0.0];
    lambdas[grow(Shape::Sin)] = vec![0.0, 1.0];
    let curve = IntegralCurveSpec::new(space.clone(), lambdas).unwrap();
    let poly = convert_curve(&curve, &t).unwrap();
    for (j, p) in poly.points.iter().enumerate() {
        println!("p{j} = ({:.4}, {:.4})", p[0], p[1]);
    }
    let worst = sample_grid(0.0, space.beta(), 101)
        .into_iter()
        .map(|u| {
            let (a, e) = (eval_bcurve(&poly, &b, u), curve.eval(u));
            (a[0] - e[0]).hypot(a[1] - e[1])
        })
        .fold(0.0, f64::max);
    println!("max deviation from the spiral: {worst:.2e}");
}
