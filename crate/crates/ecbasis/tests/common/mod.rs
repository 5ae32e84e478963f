#![allow(dead_code)]

pub mod exact;
pub mod printed;

use std::f64::consts::PI;

use ecbasis::space::{basis_from_characteristic, CharacteristicSpec, Root, SpaceSpec};

pub fn exp_trig_reference() -> SpaceSpec {
    SpaceSpec::exponential_trigonometric4(1.0 / (3.0 * PI), 0.0, 5.0 * PI / 6.0).unwrap()
}

pub fn ode(roots: &[(f64, f64, usize)], alpha: f64, beta: f64) -> SpaceSpec {
    let spec = CharacteristicSpec::new(roots.iter().map(|&(a, b, m)| Root::new(a, b, m)).collect());
    basis_from_characteristic(&spec, alpha, beta).unwrap()
}

/// Trigonometric ladder of order m as an ODE-defined space.
pub fn trig_ladder(m: usize, beta: f64) -> SpaceSpec {
    let mut roots = vec![(0.0, 0.0, 1)];
    roots.extend((1..=m).map(|k| (0.0, k as f64, 1)));
    ode(&roots, 0.0, beta)
}

/// Every family, orders up to 10, odd and even n.
pub fn catalogue() -> Vec<(String, SpaceSpec)> {
    let mut out = Vec::new();
    for n in 1..=10 {
        out.push((format!("polynomial n={n}"), SpaceSpec::polynomial(n, 0.0, 1.0).unwrap()));
    }
    out.push(("polynomial n=5 on [-1,2]".into(), SpaceSpec::polynomial(5, -1.0, 2.0).unwrap()));
    for n in (2..=10).step_by(2) {
        out.push((format!("trigonometric n={n}"), SpaceSpec::trigonometric(n, 1.0).unwrap()));
        out.push((format!("hyperbolic n={n}"), SpaceSpec::hyperbolic(n, 1.0).unwrap()));
    }
    out.push(("trigonometric n=4 beta=2.5".into(), SpaceSpec::trigonometric(4, 2.5).unwrap()));
    out.push(("hyperbolic n=6 beta=3".into(), SpaceSpec::hyperbolic(6, 3.0).unwrap()));
    out.push(("algebraic-trigonometric".into(), SpaceSpec::algebraic_trigonometric4(0.0, 2.0).unwrap()));
    out.push(("algebraic-trigonometric shifted".into(), SpaceSpec::algebraic_trigonometric4(1.0, 4.0).unwrap()));
    out.push(("exponential-trigonometric".into(), exp_trig_reference()));
    out.push(("ode 1,u,e^-u,e^u".into(), ode(&[(0.0, 0.0, 2), (1.0, 0.0, 1), (-1.0, 0.0, 1)], 0.0, 1.5)));
    out.push(("ode 1,e^-u,e^u".into(), ode(&[(0.0, 0.0, 1), (1.0, 0.0, 1), (-1.0, 0.0, 1)], 0.0, 1.0)));
    out.push((
        "ode mixed n=6".into(),
        ode(&[(0.0, 0.0, 1), (0.0, 1.0, 1), (0.0, 2.0, 1), (0.3, 0.0, 1), (-0.3, 0.0, 1)], 0.0, 1.0),
    ));
    out.push(("ode damped n=4".into(), ode(&[(0.0, 0.0, 1), (0.5, 1.0, 1), (-0.5, 1.0, 1)], 0.0, 1.2)));
    out.push(("ode u-weighted n=5".into(), ode(&[(0.0, 0.0, 2), (0.0, 1.0, 2)], 0.0, 1.0)));
    out
}

pub fn grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    ecbasis::transform::sample_grid(a, b, count)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
