//! Critical lengths from sign changes of the Wronskian determinants.

use std::f64::consts::PI;

use ecbasis::bbasis::{critical_length, ScanOptions};
use ecbasis::space::SpaceSpec;

fn main() {
    let spaces = [
        ("algebraic-trigonometric", SpaceSpec::algebraic_trigonometric4(0.0, 1.0).unwrap()),
        ("trigonometric m=2", SpaceSpec::trigonometric(4, 1.0).unwrap()),
        ("exp-trig, omega=1/(3pi)", SpaceSpec::exponential_trigonometric4(1.0 / (3.0 * PI), 0.0, 1.0).unwrap()),
        ("hyperbolic m=2", SpaceSpec::hyperbolic(4, 1.0).unwrap()),
        ("polynomial n=5", SpaceSpec::polynomial(5, 0.0, 1.0).unwrap()),
    ];
    let opts = ScanOptions::default();
    for (name, s) in spaces {
        let c = critical_length(&s, &opts);
        let zeros: Vec<String> = c
            .per_index
            .iter()
            .map(|z| format!("{}:{}", z.index, z.first_zero.map_or("-".into(), |v| format!("{v:.6}"))))
            .collect();
        if c.no_root {
            println!("{name:<26} none below {:.4}   [{}]", c.scanned_to, zeros.join(" "));
        } else {
            println!("{name:<26} {:.10} ({:.6} pi)   [{}]", c.estimate, c.estimate / PI, zeros.join(" "));
        }
    }
}
