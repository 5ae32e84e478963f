//! Endpoint derivative tables of one space from all three sources.

use ecbasis::endpoint::{build_endpoint_tables_from, Source};
use ecbasis::space::SpaceSpec;

fn main() {
    let space = SpaceSpec::hyperbolic(6, 1.5).unwrap();
    let sources = [Source::ClosedForm, Source::Mixed, Source::Determinant];
    let tables: Vec<_> = sources.iter().map(|&s| build_endpoint_tables_from(&space, s).unwrap()).collect();
    println!("b_i^(j)(alpha), hyperbolic n=6 on [0, 1.5]");
    for i in 0..=space.n() {
        for j in 0..=space.n() / 2 {
            let v: Vec<String> = tables.iter().map(|t| format!("{:14.8}", t.b_alpha[i][j])).collect();
            println!("i={i} j={j} {}", v.join(" "));
        }
    }
    let gap = tables[1..]
        .iter()
        .flat_map(|t| t.b_alpha.iter().flatten().zip(tables[0].b_alpha.iter().flatten()))
        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
        .fold(0.0, f64::max);
    println!("largest relative disagreement with the closed form: {gap:.2e}");
}
