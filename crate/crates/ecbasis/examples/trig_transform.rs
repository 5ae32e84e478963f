//! Closed-form trigonometric B-basis of order m = 2 and its matrix, next to
//! the half-angle formulas it should reproduce.

use ecbasis::bbasis::BBasis;
use ecbasis::space::SpaceSpec;
use ecbasis::transform::{sample_grid, transform_for};

fn main() {
    for beta in [0.5, 1.0, 2.0] {
        let space = SpaceSpec::trigonometric(4, beta).unwrap();
        let t = transform_for(&space).unwrap();
        let half = (beta / 2.0).tan();
        println!("beta = {beta}");
        for row in t.rows() {
            println!("  {}", row.iter().map(|v| format!("{v:9.6}")).collect::<Vec<_>>().join(" "));
        }
        println!("  t11 = {:.12}, tan(beta/2)/2 = {:.12}", t.get(1, 1), half / 2.0);
        println!("  t33 = {:.12}, tan(beta/2)   = {:.12}", t.get(3, 1), half);

        let b = BBasis::new(&space).unwrap();
        let err = t.reconstruction_error(&b, 201);
        let sum = sample_grid(0.0, beta, 5).iter().map(|&u| b.eval_all(u).iter().sum::<f64>()).collect::<Vec<_>>();
        println!("  reconstruction error {err:.2e}, partition sums {sum:?}");
    }
}
