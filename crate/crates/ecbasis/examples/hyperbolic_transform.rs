//! Hyperbolic counterpart of `trig_transform`. Column 3 flips sign against
//! the trigonometric matrix in rows 2 and 4.

use ecbasis::space::SpaceSpec;
use ecbasis::transform::transform_for;

fn main() {
    let beta = 1.0;
    let trig = transform_for(&SpaceSpec::trigonometric(4, beta).unwrap()).unwrap();
    let hyp = transform_for(&SpaceSpec::hyperbolic(4, beta).unwrap()).unwrap();
    for i in 0..5 {
        println!(
            "{:>2} | {} | {}",
            i,
            (0..5).map(|j| format!("{:8.5}", trig.get(i, j))).collect::<Vec<_>>().join(" "),
            (0..5).map(|j| format!("{:8.5}", hyp.get(i, j))).collect::<Vec<_>>().join(" ")
        );
    }
    let expected = beta.cosh() - 0.5 * beta.sinh() * (beta / 2.0).tanh();
    println!("t23 = {:.12}, cosh - sinh tanh/2 = {expected:.12}", hyp.get(2, 3));
}
