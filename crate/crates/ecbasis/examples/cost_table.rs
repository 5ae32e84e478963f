//! Operation counts of the endpoint assembly against LU-based conversion.
//! `measured` comes from running the assembly on a polynomial space.

use ecbasis::space::SpaceSpec;
use ecbasis::transform::{kappa, kappa_lu, measured_flops};

fn main() {
    println!("{:>3} {:>9} {:>9} {:>9} {:>9} {:>9}", "n", "measured", "kappa", "lu d=1", "lu d=2", "lu d=3");
    for n in 1..=18 {
        let measured = if n <= 12 {
            measured_flops(&SpaceSpec::polynomial(n, 0.0, 1.0).unwrap()).unwrap().to_string()
        } else {
            "-".into()
        };
        println!(
            "{n:>3} {measured:>9} {:>9} {:>9} {:>9} {:>9}",
            kappa(n),
            kappa_lu(n, 1),
            kappa_lu(n, 2),
            kappa_lu(n, 3)
        );
    }
    let cross = (1..=200).find(|&n| kappa(n) > kappa_lu(n, 1)).unwrap();
    println!("first n with kappa above the d=1 LU cost: {cross}");
}
