//! Monomials to Bernstein polynomials on [0, 1], in floats and in exact
//! rationals.
//!
//! cargo run --example bernstein_transform -- 5

use ecbasis::endpoint::{bernstein_endpoint_derivative, End, EndpointTables, Source};
use ecbasis::space::SpaceSpec;
use ecbasis::transform::{assemble, transform_for};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn exact_tables(n: usize) -> EndpointTables<BigRational> {
    let int = |v: i128| BigRational::from_integer(BigInt::from(v));
    let falling = |i: usize, j: usize| (0..j).map(|r| i as i128 - r as i128).product::<i128>();
    let h = n / 2;
    let phi = |at_one: bool| -> Vec<Vec<BigRational>> {
        (0..=n)
            .map(|i| {
                (0..=h)
                    .map(|j| if (at_one && j <= i) || i == j { int(falling(i, j)) } else { BigRational::zero() })
                    .collect()
            })
            .collect()
    };
    let b = |end| (0..=n).map(|i| (0..=h).map(|j| int(bernstein_endpoint_derivative(n, i, j, end) as i128)).collect()).collect();
    EndpointTables { phi_alpha: phi(false), phi_beta: phi(true), b_alpha: b(End::Alpha), b_beta: b(End::Beta), source: Source::ClosedForm }
}

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let t = transform_for(&SpaceSpec::polynomial(n, 0.0, 1.0).unwrap()).unwrap();
    println!("u^i = sum_j t[i][j] B_j(u), n = {n}, {} flops", t.flops);
    for row in t.rows() {
        println!("  {}", row.iter().map(|v| format!("{v:8.5}")).collect::<Vec<_>>().join(" "));
    }

    let exact = assemble(&exact_tables(n)).unwrap();
    println!("exact:");
    for row in &exact.t {
        println!("  {}", row.iter().map(|v| format!("{v:>6}")).collect::<Vec<_>>().join(" "));
    }
}
