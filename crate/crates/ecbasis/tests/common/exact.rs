//! Bernstein tables and the classical matrix in exact arithmetic.

use ecbasis::combinatorics::binom_u128;
use ecbasis::endpoint::{bernstein_endpoint_derivative, End, EndpointTables, Source};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn int(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn falling(i: usize, j: usize) -> i128 {
    (0..j).map(|r| i as i128 - r as i128).product()
}

/// Endpoint tables of the degree-n Bernstein basis on [0, 1].
pub fn bernstein_tables(n: usize) -> EndpointTables<BigRational> {
    let h = n / 2;
    let phi_alpha =
        (0..=n).map(|i| (0..=h).map(|j| if i == j { int(falling(i, j)) } else { BigRational::zero() }).collect()).collect();
    let phi_beta =
        (0..=n).map(|i| (0..=h).map(|j| if j <= i { int(falling(i, j)) } else { BigRational::zero() }).collect()).collect();
    let b = |end: End| -> Vec<Vec<BigRational>> {
        (0..=n).map(|i| (0..=h).map(|j| int(bernstein_endpoint_derivative(n, i, j, end) as i128)).collect()).collect()
    };
    EndpointTables { phi_alpha, phi_beta, b_alpha: b(End::Alpha), b_beta: b(End::Beta), source: Source::ClosedForm }
}

/// C(j, i) / C(n, i) above the diagonal, zero below.
pub fn classical(n: usize, i: usize, j: usize) -> BigRational {
    if j < i {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(binom_u128(j as u64, i as u64)), BigInt::from(binom_u128(n as u64, i as u64)))
    }
}
