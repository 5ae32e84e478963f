//! Small integer helpers shared by the closed forms and the flop model.

/// Exact binomial coefficient; zero when `k > n`.
pub fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        // acc * (n - t) is always divisible by (t + 1) at this point
        acc = acc * u128::from(n - t) / u128::from(t + 1);
    }
    acc
}

pub fn binom(n: usize, k: usize) -> f64 {
    binom_u128(n as u64, k as u64) as f64
}

/// n! / (n - k)!, zero when `k > n`.
pub fn falling(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    ((n - k + 1)..=n).fold(1.0, |acc, v| acc * v as f64)
}

pub fn factorial(n: usize) -> f64 {
    falling(n, n)
}

/// (-1)^k as a float.
pub fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom_u128(5, 2), 10);
        assert_eq!(binom_u128(3, 4), 0);
        assert_eq!(binom_u128(60, 30), 118_264_581_564_861_424);
        assert_eq!(binom(0, 0), 1.0);
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling(5, 2), 20.0);
        assert_eq!(falling(3, 0), 1.0);
        assert_eq!(falling(2, 3), 0.0);
        assert_eq!(factorial(4), 24.0);
    }
}
