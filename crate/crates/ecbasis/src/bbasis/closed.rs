//! Closed-form B-bases: Bernstein, trigonometric and hyperbolic.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::combinatorics::{binom, falling, sign};
use crate::error::{EcError, Result};

/// j-th derivative of the Bernstein polynomial `C(n,i) u^i (1-u)^(n-i)` on [0, 1].
pub fn bernstein_eval(n: usize, i: usize, j: usize, u: f64) -> f64 {
    if i > n {
        return 0.0;
    }
    let q = n - i;
    let mut acc = 0.0;
    for k in 0..=j.min(i) {
        let m = j - k;
        if m > q {
            continue;
        }
        let left = falling(i, k) * u.powi((i - k) as i32);
        let right = sign(m) * falling(q, m) * (1.0 - u).powi((q - m) as i32);
        acc += binom(j, k) * left * right;
    }
    binom(n, i) * acc
}

fn check_even(n: usize, i: usize) -> Result<usize> {
    if n == 0 || n % 2 != 0 {
        return Err(EcError::InvalidSpace(format!("order must be even and positive, got {n}")));
    }
    if i > n {
        return Err(EcError::IndexOutOfRange { index: i, n });
    }
    Ok(n / 2)
}

fn check_trig_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < PI {
        Ok(())
    } else {
        Err(EcError::InvalidSpace(format!("beta must lie in (0, pi), got {beta}")))
    }
}

fn check_hyp_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(EcError::InvalidSpace(format!("beta must be positive, got {beta}")))
    }
}

/// Shared coefficient formula; `s` and `c` are sin/cos (or sinh/cosh) of β/2.
fn normalizing(m: usize, i: usize, s: f64, c: f64) -> f64 {
    let i = if i > m { 2 * m - i } else { i };
    let sum: f64 = (0..=i / 2)
        .map(|r| binom(m, i - r) * binom(i - r, r) * (2.0 * c).powi((i - 2 * r) as i32))
        .sum();
    sum / s.powi(2 * m as i32)
}

/// Normalizing coefficient c_{2m,i} of the trigonometric B-basis.
pub fn trig_normalizing_coefficient(n: usize, beta: f64, i: usize) -> Result<f64> {
    let m = check_even(n, i)?;
    check_trig_beta(beta)?;
    Ok(normalizing(m, i, (beta / 2.0).sin(), (beta / 2.0).cos()))
}

/// Normalizing coefficient of the hyperbolic B-basis.
pub fn hyperbolic_normalizing_coefficient(n: usize, beta: f64, i: usize) -> Result<f64> {
    let m = check_even(n, i)?;
    check_hyp_beta(beta)?;
    Ok(normalizing(m, i, (beta / 2.0).sinh(), (beta / 2.0).cosh()))
}

/// `c · sin^{2m-i}((β-u)/2) · sin^i(u/2)`.
pub fn trig_bbasis_eval(n: usize, beta: f64, i: usize, u: f64) -> Result<f64> {
    let c = trig_normalizing_coefficient(n, beta, i)?;
    Ok(c * ((beta - u) / 2.0).sin().powi((n - i) as i32) * (u / 2.0).sin().powi(i as i32))
}

/// `c · sinh^{2m-i}((β-u)/2) · sinh^i(u/2)`.
pub fn hyperbolic_bbasis_eval(n: usize, beta: f64, i: usize, u: f64) -> Result<f64> {
    let c = hyperbolic_normalizing_coefficient(n, beta, i)?;
    Ok(c * ((beta - u) / 2.0).sinh().powi((n - i) as i32) * (u / 2.0).sinh().powi(i as i32))
}

/// d-th derivative of sin^p(x) (or sinh^p(x)) from its exponential expansion.
fn power_derivative(hyperbolic: bool, p: usize, d: usize, x: f64) -> f64 {
    if d == 0 {
        return if hyperbolic { x.sinh().powi(p as i32) } else { x.sin().powi(p as i32) };
    }
    if hyperbolic {
        let sum: f64 = (0..=p)
            .map(|k| {
                let w = p as f64 - 2.0 * k as f64;
                sign(k) * binom(p, k) * w.powi(d as i32) * (w * x).exp()
            })
            .sum();
        sum / 2f64.powi(p as i32)
    } else {
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..=p {
            let w = p as f64 - 2.0 * k as f64;
            let factor = Complex64::new(0.0, w).powu(d as u32) * Complex64::from_polar(1.0, w * x);
            sum += factor * (sign(k) * binom(p, k));
        }
        (sum / Complex64::new(0.0, 2.0).powu(p as u32)).re
    }
}

/// j-th derivative of the trigonometric or hyperbolic B-basis function at `u`.
pub(crate) fn sine_product_derivative(hyperbolic: bool, n: usize, beta: f64, i: usize, j: usize, u: f64) -> Result<f64> {
    if j == 0 {
        return if hyperbolic {
            hyperbolic_bbasis_eval(n, beta, i, u)
        } else {
            trig_bbasis_eval(n, beta, i, u)
        };
    }
    let c = if hyperbolic {
        hyperbolic_normalizing_coefficient(n, beta, i)?
    } else {
        trig_normalizing_coefficient(n, beta, i)?
    };
    let (x, y) = ((beta - u) / 2.0, u / 2.0);
    let sum: f64 = (0..=j)
        .map(|k| {
            let left = sign(k) * power_derivative(hyperbolic, n - i, k, x);
            let right = power_derivative(hyperbolic, i, j - k, y);
            binom(j, k) * left * right
        })
        .sum();
    Ok(c * sum / 2f64.powi(j as i32))
}
