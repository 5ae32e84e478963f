//! Critical length: the first positive zero of the Wronskian determinants
//! that keep the constructed system an EC space.
//!
//! For each tail index i the determinant of `[1, v_i, …, v_n]` is evaluated
//! on an interval of length u centred at 0. Dropping the constant leaves an
//! n×n matrix over φ₁..φₙ with derivative orders 1..i-1 at -u/2 and
//! 1..n-i+1 at u/2. Short lengths switch to a rescaled Taylor basis; only
//! positive factors and a fixed basis change are applied, so signs survive.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::combinatorics::factorial;
use crate::linalg::det;
use crate::space::SpaceSpec;

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub scan_max: f64,
    pub scan_step: f64,
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> ScanOptions {
        ScanOptions { scan_max: 4.0 * PI, scan_step: PI / 1000.0, tol: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexZero {
    pub index: usize,
    pub first_zero: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalLength {
    /// Minimum over indices; `f64::INFINITY` when no zero was found.
    #[serde(serialize_with = "finite_or_null")]
    pub estimate: f64,
    pub per_index: Vec<IndexZero>,
    /// No sign change anywhere in the scan range.
    pub no_root: bool,
    /// Right end of the scanned range, a lower bound when `no_root`.
    pub scanned_to: f64,
}

fn finite_or_null<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_some(v)
    } else {
        s.serialize_none()
    }
}

/// Sign-faithful value of the i-th Wronskian at length `u`.
pub fn wronskian_indicator(space: &SpaceSpec, i: usize, u: f64) -> f64 {
    Indicator::new(space).eval(i, u)
}

/// Per-space data for the indicator that does not depend on u.
struct Indicator<'a> {
    space: &'a SpaceSpec,
    radius: f64,
    /// Sign of det M, where M holds derivatives 1..n of φ₁..φₙ at 0.
    sign: f64,
    /// `high[q - n - 1][k]`: derivative q > n at 0 of the k-th Taylor basis function.
    high: Vec<Vec<f64>>,
}

impl<'a> Indicator<'a> {
    const EXTRA: usize = 40;

    fn new(space: &'a SpaceSpec) -> Indicator<'a> {
        let n = space.n();
        let radius = space.terms().iter().map(|t| t.rate.abs() + t.freq.abs()).fold(0.0, f64::max);
        // Transposed: row k holds the derivatives of φ_k, so M^T h = [φ^(q)(0)].
        let m = DMatrix::from_fn(n, n, |k, l| space.phi(k + 1, l + 1, 0.0));
        let lu = m.lu();
        let d = lu.determinant();
        let high = if d == 0.0 {
            Vec::new()
        } else {
            (n + 1..=n + Self::EXTRA)
                .filter_map(|q| lu.solve(&DMatrix::from_fn(n, 1, |l, _| space.phi(l + 1, q, 0.0))))
                .map(|h| h.iter().copied().collect())
                .collect()
        };
        Indicator { space, radius, sign: d.signum(), high }
    }

    fn eval(&self, i: usize, u: f64) -> f64 {
        let n = self.space.n();
        let mut orders: Vec<(usize, f64)> = (1..i).map(|j| (j, -u / 2.0)).collect();
        orders.extend((1..=(n + 1 - i)).map(|j| (j, u / 2.0)));
        let mut x = if self.radius * u <= 2.0 {
            if self.high.len() != Self::EXTRA {
                return f64::NAN;
            }
            self.taylor_rows(&orders, u)
        } else {
            let mut w = DMatrix::from_fn(n, n, |r, c| self.space.phi(c + 1, orders[r].0, orders[r].1));
            for mut col in w.column_iter_mut() {
                let scale = col.amax();
                if scale > 0.0 {
                    col.scale_mut(1.0 / scale);
                }
            }
            w
        };
        for mut row in x.row_iter_mut() {
            let scale = row.amax();
            if scale > 0.0 {
                row.scale_mut(1.0 / scale);
            }
        }
        det(&x)
    }

    /// Rows in the Taylor basis at 0, row j scaled by u^j and column k by
    /// u^-k. Built from the power series so short intervals do not cancel.
    /// The basis change multiplies the determinant by det M; its sign is
    /// folded back in.
    fn taylor_rows(&self, orders: &[(usize, f64)], u: f64) -> DMatrix<f64> {
        let n = self.space.n();
        let mut out = DMatrix::zeros(n, n);
        for (r, &(j, x)) in orders.iter().enumerate() {
            let half = x / u;
            for k in 1..=n {
                let mut v = if k >= j { half.powi((k - j) as i32) / factorial(k - j) } else { 0.0 };
                for (off, h) in self.high.iter().enumerate() {
                    let q = n + 1 + off;
                    v += h[k - 1] * half.powi((q - j) as i32) * u.powi((q - k) as i32) / factorial(q - j);
                }
                out[(r, k - 1)] = v;
            }
        }
        out.row_mut(0).scale_mut(self.sign);
        out
    }
}

fn first_zero(f: impl Fn(f64) -> f64, opts: &ScanOptions) -> Option<f64> {
    let mut a = opts.scan_step;
    let mut fa = f(a);
    while a < opts.scan_max {
        let b = (a + opts.scan_step).min(opts.scan_max);
        let fb = f(b);
        if fa == 0.0 {
            return Some(a);
        }
        if fa.signum() != fb.signum() {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            while hi - lo > opts.tol {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    return Some(mid);
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    None
}

/// Scans indices ⌊n/2⌋..=n (from 1) for the smallest positive Wronskian zero.
pub fn critical_length(space: &SpaceSpec, opts: &ScanOptions) -> CriticalLength {
    let n = space.n();
    let ind = Indicator::new(space);
    let per_index: Vec<IndexZero> = ((n / 2).max(1)..=n)
        .map(|i| IndexZero { index: i, first_zero: first_zero(|u| ind.eval(i, u), opts) })
        .collect();
    let estimate = per_index
        .iter()
        .filter_map(|z| z.first_zero)
        .fold(f64::INFINITY, f64::min);
    CriticalLength { estimate, no_root: !estimate.is_finite(), per_index, scanned_to: opts.scan_max }
}
