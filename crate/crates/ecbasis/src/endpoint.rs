//! Endpoint derivatives of the B-basis and the lookup tables consumed by the
//! transformation matrix.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bbasis::{
    construct_mixed_bbasis, has_closed_form, hyperbolic_normalizing_coefficient, trig_normalizing_coefficient,
    BBasis,
};
use crate::combinatorics::{binom, binom_u128, falling, sign};
use crate::error::{EcError, Result};
use crate::linalg::det;
use crate::space::{Family, SpaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum End {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    Mixed,
    Determinant,
}

/// cos(x - j·π/2) without rounding the phase.
fn cos_shift(x: f64, j: usize) -> f64 {
    match j % 4 {
        0 => x.cos(),
        1 => x.sin(),
        2 => -x.cos(),
        _ => -x.sin(),
    }
}

fn ipow(base: i64, j: usize) -> f64 {
    (base as f64).powi(j as i32)
}

fn closed_range(m: usize, i: usize, j: usize) -> Result<()> {
    if i > 2 * m {
        return Err(EcError::IndexOutOfRange { index: i, n: 2 * m });
    }
    if j > m {
        return Err(EcError::OutOfTheoremRange { j, max: m });
    }
    Ok(())
}

/// b⁽ʲ⁾₂ₘ,ᵢ at either endpoint of the trigonometric B-basis, 0 ≤ j ≤ m.
pub fn trig_endpoint_derivative(m: usize, beta: f64, i: usize, j: usize, end: End) -> Result<f64> {
    closed_range(m, i, j)?;
    if end == End::Beta {
        return Ok(sign(j) * trig_endpoint_derivative(m, beta, 2 * m - i, j, End::Alpha)?);
    }
    let c = trig_normalizing_coefficient(2 * m, beta, i)?;
    if j == 0 {
        return Ok(if i == 0 { 1.0 } else { 0.0 });
    }
    if j < i {
        return Ok(0.0);
    }
    let (mi, ji) = (m as i64, j);
    let s = if i % 2 == 1 {
        let r = (i - 1) / 2;
        let mut s = 0.0;
        for k in 0..(m - r) {
            for l in 0..=r {
                let (k_, l_, r_) = (k as i64, l as i64, r as i64);
                let pw = ipow(mi - k_ - l_, ji) - ipow(mi - k_ - 2 * r_ + l_ - 1, ji);
                let angle = (2 * (m - r - k) - 1) as f64 * beta / 2.0;
                s += sign(m + 1 + k + l) * binom(2 * (m - r - 1) + 1, k) * binom(2 * r + 1, l) * pw * cos_shift(angle, j);
            }
        }
        s
    } else {
        let r = i / 2;
        let q = m - r;
        let first: f64 = (0..r)
            .map(|l| sign(r + l) * binom(2 * r, l) * ipow((r - l) as i64, ji) * cos_shift(0.0, j))
            .sum();
        let second: f64 = (0..q)
            .map(|k| sign(q + k) * binom(2 * q, k) * ipow((q - k) as i64, ji) * cos_shift((q - k) as f64 * beta, j))
            .sum();
        let mut third = 0.0;
        for k in 0..q {
            for l in 0..r {
                let (k_, l_, r_) = (k as i64, l as i64, r as i64);
                let pw = ipow(mi - k_ - l_, ji) + ipow(mi - k_ - 2 * r_ + l_, ji);
                third += sign(m + k + l) * binom(2 * q, k) * binom(2 * r, l) * pw * cos_shift((q - k) as f64 * beta, j);
            }
        }
        binom(2 * q, q) * first + binom(2 * r, r) * second + third
    };
    Ok(c * s / 2f64.powi(2 * m as i32 - 1))
}

/// b⁽ʲ⁾₂ₘ,ᵢ at either endpoint of the hyperbolic B-basis, 0 ≤ j ≤ m.
pub fn hyperbolic_endpoint_derivative(m: usize, beta: f64, i: usize, j: usize, end: End) -> Result<f64> {
    closed_range(m, i, j)?;
    if end == End::Beta {
        return Ok(sign(j) * hyperbolic_endpoint_derivative(m, beta, 2 * m - i, j, End::Alpha)?);
    }
    let c = hyperbolic_normalizing_coefficient(2 * m, beta, i)?;
    if j == 0 {
        return Ok(if i == 0 { 1.0 } else { 0.0 });
    }
    if j < i {
        return Ok(0.0);
    }
    let h = |x: f64| if j % 2 == 0 { x.cosh() } else { x.sinh() };
    let mi = m as i64;
    if i % 2 == 1 {
        let r = (i - 1) / 2;
        let e = m + (m - r - 1) % 2 + r % 2;
        let mut s = 0.0;
        for k in 0..(m - r) {
            for l in 0..=r {
                let (k_, l_, r_) = (k as i64, l as i64, r as i64);
                let pw = ipow(mi - k_ - 2 * r_ + l_ - 1, j) - ipow(mi - k_ - l_, j);
                let sg = if j % 2 == 0 { sign(e + k + l + 1) } else { sign(e + k + l) };
                let arg = (2 * (m - k - r) - 1) as f64 * beta / 2.0;
                s += sg * binom(2 * (m - r - 1) + 1, k) * binom(2 * r + 1, l) * pw * h(arg);
            }
        }
        return Ok(c * s / 2f64.powi(2 * m as i32 - 1));
    }
    let r = i / 2;
    let q = m - r;
    let mut t = 0.0;
    if j % 2 == 0 {
        let inner: f64 = (0..r).map(|l| sign(l) * binom(2 * r, l) * ipow((r - l) as i64, j)).sum();
        t += 2.0 * sign(q) * binom(2 * q, q) * inner;
    }
    let inner: f64 = (0..q)
        .map(|k| sign(k + j) * binom(2 * q, k) * ipow((q - k) as i64, j) * h((q - k) as f64 * beta))
        .sum();
    t += 2.0 * sign(r) * binom(2 * r, r) * inner;
    for k in 0..q {
        for l in 0..r {
            let (k_, l_, r_) = (k as i64, l as i64, r as i64);
            let pw = ipow(mi - k_ - 2 * r_ + l_, j) + ipow(mi - k_ - l_, j);
            t += 2.0 * sign(k + l + j) * binom(2 * q, k) * binom(2 * r, l) * pw * h((q - k) as f64 * beta);
        }
    }
    Ok(c * t / 2f64.powi(2 * m as i32))
}

/// Derivatives of the degree-n Bernstein basis on [0, 1] at either endpoint.
pub fn bernstein_endpoint_derivative(n: usize, i: usize, j: usize, end: End) -> f64 {
    if i > n || j > n {
        return 0.0;
    }
    if end == End::Beta {
        return sign(j) * bernstein_endpoint_derivative(n, n - i, j, End::Alpha);
    }
    if i > j {
        return 0.0;
    }
    // j!·C(n,j)·C(j,i) = n!/(n-j)! · C(j,i), exact in integers
    let magnitude = falling(n, j) * binom_u128(j as u64, i as u64) as f64;
    sign(j - i) * magnitude
}

/// Endpoint derivative of a basis built by the mixed construction.
pub fn mixed_endpoint_derivative(basis: &BBasis, i: usize, j: usize, end: End) -> Result<f64> {
    let m = basis
        .mixed()
        .ok_or_else(|| EcError::InvalidSpace("basis was not built by the mixed construction".into()))?;
    let n = basis.space().n();
    if i > n {
        return Err(EcError::IndexOutOfRange { index: i, n });
    }
    let s = match end {
        End::Alpha => 0.0,
        End::Beta => m.length,
    };
    Ok(m.eval_local(i, j, s))
}

/// Endpoint derivative from quotients of Wronskian-column determinants over
/// the reduced vector φ = [φₙ,₁, …, φₙ,ₙ]ᵀ.
pub fn determinant_endpoint_derivative(space: &SpaceSpec, i: usize, j: usize, end: End) -> Result<f64> {
    let n = space.n();
    if i > n {
        return Err(EcError::IndexOutOfRange { index: i, n });
    }
    if j == 0 {
        let hit = matches!((i, end), (0, End::Alpha)) || (i == n && end == End::Beta);
        return Ok(if hit { 1.0 } else { 0.0 });
    }
    let (a, b) = (space.alpha(), space.beta());
    let x = if end == End::Alpha { a } else { b };
    // Exp-polynomial spans are translation invariant and every column below
    // annihilates constants, so centring on the midpoint changes nothing but
    // the conditioning.
    let c = 0.5 * (a + b);
    let col = |k: usize, u: f64| -> Vec<f64> { space.phi_all(k, u - c)[1..].to_vec() };
    let diff = |from: f64, to: f64| -> Vec<f64> {
        col(0, to).iter().zip(col(0, from)).map(|(t, f)| t - f).collect()
    };
    let quotient = |num: Vec<Vec<f64>>, den: Vec<Vec<f64>>| -> Result<f64> {
        // Rows are derivative orders; scaling them alike leaves the quotient unchanged.
        let scale: Vec<f64> = (0..n)
            .map(|r| den.iter().chain(&num).map(|c| c[r].abs()).fold(0.0, f64::max))
            .map(|m| if m > 0.0 { 1.0 / m } else { 1.0 })
            .collect();
        let dm = DMatrix::from_fn(n, n, |r, c| den[c][r] * scale[r]);
        let nm = DMatrix::from_fn(n, n, |r, c| num[c][r] * scale[r]);
        let d = det(&dm);
        let bound: f64 = dm.column_iter().map(|c| c.norm()).product();
        if !(d.abs() > f64::MIN_POSITIVE * bound) || !d.is_finite() {
            return Err(EcError::DegenerateSpace(format!("vanishing denominator determinant {d:e}")));
        }
        Ok(det(&nm) / d)
    };
    if i == 0 || i == n {
        let (side, other) = if i == 0 { (b, a) } else { (a, b) };
        let mut base: Vec<Vec<f64>> = (1..n).map(|k| col(k, side)).collect();
        let mut num = base.clone();
        num.push(col(j, x));
        base.push(diff(side, other));
        return quotient(num, base);
    }
    let lead: Vec<Vec<f64>> = (1..i).map(|k| col(k, a)).collect();
    let tail: Vec<Vec<f64>> = (1..(n - i)).map(|k| col(k, b)).collect();
    let chord = diff(a, b);
    let cat = |parts: Vec<Vec<Vec<f64>>>| parts.into_iter().flatten().collect::<Vec<_>>();
    let f1 = quotient(
        cat(vec![lead.clone(), vec![col(i, a)], tail.clone(), vec![col(n - i, b)]]),
        cat(vec![lead.clone(), vec![chord.clone()], tail.clone(), vec![col(n - i, b)]]),
    )?;
    let f2 = quotient(
        cat(vec![vec![chord.clone()], lead.clone(), vec![col(j, x)], tail.clone()]),
        cat(vec![vec![chord], lead, vec![col(i, a)], tail]),
    )?;
    Ok(f1 * f2)
}

/// φ⁽ʲ⁾ and b⁽ʲ⁾ at both endpoints for j = 0..=⌊n/2⌋, indexed `[i][j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
/// Generic over the scalar so exact arithmetic can reuse the assembly.
pub struct EndpointTables<T = f64> {
    pub phi_alpha: Vec<Vec<T>>,
    pub phi_beta: Vec<Vec<T>>,
    pub b_alpha: Vec<Vec<T>>,
    pub b_beta: Vec<Vec<T>>,
    pub source: Source,
}

impl<T> EndpointTables<T> {
    pub fn n(&self) -> usize {
        self.phi_alpha.len() - 1
    }

    pub fn max_order(&self) -> usize {
        self.phi_alpha[0].len() - 1
    }
}

type CacheKey = (String, Option<Source>);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<EndpointTables>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<EndpointTables>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Tables from the best available source (closed form, then mixed
/// construction, then determinants), memoized per space.
pub fn build_endpoint_tables(space: &SpaceSpec) -> Result<Arc<EndpointTables>> {
    cached(space, None)
}

/// Tables from a specific source, also memoized.
pub fn build_endpoint_tables_from(space: &SpaceSpec, source: Source) -> Result<Arc<EndpointTables>> {
    cached(space, Some(source))
}

fn cached(space: &SpaceSpec, source: Option<Source>) -> Result<Arc<EndpointTables>> {
    let key = (space.cache_key(), source);
    if let Some(t) = cache().read().expect("table cache poisoned").get(&key) {
        return Ok(Arc::clone(t));
    }
    let source = source.unwrap_or(if has_closed_form(space) { Source::ClosedForm } else { Source::Mixed });
    let tables = Arc::new(compute_tables(space, source)?);
    cache().write().expect("table cache poisoned").insert(key, Arc::clone(&tables));
    Ok(tables)
}

fn compute_tables(space: &SpaceSpec, source: Source) -> Result<EndpointTables> {
    let n = space.n();
    let h = n / 2;
    let phi = |x: f64| -> Vec<Vec<f64>> {
        (0..=n).map(|i| (0..=h).map(|j| space.phi(i, j, x)).collect()).collect()
    };
    let fill = |f: &dyn Fn(usize, usize, End) -> Result<f64>, end: End| -> Result<Vec<Vec<f64>>> {
        (0..=n).map(|i| (0..=h).map(|j| f(i, j, end)).collect()).collect()
    };
    let (b_alpha, b_beta) = match source {
        Source::ClosedForm => {
            let f = |i: usize, j: usize, end: End| -> Result<f64> {
                match space.family() {
                    Family::Polynomial => {
                        Ok(bernstein_endpoint_derivative(n, i, j, end) / space.length().powi(j as i32))
                    }
                    Family::Trigonometric => trig_endpoint_derivative(h, space.beta(), i, j, end),
                    Family::Hyperbolic => hyperbolic_endpoint_derivative(h, space.beta(), i, j, end),
                    other => Err(EcError::InvalidSpace(format!("{} has no closed form", other.name()))),
                }
            };
            (fill(&f, End::Alpha)?, fill(&f, End::Beta)?)
        }
        Source::Mixed => {
            let basis = construct_mixed_bbasis(space)?;
            let f = |i: usize, j: usize, end: End| mixed_endpoint_derivative(&basis, i, j, end);
            (fill(&f, End::Alpha)?, fill(&f, End::Beta)?)
        }
        Source::Determinant => {
            let f = |i: usize, j: usize, end: End| determinant_endpoint_derivative(space, i, j, end);
            (fill(&f, End::Alpha)?, fill(&f, End::Beta)?)
        }
    };
    Ok(EndpointTables { phi_alpha: phi(space.alpha()), phi_beta: phi(space.beta()), b_alpha, b_beta, source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn trig_example_entries() {
        let beta = 1.4f64;
        let c1 = trig_normalizing_coefficient(4, beta, 1).unwrap();
        let c2 = trig_normalizing_coefficient(4, beta, 2).unwrap();
        let s = (beta / 2.0).sin();
        assert_relative_eq!(
            trig_endpoint_derivative(2, beta, 1, 1, End::Alpha).unwrap(),
            c1 / 2.0 * s.powi(3),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            trig_endpoint_derivative(2, beta, 2, 2, End::Alpha).unwrap(),
            c2 / 2.0 * s.powi(2),
            max_relative = 1e-13
        );
        assert_eq!(trig_endpoint_derivative(2, beta, 3, 1, End::Alpha).unwrap(), 0.0);
        assert!(matches!(
            trig_endpoint_derivative(2, beta, 1, 3, End::Alpha),
            Err(EcError::OutOfTheoremRange { j: 3, max: 2 })
        ));
    }

    #[test]
    fn bernstein_closed_form() {
        assert_eq!(bernstein_endpoint_derivative(3, 1, 2, End::Alpha), -12.0);
        assert_eq!(bernstein_endpoint_derivative(5, 4, 2, End::Alpha), 0.0);
        assert_eq!(bernstein_endpoint_derivative(2, 0, 0, End::Alpha), 1.0);
        assert_eq!(bernstein_endpoint_derivative(3, 3, 0, End::Beta), 1.0);
    }

    #[test]
    fn determinant_matches_bernstein() {
        let s = SpaceSpec::polynomial(3, 0.0, 1.0).unwrap();
        let v = determinant_endpoint_derivative(&s, 2, 3, End::Alpha).unwrap();
        assert_relative_eq!(v, bernstein_endpoint_derivative(3, 2, 3, End::Alpha), max_relative = 1e-12);
        assert_eq!(determinant_endpoint_derivative(&s, 0, 0, End::Beta).unwrap(), 0.0);
    }

    #[test]
    fn determinant_matches_trig_closed_form() {
        for beta in [0.5, 1.0, 2.5] {
            let s = SpaceSpec::trigonometric(4, beta).unwrap();
            let det_v = determinant_endpoint_derivative(&s, 1, 1, End::Alpha).unwrap();
            let thm = trig_endpoint_derivative(2, beta, 1, 1, End::Alpha).unwrap();
            assert_relative_eq!(det_v, thm, max_relative = 1e-8);
        }
    }

    #[test]
    fn tables_have_expected_shape() {
        let s = SpaceSpec::trigonometric(4, 1.0).unwrap();
        let t = build_endpoint_tables(&s).unwrap();
        assert_eq!(t.source, Source::ClosedForm);
        assert_eq!(t.phi_alpha.len(), 5);
        assert_eq!(t.phi_alpha[0], vec![1.0, 0.0, 0.0]);
        let again = build_endpoint_tables(&s).unwrap();
        assert!(Arc::ptr_eq(&t, &again));
    }
}
