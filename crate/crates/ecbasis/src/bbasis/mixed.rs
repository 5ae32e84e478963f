//! B-basis construction for spaces without a closed form: particular
//! integrals, the reversed Wronskian at the right endpoint, its Doolittle
//! factors, and the λ/μ combination coefficients.
//!
//! The construction runs on `[0, β-α]`; translation invariance of the
//! supported spaces moves the result to `[α, β]`.

use nalgebra::{DMatrix, DVector};

use crate::combinatorics::sign;
use crate::error::{EcError, Result};
use crate::linalg::{doolittle_lu, forward_unit_lower, inverse_upper, solve_pivoted};
use crate::space::SpaceSpec;

/// Relative pivot threshold below which the Wronskian is declared degenerate.
pub const PIVOT_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct MixedConstruction {
    /// Row k holds the ordinary-basis coefficients of v_{n,k}.
    pub rho: DMatrix<f64>,
    /// `W[j][c] = v_{n,n-c}^{(j)}(β)`.
    pub wronskian: DMatrix<f64>,
    pub l: DMatrix<f64>,
    pub u: DMatrix<f64>,
    /// First column of L⁻¹.
    pub lambda0: DVector<f64>,
    /// U⁻¹, upper triangular.
    pub mu: DMatrix<f64>,
    /// Interval length β-α.
    pub length: f64,
    /// Ordinary-basis coefficients of b_{n,n-i}, i = 0..=⌊n/2⌋.
    pub half: Vec<Vec<f64>>,
    local: SpaceSpec,
}

impl MixedConstruction {
    pub fn n(&self) -> usize {
        self.rho.nrows() - 1
    }

    /// v_{n,k}^{(j)}(s) with s measured from the left endpoint.
    pub fn particular(&self, k: usize, j: usize, s: f64) -> f64 {
        let phi = self.local.phi_all(j, s);
        self.rho.row(k).iter().zip(&phi).map(|(r, p)| r * p).sum()
    }

    /// b_{n,i}^{(j)} at local parameter s ∈ [0, β-α].
    pub fn eval_local(&self, i: usize, j: usize, s: f64) -> f64 {
        let n = self.n();
        if n - i <= n / 2 {
            let phi = self.local.phi_all(j, s);
            self.half[n - i].iter().zip(&phi).map(|(c, p)| c * p).sum()
        } else {
            sign(j) * self.eval_local(n - i, j, self.length - s)
        }
    }
}

/// Runs the construction for `space` on its own interval.
pub fn construct(space: &SpaceSpec) -> Result<MixedConstruction> {
    let n = space.n();
    let len = space.length();
    let local = space.with_interval(0.0, len)?;

    // initial conditions: v^(j)(0) = δ_ij for j ≤ i, v^(j)(β) = 0 for j < n-i
    let mut rho = DMatrix::<f64>::zeros(n + 1, n + 1);
    for i in 0..=n {
        let mut a = DMatrix::<f64>::zeros(n + 1, n + 1);
        let mut rhs = DMatrix::<f64>::zeros(n + 1, 1);
        for j in 0..=i {
            a.set_row(j, &DVector::from_vec(local.phi_all(j, 0.0)).transpose());
        }
        rhs[(i, 0)] = 1.0;
        for j in 0..(n - i) {
            a.set_row(i + 1 + j, &DVector::from_vec(local.phi_all(j, len)).transpose());
        }
        let x = solve_pivoted(&a, &rhs, 1e-14).ok_or_else(|| {
            EcError::BeyondCriticalLength(format!("initial-condition system for v_{i} is singular"))
        })?;
        rho.set_row(i, &x.column(0).transpose());
    }

    let v = |k: usize, j: usize, s: f64| -> f64 {
        let phi = local.phi_all(j, s);
        rho.row(k).iter().zip(&phi).map(|(r, p)| r * p).sum()
    };
    let wronskian = DMatrix::from_fn(n + 1, n + 1, |j, c| v(n - c, j, len));

    let (l, u) = doolittle_lu(&wronskian).map_err(|e| match e {
        EcError::ZeroPivot(k) => EcError::BeyondCriticalLength(format!("zero Doolittle pivot at step {k}")),
        other => other,
    })?;
    // Pivots of D_r W D_c are r_k U_kk c_k, so the test runs on the
    // equilibrated matrix. Raw entries span many orders of magnitude on
    // short intervals.
    let rs: Vec<f64> = wronskian.row_iter().map(|r| 1.0 / r.amax()).collect();
    let mut eq = wronskian.clone();
    for (k, mut row) in eq.row_iter_mut().enumerate() {
        row.scale_mut(rs[k]);
    }
    let cs: Vec<f64> = eq.column_iter().map(|c| 1.0 / c.amax()).collect();
    for (k, mut col) in eq.column_iter_mut().enumerate() {
        col.scale_mut(cs[k]);
    }
    let wnorm = eq.norm();
    if let Some(k) = (0..=n).find(|&k| !((rs[k] * u[(k, k)] * cs[k]).abs() >= PIVOT_TOL * wnorm)) {
        return Err(EcError::BeyondCriticalLength(format!(
            "Wronskian pivot {k} is {:e}, below {PIVOT_TOL:e}·‖W‖ after equilibration",
            u[(k, k)]
        )));
    }

    let mut e0 = DVector::<f64>::zeros(n + 1);
    e0[0] = 1.0;
    let lambda0 = forward_unit_lower(&l, &e0);
    let mu = inverse_upper(&u);

    let half = (0..=n / 2)
        .map(|i| {
            (0..=n)
                .map(|c| lambda0[i] * (0..=i).map(|r| mu[(r, i)] * rho[(n - r, c)]).sum::<f64>())
                .collect()
        })
        .collect();

    Ok(MixedConstruction { rho, wronskian, l, u, lambda0, mu, length: len, half, local })
}
