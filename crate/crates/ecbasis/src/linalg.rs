//! Dense linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};

use crate::error::{EcError, Result};

/// Doolittle factorization `A = L·U` without pivoting: `L` unit lower
/// triangular, `U` upper triangular.
pub fn doolittle_lu(a: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(EcError::DimensionMismatch(format!("{}x{} matrix is not square", n, a.ncols())));
    }
    let mut l = DMatrix::<f64>::identity(n, n);
    let mut u = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for k in i..n {
            let s: f64 = (0..i).map(|j| l[(i, j)] * u[(j, k)]).sum();
            u[(i, k)] = a[(i, k)] - s;
        }
        if u[(i, i)] == 0.0 || !u[(i, i)].is_finite() {
            return Err(EcError::ZeroPivot(i));
        }
        for k in (i + 1)..n {
            let s: f64 = (0..i).map(|j| l[(k, j)] * u[(j, i)]).sum();
            l[(k, i)] = (a[(k, i)] - s) / u[(i, i)];
        }
    }
    Ok((l, u))
}

/// Solves `L·x = b` for unit lower triangular `L`.
pub fn forward_unit_lower(l: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let n = b.len();
    let mut x = b.clone();
    for i in 0..n {
        for j in 0..i {
            x[i] -= l[(i, j)] * x[j];
        }
    }
    x
}

/// Inverse of an upper triangular matrix by back substitution.
pub fn inverse_upper(u: &DMatrix<f64>) -> DMatrix<f64> {
    let n = u.nrows();
    let mut inv = DMatrix::<f64>::zeros(n, n);
    for c in 0..n {
        for i in (0..=c).rev() {
            let rhs = if i == c { 1.0 } else { 0.0 };
            let s: f64 = ((i + 1)..=c).map(|k| u[(i, k)] * inv[(k, c)]).sum();
            inv[(i, c)] = (rhs - s) / u[(i, i)];
        }
    }
    inv
}

/// Solves `A·X = B` with partial pivoting. Fails when a pivot drops below
/// `rel_tol` times the largest entry of `A`.
pub fn solve_pivoted(a: &DMatrix<f64>, b: &DMatrix<f64>, rel_tol: f64) -> Option<DMatrix<f64>> {
    let lu = a.clone().lu();
    let scale = a.amax();
    let u = lu.u();
    if scale == 0.0 || u.diagonal().iter().any(|d| !(d.abs() > rel_tol * scale)) {
        return None;
    }
    lu.solve(b)
}

/// Determinant by pivoted LU.
pub fn det(a: &DMatrix<f64>) -> f64 {
    a.clone().lu().determinant()
}

/// Frobenius norm.
pub fn norm(a: &DMatrix<f64>) -> f64 {
    a.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_factors_to_identity() {
        let a = DMatrix::<f64>::identity(4, 4);
        let (l, u) = doolittle_lu(&a).unwrap();
        assert_eq!(l, a);
        assert_eq!(u, a);
    }

    #[test]
    fn random_well_conditioned_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut a = DMatrix::<f64>::from_fn(6, 6, |_, _| rng.gen_range(-1.0..1.0));
        for i in 0..6 {
            a[(i, i)] += 6.0;
        }
        let (l, u) = doolittle_lu(&a).unwrap();
        assert!((&l * &u - &a).norm() <= 1e-10 * a.norm());
        for i in 0..6 {
            assert_eq!(l[(i, i)], 1.0);
            for j in (i + 1)..6 {
                assert_eq!(l[(i, j)], 0.0);
                assert_eq!(u[(j, i)], 0.0);
            }
        }
    }

    #[test]
    fn zero_pivot_is_reported() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(doolittle_lu(&a), Err(EcError::ZeroPivot(0)));
    }

    #[test]
    fn triangular_inverses() {
        let u = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 3.0, 0.0, -1.0, 4.0, 0.0, 0.0, 0.5]);
        let inv = inverse_upper(&u);
        assert!((&u * &inv - DMatrix::<f64>::identity(3, 3)).norm() < 1e-14);
        let l = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 2.0, 1.0, 0.0, -1.0, 3.0, 1.0]);
        let b = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let x = forward_unit_lower(&l, &b);
        assert!((&l * &x - &b).norm() < 1e-14);
    }

    #[test]
    fn singular_solve_is_rejected() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let b = DMatrix::from_row_slice(2, 1, &[1.0, 1.0]);
        assert!(solve_pivoted(&a, &b, 1e-13).is_none());
    }
}
