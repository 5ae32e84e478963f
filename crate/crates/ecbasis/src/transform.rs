//! The transformation matrix `[tᵢⱼ]` with `φₙ,ᵢ = Σⱼ tᵢⱼ bₙ,ⱼ`, its flop
//! tally, the closed-form cost model and an independent collocation oracle.
//!
//! Interior columns are filled from the endpoint tables alone. For column j
//! the quantities
//!
//! ```text
//! g_{j,r} = (b_r^{(j)} + Σ_ℓ (-1)^ℓ s_{j,r,ℓ}) / b_r^{(r)}
//! h_{i,j} = Σ_{r<j} φ_i^{(r)} g_{j,r}
//! t_{i,j} = φ_i - (h_{i,j} - φ_i^{(j)}) / b_j^{(j)}
//! ```
//!
//! are evaluated at α for columns 1..=⌊n/2⌋ and, with indices mirrored, at β
//! for the remaining ones. `s_{j,r,ℓ}` sums over increasing chains
//! r < k₁ < … < k_ℓ < j.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use itertools::Itertools;
use nalgebra::DMatrix;
use num_traits::{One, Zero};

use crate::bbasis::BBasis;
use crate::endpoint::{build_endpoint_tables, EndpointTables};
use crate::error::{EcError, Result};
use crate::linalg::solve_pivoted;
use crate::space::SpaceSpec;

/// Arithmetic needed by the assembly; `f64` and exact rationals qualify.
pub trait Scalar: Clone + PartialEq + Zero + One + Sub<Output = Self> + Div<Output = Self> {}

impl<T> Scalar for T where T: Clone + PartialEq + Zero + One + Sub<Output = T> + Div<Output = T> {}

/// Counts arithmetic operations while performing them.
struct Counter {
    flops: u64,
    enabled: bool,
}

impl Counter {
    fn tick(&mut self) {
        if self.enabled {
            self.flops += 1;
        }
    }
    fn add<T: Add<Output = T>>(&mut self, a: T, b: T) -> T {
        self.tick();
        a + b
    }
    fn sub<T: Sub<Output = T>>(&mut self, a: T, b: T) -> T {
        self.tick();
        a - b
    }
    fn mul<T: Mul<Output = T>>(&mut self, a: T, b: T) -> T {
        self.tick();
        a * b
    }
    fn div<T: Div<Output = T>>(&mut self, a: T, b: T) -> T {
        self.tick();
        a / b
    }
}

/// Subsets of {0..m-1} grouped by size: `chains(m)[ℓ]` lists all ℓ-subsets.
fn chains(m: usize) -> Arc<Vec<Vec<Vec<usize>>>> {
    type Table = HashMap<usize, Arc<Vec<Vec<Vec<usize>>>>>;
    static CHAINS: OnceLock<RwLock<Table>> = OnceLock::new();
    let table = CHAINS.get_or_init(Default::default);
    if let Some(c) = table.read().expect("chain table poisoned").get(&m) {
        return Arc::clone(c);
    }
    let built: Arc<Vec<Vec<Vec<usize>>>> = Arc::new((0..=m).map(|l| (0..m).combinations(l).collect()).collect());
    table.write().expect("chain table poisoned").insert(m, Arc::clone(&built));
    built
}

/// One endpoint seen through the mirrored indexing of the second half.
struct Side<'a, T> {
    phi: &'a [Vec<T>],
    b: &'a [Vec<T>],
    mirrored: bool,
    n: usize,
}

impl<T: Clone> Side<'_, T> {
    /// b_k^{(d)} (or b_{n-k}^{(d)} on the mirrored side).
    fn b(&self, k: usize, d: usize) -> T {
        let k = if self.mirrored { self.n - k } else { k };
        self.b[k][d].clone()
    }
    fn phi(&self, i: usize, d: usize) -> T {
        self.phi[i][d].clone()
    }
}

/// Values of rows 1..=n of column j (counted from the side's own endpoint).
fn column<T: Scalar>(side: &Side<T>, j: usize, ctr: &mut Counter) -> Vec<T> {
    let n = side.n;
    let bjj = side.b(j, j);
    if j == 1 {
        return (1..=n)
            .map(|i| {
                let q = ctr.div(side.phi(i, 1), bjj.clone());
                ctr.add(side.phi(i, 0), q)
            })
            .collect();
    }
    let g: Vec<T> = (1..j)
        .map(|r| {
            let m = j - r - 1;
            let brr = side.b(r, r);
            if m == 0 {
                return ctr.div(side.b(r, j), brr);
            }
            let table = chains(m);
            let mut acc = side.b(r, j);
            for (l, subsets) in table.iter().enumerate().skip(1) {
                let mut sum: Option<T> = None;
                for subset in subsets {
                    let ks: Vec<usize> = subset.iter().map(|s| r + 1 + s).collect();
                    let mut num = side.b(r, ks[0]);
                    for w in ks.windows(2) {
                        num = ctr.mul(num, side.b(w[0], w[1]));
                    }
                    num = ctr.mul(num, side.b(ks[l - 1], j));
                    let mut den = side.b(ks[0], ks[0]);
                    for &k in &ks[1..] {
                        den = ctr.mul(den, side.b(k, k));
                    }
                    let frac = ctr.div(num, den);
                    sum = Some(match sum {
                        None => frac,
                        Some(s) => ctr.add(s, frac),
                    });
                }
                let s = sum.expect("at least one chain per length");
                acc = if l % 2 == 1 { ctr.sub(acc, s) } else { ctr.add(acc, s) };
            }
            ctr.div(acc, brr)
        })
        .collect();
    (1..=n)
        .map(|i| {
            let mut h = ctr.mul(side.phi(i, 1), g[0].clone());
            for r in 2..j {
                let term = ctr.mul(side.phi(i, r), g[r - 1].clone());
                h = ctr.add(h, term);
            }
            let inner = ctr.sub(h, side.phi(i, j));
            let q = ctr.div(inner, bjj.clone());
            ctr.sub(side.phi(i, 0), q)
        })
        .collect()
}

/// Result of the generic assembly.
#[derive(Clone, Debug, PartialEq)]
pub struct Assembly<T> {
    /// `t[i][j]`.
    pub t: Vec<Vec<T>>,
    pub flops: u64,
    /// For even n, the middle column recomputed from the β side.
    pub middle_from_beta: Option<Vec<T>>,
}

/// Fills the matrix from endpoint tables in any exact or floating scalar.
pub fn assemble<T: Scalar>(tables: &EndpointTables<T>) -> Result<Assembly<T>> {
    let n = tables.n();
    let h = n / 2;
    if tables.max_order() < h {
        return Err(EcError::DimensionMismatch(format!(
            "tables stop at derivative order {}, need {h}",
            tables.max_order()
        )));
    }
    for j in 1..=h {
        if tables.b_alpha[j][j].is_zero() || tables.b_beta[n - j][j].is_zero() {
            return Err(EcError::DegenerateBBasis(format!("vanishing diagonal derivative at order {j}")));
        }
    }
    let mut t = vec![vec![T::zero(); n + 1]; n + 1];
    t[0] = vec![T::one(); n + 1];
    for i in 1..=n {
        t[i][0] = tables.phi_alpha[i][0].clone();
        t[i][n] = tables.phi_beta[i][0].clone();
    }
    let mut ctr = Counter { flops: 0, enabled: true };
    let left = Side { phi: &tables.phi_alpha, b: &tables.b_alpha, mirrored: false, n };
    let right = Side { phi: &tables.phi_beta, b: &tables.b_beta, mirrored: true, n };
    for j in 1..=h {
        for (i, v) in column(&left, j, &mut ctr).into_iter().enumerate() {
            t[i + 1][j] = v;
        }
    }
    let last = if n % 2 == 1 { h } else { h.saturating_sub(1) };
    for k in 1..=last {
        for (i, v) in column(&right, k, &mut ctr).into_iter().enumerate() {
            t[i + 1][n - k] = v;
        }
    }
    let flops = ctr.flops;
    let middle_from_beta = (n % 2 == 0 && h >= 1).then(|| {
        let mut quiet = Counter { flops: 0, enabled: false };
        let mut col = vec![T::one()];
        col.extend(column(&right, h, &mut quiet));
        col
    });
    Ok(Assembly { t, flops, middle_from_beta })
}

/// `[tᵢⱼ]` for a space, with the flop tally of its assembly.
#[derive(Clone, Debug)]
pub struct TransformMatrix {
    pub t: DMatrix<f64>,
    pub space: SpaceSpec,
    pub flops: u64,
    /// Even n: the middle column computed from the β-side formula.
    pub middle_check: Option<Vec<f64>>,
}

impl TransformMatrix {
    pub fn n(&self) -> usize {
        self.t.nrows() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.t[(i, j)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.t.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    /// Largest relative gap between the two middle-column formulas (even n).
    pub fn middle_discrepancy(&self) -> Option<f64> {
        let n = self.n();
        self.middle_check.as_ref().map(|col| {
            col.iter()
                .enumerate()
                .map(|(i, v)| {
                    let a = self.t[(i, n / 2)];
                    (a - v).abs() / a.abs().max(v.abs()).max(1e-300)
                })
                .fold(0.0, f64::max)
        })
    }

    /// max over grid and i of |φᵢ(u) - Σⱼ tᵢⱼ bⱼ(u)|.
    pub fn reconstruction_error(&self, basis: &BBasis, grid: usize) -> f64 {
        let s = &self.space;
        let mut worst = 0.0f64;
        for u in sample_grid(s.alpha(), s.beta(), grid) {
            let b = basis.eval_all(u);
            for i in 0..=self.n() {
                let rec: f64 = (0..=self.n()).map(|j| self.t[(i, j)] * b[j]).sum();
                worst = worst.max((s.phi(i, 0, u) - rec).abs());
            }
        }
        worst
    }
}

/// `count` equispaced points covering `[a, b]`.
pub fn sample_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    let count = count.max(2);
    (0..count)
        .map(|k| if k + 1 == count { b } else { a + (b - a) * k as f64 / (count - 1) as f64 })
        .collect()
}

/// Assembles the matrix for `space` from its endpoint tables.
pub fn build_transform(space: &SpaceSpec, tables: &EndpointTables) -> Result<TransformMatrix> {
    if tables.n() != space.n() {
        return Err(EcError::DimensionMismatch(format!(
            "tables of order {} for a space of order {}",
            tables.n(),
            space.n()
        )));
    }
    let n = space.n();
    for j in 1..=n / 2 {
        let (a, b) = (tables.b_alpha[j][j], tables.b_beta[n - j][j]);
        if !(a.abs() > f64::MIN_POSITIVE && b.abs() > f64::MIN_POSITIVE) || !(a.is_finite() && b.is_finite()) {
            return Err(EcError::DegenerateBBasis(format!("diagonal derivative at order {j} is {a:e} / {b:e}")));
        }
    }
    let asm = assemble(tables)?;
    let t = DMatrix::from_fn(n + 1, n + 1, |i, j| asm.t[i][j]);
    Ok(TransformMatrix { t, space: space.clone(), flops: asm.flops, middle_check: asm.middle_from_beta })
}

/// Convenience: tables from the best source, then the matrix.
pub fn transform_for(space: &SpaceSpec) -> Result<TransformMatrix> {
    build_transform(space, build_endpoint_tables(space)?.as_ref())
}

/// Flops performed by the assembly for `space`.
pub fn measured_flops(space: &SpaceSpec) -> Result<u64> {
    Ok(transform_for(space)?.flops)
}

/// Exact flop count of the assembly for order n. Valid for n ≤ 200.
pub fn kappa(n: usize) -> u128 {
    assert!((1..=200).contains(&n), "kappa is tabulated for 1 <= n <= 200");
    let n = n as i128;
    let value = if n % 2 == 1 {
        let h = n / 2;
        (1i128 << (h + 1)) * (h - 3) + 2 * h + 6 + 2 * n * h * (h + 1)
    } else {
        let h = n / 2;
        (1i128 << (h - 1)) * (3 * h - 10) + n + 5 + n * n * n / 2
    };
    value as u128
}

/// Flops of LU-based conversion for order n with δ right-hand sides:
/// ⅔N³ - ½N² - ⅙N + (2N² - N)δ with N = n + 1.
pub fn kappa_lu(n: usize, delta: usize) -> u128 {
    let big_n = (n + 1) as u128;
    (4 * big_n.pow(3) - 3 * big_n.pow(2) - big_n) / 6 + (2 * big_n.pow(2) - big_n) * delta as u128
}

/// Chebyshev–Gauss points mapped to `[alpha, beta]`.
pub fn chebyshev_nodes(space: &SpaceSpec) -> Vec<f64> {
    let n = space.n();
    let (mid, half) = ((space.alpha() + space.beta()) / 2.0, space.length() / 2.0);
    (0..=n)
        .map(|k| mid - half * ((2 * k + 1) as f64 * PI / (2 * (n + 1)) as f64).cos())
        .collect()
}

/// Solves Σⱼ tᵢⱼ bⱼ(u_k) = φᵢ(u_k) directly; independent of the endpoint formulas.
pub fn collocation_oracle(space: &SpaceSpec, nodes: Option<&[f64]>) -> Result<TransformMatrix> {
    let basis = BBasis::new(space)?;
    collocation_with_basis(&basis, nodes)
}

pub fn collocation_with_basis(basis: &BBasis, nodes: Option<&[f64]>) -> Result<TransformMatrix> {
    let space = basis.space();
    let n = space.n();
    let default_nodes;
    let nodes = match nodes {
        Some(v) => v,
        None => {
            default_nodes = chebyshev_nodes(space);
            &default_nodes
        }
    };
    if nodes.len() != n + 1 {
        return Err(EcError::DimensionMismatch(format!("{} nodes for order {n}", nodes.len())));
    }
    let bmat = DMatrix::from_fn(n + 1, n + 1, |k, j| basis.eval(j, 0, nodes[k]));
    let phi = DMatrix::from_fn(n + 1, n + 1, |k, i| space.phi(i, 0, nodes[k]));
    let x = solve_pivoted(&bmat, &phi, 1e-13).ok_or(EcError::SingularCollocation)?;
    Ok(TransformMatrix { t: x.transpose(), space: space.clone(), flops: 0, middle_check: None })
}
