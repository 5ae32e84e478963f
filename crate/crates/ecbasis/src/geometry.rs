//! Control-point representations of ordinary integral and rational curves
//! and of tensor-product surfaces.

use serde::{Deserialize, Serialize};

use crate::bbasis::BBasis;
use crate::error::{EcError, Result};
use crate::space::SpaceSpec;
use crate::transform::{sample_grid, transform_for, TransformMatrix};

/// Weight tolerance separating genuine negativity from roundoff.
pub const WEIGHT_TOL: f64 = -1e-12;
/// Weights with |w| ≤ this times max|w| are treated as zero.
pub const ZERO_WEIGHT_REL: f64 = 1e-12;
/// Grid used to check the denominator of a rational pre-image.
pub const POSITIVITY_GRID: usize = 1001;

/// `c(u) = Σᵢ λᵢ φₙ,ᵢ(u)` with `λᵢ ∈ R^δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralCurveSpec {
    pub space: SpaceSpec,
    pub lambdas: Vec<Vec<f64>>,
}

impl IntegralCurveSpec {
    pub fn new(space: SpaceSpec, lambdas: Vec<Vec<f64>>) -> Result<IntegralCurveSpec> {
        let spec = IntegralCurveSpec { space, lambdas };
        spec.dim()?;
        Ok(spec)
    }

    /// Dimension δ, validating the coefficient layout.
    pub fn dim(&self) -> Result<usize> {
        let n = self.space.n();
        if self.lambdas.len() != n + 1 {
            return Err(EcError::DimensionMismatch(format!(
                "{} coefficient vectors for order {n}",
                self.lambdas.len()
            )));
        }
        let d = self.lambdas[0].len();
        if d == 0 || self.lambdas.iter().any(|l| l.len() != d) {
            return Err(EcError::DimensionMismatch("coefficient vectors must share a nonzero length".into()));
        }
        Ok(d)
    }

    /// Evaluates the ordinary form at `u`.
    pub fn eval(&self, u: f64) -> Vec<f64> {
        let d = self.lambdas[0].len();
        let phi = self.space.phi_all(0, u);
        (0..d).map(|l| self.lambdas.iter().zip(&phi).map(|(lam, p)| lam[l] * p).sum()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlPolygon {
    pub points: Vec<Vec<f64>>,
    pub space: SpaceSpec,
}

/// One separable term: a coefficient vector per direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparableTerm {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// `s^ℓ(u,v) = Σ_ζ (Σ λ^{ℓ,ζ,u}_i φ_i(u)) (Σ λ^{ℓ,ζ,v}_k φ_k(v))` for each coordinate ℓ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub spaces: [SpaceSpec; 2],
    pub coordinates: Vec<Vec<SeparableTerm>>,
}

impl SurfaceSpec {
    fn validate(&self) -> Result<()> {
        let (n1, n2) = (self.spaces[0].n(), self.spaces[1].n());
        if self.coordinates.is_empty() {
            return Err(EcError::DimensionMismatch("surface needs at least one coordinate".into()));
        }
        for (l, terms) in self.coordinates.iter().enumerate() {
            if terms.is_empty() {
                return Err(EcError::DimensionMismatch(format!("coordinate {l} has no terms")));
            }
            for t in terms {
                if t.u.len() != n1 + 1 || t.v.len() != n2 + 1 {
                    return Err(EcError::DimensionMismatch(format!(
                        "coordinate {l}: term lengths {}x{} do not match orders {n1}x{n2}",
                        t.u.len(),
                        t.v.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, u: f64, v: f64) -> Vec<f64> {
        let pu = self.spaces[0].phi_all(0, u);
        let pv = self.spaces[1].phi_all(0, v);
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        self.coordinates
            .iter()
            .map(|terms| terms.iter().map(|t| dot(&t.u, &pu) * dot(&t.v, &pv)).sum())
            .collect()
    }
}

/// `points[j1][j2]` of the tensor-product B-representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlNet {
    pub points: Vec<Vec<Vec<f64>>>,
    pub spaces: [SpaceSpec; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalBRep {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub all_nonneg: bool,
    pub space: SpaceSpec,
}

fn check_space(expected: &SpaceSpec, t: &TransformMatrix) -> Result<()> {
    if &t.space != expected {
        return Err(EcError::DimensionMismatch("transform belongs to a different space".into()));
    }
    Ok(())
}

/// `pⱼ = Σᵢ λᵢ tᵢⱼ`.
pub fn convert_curve(spec: &IntegralCurveSpec, t: &TransformMatrix) -> Result<ControlPolygon> {
    let d = spec.dim()?;
    check_space(&spec.space, t)?;
    let n = spec.space.n();
    let points = (0..=n)
        .map(|j| (0..d).map(|l| (0..=n).map(|i| spec.lambdas[i][l] * t.get(i, j)).sum()).collect())
        .collect();
    Ok(ControlPolygon { points, space: spec.space.clone() })
}

fn map_through(coeffs: &[f64], t: &TransformMatrix) -> Vec<f64> {
    let n = t.n();
    (0..=n).map(|j| (0..=n).map(|i| coeffs[i] * t.get(i, j)).sum()).collect()
}

/// Net entry `p^ℓ_{j1,j2} = Σ_ζ p^{ℓ,ζ,u}_{j1} · p^{ℓ,ζ,v}_{j2}`.
pub fn convert_surface(spec: &SurfaceSpec, t1: &TransformMatrix, t2: &TransformMatrix) -> Result<ControlNet> {
    spec.validate()?;
    check_space(&spec.spaces[0], t1)?;
    check_space(&spec.spaces[1], t2)?;
    let (n1, n2) = (t1.n(), t2.n());
    let mapped: Vec<Vec<(Vec<f64>, Vec<f64>)>> = spec
        .coordinates
        .iter()
        .map(|terms| terms.iter().map(|tm| (map_through(&tm.u, t1), map_through(&tm.v, t2))).collect())
        .collect();
    let points = (0..=n1)
        .map(|j1| {
            (0..=n2)
                .map(|j2| mapped.iter().map(|terms| terms.iter().map(|(pu, pv)| pu[j1] * pv[j2]).sum()).collect())
                .collect()
        })
        .collect();
    Ok(ControlNet { points, spaces: spec.spaces.clone() })
}

/// Converts a pre-image in R^{δ+1} and projects its control points
/// through the last coordinate.
pub fn rationalize_curve(spec: &IntegralCurveSpec, t: &TransformMatrix) -> Result<RationalBRep> {
    let d1 = spec.dim()?;
    if d1 < 2 {
        return Err(EcError::InvalidRational("pre-image needs at least two coordinates".into()));
    }
    let s = &spec.space;
    for u in sample_grid(s.alpha(), s.beta(), POSITIVITY_GRID) {
        let w = spec.eval(u)[d1 - 1];
        if !(w > 0.0) {
            return Err(EcError::InvalidRational(format!("denominator {w} is not positive at u = {u}")));
        }
    }
    let pre = convert_curve(spec, t)?;
    let weights: Vec<f64> = pre.points.iter().map(|p| p[d1 - 1]).collect();
    let wmax = weights.iter().fold(0.0f64, |a, w| a.max(w.abs()));
    if let Some(j) = weights.iter().position(|w| w.abs() <= ZERO_WEIGHT_REL * wmax) {
        return Err(EcError::ProjectionSingular(j));
    }
    let points = pre.points.iter().map(|p| p[..d1 - 1].iter().map(|x| x / p[d1 - 1]).collect()).collect();
    let all_nonneg = weights.iter().all(|&w| w >= WEIGHT_TOL);
    Ok(RationalBRep { points, weights, all_nonneg, space: s.clone() })
}

/// Re-expresses the curve in a larger space whose ordinary basis contains
/// every function of the current one; new directions get zero coefficients.
pub fn elevate_embedding(spec: &IntegralCurveSpec, target: &SpaceSpec) -> Result<IntegralCurveSpec> {
    let d = spec.dim()?;
    let src = &spec.space;
    if src.alpha() != target.alpha() || src.beta() != target.beta() {
        return Err(EcError::NotNested("target lives on a different interval".into()));
    }
    let mut lambdas = vec![vec![0.0; d]; target.n() + 1];
    for (i, term) in src.terms().iter().enumerate() {
        let k = target
            .terms()
            .iter()
            .position(|t| t == term)
            .ok_or_else(|| EcError::NotNested(format!("basis function {i} of the source is missing in the target")))?;
        lambdas[k] = spec.lambdas[i].clone();
    }
    IntegralCurveSpec::new(target.clone(), lambdas)
}

/// Outcome of the elevation search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ElevationReport {
    pub rep: RationalBRep,
    pub order: usize,
    /// Orders tried before success, with the reason each was rejected.
    pub rejected: Vec<(usize, String)>,
}

/// Raises the ladder order until all weights are nonnegative. Orders whose
/// projection is singular are skipped. Fails with `ElevationExhausted`
/// beyond `max_order`.
pub fn rationalize_with_elevation(spec: &IntegralCurveSpec, max_order: usize) -> Result<ElevationReport> {
    let start = spec
        .space
        .ladder_order()
        .ok_or_else(|| EcError::NotNested(format!("{} spaces cannot be elevated", spec.space.family().name())))?;
    let mut rejected = Vec::new();
    for order in start..=max_order {
        let target = spec.space.with_ladder_order(order)?;
        let lifted = elevate_embedding(spec, &target)?;
        let t = transform_for(&target)?;
        match rationalize_curve(&lifted, &t) {
            Ok(rep) if rep.all_nonneg => return Ok(ElevationReport { rep, order, rejected }),
            Ok(rep) => {
                let neg = rep.weights.iter().position(|&w| w < WEIGHT_TOL).unwrap_or(0);
                rejected.push((order, format!("weight {neg} is negative")));
            }
            Err(EcError::ProjectionSingular(j)) => rejected.push((order, format!("weight {j} vanishes"))),
            Err(e) => return Err(e),
        }
    }
    Err(EcError::ElevationExhausted { max_order })
}

/// Convex combination `Σ pⱼ bⱼ(u)`.
pub fn eval_bcurve(polygon: &ControlPolygon, basis: &BBasis, u: f64) -> Vec<f64> {
    let b = basis.eval_all(u);
    let d = polygon.points[0].len();
    (0..d).map(|l| polygon.points.iter().zip(&b).map(|(p, w)| p[l] * w).sum()).collect()
}

pub fn eval_bsurface(net: &ControlNet, bases: (&BBasis, &BBasis), u: f64, v: f64) -> Vec<f64> {
    let bu = bases.0.eval_all(u);
    let bv = bases.1.eval_all(v);
    let d = net.points[0][0].len();
    let mut out = vec![0.0; d];
    for (row, wu) in net.points.iter().zip(&bu) {
        for (p, wv) in row.iter().zip(&bv) {
            for l in 0..d {
                out[l] += p[l] * wu * wv;
            }
        }
    }
    out
}

/// `Σ wⱼ pⱼ bⱼ(u) / Σ w_r b_r(u)`.
pub fn eval_rational(rep: &RationalBRep, basis: &BBasis, u: f64) -> Result<Vec<f64>> {
    let b = basis.eval_all(u);
    let den: f64 = rep.weights.iter().zip(&b).map(|(w, bb)| w * bb).sum();
    if !(den > 0.0) {
        return Err(EcError::NonPositiveDenominator { u, value: den });
    }
    let d = rep.points[0].len();
    Ok((0..d)
        .map(|l| rep.points.iter().zip(&rep.weights).zip(&b).map(|((p, w), bb)| w * p[l] * bb).sum::<f64>() / den)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_curve_has_equal_points() {
        let s = SpaceSpec::trigonometric(4, 1.0).unwrap();
        let mut lambdas = vec![vec![0.0, 0.0]; 5];
        lambdas[0] = vec![2.0, -1.0];
        let spec = IntegralCurveSpec::new(s.clone(), lambdas).unwrap();
        let poly = convert_curve(&spec, &transform_for(&s).unwrap()).unwrap();
        for p in &poly.points {
            assert!((p[0] - 2.0).abs() < 1e-12 && (p[1] + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn line_in_bernstein_form() {
        let s = SpaceSpec::polynomial(3, 0.0, 1.0).unwrap();
        let spec = IntegralCurveSpec::new(s.clone(), vec![vec![0.0], vec![1.0], vec![0.0], vec![0.0]]).unwrap();
        let poly = convert_curve(&spec, &transform_for(&s).unwrap()).unwrap();
        let xs: Vec<f64> = poly.points.iter().map(|p| p[0]).collect();
        for (x, e) in xs.iter().zip([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]) {
            assert!((x - e).abs() < 1e-15);
        }
    }

    #[test]
    fn unit_denominator_gives_unit_weights() {
        let s = SpaceSpec::trigonometric(4, 1.0).unwrap();
        let lambdas = vec![
            vec![0.5, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0],
            vec![0.2, 0.0, 0.0],
        ];
        let spec = IntegralCurveSpec::new(s.clone(), lambdas).unwrap();
        let t = transform_for(&s).unwrap();
        let rep = rationalize_curve(&spec, &t).unwrap();
        assert!(rep.all_nonneg);
        for w in &rep.weights {
            assert!((w - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn non_nested_target_is_rejected() {
        let s = SpaceSpec::trigonometric(4, 1.0).unwrap();
        let spec = IntegralCurveSpec::new(s, vec![vec![1.0]; 5]).unwrap();
        let target = SpaceSpec::hyperbolic(6, 1.0).unwrap();
        assert!(matches!(elevate_embedding(&spec, &target), Err(EcError::NotNested(_))));
    }
}
