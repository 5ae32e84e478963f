//! EC-space families and analytic derivatives of their ordinary bases.
//!
//! Every family is stored as a list of [`Term`]s, `u^p · K(u)` with a kernel
//! `K` that is an exponential, an exponentially weighted cosine or sine, or a
//! hyperbolic cosine or sine. Derivatives of any order come from Leibniz'
//! rule and closed-form kernel derivatives.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, falling};
use crate::error::{EcError, Result};

/// Kernel shape of a [`Term`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `e^{rate·u}`
    Exp,
    /// `e^{rate·u} cos(freq·u)`
    Cos,
    /// `e^{rate·u} sin(freq·u)`
    Sin,
    /// `cosh(freq·u)`
    Cosh,
    /// `sinh(freq·u)`
    Sinh,
}

/// One ordinary basis function `u^power · K(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub power: u32,
    pub rate: f64,
    pub freq: f64,
    pub shape: Shape,
}

impl Term {
    pub const ONE: Term = Term { power: 0, rate: 0.0, freq: 0.0, shape: Shape::Exp };

    pub fn monomial(power: u32) -> Term {
        Term { power, rate: 0.0, freq: 0.0, shape: Shape::Exp }
    }

    pub fn new(power: u32, rate: f64, freq: f64, shape: Shape) -> Term {
        Term { power, rate, freq, shape }
    }

    /// m-th derivative of the kernel.
    fn kernel(&self, m: usize, u: f64) -> f64 {
        let (f, r) = (self.freq, self.rate);
        match self.shape {
            Shape::Exp => r.powi(m as i32) * (r * u).exp(),
            Shape::Cos | Shape::Sin if r == 0.0 => {
                let (s, c) = (f * u).sin_cos();
                // phase shift by m·π/2, done by table to stay exact;
                // cos(x + π/2) = -sin(x) turns the cosine into a shifted sine
                let shift = if self.shape == Shape::Sin { m } else { m + 1 };
                f.powi(m as i32) * sin_shift(s, c, shift)
            }
            Shape::Cos | Shape::Sin => {
                let z = Complex64::new(r, f).powu(m as u32);
                let (s, c) = (f * u).sin_cos();
                let e = (r * u).exp();
                match self.shape {
                    Shape::Cos => e * (z.re * c - z.im * s),
                    _ => e * (z.re * s + z.im * c),
                }
            }
            Shape::Cosh | Shape::Sinh => {
                let even = (m % 2 == 0) == (self.shape == Shape::Cosh);
                let v = if even { (f * u).cosh() } else { (f * u).sinh() };
                f.powi(m as i32) * v
            }
        }
    }

    /// j-th derivative of the whole term at `u`.
    pub fn derivative(&self, j: usize, u: f64) -> f64 {
        let p = self.power as usize;
        (0..=j.min(p))
            .map(|k| binom(j, k) * falling(p, k) * u.powi((p - k) as i32) * self.kernel(j - k, u))
            .sum()
    }
}

fn sin_shift(s: f64, c: f64, m: usize) -> f64 {
    match m % 4 {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

/// A root `re ± i·im` of a characteristic polynomial with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

impl Root {
    pub fn new(re: f64, im: f64, mult: usize) -> Root {
        Root { re, im, mult }
    }

    fn dimension(&self) -> usize {
        if self.im == 0.0 {
            self.mult
        } else {
            2 * self.mult
        }
    }
}

/// Roots of the characteristic polynomial of a constant-coefficient ODE.
/// Complex conjugates are implied by listing one member of each pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicSpec {
    pub roots: Vec<Root>,
}

impl CharacteristicSpec {
    pub fn new(roots: Vec<Root>) -> CharacteristicSpec {
        CharacteristicSpec { roots }
    }

    /// Merged, sorted root list: zero first, then ascending (re, im).
    fn normalized(&self) -> Result<Vec<Root>> {
        let mut merged: Vec<Root> = Vec::new();
        for r in &self.roots {
            if !r.re.is_finite() || !r.im.is_finite() || r.mult == 0 {
                return Err(EcError::InvalidSpace(format!("bad root {r:?}")));
            }
            let im = r.im.abs();
            match merged.iter_mut().find(|m| m.re == r.re && m.im == im) {
                Some(m) => m.mult += r.mult,
                None => merged.push(Root::new(r.re, im, r.mult)),
            }
        }
        if !merged.iter().any(|r| r.re == 0.0 && r.im == 0.0) {
            return Err(EcError::InvalidSpace(
                "root 0 missing; constants must belong to the space".into(),
            ));
        }
        for r in &merged {
            let mirrored = merged.iter().any(|m| m.re == -r.re && m.im == r.im && m.mult == r.mult);
            if !mirrored {
                return Err(EcError::InvalidSpace(format!(
                    "root set is not symmetric under negation: missing {}{:+}i",
                    -r.re, r.im
                )));
            }
        }
        merged.sort_by(|a, b| {
            let za = !(a.re == 0.0 && a.im == 0.0);
            let zb = !(b.re == 0.0 && b.im == 0.0);
            za.cmp(&zb)
                .then(a.re.total_cmp(&b.re))
                .then(a.im.total_cmp(&b.im))
        });
        Ok(merged)
    }

    /// Total multiplicity counting conjugates, i.e. the space dimension n+1.
    pub fn dimension(&self) -> usize {
        self.roots.iter().map(Root::dimension).sum()
    }
}

/// Family tag plus the family's shape parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Polynomial,
    Trigonometric,
    Hyperbolic,
    AlgebraicTrigonometric4,
    ExponentialTrigonometric4 { omega: f64 },
    OdeDefined { roots: Vec<Root> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Polynomial => "polynomial",
            Family::Trigonometric => "trigonometric",
            Family::Hyperbolic => "hyperbolic",
            Family::AlgebraicTrigonometric4 => "algebraic_trigonometric4",
            Family::ExponentialTrigonometric4 { .. } => "exponential_trigonometric4",
            Family::OdeDefined { .. } => "ode_defined",
        }
    }
}

/// An EC space of dimension n+1 on `[alpha, beta]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct SpaceSpec {
    family: Family,
    n: usize,
    alpha: f64,
    beta: f64,
    terms: Vec<Term>,
}

impl SpaceSpec {
    pub fn new(family: Family, n: usize, alpha: f64, beta: f64) -> Result<SpaceSpec> {
        let bad = |msg: String| Err(EcError::InvalidSpace(msg));
        if !(alpha.is_finite() && beta.is_finite()) || alpha >= beta {
            return bad(format!("need finite alpha < beta, got [{alpha}, {beta}]"));
        }
        if n < 1 {
            return bad("order n must be at least 1".into());
        }
        let terms = match &family {
            Family::Polynomial => (0..=n as u32).map(Term::monomial).collect(),
            Family::Trigonometric | Family::Hyperbolic => {
                let trig = family == Family::Trigonometric;
                if n % 2 != 0 {
                    return bad(format!("{} spaces need even n, got {n}", family.name()));
                }
                if alpha != 0.0 {
                    return bad(format!("{} spaces need alpha = 0", family.name()));
                }
                if trig && beta >= PI {
                    return bad(format!("trigonometric spaces need beta in (0, pi), got {beta}"));
                }
                let (s, c) = if trig { (Shape::Sin, Shape::Cos) } else { (Shape::Sinh, Shape::Cosh) };
                let mut terms = vec![Term::ONE];
                for k in 1..=n / 2 {
                    terms.push(Term::new(0, 0.0, k as f64, s));
                    terms.push(Term::new(0, 0.0, k as f64, c));
                }
                terms
            }
            Family::AlgebraicTrigonometric4 => {
                if n != 4 {
                    return bad(format!("algebraic-trigonometric spaces have n = 4, got {n}"));
                }
                if beta - alpha >= 2.0 * PI {
                    return bad(format!("interval length must be below 2pi, got {}", beta - alpha));
                }
                vec![
                    Term::ONE,
                    Term::monomial(1),
                    Term::monomial(2),
                    Term::new(0, 0.0, 1.0, Shape::Sin),
                    Term::new(0, 0.0, 1.0, Shape::Cos),
                ]
            }
            Family::ExponentialTrigonometric4 { omega } => {
                if n != 4 {
                    return bad(format!("exponential-trigonometric spaces have n = 4, got {n}"));
                }
                if !(omega.is_finite() && *omega > 0.0) {
                    return bad(format!("omega must be positive, got {omega}"));
                }
                vec![
                    Term::ONE,
                    Term::new(0, -omega, 1.0, Shape::Cos),
                    Term::new(0, -omega, 1.0, Shape::Sin),
                    Term::new(0, *omega, 1.0, Shape::Cos),
                    Term::new(0, *omega, 1.0, Shape::Sin),
                ]
            }
            Family::OdeDefined { roots } => {
                let spec = CharacteristicSpec::new(roots.clone());
                let sorted = spec.normalized()?;
                if spec.dimension() != n + 1 {
                    return bad(format!(
                        "total multiplicity {} does not match n + 1 = {}",
                        spec.dimension(),
                        n + 1
                    ));
                }
                let mut terms = Vec::with_capacity(n + 1);
                for r in &sorted {
                    for e in 0..r.mult as u32 {
                        if r.im == 0.0 {
                            terms.push(Term::new(e, r.re, 0.0, Shape::Exp));
                        } else {
                            terms.push(Term::new(e, r.re, r.im, Shape::Cos));
                            terms.push(Term::new(e, r.re, r.im, Shape::Sin));
                        }
                    }
                }
                let family = Family::OdeDefined { roots: sorted };
                return Ok(SpaceSpec { family, n, alpha, beta, terms });
            }
        };
        Ok(SpaceSpec { family, n, alpha, beta, terms })
    }

    pub fn polynomial(n: usize, alpha: f64, beta: f64) -> Result<SpaceSpec> {
        SpaceSpec::new(Family::Polynomial, n, alpha, beta)
    }

    pub fn trigonometric(n: usize, beta: f64) -> Result<SpaceSpec> {
        SpaceSpec::new(Family::Trigonometric, n, 0.0, beta)
    }

    pub fn hyperbolic(n: usize, beta: f64) -> Result<SpaceSpec> {
        SpaceSpec::new(Family::Hyperbolic, n, 0.0, beta)
    }

    pub fn algebraic_trigonometric4(alpha: f64, beta: f64) -> Result<SpaceSpec> {
        SpaceSpec::new(Family::AlgebraicTrigonometric4, 4, alpha, beta)
    }

    pub fn exponential_trigonometric4(omega: f64, alpha: f64, beta: f64) -> Result<SpaceSpec> {
        SpaceSpec::new(Family::ExponentialTrigonometric4 { omega }, 4, alpha, beta)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn length(&self) -> f64 {
        self.beta - self.alpha
    }

    /// The ordinary basis, index 0 being the constant.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// φ⁽ʲ⁾ₙ,ᵢ(u). The functions are entire, so `u` outside `[alpha, beta]`
    /// is evaluated as well.
    pub fn ordinary_eval(&self, i: usize, j: usize, u: f64) -> Result<f64> {
        match self.terms.get(i) {
            Some(t) => Ok(t.derivative(j, u)),
            None => Err(EcError::IndexOutOfRange { index: i, n: self.n }),
        }
    }

    /// Unchecked variant of [`ordinary_eval`](Self::ordinary_eval); panics on a bad index.
    pub fn phi(&self, i: usize, j: usize, u: f64) -> f64 {
        self.terms[i].derivative(j, u)
    }

    /// `[φ⁽ʲ⁾ₙ,₀(u), …, φ⁽ʲ⁾ₙ,ₙ(u)]`.
    pub fn phi_all(&self, j: usize, u: f64) -> Vec<f64> {
        self.terms.iter().map(|t| t.derivative(j, u)).collect()
    }

    /// Same family and order on another interval.
    pub fn with_interval(&self, alpha: f64, beta: f64) -> Result<SpaceSpec> {
        SpaceSpec::new(self.family.clone(), self.n, alpha, beta)
    }

    /// Ladder order: the degree for polynomials, m for n = 2m trigonometric
    /// and hyperbolic spaces. `None` for families without a nested ladder.
    pub fn ladder_order(&self) -> Option<usize> {
        match self.family {
            Family::Polynomial => Some(self.n),
            Family::Trigonometric | Family::Hyperbolic => Some(self.n / 2),
            _ => None,
        }
    }

    /// Member of the same ladder with the given order.
    pub fn with_ladder_order(&self, order: usize) -> Result<SpaceSpec> {
        let n = match self.family {
            Family::Polynomial => order,
            Family::Trigonometric | Family::Hyperbolic => 2 * order,
            _ => {
                return Err(EcError::NotNested(format!(
                    "{} spaces have no order ladder",
                    self.family.name()
                )))
            }
        };
        SpaceSpec::new(self.family.clone(), n, self.alpha, self.beta)
    }

    /// Invariant under `u -> alpha + beta - u` (true for every built-in family;
    /// ODE spaces are forced symmetric by validation).
    pub fn is_reflection_invariant(&self) -> bool {
        true
    }

    /// Key used by the table cache.
    pub fn cache_key(&self) -> String {
        serde_json::to_string(self).expect("space spec serializes")
    }
}

/// Builds the ODE-defined space spanned by all solutions of the equation
/// whose characteristic roots are `spec`.
pub fn basis_from_characteristic(spec: &CharacteristicSpec, alpha: f64, beta: f64) -> Result<SpaceSpec> {
    let dim = spec.dimension();
    if dim < 2 {
        return Err(EcError::InvalidSpace(format!("dimension {dim} is too small")));
    }
    SpaceSpec::new(Family::OdeDefined { roots: spec.roots.clone() }, dim - 1, alpha, beta)
}

/// JSON shape: `{"family": ..., "n": ..., "alpha": ..., "beta": ..., "params": {...}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSpace {
    family: String,
    n: usize,
    alpha: f64,
    beta: f64,
    #[serde(default)]
    params: RawParams,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    roots: Option<Vec<Root>>,
}

impl TryFrom<RawSpace> for SpaceSpec {
    type Error = EcError;

    fn try_from(raw: RawSpace) -> Result<SpaceSpec> {
        let family = match raw.family.as_str() {
            "polynomial" => Family::Polynomial,
            "trigonometric" => Family::Trigonometric,
            "hyperbolic" => Family::Hyperbolic,
            "algebraic_trigonometric4" => Family::AlgebraicTrigonometric4,
            "exponential_trigonometric4" => Family::ExponentialTrigonometric4 {
                omega: raw
                    .params
                    .omega
                    .ok_or_else(|| EcError::InvalidSpace("params.omega is required".into()))?,
            },
            "ode_defined" => Family::OdeDefined {
                roots: raw
                    .params
                    .roots
                    .ok_or_else(|| EcError::InvalidSpace("params.roots is required".into()))?,
            },
            other => return Err(EcError::InvalidSpace(format!("unknown family '{other}'"))),
        };
        SpaceSpec::new(family, raw.n, raw.alpha, raw.beta)
    }
}

impl From<SpaceSpec> for RawSpace {
    fn from(s: SpaceSpec) -> RawSpace {
        let mut params = RawParams::default();
        match &s.family {
            Family::ExponentialTrigonometric4 { omega } => params.omega = Some(*omega),
            Family::OdeDefined { roots } => params.roots = Some(roots.clone()),
            _ => {}
        }
        RawSpace { family: s.family.name().to_string(), n: s.n, alpha: s.alpha, beta: s.beta, params }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn monomial_derivative_is_factorial() {
        let s = SpaceSpec::polynomial(5, 0.0, 1.0).unwrap();
        assert_eq!(s.ordinary_eval(3, 3, 0.0).unwrap(), 6.0);
        assert_eq!(s.ordinary_eval(3, 4, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn trig_second_derivative_of_sine() {
        let beta = 1.2;
        let s = SpaceSpec::trigonometric(4, beta).unwrap();
        assert_relative_eq!(s.ordinary_eval(1, 2, beta).unwrap(), -beta.sin(), epsilon = 1e-15);
        assert_relative_eq!(s.ordinary_eval(4, 3, 0.3).unwrap(), 8.0 * (0.6f64).sin(), epsilon = 1e-14);
    }

    #[test]
    fn constant_has_zero_derivative() {
        let s = SpaceSpec::exponential_trigonometric4(0.2, 0.0, 1.0).unwrap();
        assert_eq!(s.ordinary_eval(0, 1, 0.4).unwrap(), 0.0);
        assert_eq!(s.ordinary_eval(0, 0, 0.4).unwrap(), 1.0);
    }

    #[test]
    fn index_out_of_range() {
        let s = SpaceSpec::polynomial(2, 0.0, 1.0).unwrap();
        assert_eq!(s.ordinary_eval(3, 0, 0.0), Err(EcError::IndexOutOfRange { index: 3, n: 2 }));
    }

    #[test]
    fn hyperbolic_parity() {
        let s = SpaceSpec::hyperbolic(4, 1.0).unwrap();
        assert_relative_eq!(s.phi(3, 1, 0.5), 2.0 * (1.0f64).cosh(), epsilon = 1e-14);
        assert_relative_eq!(s.phi(4, 2, 0.5), 4.0 * (1.0f64).cosh(), epsilon = 1e-14);
    }

    #[test]
    fn exp_trig_matches_direct_formula() {
        let w = 0.3;
        let s = SpaceSpec::exponential_trigonometric4(w, 0.0, 2.0).unwrap();
        let u = 0.8;
        let f = |u: f64| (w * u).exp() * u.sin();
        let d = w * (w * u).exp() * u.sin() + (w * u).exp() * u.cos();
        assert_relative_eq!(s.phi(4, 0, u), f(u), epsilon = 1e-15);
        assert_relative_eq!(s.phi(4, 1, u), d, epsilon = 1e-14);
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(SpaceSpec::trigonometric(3, 1.0).is_err());
        assert!(SpaceSpec::trigonometric(4, 3.2).is_err());
        assert!(SpaceSpec::new(Family::Trigonometric, 4, 0.1, 1.0).is_err());
        assert!(SpaceSpec::polynomial(0, 0.0, 1.0).is_err());
        assert!(SpaceSpec::polynomial(2, 1.0, 1.0).is_err());
        assert!(SpaceSpec::algebraic_trigonometric4(0.0, 7.0).is_err());
        assert!(SpaceSpec::exponential_trigonometric4(-1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn characteristic_requires_zero_root_and_symmetry() {
        let no_zero = CharacteristicSpec::new(vec![Root::new(0.0, 1.0, 1)]);
        assert!(basis_from_characteristic(&no_zero, 0.0, 1.0).is_err());
        let lopsided = CharacteristicSpec::new(vec![Root::new(0.0, 0.0, 1), Root::new(0.5, 1.0, 1)]);
        assert!(basis_from_characteristic(&lopsided, 0.0, 1.0).is_err());
    }

    #[test]
    fn characteristic_ordering() {
        let w = 1.0 / (3.0 * PI);
        let spec = CharacteristicSpec::new(vec![
            Root::new(w, 1.0, 1),
            Root::new(0.0, 0.0, 1),
            Root::new(-w, -1.0, 1),
        ]);
        let s = basis_from_characteristic(&spec, 0.0, 1.0).unwrap();
        let e = SpaceSpec::exponential_trigonometric4(w, 0.0, 1.0).unwrap();
        assert_eq!(s.terms(), e.terms());

        let poly = basis_from_characteristic(&CharacteristicSpec::new(vec![Root::new(0.0, 0.0, 5)]), 0.0, 1.0)
            .unwrap();
        assert_eq!(poly.terms(), SpaceSpec::polynomial(4, 0.0, 1.0).unwrap().terms());
    }

    #[test]
    fn json_round_trip() {
        let s = SpaceSpec::exponential_trigonometric4(0.1, 0.0, 2.0).unwrap();
        let txt = serde_json::to_string(&s).unwrap();
        assert_eq!(
            txt,
            r#"{"family":"exponential_trigonometric4","n":4,"alpha":0.0,"beta":2.0,"params":{"omega":0.1}}"#
        );
        let back: SpaceSpec = serde_json::from_str(&txt).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::from_str::<SpaceSpec>(r#"{"family":"trigonometric","n":3,"alpha":0,"beta":1}"#);
        assert!(bad.is_err());
    }
}
