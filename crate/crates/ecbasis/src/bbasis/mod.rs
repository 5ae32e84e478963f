//! Normalized B-bases.

pub mod closed;
pub mod critical;
pub mod mixed;

pub use closed::{
    bernstein_eval, hyperbolic_bbasis_eval, hyperbolic_normalizing_coefficient, trig_bbasis_eval,
    trig_normalizing_coefficient,
};
pub use critical::{critical_length, CriticalLength, IndexZero, ScanOptions};
pub use mixed::MixedConstruction;

pub use crate::linalg::doolittle_lu;

use crate::error::{EcError, Result};
use crate::space::{Family, SpaceSpec};

#[derive(Clone, Debug)]
pub enum BBasisKind {
    ClosedForm,
    Mixed(Box<MixedConstruction>),
}

/// The normalized B-basis of a space together with its evaluator.
#[derive(Clone, Debug)]
pub struct BBasis {
    space: SpaceSpec,
    kind: BBasisKind,
}

/// True when the family has a closed-form B-basis.
pub fn has_closed_form(space: &SpaceSpec) -> bool {
    matches!(space.family(), Family::Polynomial | Family::Trigonometric | Family::Hyperbolic)
}

impl BBasis {
    /// Closed form when available, otherwise the mixed construction.
    pub fn new(space: &SpaceSpec) -> Result<BBasis> {
        if has_closed_form(space) {
            BBasis::closed_form(space)
        } else {
            construct_mixed_bbasis(space)
        }
    }

    pub fn closed_form(space: &SpaceSpec) -> Result<BBasis> {
        if !has_closed_form(space) {
            return Err(EcError::InvalidSpace(format!(
                "{} spaces have no closed-form B-basis",
                space.family().name()
            )));
        }
        Ok(BBasis { space: space.clone(), kind: BBasisKind::ClosedForm })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn kind(&self) -> &BBasisKind {
        &self.kind
    }

    pub fn mixed(&self) -> Option<&MixedConstruction> {
        match &self.kind {
            BBasisKind::Mixed(m) => Some(m),
            BBasisKind::ClosedForm => None,
        }
    }

    /// b⁽ʲ⁾ₙ,ᵢ(u).
    pub fn eval(&self, i: usize, j: usize, u: f64) -> f64 {
        let s = &self.space;
        let n = s.n();
        assert!(i <= n, "basis index {i} out of range for order {n}");
        match &self.kind {
            BBasisKind::Mixed(m) => m.eval_local(i, j, u - s.alpha()),
            BBasisKind::ClosedForm => match s.family() {
                Family::Polynomial => {
                    let h = s.length();
                    bernstein_eval(n, i, j, (u - s.alpha()) / h) / h.powi(j as i32)
                }
                Family::Trigonometric => closed::sine_product_derivative(false, n, s.beta(), i, j, u)
                    .expect("validated trigonometric space"),
                Family::Hyperbolic => closed::sine_product_derivative(true, n, s.beta(), i, j, u)
                    .expect("validated hyperbolic space"),
                _ => unreachable!("closed form only for polynomial, trigonometric and hyperbolic"),
            },
        }
    }

    /// `[bₙ,₀(u), …, bₙ,ₙ(u)]`.
    pub fn eval_all(&self, u: f64) -> Vec<f64> {
        (0..=self.space.n()).map(|i| self.eval(i, 0, u)).collect()
    }
}

/// Builds the B-basis through particular integrals and the Doolittle
/// factorization of the reversed Wronskian. Works for every family, which
/// the closed forms use for cross-validation.
pub fn construct_mixed_bbasis(space: &SpaceSpec) -> Result<BBasis> {
    // Only zeros inside the interval matter here.
    let opts = ScanOptions { scan_max: space.length() * 1.01, ..Default::default() };
    let critical = critical_length(space, &opts);
    if space.length() >= critical.estimate {
        return Err(EcError::BeyondCriticalLength(format!(
            "interval length {} is not below the critical length {}",
            space.length(),
            critical.estimate
        )));
    }
    let m = mixed::construct(space)?;
    Ok(BBasis { space: space.clone(), kind: BBasisKind::Mixed(Box::new(m)) })
}
