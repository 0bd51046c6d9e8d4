//! Power-law kernel, quadrature rules, and reference fractional operators.

mod oracle;
mod quadrature;

pub use oracle::{
    integrate_adaptive, integrate_weakly_singular, riesz_adjoint_derivative,
    riesz_caputo_derivative, riesz_rl_derivative, FnField, PolyField, ScalarField1D,
    ORACLE_TOL,
};
pub use quadrature::{
    gauss_jacobi_rule, gauss_legendre_rule, product_weights, singular_moment_integrate,
    singular_rule, QuadratureRule, SingularEnd,
};

use crate::error::{Error, Result};

/// Order and one-sided horizon lengths of a Riesz–Caputo derivative.
///
/// `l_a` extends toward decreasing coordinate, `l_b` toward increasing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FractionalParams {
    pub alpha: f64,
    pub l_a: f64,
    pub l_b: f64,
}

impl FractionalParams {
    pub fn new(alpha: f64, l_a: f64, l_b: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Argument(format!("order {alpha} outside (0, 1]")));
        }
        if !(l_a >= 0.0 && l_b >= 0.0 && l_a + l_b > 0.0) || !(l_a + l_b).is_finite() {
            return Err(Error::Argument(format!("bad horizon ({l_a}, {l_b})")));
        }
        Ok(Self { alpha, l_a, l_b })
    }

    pub fn symmetric(alpha: f64, l_f: f64) -> Result<Self> {
        Self::new(alpha, l_f, l_f)
    }

    /// Horizon of nominal length `l_f` at `x`, clipped to the interval `[lo, hi]`.
    pub fn truncated(alpha: f64, l_f: f64, x: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(x >= lo && x <= hi) {
            return Err(Error::Domain(format!("{x} outside [{lo}, {hi}]")));
        }
        Self::new(alpha, l_f.min(x - lo), l_f.min(hi - x))
    }

    pub fn is_local(&self) -> bool {
        self.alpha == 1.0
    }

    /// Parameters with the two horizon lengths exchanged.
    pub fn shifted(&self) -> Self {
        Self { alpha: self.alpha, l_a: self.l_b, l_b: self.l_a }
    }
}

/// Attenuation kernel ½(1−α)·l^{α−1}·|x−x'|^{−α}, `l = l_a` left of `x` and `l_b` right of it.
pub fn kernel_eval(x: f64, x_prime: f64, params: &FractionalParams) -> Result<f64> {
    let alpha = params.alpha;
    if params.is_local() {
        return Err(Error::Unsupported("kernel at order 1".into()));
    }
    let d = x_prime - x;
    let l = if d < 0.0 { params.l_a } else { params.l_b };
    if d == 0.0 || d.abs() >= l {
        return Err(Error::Domain(format!("x' = {x_prime} not inside the horizon of {x}")));
    }
    Ok(0.5 * (1.0 - alpha) * l.powf(alpha - 1.0) * d.abs().powf(-alpha))
}
