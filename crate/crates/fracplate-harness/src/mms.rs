//! Manufactured-solution forcing for the clamped Mindlin plate with
//! `w₀ = θx = θy = X(x)X(y)`, `X(s) = s(s − len)` and no in-plane motion.

use std::collections::HashMap;
use std::sync::Arc;

use fracplate::assembly::{load_coordinates, LoadSpec};
use fracplate::fracops::{
    riesz_adjoint_derivative, riesz_caputo_derivative, FnField, PolyField,
    ScalarField1D,
};
use fracplate::fracops::FractionalParams;
use fracplate::mesh::{Axis, StructuredMesh, Theory};
use fracplate::model::PlateModel;
use fracplate::{Error, Result};

/// Exact value of `100·w₀` at the plate centre for a unit square.
pub const MMS_CENTRE_VALUE: f64 = 6.25;

/// Assumed 1D profile `X(s) = s(s − len)`.
pub fn profile(len: f64) -> PolyField {
    PolyField(vec![0.0, -len, 1.0])
}

/// Closed-form truncated Riesz–Caputo derivative of the profile and its slope.
///
/// Both one-sided horizons are `min(l_f, ·)`; for a quadratic the kernel's
/// first moment contributes `(1−α)(l_b − l_a)/(2−α)`.
fn profile_derivative(len: f64, alpha: f64, l_f: f64, s: f64) -> (f64, f64) {
    let base = 2.0 * s - len;
    if alpha == 1.0 {
        return (base, 2.0);
    }
    let c = (1.0 - alpha) / (2.0 - alpha);
    let (la, lb) = (l_f.min(s), l_f.min(len - s));
    let dla = if s < l_f { 1.0 } else { 0.0 };
    let dlb = if len - s < l_f { -1.0 } else { 0.0 };
    (base + c * (lb - la), 2.0 + c * (dlb - dla))
}

/// The four 1D functions the forcing is built from, at one coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisValues {
    /// `X`
    pub x: f64,
    /// `D^α X`
    pub x1: f64,
    /// adjoint derivative of `X`
    pub ax: f64,
    /// adjoint derivative of `D^α X`
    pub ax1: f64,
}

/// One manufactured-solution problem.
#[derive(Clone, Debug)]
pub struct MmsCase {
    pub model: PlateModel,
    pub alpha: f64,
    pub l_f: f64,
}

impl MmsCase {
    pub fn new(model: PlateModel, alpha: f64, l_f: f64) -> Result<Self> {
        if model.theory != Theory::Mindlin {
            return Err(Error::Unsupported("manufactured solution is defined for Mindlin plates".into()));
        }
        if !(alpha > 0.0 && alpha <= 1.0) || !(l_f > 0.0) {
            return Err(Error::Argument(format!("order {alpha}, horizon {l_f}")));
        }
        Ok(Self { model, alpha, l_f })
    }

    fn len(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.model.l,
            Axis::Y => self.model.b,
        }
    }

    /// Profile, its fractional derivative and both adjoint derivatives at `s`.
    pub fn axis_values(&self, axis: Axis, s: f64) -> Result<AxisValues> {
        let len = self.len(axis);
        let (alpha, l_f) = (self.alpha, self.l_f);
        let p = profile(len);
        let params = FractionalParams::truncated(alpha, l_f, s, 0.0, len)?;
        let x1 = riesz_caputo_derivative(&p, s, &params)?;
        let mut d = FnField::new(
            move |t| profile_derivative(len, alpha, l_f, t).0,
            move |t| profile_derivative(len, alpha, l_f, t).1,
        );
        d.breaks = vec![l_f, len - l_f];
        Ok(AxisValues {
            x: p.value(s),
            x1,
            ax: riesz_adjoint_derivative(&p, s, l_f, alpha, (0.0, len))?,
            ax1: riesz_adjoint_derivative(&d, s, l_f, alpha, (0.0, len))?,
        })
    }

    /// `(F_z, M_θx, M_θy)` from tabulated 1D values along each axis.
    pub fn forcing_from(&self, vx: &AxisValues, vy: &AxisValues) -> [f64; 3] {
        let c = &self.model.constitutive;
        let (d11, d12, d22, d66) = (c.s_b[3][3], c.s_b[3][4], c.s_b[4][4], c.s_b[5][5]);
        let (s44, s55) = (c.s_s[0][0], c.s_s[1][1]);
        let q_xz = s55 * (vx.x1 * vy.x - vx.x * vy.x);
        let q_yz = s44 * (vx.x * vy.x1 - vx.x * vy.x);
        let dq_xz = s55 * vy.x * (vx.ax1 - vx.ax);
        let dq_yz = s44 * vx.x * (vy.ax1 - vy.ax);
        let dm_xx = d11 * vx.ax1 * vy.x + d12 * vx.ax * vy.x1;
        let dm_yy = d12 * vx.x1 * vy.ax + d22 * vx.x * vy.ax1;
        let dm_xy_y = d66 * (vx.x * vy.ax1 + vx.x1 * vy.ax);
        let dm_xy_x = d66 * (vx.ax * vy.x1 + vx.ax1 * vy.x);
        [-dq_xz - dq_yz, -dm_xx - dm_xy_y - q_xz, -dm_yy - dm_xy_x - q_yz]
    }

    /// Forcing at one interior point.
    pub fn forcing(&self, (x, y): (f64, f64)) -> Result<[f64; 3]> {
        let vx = self.axis_values(Axis::X, x)?;
        let vy = self.axis_values(Axis::Y, y)?;
        Ok(self.forcing_from(&vx, &vy))
    }

    /// Pointwise load tabulated at the load quadrature points of `mesh`.
    ///
    /// Points off the table evaluate to NaN, which load assembly rejects.
    pub fn tabulated_load(&self, mesh: &StructuredMesh, n_gauss: usize) -> Result<LoadSpec> {
        let table = |axis: Axis| -> Result<HashMap<u64, AxisValues>> {
            load_coordinates(mesh, axis, n_gauss)?
                .into_iter()
                .map(|s| Ok((s.to_bits(), self.axis_values(axis, s)?)))
                .collect()
        };
        let tx = table(Axis::X)?;
        let ty = table(Axis::Y)?;
        let case = self.clone();
        Ok(LoadSpec::Pointwise(Arc::new(move |x: f64, y: f64| {
            match (tx.get(&x.to_bits()), ty.get(&y.to_bits())) {
                (Some(vx), Some(vy)) => case.forcing_from(vx, vy),
                _ => [f64::NAN; 3],
            }
        })))
    }
}

/// Exact assumed deflection `X(x)X(y)`.
pub fn exact_deflection(model: &PlateModel, (x, y): (f64, f64)) -> f64 {
    x * (x - model.l) * y * (y - model.b)
}
