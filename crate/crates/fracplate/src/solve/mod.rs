//! Linear static and free-vibration solvers, mode classification and
//! nondimensional output parameters.

mod factor;
mod modal;
mod statics;

pub use factor::SpdFactor;
pub use modal::{modal_solve, ModalMethod, ModalOptions, ModalSolution};
pub use statics::{evaluate_field, static_solve, StaticSolution, RESIDUAL_LIMIT};

use crate::assembly::{AssembledSystem, EquationMap, SymmetricCsr};
use crate::error::{Error, Result};
use crate::mesh::{DofMap, Theory};
use crate::model::PlateModel;

/// Minimum share of kinetic energy in transverse DOFs for a transverse mode.
pub const TRANSVERSE_PARTICIPATION: f64 = 0.99;

/// Share of `xᵀ M x` carried by the transverse DOFs.
pub fn transverse_participation(
    m: &SymmetricCsr,
    dofs: &DofMap,
    eqs: &EquationMap,
    x: &[f64],
) -> f64 {
    let is_t: Vec<bool> = eqs.dofs().iter().map(|&d| dofs.node_component(d).1.is_transverse()).collect();
    let (mut total, mut trans) = (0.0, 0.0);
    for r in 0..m.n() {
        let (cols, vals) = m.row(r);
        for (&c, &v) in cols.iter().zip(vals) {
            let c = c as usize;
            let e = if c == r { v * x[r] * x[r] } else { 2.0 * v * x[r] * x[c] };
            total += e;
            if is_t[r] && is_t[c] {
                trans += e;
            }
        }
    }
    if total > 0.0 {
        trans / total
    } else {
        0.0
    }
}

/// Indices of transverse modes in `sol`, in ascending frequency.
pub fn transverse_modes(sys: &AssembledSystem, sol: &ModalSolution) -> Vec<usize> {
    (0..sol.eigenvalues.len())
        .filter(|&j| {
            transverse_participation(&sys.m, &sys.dofs, &sys.eqs, sol.mode(j))
                >= TRANSVERSE_PARTICIPATION
        })
        .collect()
}

/// Ascending values with near-repeats (relative gap ≤ `rel_tol`) merged.
pub fn distinct_values(sorted: &[f64], rel_tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in sorted {
        match out.last() {
            Some(&last) if (v - last).abs() <= rel_tol * v.abs().max(last.abs()) => {}
            _ => out.push(v),
        }
    }
    out
}

/// Nondimensional frequency: `ω L²/h √(ρ/E)` (Mindlin) or `ω (B/π)² √(ρh/D₁₁)` (Kirchhoff).
pub fn frequency_parameter(model: &PlateModel, omega: f64) -> f64 {
    let m = &model.material;
    match model.theory {
        Theory::Mindlin => omega * model.l * model.l / model.h * (m.rho / m.e1).sqrt(),
        Theory::Kirchhoff => {
            let s = model.b / std::f64::consts::PI;
            omega * s * s * (m.rho * model.h / model.d11()).sqrt()
        }
    }
}

/// Nondimensional central deflection `100 E h³ w / (q L⁴)`.
pub fn deflection_parameter(model: &PlateModel, w: f64, q: f64) -> Result<f64> {
    if q == 0.0 || !q.is_finite() {
        return Err(Error::Context("deflection parameter needs a nonzero load".into()));
    }
    let e = model.material.e1;
    Ok(w * 100.0 * e * model.h.powi(3) / (q * model.l.powi(4)))
}
