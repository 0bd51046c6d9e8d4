use super::SpdFactor;
use crate::assembly::{value_row, AssembledSystem};
use crate::error::{Error, Result};
use crate::mesh::{Axis, Component, DofMap, StructuredMesh};

/// Relative residual above which a static solve is rejected.
pub const RESIDUAL_LIMIT: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct StaticSolution {
    /// Solution on the equations.
    pub u: Vec<f64>,
    /// Solution on every DOF, zero where constrained.
    pub u_full: Vec<f64>,
    /// `‖K u − F‖ / ‖F‖`.
    pub residual: f64,
}

/// Solves `K u = F`, reusing `factor` when given.
pub fn static_solve(sys: &AssembledSystem, factor: Option<&SpdFactor>) -> Result<StaticSolution> {
    let owned;
    let factor = match factor {
        Some(f) => f,
        None => {
            owned = SpdFactor::new(&sys.k)?;
            &owned
        }
    };
    if factor.n() != sys.k.n() {
        return Err(Error::Argument("factor does not match the system".into()));
    }
    let u = factor.solve(&sys.f);
    let ku = sys.k.matvec(&u);
    let rn: f64 = ku.iter().zip(&sys.f).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    let fnorm = sys.f.iter().map(|v| v * v).sum::<f64>().sqrt();
    let residual = if fnorm > 0.0 { rn / fnorm } else { rn };
    if !residual.is_finite() || residual > RESIDUAL_LIMIT {
        return Err(Error::Factorization(format!("static residual {residual:.3e}")));
    }
    let u_full = sys.eqs.expand(&u);
    Ok(StaticSolution { u, u_full, residual })
}

/// Interpolated value of `comp` at `(x, y)` from a full DOF vector.
pub fn evaluate_field(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    u_full: &[f64],
    comp: Component,
    (x, y): (f64, f64),
) -> Result<f64> {
    if u_full.len() != dofs.n_dofs() {
        return Err(Error::Argument("vector length does not match the DOF map".into()));
    }
    let (ie, xi) = mesh.locate_1d(Axis::X, x)?;
    let (je, eta) = mesh.locate_1d(Axis::Y, y)?;
    let e = mesh.element_index(ie, je);
    Ok(value_row(mesh, dofs, e, (xi, eta), comp)?.dot(u_full))
}
