//! Consistent nodal loads from distributed transverse force and moments.

use std::fmt;
use std::sync::Arc;

use super::rows::value_row;
use super::sparse::EquationMap;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fracops::gauss_legendre_rule;
use crate::mesh::{jacobian, Axis, Component, DofMap, StructuredMesh, Theory};

/// Pointwise `(F_z, M_θx, M_θy)` per unit area.
pub type PointLoad = Arc<dyn Fn(f64, f64) -> [f64; 3] + Send + Sync>;

#[derive(Clone)]
pub enum LoadSpec {
    None,
    /// Uniform transverse pressure.
    Uniform(f64),
    Pointwise(PointLoad),
}

impl fmt::Debug for LoadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadSpec::None => write!(f, "None"),
            LoadSpec::Uniform(q) => write!(f, "Uniform({q})"),
            LoadSpec::Pointwise(_) => write!(f, "Pointwise(..)"),
        }
    }
}

/// Coordinates of the load quadrature points along `axis`, element by element.
pub fn load_coordinates(mesh: &StructuredMesh, axis: Axis, n_gauss: usize) -> Result<Vec<f64>> {
    let rule = gauss_legendre_rule(n_gauss)?;
    let (n, _) = mesh.axis_dims(axis);
    let le = mesh.element_size(axis);
    Ok((0..n)
        .flat_map(|k| {
            let x0 = mesh.coord(axis, k);
            rule.points.iter().map(move |&xi| x0 + 0.5 * (1.0 + xi) * le).collect::<Vec<_>>()
        })
        .collect())
}

/// Load vector on the equations of `eqs`.
pub fn load_vector(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    eqs: &EquationMap,
    load: &LoadSpec,
    n_gauss: usize,
    exec: Execution,
) -> Result<Vec<f64>> {
    let mut f = vec![0.0; eqs.n_eq()];
    let eval: PointLoad = match load {
        LoadSpec::None => return Ok(f),
        LoadSpec::Uniform(q) => {
            let q = *q;
            Arc::new(move |_, _| [q, 0.0, 0.0])
        }
        LoadSpec::Pointwise(g) => g.clone(),
    };
    let rule = gauss_legendre_rule(n_gauss)?;
    let xs = load_coordinates(mesh, Axis::X, n_gauss)?;
    let ys = load_coordinates(mesh, Axis::Y, n_gauss)?;
    let jac = jacobian(mesh);
    let targets = match dofs.theory {
        Theory::Mindlin => [Component::W0, Component::ThetaX, Component::ThetaY],
        Theory::Kirchhoff => [Component::W0, Component::W0, Component::W0],
    };
    let per_element = |e: usize| -> Result<Vec<(usize, f64)>> {
        let (ie, je) = mesh.element_ij(e);
        let mut out = Vec::new();
        for (gy, &eta) in rule.points.iter().enumerate() {
            for (gx, &xi) in rule.points.iter().enumerate() {
                let x = xs[ie * n_gauss + gx];
                let y = ys[je * n_gauss + gy];
                let w = rule.weights[gx] * rule.weights[gy] * jac;
                let q = eval(x, y);
                if !q.iter().all(|v| v.is_finite()) {
                    return Err(Error::NonFinite(format!("load at ({x}, {y})")));
                }
                if dofs.theory == Theory::Kirchhoff && (q[1] != 0.0 || q[2] != 0.0) {
                    return Err(Error::Unsupported("distributed moments on a Kirchhoff plate".into()));
                }
                let used = if dofs.theory == Theory::Kirchhoff { 1 } else { 3 };
                for k in 0..used {
                    if q[k] == 0.0 {
                        continue;
                    }
                    let r = value_row(mesh, dofs, e, (xi, eta), targets[k])?;
                    out.extend(r.entries.into_iter().map(|(d, v)| (d, w * q[k] * v)));
                }
            }
        }
        Ok(out)
    };
    let parts: Vec<Result<Vec<(usize, f64)>>> = exec::map_range(exec, mesh.n_elements(), per_element);
    for part in parts {
        for (d, v) in part? {
            if let Some(e) = eqs.eq(d) {
                f[e] += v;
            }
        }
    }
    Ok(f)
}
