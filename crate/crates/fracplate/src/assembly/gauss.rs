//! Reference assembly: one fractional row operator per outer Gauss point,
//! built from 2D shape functions and scattered into the window pattern.
//! Slower than the tensor path and used to cross-check it.

use super::operators::{RowPart, RowSpec};
use super::rows::{nonlocal_b_row, value_row, LineParams, SparseRow};
use super::sparse::{EquationMap, SymmetricCsr};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fracops::gauss_legendre_rule;
use crate::mesh::{jacobian, Axis, DofMap, StructuredMesh};

fn element_point(mesh: &StructuredMesh, e: usize, xi: f64, eta: f64) -> (f64, f64) {
    let (ie, je) = mesh.element_ij(e);
    (
        mesh.coord(Axis::X, ie) + 0.5 * (1.0 + xi) * mesh.lex,
        mesh.coord(Axis::Y, je) + 0.5 * (1.0 + eta) * mesh.ley,
    )
}

/// Evaluates one row spec at an outer point.
pub fn spec_row(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    e: usize,
    (xi, eta): (f64, f64),
    spec: &RowSpec,
    line: LineParams,
) -> Result<SparseRow> {
    let anchor = element_point(mesh, e, xi, eta);
    let mut acc = SparseRow::default();
    for part in spec {
        let r = match *part {
            RowPart::Frac(var, axis, c) => {
                nonlocal_b_row(mesh, dofs, anchor, var, axis, &line)?
                    .row
                    .scaled(c)
            }
            RowPart::Value(comp, c) => value_row(mesh, dofs, e, (xi, eta), comp)?.scaled(c),
        };
        acc = acc.add(&r);
    }
    Ok(acc)
}

/// `Σ_pq S_pq ∫ rowₚᵀ row_q dA` by explicit per-point rows.
#[allow(clippy::too_many_arguments)]
pub fn assemble_reference(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    eqs: &EquationMap,
    rows: &[RowSpec],
    weights: &[Vec<f64>],
    n_gauss: usize,
    line: LineParams,
    mut pattern: SymmetricCsr,
    exec: Execution,
) -> Result<SymmetricCsr> {
    let rule = gauss_legendre_rule(n_gauss)?;
    let jac = jacobian(mesh);
    let per_element = |e: usize| -> Result<Vec<(f64, Vec<Vec<(usize, f64)>>)>> {
        let mut out = Vec::new();
        for (gy, &eta) in rule.points.iter().enumerate() {
            for (gx, &xi) in rule.points.iter().enumerate() {
                let w = rule.weights[gx] * rule.weights[gy] * jac;
                let mut mapped = Vec::with_capacity(rows.len());
                for spec in rows {
                    let r = spec_row(mesh, dofs, e, (xi, eta), spec, line)?;
                    mapped.push(
                        r.entries
                            .into_iter()
                            .filter_map(|(d, v)| eqs.eq(d).map(|q| (q, v)))
                            .collect(),
                    );
                }
                out.push((w, mapped));
            }
        }
        Ok(out)
    };
    let points: Vec<Result<_>> = exec::map_range(exec, mesh.n_elements(), per_element);
    for pts in points {
        for (w, rs) in pts? {
            for (p, rp) in rs.iter().enumerate() {
                for (q, rq) in rs.iter().enumerate() {
                    let s = weights[p][q] * w;
                    if s == 0.0 {
                        continue;
                    }
                    for &(i, vi) in rp {
                        for &(j, vj) in rq {
                            if j < i {
                                continue;
                            }
                            let pos = pattern.position(i, j).ok_or_else(|| {
                                Error::Argument(format!("entry ({i}, {j}) outside the pattern"))
                            })?;
                            pattern.vals_mut()[pos] += s * vi * vj;
                        }
                    }
                }
            }
        }
    }
    Ok(pattern)
}
