//! Separable assembly on the uniform grid.
//!
//! Every strain row is a sum of terms `field ⊗ fx ⊗ fy`, so each matrix entry
//! is a short sum of products of 1D moment matrices
//! `Mx(f, g)[a][b] = Σ_p w_p f_a(p) g_b(p)` over the outer quadrature points.

use super::operators::{FieldKind, Func1d, TensorTerm};
use super::rows::{line_rule, LineParams};
use super::sparse::{EquationMap, SymmetricCsr};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fracops::gauss_legendre_rule;
use crate::mesh::{hermite_1d, jacobian, lagrange_1d, Axis, Component, DofMap, StructuredMesh};

const LAGRANGE_FIELDS: [Component; 5] =
    [Component::U0, Component::V0, Component::W0, Component::ThetaX, Component::ThetaY];
const HERMITE_ID: usize = 5;

fn field_id(f: FieldKind) -> usize {
    match f {
        FieldKind::Lagrange(c) => LAGRANGE_FIELDS.iter().position(|&k| k == c).expect("Lagrange field"),
        FieldKind::Hermite => HERMITE_ID,
    }
}

/// Sparse values of every 1D functional at every outer point of one axis.
struct AxisTable {
    weights: Vec<f64>,
    /// `values[f][point]` as `(1D index, value)` pairs.
    values: Vec<Vec<Vec<(usize, f64)>>>,
    funcs: Vec<Func1d>,
    n_nodes: usize,
}

impl AxisTable {
    fn build(
        mesh: &StructuredMesh,
        axis: Axis,
        funcs: &[Func1d],
        n_gauss: usize,
        line: LineParams,
        exec: Execution,
    ) -> Result<Self> {
        let (n, _) = mesh.axis_dims(axis);
        let le = mesh.element_size(axis);
        let a = 0.5 * le;
        let rule = gauss_legendre_rule(n_gauss)?;
        let mut coords = Vec::with_capacity(n * n_gauss);
        let mut weights = Vec::with_capacity(n * n_gauss);
        for k in 0..n {
            let x0 = mesh.coord(axis, k);
            for (&xi, &w) in rule.points.iter().zip(&rule.weights) {
                coords.push((k, xi, x0 + (1.0 + xi) * a));
                weights.push(w);
            }
        }
        let local = |k: usize, x: f64| 2.0 * (x - mesh.coord(axis, k)) / le - 1.0;
        let eval = |f: Func1d, (k, xi, x): (usize, f64, f64)| -> Result<Vec<(usize, f64)>> {
            let mut out: Vec<(usize, f64)> = Vec::new();
            match f {
                Func1d::LagVal => {
                    let (v, _) = lagrange_1d(xi);
                    out.extend([(k, v[0]), (k + 1, v[1])]);
                }
                Func1d::HerVal | Func1d::HerD1 => {
                    let h = hermite_1d(xi, a);
                    let v = if f == Func1d::HerVal { h.v } else { h.d1 };
                    out.extend((0..4).map(|s| (2 * k + s, v[s])));
                }
                Func1d::LagFrac | Func1d::HerFrac1 | Func1d::HerFrac2 => {
                    let degree = if f == Func1d::LagFrac { 0 } else { 2 };
                    let pts = line_rule(mesh, axis, x, degree, &line)?;
                    for lp in pts {
                        let kk = lp.element;
                        let xl = local(kk, lp.coord);
                        match f {
                            Func1d::LagFrac => {
                                out.push((kk, -lp.weight / le));
                                out.push((kk + 1, lp.weight / le));
                            }
                            _ => {
                                let h = hermite_1d(xl, a);
                                let v = if f == Func1d::HerFrac1 { h.d1 } else { h.d2 };
                                out.extend((0..4).map(|s| (2 * kk + s, lp.weight * v[s])));
                            }
                        }
                    }
                    out.sort_by_key(|e| e.0);
                    out.dedup_by(|b, a| {
                        if a.0 == b.0 {
                            a.1 += b.1;
                            true
                        } else {
                            false
                        }
                    });
                }
            }
            Ok(out)
        };
        let mut values = Vec::with_capacity(funcs.len());
        for &f in funcs {
            let col: Vec<Result<Vec<(usize, f64)>>> =
                exec::map_range(exec, coords.len(), |p| eval(f, coords[p]));
            values.push(col.into_iter().collect::<Result<Vec<_>>>()?);
        }
        Ok(Self { weights, values, funcs: funcs.to_vec(), n_nodes: n + 1 })
    }

    fn size(&self, f: Func1d) -> usize {
        if f.is_hermite() {
            2 * self.n_nodes
        } else {
            self.n_nodes
        }
    }

    /// Dense `Σ_p w_p f(p) g(p)ᵀ`, row-major.
    fn moment(&self, f: Func1d, g: Func1d) -> Dense {
        let fi = self.funcs.iter().position(|&h| h == f).expect("tabulated");
        let gi = self.funcs.iter().position(|&h| h == g).expect("tabulated");
        let (rows, cols) = (self.size(f), self.size(g));
        let mut data = vec![0.0; rows * cols];
        for (p, &w) in self.weights.iter().enumerate() {
            for &(i, vi) in &self.values[fi][p] {
                let wi = w * vi;
                let row = &mut data[i * cols..(i + 1) * cols];
                for &(j, vj) in &self.values[gi][p] {
                    row[j] += wi * vj;
                }
            }
        }
        Dense { cols, data }
    }
}

struct Dense {
    cols: usize,
    data: Vec<f64>,
}

impl Dense {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }
}

/// 1D coordinates of one equation.
#[derive(Clone, Copy)]
struct EqCoord {
    field: usize,
    ix: usize,
    iy: usize,
}

fn decode(mesh: &StructuredMesh, dofs: &DofMap, eqs: &EquationMap) -> Vec<EqCoord> {
    (0..eqs.n_eq())
        .map(|e| {
            let (node, comp) = dofs.node_component(eqs.dof(e));
            let (i, j) = mesh.node_ij(node);
            let (tx, ty, field) = match comp {
                Component::Wx if dofs.theory.is_hermite() => (1, 0, HERMITE_ID),
                Component::Wy if dofs.theory.is_hermite() => (0, 1, HERMITE_ID),
                Component::Wxy => (1, 1, HERMITE_ID),
                Component::W0 if dofs.theory.is_hermite() => (0, 0, HERMITE_ID),
                c => {
                    let f = field_id(FieldKind::Lagrange(c));
                    return EqCoord { field: f, ix: i, iy: j };
                }
            };
            EqCoord { field, ix: 2 * i + tx, iy: 2 * j + ty }
        })
        .collect()
}

/// Fills the values of `pattern` with `Σ_pq S_pq ∫ rowₚᵀ row_q dA`.
#[allow(clippy::too_many_arguments)]
pub fn assemble_tensor(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    eqs: &EquationMap,
    rows: &[Vec<TensorTerm>],
    weights: &[Vec<f64>],
    n_gauss: usize,
    line: LineParams,
    mut pattern: SymmetricCsr,
    exec: Execution,
) -> Result<SymmetricCsr> {
    if weights.len() != rows.len() || weights.iter().any(|w| w.len() != rows.len()) {
        return Err(Error::Argument("weight matrix does not match the row count".into()));
    }
    let scale = jacobian(mesh);
    // (field a, field b, fx a, fx b, fy a, fy b) → coefficient
    let mut terms: Vec<(usize, usize, Func1d, Func1d, Func1d, Func1d, f64)> = Vec::new();
    for (p, rp) in rows.iter().enumerate() {
        for (q, rq) in rows.iter().enumerate() {
            let s = weights[p][q];
            if s == 0.0 {
                continue;
            }
            for a in rp {
                for b in rq {
                    let key = (field_id(a.field), field_id(b.field), a.fx, b.fx, a.fy, b.fy);
                    let c = s * a.coef * b.coef * scale;
                    match terms.iter_mut().find(|t| (t.0, t.1, t.2, t.3, t.4, t.5) == key) {
                        Some(t) => t.6 += c,
                        None => terms.push((key.0, key.1, key.2, key.3, key.4, key.5, c)),
                    }
                }
            }
        }
    }
    terms.retain(|t| t.6 != 0.0);
    let mut funcs: Vec<Func1d> = terms.iter().flat_map(|t| [t.2, t.3, t.4, t.5]).collect();
    funcs.sort();
    funcs.dedup();
    let tx = AxisTable::build(mesh, Axis::X, &funcs, n_gauss, line, exec)?;
    let ty = AxisTable::build(mesh, Axis::Y, &funcs, n_gauss, line, exec)?;
    let mut mx: Vec<((Func1d, Func1d), Dense)> = Vec::new();
    let mut my: Vec<((Func1d, Func1d), Dense)> = Vec::new();
    // blocks[fa][fb] = [(coef, mx index, my index)]
    let mut blocks: Vec<Vec<Vec<(f64, usize, usize)>>> = vec![vec![Vec::new(); 6]; 6];
    for &(fa, fb, xa, xb, ya, yb, c) in &terms {
        let ix = match mx.iter().position(|m| m.0 == (xa, xb)) {
            Some(i) => i,
            None => {
                mx.push(((xa, xb), tx.moment(xa, xb)));
                mx.len() - 1
            }
        };
        let iy = match my.iter().position(|m| m.0 == (ya, yb)) {
            Some(i) => i,
            None => {
                my.push(((ya, yb), ty.moment(ya, yb)));
                my.len() - 1
            }
        };
        blocks[fa][fb].push((c, ix, iy));
    }
    let coords = decode(mesh, dofs, eqs);
    let n = pattern.n();
    let rowptr: Vec<usize> = pattern.rowptr().iter().map(|&p| p as usize).collect();
    let cols = pattern.cols().to_vec();
    let mut row_slices: Vec<&mut [f64]> = Vec::with_capacity(n);
    let mut rest = pattern.vals_mut();
    for r in 0..n {
        let (head, tail) = rest.split_at_mut(rowptr[r + 1] - rowptr[r]);
        row_slices.push(head);
        rest = tail;
    }
    exec::for_each_mut(exec, &mut row_slices, |r, vals| {
        let a = coords[r];
        let cs = &cols[rowptr[r]..rowptr[r + 1]];
        for (v, &c) in vals.iter_mut().zip(cs) {
            let b = coords[c as usize];
            let mut sum = 0.0;
            for &(coef, ix, iy) in &blocks[a.field][b.field] {
                sum += coef * mx[ix].1.at(a.ix, b.ix) * my[iy].1.at(a.iy, b.iy);
            }
            *v = sum;
        }
    });
    Ok(pattern)
}
