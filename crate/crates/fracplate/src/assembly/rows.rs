//! Fractional row operators: line quadrature along a horizon and the sparse
//! rows `B̃` mapping global DOFs to one derivative value at one anchor.

use crate::error::{Error, Result};
use crate::fracops::{gauss_legendre_rule, product_weights};
use crate::mesh::{
    hermite_shape, horizon_stencil, lagrange_shape, Axis, Component, DofMap, PieceSide,
    StencilPiece, StructuredMesh, Theory,
};

/// Integration of the kernel against the shape-function rows on non-singular pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerRule {
    /// Product integration, exact for the polynomial part on every piece.
    Exact,
    /// Gauss–Legendre with the given points per piece away from the anchor; the
    /// two pieces touching the anchor are still integrated exactly.
    GaussLegendre(usize),
}

/// One weighted sample along a convolution line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinePoint {
    /// Element index along the line's axis.
    pub element: usize,
    pub coord: f64,
    pub weight: f64,
}

/// Which part of the line a horizon covers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Coverage {
    /// Exactly `[p − l_A, p + l_B]`, partial elements included.
    #[default]
    Horizon,
    /// The singular element plus `⌈l_A/l_e⌉` whole elements to the left and
    /// `⌊l_B/l_e⌋ − 1` whole elements to the right, clipped at the plate edges.
    ElementCount,
}

/// Length entering the kernel prefactor `l^{α−1}` on each side.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KernelScale {
    /// The boundary-truncated one-sided length.
    #[default]
    Truncated,
    /// The nominal horizon `l_f` everywhere.
    Nominal,
}

/// Parameters of the fractional line operators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineParams {
    pub alpha: f64,
    pub l_f: f64,
    pub inner: InnerRule,
    pub coverage: Coverage,
    pub scale: KernelScale,
}

impl LineParams {
    pub fn new(alpha: f64, l_f: f64) -> Self {
        Self {
            alpha,
            l_f,
            inner: InnerRule::Exact,
            coverage: Coverage::Horizon,
            scale: KernelScale::Truncated,
        }
    }

    pub fn local() -> Self {
        Self::new(1.0, 0.0)
    }
}

/// Sample points and weights such that `D^α f(p) = Σ w·f'(x)` whenever `f'` is a
/// polynomial of degree ≤ `degree` on every element of the horizon.
///
/// At order 1 this is the single point `p` with weight 1.
pub fn line_rule(
    mesh: &StructuredMesh,
    axis: Axis,
    p: f64,
    degree: usize,
    line: &LineParams,
) -> Result<Vec<LinePoint>> {
    let LineParams { alpha, l_f, inner, coverage, scale } = *line;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Argument(format!("order {alpha} outside (0, 1]")));
    }
    if alpha == 1.0 || l_f == 0.0 {
        let (k, _) = mesh.locate_1d(axis, p)?;
        return Ok(vec![LinePoint { element: k, coord: p, weight: 1.0 }]);
    }
    let pieces = match coverage {
        Coverage::Horizon => {
            let anchor = match axis {
                Axis::X => (p, 0.0),
                Axis::Y => (0.0, p),
            };
            let st = horizon_stencil(anchor, axis, l_f, mesh)?;
            st.pieces
                .iter()
                .map(|pc| {
                    let l = if pc.side == PieceSide::Left { st.l_a } else { st.l_b };
                    (*pc, l)
                })
                .collect::<Vec<_>>()
        }
        Coverage::ElementCount => element_count_pieces(mesh, axis, p, l_f)?,
    };
    let nodes: Vec<f64> = match degree {
        0 => vec![0.5],
        d => (0..=d).map(|j| j as f64 / d as f64).collect(),
    };
    let gl = match inner {
        InnerRule::GaussLegendre(n) => Some(gauss_legendre_rule(n)?.mapped(0.0, 1.0)),
        InnerRule::Exact => None,
    };
    let mut out = Vec::new();
    for (piece, l) in pieces {
        let (near, dir) = match piece.side {
            PieceSide::Left => (piece.hi, -1.0),
            PieceSide::Right => (piece.lo, 1.0),
        };
        let l = if scale == KernelScale::Nominal { l_f } else { l };
        let pref = 0.5 * (1.0 - alpha) * l.powf(alpha - 1.0);
        let delta = piece.hi - piece.lo;
        if delta <= 0.0 {
            continue;
        }
        let gap = (near - p).abs();
        // x(τ) = near + dir·Δ·τ, t(τ) = gap + Δ·τ
        let touches = gap <= 1e-12 * delta;
        match (&gl, touches) {
            (Some(rule), false) => {
                for (&tau, &w) in rule.points.iter().zip(&rule.weights) {
                    let t = gap + delta * tau;
                    out.push(LinePoint {
                        element: piece.element,
                        coord: near + dir * delta * tau,
                        weight: pref * delta * w * t.powf(-alpha),
                    });
                }
            }
            _ => {
                let c = if touches { 0.0 } else { gap / delta };
                let w = product_weights(&nodes, c, alpha);
                let scale = pref * delta.powf(1.0 - alpha);
                for (&tau, &wj) in nodes.iter().zip(&w) {
                    out.push(LinePoint {
                        element: piece.element,
                        coord: near + dir * delta * tau,
                        weight: scale * wj,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Pieces and one-sided lengths of the whole-element horizon.
fn element_count_pieces(
    mesh: &StructuredMesh,
    axis: Axis,
    p: f64,
    l_f: f64,
) -> Result<Vec<(StencilPiece, f64)>> {
    let (n, len) = mesh.axis_dims(axis);
    let le = mesh.element_size(axis);
    let (k, _) = mesh.locate_1d(axis, p)?;
    let l_a = l_f.min(p);
    let l_b = l_f.min(len - p);
    let n_a = (l_a / le - 1e-9).ceil().max(0.0) as usize;
    let n_b = (l_b / le + 1e-9).floor().max(0.0) as usize;
    let x0 = mesh.coord(axis, k);
    let x1 = mesh.coord(axis, k + 1);
    let mut out = Vec::new();
    for r in (k.saturating_sub(n_a)..k).rev() {
        let lo = mesh.coord(axis, r);
        out.push((StencilPiece { element: r, lo, hi: lo + le, side: PieceSide::Left }, l_a));
    }
    if l_a > 0.0 {
        out.push((StencilPiece { element: k, lo: x0, hi: p, side: PieceSide::Left }, l_a));
    }
    if l_b > 0.0 {
        out.push((StencilPiece { element: k, lo: p, hi: x1, side: PieceSide::Right }, l_b));
    }
    for r in k + 1..(k + n_b).min(n) {
        let lo = mesh.coord(axis, r);
        out.push((StencilPiece { element: r, lo, hi: lo + le, side: PieceSide::Right }, l_b));
    }
    Ok(out)
}

/// Variable differentiated by a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowVariable {
    /// A bilinear Lagrange component.
    Field(Component),
    /// The Hermite slope `∂w₀/∂(axis)`.
    HermiteSlope(Axis),
}

/// Sparse row over global DOFs, sorted by index with duplicates merged.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseRow {
    pub entries: Vec<(usize, f64)>,
}

impl SparseRow {
    pub fn from_unsorted(mut entries: Vec<(usize, f64)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += v,
                _ => out.push((i, v)),
            }
        }
        Self { entries: out }
    }

    pub fn dot(&self, u: &[f64]) -> f64 {
        self.entries.iter().map(|&(i, v)| v * u[i]).sum()
    }

    pub fn scaled(mut self, s: f64) -> Self {
        self.entries.iter_mut().for_each(|e| e.1 *= s);
        self
    }

    pub fn add(&self, other: &SparseRow) -> SparseRow {
        let mut all = self.entries.clone();
        all.extend_from_slice(&other.entries);
        SparseRow::from_unsorted(all)
    }
}

/// A fractional derivative row at one anchor.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlocalRowOperator {
    pub anchor: (f64, f64),
    pub variable: RowVariable,
    pub direction: Axis,
    pub row: SparseRow,
}

fn element_local(mesh: &StructuredMesh, e: usize, x: f64, y: f64) -> (f64, f64) {
    let (ie, je) = mesh.element_ij(e);
    let x0 = mesh.coord(Axis::X, ie);
    let y0 = mesh.coord(Axis::Y, je);
    (2.0 * (x - x0) / mesh.lex - 1.0, 2.0 * (y - y0) / mesh.ley - 1.0)
}

fn comp_dof(dofs: &DofMap, node: usize, comp: Component) -> Result<usize> {
    dofs.global(node, comp)
        .ok_or_else(|| Error::Argument(format!("{comp:?} is not a DOF of this theory")))
}

fn hermite_dofs(mesh: &StructuredMesh, dofs: &DofMap, e: usize) -> Result<[usize; 16]> {
    if dofs.theory != Theory::Kirchhoff {
        return Err(Error::Argument("Hermite rows need the Kirchhoff DOF layout".into()));
    }
    let conn = mesh.connectivity(e);
    let mut out = [0; 16];
    for (k, &node) in conn.iter().enumerate() {
        for (s, comp) in [Component::W0, Component::Wx, Component::Wy, Component::Wxy]
            .into_iter()
            .enumerate()
        {
            out[4 * k + s] = comp_dof(dofs, node, comp)?;
        }
    }
    Ok(out)
}

/// Local integer-order row: `row · U = D¹_direction(variable)` at `(xi, eta)` of element `e`.
pub fn integer_b_row(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    e: usize,
    (xi, eta): (f64, f64),
    variable: RowVariable,
    direction: Axis,
) -> Result<SparseRow> {
    match variable {
        RowVariable::Field(comp) => {
            if dofs.theory == Theory::Kirchhoff && comp.is_transverse() {
                return Err(Error::Argument(format!("{comp:?} is Hermite-interpolated")));
            }
            let s = lagrange_shape(xi, eta);
            let (d, h) = match direction {
                Axis::X => (0, 0.5 * mesh.lex),
                Axis::Y => (1, 0.5 * mesh.ley),
            };
            let conn = mesh.connectivity(e);
            let mut out = Vec::with_capacity(4);
            for k in 0..4 {
                out.push((comp_dof(dofs, conn[k], comp)?, s.dn[k][d] / h));
            }
            Ok(SparseRow::from_unsorted(out))
        }
        RowVariable::HermiteSlope(inner) => {
            let h = hermite_shape(xi, eta, 0.5 * mesh.lex, 0.5 * mesh.ley);
            let vals = match (inner, direction) {
                (Axis::X, Axis::X) => h.dxx,
                (Axis::Y, Axis::Y) => h.dyy,
                _ => h.dxy,
            };
            let idx = hermite_dofs(mesh, dofs, e)?;
            Ok(SparseRow::from_unsorted(idx.iter().copied().zip(vals).collect()))
        }
    }
}

/// Interpolation row of a Lagrange component or of a Hermite quantity
/// (`W0` value, `Wx`/`Wy` slopes) at `(xi, eta)` of element `e`.
pub fn value_row(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    e: usize,
    (xi, eta): (f64, f64),
    comp: Component,
) -> Result<SparseRow> {
    if dofs.theory == Theory::Kirchhoff && comp.is_transverse() {
        let h = hermite_shape(xi, eta, 0.5 * mesh.lex, 0.5 * mesh.ley);
        let vals = match comp {
            Component::W0 => h.v,
            Component::Wx => h.dx,
            Component::Wy => h.dy,
            Component::Wxy => h.dxy,
            _ => unreachable!("transverse Kirchhoff component"),
        };
        let idx = hermite_dofs(mesh, dofs, e)?;
        return Ok(SparseRow::from_unsorted(idx.iter().copied().zip(vals).collect()));
    }
    let s = lagrange_shape(xi, eta);
    let conn = mesh.connectivity(e);
    let mut out = Vec::with_capacity(4);
    for k in 0..4 {
        out.push((comp_dof(dofs, conn[k], comp)?, s.n[k]));
    }
    Ok(SparseRow::from_unsorted(out))
}

/// Polynomial degree of the integer-order row along a convolution line.
pub fn row_degree(variable: RowVariable) -> usize {
    match variable {
        RowVariable::Field(_) => 0,
        RowVariable::HermiteSlope(_) => 2,
    }
}

/// Fractional row `D^α_direction(variable)` at `anchor`, truncated at the plate edges.
pub fn nonlocal_b_row(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    anchor: (f64, f64),
    variable: RowVariable,
    direction: Axis,
    line: &LineParams,
) -> Result<NonlocalRowOperator> {
    let (x, y) = anchor;
    let (ie, _) = mesh.locate_1d(Axis::X, x)?;
    let (je, _) = mesh.locate_1d(Axis::Y, y)?;
    let p = if direction == Axis::X { x } else { y };
    let pts = line_rule(mesh, direction, p, row_degree(variable), line)?;
    let mut all = Vec::new();
    for lp in pts {
        let (e, (px, py)) = match direction {
            Axis::X => (mesh.element_index(lp.element, je), (lp.coord, y)),
            Axis::Y => (mesh.element_index(ie, lp.element), (x, lp.coord)),
        };
        let local = element_local(mesh, e, px, py);
        let r = integer_b_row(mesh, dofs, e, local, variable, direction)?;
        all.extend(r.entries.into_iter().map(|(i, v)| (i, v * lp.weight)));
    }
    Ok(NonlocalRowOperator { anchor, variable, direction, row: SparseRow::from_unsorted(all) })
}
