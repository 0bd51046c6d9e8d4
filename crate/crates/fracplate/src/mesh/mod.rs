//! Structured Q4 grids, shape functions, DOF numbering and horizon stencils.

mod shape;
mod stencil;

pub use shape::{
    hermite_1d, hermite_shape, lagrange_1d, lagrange_shape, HermiteEval, Hermite1d,
    LagrangeEval,
};
pub use stencil::{horizon_stencil, HorizonStencil, PieceSide, StencilPiece};

use crate::error::{arg, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    Mindlin,
    Kirchhoff,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Mindlin => "mindlin",
            Theory::Kirchhoff => "kirchhoff",
        }
    }

    /// Whether the transverse field uses the C¹ Hermite basis.
    pub fn is_hermite(self) -> bool {
        self == Theory::Kirchhoff
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Nodal unknowns. Hermite slope DOFs are physical derivatives of `w₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    U0,
    V0,
    W0,
    ThetaX,
    ThetaY,
    Wx,
    Wy,
    Wxy,
}

impl Component {
    pub fn is_transverse(self) -> bool {
        !matches!(self, Component::U0 | Component::V0)
    }
}

const MINDLIN: [Component; 5] =
    [Component::U0, Component::V0, Component::W0, Component::ThetaX, Component::ThetaY];
const KIRCHHOFF: [Component; 6] = [
    Component::U0,
    Component::V0,
    Component::W0,
    Component::Wx,
    Component::Wy,
    Component::Wxy,
];

/// Uniform rectangular grid on `[0, L] × [0, B]`.
///
/// Nodes are numbered row by row, `node = j·(Nx+1) + i`; elements likewise.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredMesh {
    pub l: f64,
    pub b: f64,
    pub nx: usize,
    pub ny: usize,
    pub lex: f64,
    pub ley: f64,
}

impl StructuredMesh {
    pub fn new(l: f64, b: f64, nx: usize, ny: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return arg("element counts must be positive");
        }
        if !(l > 0.0 && b > 0.0) || !(l * b).is_finite() {
            return arg(format!("plate dimensions {l} x {b}"));
        }
        Ok(Self { l, b, nx, ny, lex: l / nx as f64, ley: b / ny as f64 })
    }

    pub fn n_nodes(&self) -> usize {
        (self.nx + 1) * (self.ny + 1)
    }

    pub fn n_elements(&self) -> usize {
        self.nx * self.ny
    }

    pub fn node_index(&self, i: usize, j: usize) -> usize {
        j * (self.nx + 1) + i
    }

    pub fn node_ij(&self, node: usize) -> (usize, usize) {
        (node % (self.nx + 1), node / (self.nx + 1))
    }

    pub fn node_coords(&self, node: usize) -> (f64, f64) {
        let (i, j) = self.node_ij(node);
        (self.coord(Axis::X, i), self.coord(Axis::Y, j))
    }

    /// Coordinate of grid line `k` along `axis`; the last line is the exact edge.
    pub fn coord(&self, axis: Axis, k: usize) -> f64 {
        let (n, len) = self.axis_dims(axis);
        if k == n {
            len
        } else {
            k as f64 * len / n as f64
        }
    }

    pub fn axis_dims(&self, axis: Axis) -> (usize, f64) {
        match axis {
            Axis::X => (self.nx, self.l),
            Axis::Y => (self.ny, self.b),
        }
    }

    pub fn element_size(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.lex,
            Axis::Y => self.ley,
        }
    }

    pub fn element_index(&self, ie: usize, je: usize) -> usize {
        je * self.nx + ie
    }

    pub fn element_ij(&self, e: usize) -> (usize, usize) {
        (e % self.nx, e / self.nx)
    }

    /// Global nodes of element `e`, counterclockwise from its lower-left corner.
    pub fn connectivity(&self, e: usize) -> [usize; 4] {
        let (i, j) = self.element_ij(e);
        [
            self.node_index(i, j),
            self.node_index(i + 1, j),
            self.node_index(i + 1, j + 1),
            self.node_index(i, j + 1),
        ]
    }

    /// Element index along `axis` containing coordinate `x`, and the local coordinate in `[-1, 1]`.
    pub fn locate_1d(&self, axis: Axis, x: f64) -> Result<(usize, f64)> {
        let (n, len) = self.axis_dims(axis);
        if !(x >= 0.0 && x <= len) {
            return Err(Error::Domain(format!("{x} outside [0, {len}]")));
        }
        let h = len / n as f64;
        let k = ((x / h).floor() as usize).min(n - 1);
        let x0 = self.coord(axis, k);
        let xi = (2.0 * (x - x0) / h - 1.0).clamp(-1.0, 1.0);
        Ok((k, xi))
    }

    pub fn is_boundary_node(&self, node: usize) -> bool {
        let (i, j) = self.node_ij(node);
        i == 0 || j == 0 || i == self.nx || j == self.ny
    }
}

/// Area Jacobian `(l_ex/2)(l_ey/2)` of the reference map.
pub fn jacobian(mesh: &StructuredMesh) -> f64 {
    0.25 * mesh.lex * mesh.ley
}

/// Line Jacobian along one axis.
pub fn line_jacobian(mesh: &StructuredMesh, axis: Axis) -> f64 {
    0.5 * mesh.element_size(axis)
}

/// Node/component ↔ global DOF numbering, `dof = node·dofs_per_node + slot`.
#[derive(Clone, Debug, PartialEq)]
pub struct DofMap {
    pub theory: Theory,
    pub n_nodes: usize,
    components: &'static [Component],
}

impl DofMap {
    pub fn new(theory: Theory, n_nodes: usize) -> Self {
        let components: &'static [Component] = match theory {
            Theory::Mindlin => &MINDLIN,
            Theory::Kirchhoff => &KIRCHHOFF,
        };
        Self { theory, n_nodes, components }
    }

    pub fn components(&self) -> &'static [Component] {
        self.components
    }

    pub fn dofs_per_node(&self) -> usize {
        self.components.len()
    }

    pub fn n_dofs(&self) -> usize {
        self.n_nodes * self.components.len()
    }

    pub fn slot(&self, comp: Component) -> Option<usize> {
        self.components.iter().position(|&c| c == comp)
    }

    pub fn global(&self, node: usize, comp: Component) -> Option<usize> {
        (node < self.n_nodes).then_some(())?;
        self.slot(comp).map(|s| node * self.components.len() + s)
    }

    pub fn node_component(&self, dof: usize) -> (usize, Component) {
        let d = self.components.len();
        (dof / d, self.components[dof % d])
    }
}

/// Uniform grid and DOF numbering for one plate theory.
pub fn build_mesh(
    l: f64,
    b: f64,
    nx: usize,
    ny: usize,
    theory: Theory,
) -> Result<(StructuredMesh, DofMap)> {
    let mesh = StructuredMesh::new(l, b, nx, ny)?;
    let dofs = DofMap::new(theory, mesh.n_nodes());
    Ok((mesh, dofs))
}
