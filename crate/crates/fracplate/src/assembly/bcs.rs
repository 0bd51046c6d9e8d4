//! Essential boundary conditions on the four plate edges.

use crate::mesh::{Component, DofMap, StructuredMesh, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    /// `x = 0`.
    XMin,
    /// `x = L`.
    XMax,
    /// `y = 0`.
    YMin,
    /// `y = B`.
    YMax,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::XMin, Edge::XMax, Edge::YMin, Edge::YMax];

    fn contains(self, mesh: &StructuredMesh, node: usize) -> bool {
        let (i, j) = mesh.node_ij(node);
        match self {
            Edge::XMin => i == 0,
            Edge::XMax => i == mesh.nx,
            Edge::YMin => j == 0,
            Edge::YMax => j == mesh.ny,
        }
    }

    /// Whether the edge lies at constant `x`.
    pub fn is_x_edge(self) -> bool {
        matches!(self, Edge::XMin | Edge::XMax)
    }
}

/// Standard edge supports applied on all four edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// Every nodal DOF fixed.
    Clamped,
    /// Deflection, tangential displacement and tangential rotation fixed.
    SimplySupported,
    /// As [`BoundaryCondition::SimplySupported`] with the Mindlin tangential rotation left free.
    SimplySupportedSoft,
}

impl BoundaryCondition {
    pub fn code(self) -> &'static str {
        match self {
            BoundaryCondition::Clamped => "CCCC",
            BoundaryCondition::SimplySupported => "SSSS",
            BoundaryCondition::SimplySupportedSoft => "SSSS-soft",
        }
    }

    pub fn constraints(self, theory: Theory) -> BoundaryConditionSet {
        match self {
            BoundaryCondition::Clamped => BoundaryConditionSet::clamped(theory),
            BoundaryCondition::SimplySupported => BoundaryConditionSet::simply_supported(theory, false),
            BoundaryCondition::SimplySupportedSoft => BoundaryConditionSet::simply_supported(theory, true),
        }
    }
}

/// A list of `(edge, component)` pairs to hold at zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundaryConditionSet {
    pub constraints: Vec<(Edge, Component)>,
}

impl BoundaryConditionSet {
    pub fn free() -> Self {
        Self::default()
    }

    pub fn custom(constraints: Vec<(Edge, Component)>) -> Self {
        Self { constraints }
    }

    pub fn clamped(theory: Theory) -> Self {
        let comps = crate::mesh::DofMap::new(theory, 0).components();
        Self {
            constraints: Edge::ALL
                .iter()
                .flat_map(|&e| comps.iter().map(move |&c| (e, c)))
                .collect(),
        }
    }

    pub fn simply_supported(theory: Theory, soft: bool) -> Self {
        use Component::*;
        let mut constraints = Vec::new();
        for e in Edge::ALL {
            let (tangential, rotation) = match (e.is_x_edge(), theory) {
                (true, Theory::Mindlin) => (V0, ThetaY),
                (false, Theory::Mindlin) => (U0, ThetaX),
                (true, Theory::Kirchhoff) => (V0, Wy),
                (false, Theory::Kirchhoff) => (U0, Wx),
            };
            constraints.push((e, W0));
            constraints.push((e, tangential));
            // the Kirchhoff tangential slope follows from w = 0 along the edge
            if !soft || theory == Theory::Kirchhoff {
                constraints.push((e, rotation));
            }
        }
        Self { constraints }
    }

    /// Sorted, deduplicated constrained DOFs.
    pub fn constrained_dofs(&self, mesh: &StructuredMesh, dofs: &DofMap) -> Vec<usize> {
        let mut out = Vec::new();
        for node in (0..mesh.n_nodes()).filter(|&n| mesh.is_boundary_node(n)) {
            for &(edge, comp) in &self.constraints {
                if edge.contains(mesh, node) {
                    if let Some(d) = dofs.global(node, comp) {
                        out.push(d);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
