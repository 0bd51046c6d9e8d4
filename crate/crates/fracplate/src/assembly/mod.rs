//! Global stiffness, mass and load assembly with essential boundary conditions.

mod bcs;
mod gauss;
mod load;
mod operators;
mod rows;
mod sparse;
mod tensor;

use std::io::Write;

pub use bcs::{BoundaryCondition, BoundaryConditionSet, Edge};
pub use gauss::{assemble_reference, spec_row};
pub use load::{load_coordinates, load_vector, LoadSpec, PointLoad};
pub use operators::{
    inertia_rows, inertia_terms, stiffness_weights, strain_rows, strain_terms, FieldKind, Func1d,
    RowPart, RowSpec, TensorTerm,
};
pub use rows::{
    integer_b_row, line_rule, nonlocal_b_row, row_degree, value_row, InnerRule, LinePoint,
    Coverage, KernelScale, LineParams, NonlocalRowOperator, RowVariable, SparseRow,
};
pub use sparse::{window_pattern, EquationMap, SymmetricCsr};
pub use tensor::assemble_tensor;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::mesh::{Axis, DofMap, StructuredMesh, Theory};
use crate::model::PlateModel;

/// Which physical fields enter the equation map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FieldSet {
    #[default]
    All,
    Transverse,
    InPlane,
}

impl FieldSet {
    fn admits(self, comp: crate::mesh::Component) -> bool {
        match self {
            FieldSet::All => true,
            FieldSet::Transverse => comp.is_transverse(),
            FieldSet::InPlane => !comp.is_transverse(),
        }
    }
}

/// Choice between the production and the reference assembler.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Assembler {
    #[default]
    Tensor,
    GaussPoint,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AssemblyOptions {
    pub alpha: f64,
    pub l_f: f64,
    pub inner: InnerRule,
    pub coverage: Coverage,
    pub scale: KernelScale,
    /// Outer Gauss points per direction; `None` picks 2 (Mindlin) or 4 (Kirchhoff).
    pub outer_gauss: Option<usize>,
    pub load_gauss: usize,
    pub fields: FieldSet,
    pub assembler: Assembler,
    pub execution: Execution,
}

impl AssemblyOptions {
    pub fn new(alpha: f64, l_f: f64) -> Self {
        Self {
            alpha,
            l_f,
            inner: InnerRule::Exact,
            coverage: Coverage::Horizon,
            scale: KernelScale::Truncated,
            outer_gauss: None,
            load_gauss: 4,
            fields: FieldSet::All,
            assembler: Assembler::Tensor,
            execution: Execution::default(),
        }
    }

    pub fn local() -> Self {
        Self::new(1.0, 0.0)
    }

    pub fn outer_points(&self, theory: Theory) -> usize {
        self.outer_gauss.unwrap_or(match theory {
            Theory::Mindlin => 2,
            Theory::Kirchhoff => 4,
        })
    }

    pub fn line(&self) -> LineParams {
        LineParams {
            alpha: self.alpha,
            l_f: self.l_f,
            inner: self.inner,
            coverage: self.coverage,
            scale: self.scale,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::Argument(format!("order {} outside (0, 1]", self.alpha)));
        }
        if !(self.l_f >= 0.0 && self.l_f.is_finite()) || (self.alpha < 1.0 && self.l_f == 0.0) {
            return Err(Error::Argument(format!("horizon {} invalid", self.l_f)));
        }
        Ok(())
    }

    /// Horizon reach in whole elements along `axis`.
    pub fn reach(&self, mesh: &StructuredMesh, axis: Axis) -> usize {
        if self.alpha == 1.0 {
            0
        } else {
            (self.l_f / mesh.element_size(axis) - 1e-9).ceil().max(0.0) as usize
        }
    }
}

/// Equations left after removing constrained DOFs and excluded fields.
pub fn equation_map(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    bcs: &BoundaryConditionSet,
    fields: FieldSet,
) -> EquationMap {
    let fixed = bcs.constrained_dofs(mesh, dofs);
    EquationMap::retaining(dofs.n_dofs(), |d| {
        fields.admits(dofs.node_component(d).1) && fixed.binary_search(&d).is_err()
    })
}

/// Nonlocal stiffness on the equations of `eqs`.
pub fn assemble_stiffness(
    model: &PlateModel,
    mesh: &StructuredMesh,
    dofs: &DofMap,
    eqs: &EquationMap,
    opts: &AssemblyOptions,
) -> Result<SymmetricCsr> {
    opts.validate()?;
    let reach = (opts.reach(mesh, Axis::X), opts.reach(mesh, Axis::Y));
    let pattern = window_pattern(mesh, dofs, eqs, reach, opts.execution)?;
    let s = stiffness_weights(model);
    let n_gauss = opts.outer_points(model.theory);
    let k = match opts.assembler {
        Assembler::Tensor => assemble_tensor(
            mesh,
            dofs,
            eqs,
            &strain_terms(model.theory),
            &s,
            n_gauss,
            opts.line(),
            pattern,
            opts.execution,
        )?,
        Assembler::GaussPoint => assemble_reference(
            mesh,
            dofs,
            eqs,
            &strain_rows(model.theory),
            &s,
            n_gauss,
            opts.line(),
            pattern,
            opts.execution,
        )?,
    };
    check_finite(&k, "stiffness")?;
    Ok(k)
}

/// Consistent mass on the equations of `eqs`.
pub fn assemble_mass(
    model: &PlateModel,
    mesh: &StructuredMesh,
    dofs: &DofMap,
    eqs: &EquationMap,
    opts: &AssemblyOptions,
) -> Result<SymmetricCsr> {
    let pattern = window_pattern(mesh, dofs, eqs, (0, 0), opts.execution)?;
    let (rows, dens) = inertia_rows(model);
    let n = dens.len();
    let w: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { dens[i] } else { 0.0 }).collect()).collect();
    let n_gauss = opts.outer_points(model.theory).max(if model.theory.is_hermite() { 4 } else { 2 });
    let local = LineParams::local();
    let m = match opts.assembler {
        Assembler::Tensor => assemble_tensor(
            mesh,
            dofs,
            eqs,
            &inertia_terms(model.theory),
            &w,
            n_gauss,
            local,
            pattern,
            opts.execution,
        )?,
        Assembler::GaussPoint => {
            assemble_reference(mesh, dofs, eqs, &rows, &w, n_gauss, local, pattern, opts.execution)?
        }
    };
    check_finite(&m, "mass")?;
    Ok(m)
}

fn check_finite(a: &SymmetricCsr, what: &str) -> Result<()> {
    if a.vals().iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{what} matrix")))
    }
}

/// Reduced stiffness, mass and load of one plate problem.
#[derive(Clone, Debug)]
pub struct AssembledSystem {
    pub theory: Theory,
    pub mesh: StructuredMesh,
    pub dofs: DofMap,
    pub eqs: EquationMap,
    pub k: SymmetricCsr,
    pub m: SymmetricCsr,
    pub f: Vec<f64>,
}

/// Assembles `K`, `M` and `F` directly on the unconstrained equations.
pub fn assemble_system(
    model: &PlateModel,
    nx: usize,
    ny: usize,
    bcs: &BoundaryConditionSet,
    opts: &AssemblyOptions,
    load: &LoadSpec,
) -> Result<AssembledSystem> {
    let (mesh, dofs) = crate::mesh::build_mesh(model.l, model.b, nx, ny, model.theory)?;
    let eqs = equation_map(&mesh, &dofs, bcs, opts.fields);
    let k = assemble_stiffness(model, &mesh, &dofs, &eqs, opts)?;
    let m = assemble_mass(model, &mesh, &dofs, &eqs, opts)?;
    let f = load_vector(&mesh, &dofs, &eqs, load, opts.load_gauss, opts.execution)?;
    Ok(AssembledSystem { theory: model.theory, mesh, dofs, eqs, k, m, f })
}

/// Removes the equations of every DOF constrained by `bcs`. Applying the same
/// set twice changes nothing.
pub fn apply_essential_bcs(
    sys: &AssembledSystem,
    bcs: &BoundaryConditionSet,
) -> Result<AssembledSystem> {
    let fixed = bcs.constrained_dofs(&sys.mesh, &sys.dofs);
    let eqs = sys.eqs.restrict(|d| fixed.binary_search(&d).is_err());
    let keep: Vec<usize> = eqs.dofs().iter().map(|&d| sys.eqs.eq(d).expect("retained")).collect();
    Ok(AssembledSystem {
        theory: sys.theory,
        mesh: sys.mesh.clone(),
        dofs: sys.dofs.clone(),
        k: sys.k.principal_submatrix(&keep)?,
        m: sys.m.principal_submatrix(&keep)?,
        f: keep.iter().map(|&e| sys.f[e]).collect(),
        eqs,
    })
}

/// Writes `a` in Matrix Market coordinate format, lower triangle, 1-based.
pub fn write_matrix_market(w: &mut impl Write, a: &SymmetricCsr) -> std::io::Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real symmetric")?;
    writeln!(w, "{} {} {}", a.n(), a.n(), a.nnz_stored())?;
    for r in 0..a.n() {
        let (cols, vals) = a.row(r);
        for (&c, &v) in cols.iter().zip(vals) {
            writeln!(w, "{} {} {:.17e}", c + 1, r + 1, v)?;
        }
    }
    Ok(())
}
