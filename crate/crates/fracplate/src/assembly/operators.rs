//! Strain and inertia rows of each theory, with their weighting matrices.
//!
//! Two equivalent descriptions are kept: per-anchor rows built from 2D shape
//! functions (reference path) and tensor-product terms over 1D functionals
//! (production path). Tests check that they assemble the same matrices.

use super::rows::RowVariable;
use crate::mesh::{Axis, Component, Theory};
use crate::model::PlateModel;

/// One additive part of a strain row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RowPart {
    /// `coef · D^α_axis(variable)`.
    Frac(RowVariable, Axis, f64),
    /// `coef · (interpolated component)`.
    Value(Component, f64),
}

pub type RowSpec = Vec<RowPart>;

use Component::*;
use RowPart::{Frac, Value};
use RowVariable::{Field, HermiteSlope};

fn membrane_rows() -> Vec<RowSpec> {
    vec![
        vec![Frac(Field(U0), Axis::X, 1.0)],
        vec![Frac(Field(V0), Axis::Y, 1.0)],
        vec![Frac(Field(U0), Axis::Y, 1.0), Frac(Field(V0), Axis::X, 1.0)],
    ]
}

/// Strain rows in the order of the weighting matrix from [`stiffness_weights`].
pub fn strain_rows(theory: Theory) -> Vec<RowSpec> {
    let mut rows = membrane_rows();
    match theory {
        Theory::Mindlin => {
            rows.push(vec![Frac(Field(ThetaX), Axis::X, 1.0)]);
            rows.push(vec![Frac(Field(ThetaY), Axis::Y, 1.0)]);
            rows.push(vec![Frac(Field(ThetaX), Axis::Y, 1.0), Frac(Field(ThetaY), Axis::X, 1.0)]);
            rows.push(vec![Frac(Field(W0), Axis::Y, 1.0), Value(ThetaY, -1.0)]);
            rows.push(vec![Frac(Field(W0), Axis::X, 1.0), Value(ThetaX, -1.0)]);
        }
        Theory::Kirchhoff => {
            rows.push(vec![Frac(HermiteSlope(Axis::X), Axis::X, 1.0)]);
            rows.push(vec![Frac(HermiteSlope(Axis::Y), Axis::Y, 1.0)]);
            rows.push(vec![
                Frac(HermiteSlope(Axis::X), Axis::Y, 1.0),
                Frac(HermiteSlope(Axis::Y), Axis::X, 1.0),
            ]);
        }
    }
    rows
}

/// Resultant–strain matrix matching [`strain_rows`].
pub fn stiffness_weights(model: &PlateModel) -> Vec<Vec<f64>> {
    let c = &model.constitutive;
    let n = match model.theory {
        Theory::Mindlin => 8,
        Theory::Kirchhoff => 6,
    };
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..6 {
        s[i][..6].copy_from_slice(&c.s_b[i]);
    }
    if n == 8 {
        for i in 0..2 {
            s[6 + i][6..8].copy_from_slice(&c.s_s[i]);
        }
    }
    s
}

/// Inertia rows (interpolated quantities) and their diagonal densities.
pub fn inertia_rows(model: &PlateModel) -> (Vec<RowSpec>, Vec<f64>) {
    let (i0, i2) = (model.inertia.i0, model.inertia.i2);
    let comps = match model.theory {
        Theory::Mindlin => [U0, V0, W0, ThetaX, ThetaY],
        Theory::Kirchhoff => [U0, V0, W0, Wx, Wy],
    };
    let rows = comps.iter().map(|&c| vec![Value(c, 1.0)]).collect();
    (rows, vec![i0, i0, i0, i2, i2])
}

/// 1D functional evaluated at an outer quadrature point along one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func1d {
    LagVal,
    LagFrac,
    HerVal,
    HerD1,
    /// Fractional derivative of the first derivative.
    HerFrac1,
    /// Fractional derivative of the second derivative.
    HerFrac2,
}

impl Func1d {
    pub fn is_hermite(self) -> bool {
        !matches!(self, Func1d::LagVal | Func1d::LagFrac)
    }
}

/// Interpolation family of a DOF block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Lagrange(Component),
    Hermite,
}

/// `coef · field ⊗ (fx along x) ⊗ (fy along y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorTerm {
    pub field: FieldKind,
    pub coef: f64,
    pub fx: Func1d,
    pub fy: Func1d,
}

fn lag(c: Component, coef: f64, fx: Func1d, fy: Func1d) -> TensorTerm {
    TensorTerm { field: FieldKind::Lagrange(c), coef, fx, fy }
}

fn her(coef: f64, fx: Func1d, fy: Func1d) -> TensorTerm {
    TensorTerm { field: FieldKind::Hermite, coef, fx, fy }
}

/// Tensor-product form of [`strain_rows`].
pub fn strain_terms(theory: Theory) -> Vec<Vec<TensorTerm>> {
    use Func1d::*;
    let mut rows = vec![
        vec![lag(U0, 1.0, LagFrac, LagVal)],
        vec![lag(V0, 1.0, LagVal, LagFrac)],
        vec![lag(U0, 1.0, LagVal, LagFrac), lag(V0, 1.0, LagFrac, LagVal)],
    ];
    match theory {
        Theory::Mindlin => {
            rows.push(vec![lag(ThetaX, 1.0, LagFrac, LagVal)]);
            rows.push(vec![lag(ThetaY, 1.0, LagVal, LagFrac)]);
            rows.push(vec![lag(ThetaX, 1.0, LagVal, LagFrac), lag(ThetaY, 1.0, LagFrac, LagVal)]);
            rows.push(vec![lag(W0, 1.0, LagVal, LagFrac), lag(ThetaY, -1.0, LagVal, LagVal)]);
            rows.push(vec![lag(W0, 1.0, LagFrac, LagVal), lag(ThetaX, -1.0, LagVal, LagVal)]);
        }
        Theory::Kirchhoff => {
            rows.push(vec![her(1.0, HerFrac2, HerVal)]);
            rows.push(vec![her(1.0, HerVal, HerFrac2)]);
            rows.push(vec![her(1.0, HerD1, HerFrac1), her(1.0, HerFrac1, HerD1)]);
        }
    }
    rows
}

/// Tensor-product form of [`inertia_rows`].
pub fn inertia_terms(theory: Theory) -> Vec<Vec<TensorTerm>> {
    use Func1d::*;
    match theory {
        Theory::Mindlin => [U0, V0, W0, ThetaX, ThetaY]
            .iter()
            .map(|&c| vec![lag(c, 1.0, LagVal, LagVal)])
            .collect(),
        Theory::Kirchhoff => vec![
            vec![lag(U0, 1.0, LagVal, LagVal)],
            vec![lag(V0, 1.0, LagVal, LagVal)],
            vec![her(1.0, HerVal, HerVal)],
            vec![her(1.0, HerD1, HerVal)],
            vec![her(1.0, HerVal, HerD1)],
        ],
    }
}
