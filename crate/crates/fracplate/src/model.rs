//! Material constants, resultant–strain matrices and inertia coefficients.

use crate::error::{arg, Result};
use crate::mesh::Theory;

/// Orthotropic lamina constants with a shear correction factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Material {
    pub e1: f64,
    pub e2: f64,
    pub nu12: f64,
    pub g12: f64,
    pub g13: f64,
    pub g23: f64,
    pub rho: f64,
    pub ks: f64,
}

impl Material {
    pub fn orthotropic(
        e1: f64,
        e2: f64,
        nu12: f64,
        (g12, g13, g23): (f64, f64, f64),
        rho: f64,
        ks: f64,
    ) -> Result<Self> {
        let m = Self { e1, e2, nu12, g12, g13, g23, rho, ks };
        if [e1, e2, g12, g13, g23, rho].iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return arg("moduli and density must be positive");
        }
        if !(ks > 0.0 && ks <= 1.0) {
            return arg(format!("shear correction factor {ks} outside (0, 1]"));
        }
        if !(1.0 - nu12 * m.nu21() > 0.0) {
            return arg(format!("Poisson ratio {nu12} violates 1 - nu12 nu21 > 0"));
        }
        Ok(m)
    }

    /// Reciprocal Poisson ratio `ν₂₁ = ν₁₂·E₂/E₁`.
    pub fn nu21(&self) -> f64 {
        self.nu12 * self.e2 / self.e1
    }
}

/// Isotropic material, `G = E / 2(1+ν)` in all three planes.
pub fn isotropic(e: f64, nu: f64, rho: f64, ks: f64) -> Result<Material> {
    if !(0.0..0.5).contains(&nu) {
        return arg(format!("Poisson ratio {nu} outside [0, 0.5)"));
    }
    let g = e / (2.0 * (1.0 + nu));
    Material::orthotropic(e, e, nu, (g, g, g), rho, ks)
}

/// `S_B` over `{Nxx, Nyy, Nxy, Mxx, Myy, Mxy}` and `S_S` over `{Qyz, Qxz}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstitutiveMatrices {
    pub s_b: [[f64; 6]; 6],
    pub s_s: [[f64; 2]; 2],
}

impl ConstitutiveMatrices {
    /// Membrane block entry `A_ij`, 1-based as in the usual notation (1, 2, 6).
    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.s_b[voigt(i)][voigt(j)]
    }

    /// Bending block entry `D_ij`.
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.s_b[3 + voigt(i)][3 + voigt(j)]
    }
}

fn voigt(i: usize) -> usize {
    match i {
        1 => 0,
        2 => 1,
        6 => 2,
        _ => panic!("no in-plane Voigt index {i}"),
    }
}

pub fn constitutive(m: &Material, h: f64) -> Result<ConstitutiveMatrices> {
    if !(h > 0.0) {
        return arg(format!("thickness {h}"));
    }
    let den = 1.0 - m.nu12 * m.nu21();
    let a11 = m.e1 * h / den;
    let a12 = m.nu12 * m.e2 * h / den;
    let a22 = m.e2 * h / den;
    let a66 = m.g12 * h;
    let f = h * h / 12.0;
    let mut s_b = [[0.0; 6]; 6];
    for (o, s) in [(0, 1.0), (3, f)] {
        s_b[o][o] = a11 * s;
        s_b[o][o + 1] = a12 * s;
        s_b[o + 1][o] = a12 * s;
        s_b[o + 1][o + 1] = a22 * s;
        s_b[o + 2][o + 2] = a66 * s;
    }
    let s_s = [[m.ks * m.g23 * h, 0.0], [0.0, m.ks * m.g13 * h]];
    Ok(ConstitutiveMatrices { s_b, s_s })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InertiaCoeffs {
    pub i0: f64,
    pub i2: f64,
}

pub fn inertia(m: &Material, h: f64) -> Result<InertiaCoeffs> {
    if !(h > 0.0) {
        return arg(format!("thickness {h}"));
    }
    Ok(InertiaCoeffs { i0: m.rho * h, i2: m.rho * h.powi(3) / 12.0 })
}

/// Geometry, material and derived plate coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlateModel {
    pub theory: Theory,
    pub l: f64,
    pub b: f64,
    pub h: f64,
    pub material: Material,
    pub constitutive: ConstitutiveMatrices,
    pub inertia: InertiaCoeffs,
}

impl PlateModel {
    pub fn new(theory: Theory, l: f64, b: f64, h: f64, material: Material) -> Result<Self> {
        if !(l > 0.0 && b > 0.0) {
            return arg(format!("plate dimensions {l} x {b}"));
        }
        Ok(Self {
            theory,
            l,
            b,
            h,
            material,
            constitutive: constitutive(&material, h)?,
            inertia: inertia(&material, h)?,
        })
    }

    pub fn d11(&self) -> f64 {
        self.constitutive.d(1, 1)
    }
}
