//! Fractional-order nonlocal plate finite elements.
//!
//! Mindlin (first-order shear) and Kirchhoff (thin, C¹ Hermite) plates whose
//! strains are Riesz–Caputo derivatives over a finite horizon. The crate builds
//! the nonlocal stiffness, consistent mass and load, applies essential boundary
//! conditions, and solves static and free-vibration problems.
//!
//! Module layout follows the data flow:
//! [`fracops`] (kernel, quadrature, reference operators) → [`mesh`] →
//! [`model`] → [`assembly`] → [`solve`].

pub mod assembly;
pub mod error;
pub mod exec;
pub mod fracops;
pub mod mesh;
pub mod model;
pub mod solve;

pub use error::{Error, Result};
