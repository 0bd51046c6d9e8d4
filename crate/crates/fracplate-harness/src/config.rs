//! Study configuration read from TOML.

use std::path::{Path, PathBuf};

use fracplate::assembly::{AssemblyOptions, BoundaryCondition, Coverage, FieldSet, InnerRule};
use fracplate::mesh::Theory;
use fracplate::model::{isotropic, PlateModel};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StudyKind {
    Validate,
    Converge,
    Static,
    Modal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoryName {
    Mindlin,
    Kirchhoff,
}

impl From<TheoryName> for Theory {
    fn from(t: TheoryName) -> Self {
        match t {
            TheoryName::Mindlin => Theory::Mindlin,
            TheoryName::Kirchhoff => Theory::Kirchhoff,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BcName {
    #[serde(rename = "CCCC")]
    Clamped,
    #[serde(rename = "SSSS")]
    SimplySupported,
    #[serde(rename = "SSSS-soft")]
    SimplySupportedSoft,
}

impl From<BcName> for BoundaryCondition {
    fn from(b: BcName) -> Self {
        match b {
            BcName::Clamped => BoundaryCondition::Clamped,
            BcName::SimplySupported => BoundaryCondition::SimplySupported,
            BcName::SimplySupportedSoft => BoundaryCondition::SimplySupportedSoft,
        }
    }
}

/// Which cells of the horizon the line rule integrates over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StencilName {
    Horizon,
    ElementCount,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldsName {
    All,
    Transverse,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub study: StudyKind,
    pub theory: TheoryName,
    pub bc: BcName,
    pub length: f64,
    pub width: f64,
    pub thickness: f64,
    pub youngs_modulus: f64,
    pub poisson: f64,
    #[serde(default = "one")]
    pub density: f64,
    #[serde(default = "five_sixths")]
    pub shear_correction: f64,
    pub alphas: Vec<f64>,
    /// Horizon lengths as fractions of `length`.
    pub lf_fracs: Vec<f64>,
    /// Dynamic rate: elements per horizon along x.
    pub rate: usize,
    /// Elements per horizon along y; defaults to `rate`.
    #[serde(default)]
    pub rate_y: Option<usize>,
    /// Rates swept by the convergence study.
    #[serde(default = "default_rates")]
    pub rates: Vec<usize>,
    /// Uniform transverse pressure.
    #[serde(default = "one")]
    pub load: f64,
    /// Frequencies reported per modal cell.
    #[serde(default = "one_mode")]
    pub modes: usize,
    /// Relative gap under which two frequencies count as one.
    #[serde(default = "default_repeat_tol")]
    pub repeat_tol: f64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_stencil")]
    pub stencil: StencilName,
    /// Gauss points per horizon piece; 0 integrates the kernel exactly.
    #[serde(default)]
    pub inner_gauss: usize,
    #[serde(default)]
    pub outer_gauss: Option<usize>,
    #[serde(default = "default_fields")]
    pub fields: FieldsName,
    /// Mesh for the local rows of static and modal grids.
    #[serde(default)]
    pub local_mesh: Option<[usize; 2]>,
    /// Mesh for every cell, overriding the dynamic rate.
    #[serde(default)]
    pub mesh: Option<[usize; 2]>,
}

fn one() -> f64 {
    1.0
}
fn five_sixths() -> f64 {
    5.0 / 6.0
}
fn one_mode() -> usize {
    1
}
fn default_rates() -> Vec<usize> {
    vec![4, 8, 10, 12, 16]
}
fn default_repeat_tol() -> f64 {
    1e-6
}
fn default_stencil() -> StencilName {
    StencilName::Horizon
}
fn default_fields() -> FieldsName {
    FieldsName::Transverse
}

impl StudyConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: StudyConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(path.to_path_buf(), e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Square unit plate used by every benchmark table: `h = L/10` (Mindlin) or
    /// `L/100` (Kirchhoff), `E = 30 GPa`.
    pub fn benchmark(study: StudyKind, theory: TheoryName, bc: BcName) -> Self {
        let (thickness, poisson, rate) = match theory {
            TheoryName::Mindlin => (0.1, 0.3, 12),
            TheoryName::Kirchhoff => (0.01, 0.25, 10),
        };
        StudyConfig {
            study,
            theory,
            bc,
            length: 1.0,
            width: 1.0,
            thickness,
            youngs_modulus: 30e9,
            poisson,
            density: 1.0,
            shear_correction: five_sixths(),
            alphas: vec![1.0, 0.9, 0.8, 0.7],
            lf_fracs: vec![0.2, 0.3, 0.4, 0.5],
            rate,
            rate_y: None,
            rates: default_rates(),
            load: 1.0,
            modes: 1,
            repeat_tol: default_repeat_tol(),
            output: None,
            stencil: default_stencil(),
            inner_gauss: 0,
            outer_gauss: None,
            fields: default_fields(),
            local_mesh: None,
            mesh: None,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        for (name, v) in [
            ("length", self.length),
            ("width", self.width),
            ("thickness", self.thickness),
            ("youngs_modulus", self.youngs_modulus),
            ("density", self.density),
            ("shear_correction", self.shear_correction),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if self.alphas.is_empty() || self.lf_fracs.is_empty() {
            return bad("alphas and lf_fracs must be non-empty".into());
        }
        if let Some(a) = self.alphas.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
            return bad(format!("alpha {a} outside (0, 1]"));
        }
        if let Some(l) = self.lf_fracs.iter().find(|&&l| !(l > 0.0 && l <= 0.5)) {
            return bad(format!("lf_frac {l} outside (0, 0.5]"));
        }
        let rates = std::iter::once(self.rate).chain(self.rate_y).chain(self.rates.iter().copied());
        if let Some(n) = rates.clone().find(|&n| n < 4) {
            return bad(format!("dynamic rate {n} below 4"));
        }
        if self.study == StudyKind::Validate && self.theory != TheoryName::Mindlin {
            return bad("validation runs on Mindlin plates".into());
        }
        if self.study == StudyKind::Converge && self.bc != BcName::Clamped {
            return bad("convergence study is defined for clamped plates".into());
        }
        if self.modes == 0 {
            return bad("modes must be at least 1".into());
        }
        if self.inner_gauss > 64 || self.outer_gauss.is_some_and(|n| n == 0 || n > 64) {
            return bad("quadrature orders must lie in 1..=64".into());
        }
        for m in self.mesh.iter().chain(self.local_mesh.iter()) {
            if m[0] == 0 || m[1] == 0 {
                return bad("mesh dimensions must be positive".into());
            }
        }
        Ok(())
    }

    pub fn theory(&self) -> Theory {
        self.theory.into()
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc.into()
    }

    pub fn model(&self) -> Result<PlateModel, HarnessError> {
        let mat = isotropic(self.youngs_modulus, self.poisson, self.density, self.shear_correction)?;
        Ok(PlateModel::new(self.theory(), self.length, self.width, self.thickness, mat)?)
    }

    /// Elements along x and y for horizon `lf_frac·L` at rate `n`.
    pub fn mesh_for(&self, lf_frac: f64, n: usize) -> (usize, usize) {
        if let Some([nx, ny]) = self.mesh {
            return (nx, ny);
        }
        let ny_rate = self.rate_y.unwrap_or(n);
        let l_f = lf_frac * self.length;
        let nx = (n as f64 * self.length / l_f).round() as usize;
        let ny = (ny_rate as f64 * self.width / l_f).round() as usize;
        (nx.max(1), ny.max(1))
    }

    /// Mesh for the local row of a grid.
    pub fn local_mesh_for(&self) -> (usize, usize) {
        if let Some([nx, ny]) = self.mesh.or(self.local_mesh) {
            return (nx, ny);
        }
        let smallest = self.lf_fracs.iter().copied().fold(f64::INFINITY, f64::min);
        self.mesh_for(smallest, self.rate)
    }

    pub fn assembly_options(&self, alpha: f64, lf_frac: f64) -> AssemblyOptions {
        let mut o = if alpha == 1.0 {
            AssemblyOptions::local()
        } else {
            AssemblyOptions::new(alpha, lf_frac * self.length)
        };
        o.coverage = match self.stencil {
            StencilName::Horizon => Coverage::Horizon,
            StencilName::ElementCount => Coverage::ElementCount,
        };
        o.inner = match self.inner_gauss {
            0 => InnerRule::Exact,
            n => InnerRule::GaussLegendre(n),
        };
        o.outer_gauss = self.outer_gauss;
        o.fields = match self.fields {
            FieldsName::All => FieldSet::All,
            FieldsName::Transverse => FieldSet::Transverse,
        };
        o
    }
}
