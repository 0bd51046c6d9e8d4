//! CSV report rows.

use std::io::Write;

use fracplate::assembly::BoundaryCondition;
use fracplate::mesh::Theory;

use crate::error::HarnessError;

pub const CSV_HEADER: [&str; 10] =
    ["theory", "bc", "alpha", "lf_frac", "Nx", "Ny", "quantity", "value", "reference", "pct_error"];

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub theory: Theory,
    pub bc: BoundaryCondition,
    pub alpha: f64,
    /// `None` for local rows, which have no horizon.
    pub lf_frac: Option<f64>,
    pub nx: usize,
    pub ny: usize,
    pub quantity: String,
    pub value: f64,
    pub reference: Option<f64>,
}

impl ReportRow {
    /// Signed percent deviation from the reference.
    pub fn pct_error(&self) -> Option<f64> {
        self.reference.map(|r| 100.0 * (self.value - r) / r)
    }

    pub fn within(&self, rel_tol: f64) -> Option<bool> {
        self.pct_error().map(|e| e.abs() <= 100.0 * rel_tol)
    }

    fn record(&self) -> [String; 10] {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.theory.name().to_string(),
            self.bc.code().to_string(),
            self.alpha.to_string(),
            opt(self.lf_frac),
            self.nx.to_string(),
            self.ny.to_string(),
            self.quantity.clone(),
            self.value.to_string(),
            opt(self.reference),
            self.pct_error().map(|e| format!("{e:.4}")).unwrap_or_default(),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[ReportRow]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
