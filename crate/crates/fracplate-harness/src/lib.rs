//! Study drivers, benchmark tables and manufactured-solution forcing for the
//! `fracplate` solver.

pub mod config;
pub mod error;
pub mod mms;
pub mod reference;
pub mod report;
pub mod studies;

pub use config::StudyConfig;
pub use error::HarnessError;
pub use report::{write_csv, ReportRow};
pub use studies::{run, run_convergence, run_modal, run_static, run_validation, RunContext};
