//! Study drivers: one assemble/solve pipeline per parameter cell.

use std::time::Instant;

use fracplate::assembly::{assemble_system, AssembledSystem, LoadSpec};
use fracplate::exec::Execution;
use fracplate::mesh::Component;
use fracplate::model::PlateModel;
use fracplate::solve::{
    deflection_parameter, distinct_values, evaluate_field, frequency_parameter, modal_solve,
    static_solve, transverse_modes, ModalOptions, SpdFactor,
};

use crate::config::{StudyConfig, StudyKind};
use crate::error::HarnessError;
use crate::mms::{MmsCase, MMS_CENTRE_VALUE};
use crate::reference;
use crate::report::ReportRow;

/// Successive-refinement threshold of the convergence study.
pub const REFINEMENT_THRESHOLD: f64 = 0.02;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunContext {
    pub execution: Execution,
    /// Print one line per cell to stderr.
    pub verbose: bool,
}

/// One parameter tuple of a study.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub alpha: f64,
    pub lf_frac: Option<f64>,
    pub nx: usize,
    pub ny: usize,
}

/// Cells of a static, modal or validation grid in report order: the local
/// row first, then `l_f`-major.
pub fn grid_cells(cfg: &StudyConfig) -> Vec<Cell> {
    let mut cells = Vec::new();
    if cfg.alphas.contains(&1.0) {
        let (nx, ny) = cfg.local_mesh_for();
        cells.push(Cell { alpha: 1.0, lf_frac: None, nx, ny });
    }
    for &lf in &cfg.lf_fracs {
        for &alpha in cfg.alphas.iter().filter(|&&a| a != 1.0) {
            let (nx, ny) = cfg.mesh_for(lf, cfg.rate);
            cells.push(Cell { alpha, lf_frac: Some(lf), nx, ny });
        }
    }
    cells
}

fn lf_or_zero(cell: &Cell) -> f64 {
    cell.lf_frac.unwrap_or(0.0)
}

/// Assembles one cell with the given load.
pub fn assemble_cell(
    cfg: &StudyConfig,
    model: &PlateModel,
    cell: &Cell,
    load: &LoadSpec,
    ctx: &RunContext,
) -> Result<AssembledSystem, HarnessError> {
    let mut opts = cfg.assembly_options(cell.alpha, lf_or_zero(cell));
    opts.execution = ctx.execution;
    let bcs = cfg.bc().constraints(model.theory);
    Ok(assemble_system(model, cell.nx, cell.ny, &bcs, &opts, load)?)
}

fn centre_deflection(sys: &AssembledSystem, model: &PlateModel) -> Result<f64, HarnessError> {
    let sol = static_solve(sys, None)?;
    Ok(evaluate_field(&sys.mesh, &sys.dofs, &sol.u_full, Component::W0, (0.5 * model.l, 0.5 * model.b))?)
}

fn row(cfg: &StudyConfig, cell: &Cell, quantity: String, value: f64, reference: Option<f64>) -> ReportRow {
    ReportRow {
        theory: cfg.theory(),
        bc: cfg.bc(),
        alpha: cell.alpha,
        lf_frac: cell.lf_frac,
        nx: cell.nx,
        ny: cell.ny,
        quantity,
        value,
        reference,
    }
}

fn log(ctx: &RunContext, cell: &Cell, started: Instant, what: &str) {
    if ctx.verbose {
        eprintln!(
            "alpha={} lf={} mesh={}x{} {what} ({:.1?})",
            cell.alpha,
            cell.lf_frac.map(|l| l.to_string()).unwrap_or_else(|| "-".into()),
            cell.nx,
            cell.ny,
            started.elapsed()
        );
    }
}

/// Static cell: nondimensional centre deflection under the configured pressure.
pub fn static_cell(
    cfg: &StudyConfig,
    model: &PlateModel,
    cell: &Cell,
    ctx: &RunContext,
) -> Result<f64, HarnessError> {
    let t0 = Instant::now();
    let sys = assemble_cell(cfg, model, cell, &LoadSpec::Uniform(cfg.load), ctx)?;
    let w = centre_deflection(&sys, model)?;
    let v = deflection_parameter(model, w, cfg.load)?;
    log(ctx, cell, t0, &format!("w_bar={v:.5}"));
    Ok(v)
}

/// Lowest `count` distinct transverse frequency parameters of one cell.
pub fn modal_cell(
    cfg: &StudyConfig,
    model: &PlateModel,
    cell: &Cell,
    count: usize,
    ctx: &RunContext,
) -> Result<Vec<f64>, HarnessError> {
    let t0 = Instant::now();
    let sys = assemble_cell(cfg, model, cell, &LoadSpec::None, ctx)?;
    let factor = SpdFactor::new(&sys.k)?;
    let mut wanted = 2 * count + 2;
    loop {
        let opts = ModalOptions { n_modes: wanted.min(sys.k.n()), ..ModalOptions::default() };
        let sol = modal_solve(&sys.k, &sys.m, &opts, Some(&factor))?;
        let omegas = sol.omegas();
        let trans: Vec<f64> =
            transverse_modes(&sys, &sol).into_iter().map(|j| frequency_parameter(model, omegas[j])).collect();
        let distinct = distinct_values(&trans, cfg.repeat_tol);
        // the last computed value may belong to an incomplete cluster
        if distinct.len() > count || opts.n_modes == sys.k.n() {
            let out: Vec<f64> = distinct.into_iter().take(count).collect();
            log(ctx, cell, t0, &format!("omega_bar_0={:.5}", out[0]));
            return Ok(out);
        }
        wanted *= 2;
    }
}

/// Centre deflection grid over `(α, l_f)`.
pub fn run_static(cfg: &StudyConfig, ctx: &RunContext) -> Result<Vec<ReportRow>, HarnessError> {
    let model = cfg.model()?;
    grid_cells(cfg)
        .iter()
        .map(|cell| {
            let v = static_cell(cfg, &model, cell, ctx)?;
            let r = reference::static_deflection(cfg.theory(), cfg.bc(), cell.alpha, lf_or_zero(cell));
            Ok(row(cfg, cell, "w_bar".into(), v, r))
        })
        .collect()
}

/// Frequency grid over `(α, l_f)`, `cfg.modes` distinct values per cell.
pub fn run_modal(cfg: &StudyConfig, ctx: &RunContext) -> Result<Vec<ReportRow>, HarnessError> {
    let model = cfg.model()?;
    let mut rows = Vec::new();
    for cell in grid_cells(cfg) {
        let values = modal_cell(cfg, &model, &cell, cfg.modes, ctx)?;
        for (k, v) in values.into_iter().enumerate() {
            let lf = lf_or_zero(&cell);
            let r = if k == 0 {
                reference::fundamental_frequency(cfg.theory(), cfg.bc(), cell.alpha, lf)
            } else {
                reference::mode_frequency(cfg.theory(), cfg.bc(), cell.alpha, lf, k)
            };
            rows.push(row(cfg, &cell, format!("omega_bar_{k}"), v, r));
        }
    }
    Ok(rows)
}

/// Clamped-plate deflection over the rate sweep; after the first rate each
/// cell also reports the percent change from the previous rate.
pub fn run_convergence(cfg: &StudyConfig, ctx: &RunContext) -> Result<Vec<ReportRow>, HarnessError> {
    let model = cfg.model()?;
    let mut rows = Vec::new();
    for &lf in &cfg.lf_fracs {
        for &alpha in &cfg.alphas {
            let mut prev: Option<f64> = None;
            for &n in &cfg.rates {
                let (nx, ny) = cfg.mesh_for(lf, n);
                let cell = Cell { alpha, lf_frac: Some(lf), nx, ny };
                let v = static_cell(cfg, &model, &cell, ctx)?;
                let r = reference::convergence_deflection(cfg.theory(), alpha, lf, n);
                rows.push(row(cfg, &cell, "w_bar".into(), v, r));
                if let Some(p) = prev {
                    rows.push(row(cfg, &cell, "w_bar_change_pct".into(), 100.0 * (v - p).abs() / v, None));
                }
                prev = Some(v);
            }
        }
    }
    Ok(rows)
}

/// Manufactured-solution centre value `100·w` against the published run and
/// against the exact field.
pub fn run_validation(cfg: &StudyConfig, ctx: &RunContext) -> Result<Vec<ReportRow>, HarnessError> {
    let model = cfg.model()?;
    let mut rows = Vec::new();
    for cell in grid_cells(cfg) {
        let t0 = Instant::now();
        // the local operator ignores the horizon
        let l_f = cell.lf_frac.map_or(model.l, |f| f * model.l);
        let case = MmsCase::new(model.clone(), cell.alpha, l_f)?;
        let opts = cfg.assembly_options(cell.alpha, lf_or_zero(&cell));
        let (mesh, _) = fracplate::mesh::build_mesh(model.l, model.b, cell.nx, cell.ny, model.theory)?;
        let load = case.tabulated_load(&mesh, opts.load_gauss)?;
        let sys = assemble_cell(cfg, &model, &cell, &load, ctx)?;
        let w = 100.0 * centre_deflection(&sys, &model)?;
        log(ctx, &cell, t0, &format!("100w={w:.4}"));
        rows.push(row(cfg, &cell, "w100".into(), w, reference::validation_value(cell.alpha, lf_or_zero(&cell))));
        rows.push(row(cfg, &cell, "w100_exact".into(), w, Some(MMS_CENTRE_VALUE)));
    }
    Ok(rows)
}

pub fn run(cfg: &StudyConfig, ctx: &RunContext) -> Result<Vec<ReportRow>, HarnessError> {
    match cfg.study {
        StudyKind::Validate => run_validation(cfg, ctx),
        StudyKind::Converge => run_convergence(cfg, ctx),
        StudyKind::Static => run_static(cfg, ctx),
        StudyKind::Modal => run_modal(cfg, ctx),
    }
}
