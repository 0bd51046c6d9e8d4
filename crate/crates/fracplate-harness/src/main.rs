use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fracplate::assembly::{write_matrix_market, LoadSpec};
use fracplate_harness::config::StudyKind;
use fracplate_harness::studies::{assemble_cell, grid_cells};
use fracplate_harness::{run, write_csv, HarnessError, ReportRow, RunContext, StudyConfig};

#[derive(Parser)]
#[command(name = "fracplate", version, about = "Fractional-order nonlocal plate studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Manufactured-solution validation
    Validate(Common),
    /// Mesh convergence sweep
    Converge(Common),
    /// Static deflection grid
    Static(Common),
    /// Natural frequency grid
    Modal(Common),
    /// Write K, M and F of the first configured cell in Matrix Market format
    ExportMatrices(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// CSV file, or directory for `export-matrices`; defaults to the config's output or stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Relative tolerance for the reference comparison summary
    #[arg(long, default_value_t = 0.03)]
    tolerance: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), HarnessError> {
    let (kind, common) = match cmd {
        Command::Validate(c) => (Some(StudyKind::Validate), c),
        Command::Converge(c) => (Some(StudyKind::Converge), c),
        Command::Static(c) => (Some(StudyKind::Static), c),
        Command::Modal(c) => (Some(StudyKind::Modal), c),
        Command::ExportMatrices(c) => (None, c),
    };
    set_threads(common.threads)?;
    let mut cfg = StudyConfig::load(&common.config)?;
    let ctx = RunContext { verbose: true, ..RunContext::default() };
    match kind {
        Some(kind) => {
            if cfg.study != kind {
                eprintln!("note: running the {kind:?} study on a config declared as {:?}", cfg.study);
                cfg.study = kind;
                cfg.validate()?;
            }
            let rows = run(&cfg, &ctx)?;
            summarize(&rows, common.tolerance);
            match common.out.or(cfg.output.clone()) {
                Some(path) => write_csv(create(&path)?, &rows),
                None => write_csv(io::stdout().lock(), &rows),
            }
        }
        None => export(&cfg, &ctx, common.out.as_deref().unwrap_or(Path::new("."))),
    }
}

#[cfg(feature = "parallel")]
fn set_threads(threads: Option<usize>) -> Result<(), HarnessError> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn set_threads(threads: Option<usize>) -> Result<(), HarnessError> {
    if threads.is_some_and(|n| n > 1) {
        eprintln!("note: built without the parallel feature; running on one thread");
    }
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>, HarnessError> {
    File::create(path).map(BufWriter::new).map_err(|e| HarnessError::Io(path.to_path_buf(), e))
}

fn summarize(rows: &[ReportRow], tol: f64) {
    let checked: Vec<&ReportRow> = rows.iter().filter(|r| r.reference.is_some()).collect();
    let misses: Vec<&&ReportRow> = checked.iter().filter(|r| r.within(tol) == Some(false)).collect();
    eprintln!(
        "{} of {} referenced rows within {:.2}%",
        checked.len() - misses.len(),
        checked.len(),
        100.0 * tol
    );
    for r in misses {
        eprintln!(
            "  miss: alpha={} lf={:?} {} = {:.5} vs {:.5} ({:+.2}%)",
            r.alpha,
            r.lf_frac,
            r.quantity,
            r.value,
            r.reference.unwrap_or(f64::NAN),
            r.pct_error().unwrap_or(f64::NAN)
        );
    }
}

fn export(cfg: &StudyConfig, ctx: &RunContext, dir: &Path) -> Result<(), HarnessError> {
    let cell = *grid_cells(cfg).first().ok_or_else(|| HarnessError::Config("no cells configured".into()))?;
    let model = cfg.model()?;
    let sys = assemble_cell(cfg, &model, &cell, &LoadSpec::Uniform(cfg.load), ctx)?;
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::Io(dir.to_path_buf(), e))?;
    for (name, a) in [("K.mtx", &sys.k), ("M.mtx", &sys.m)] {
        let path = dir.join(name);
        let mut w = create(&path)?;
        write_matrix_market(&mut w, a)
            .and_then(|_| w.flush())
            .map_err(|e| HarnessError::Io(path.clone(), e))?;
    }
    let path = dir.join("F.mtx");
    let mut w = create(&path)?;
    let io_err = |e| HarnessError::Io(path.clone(), e);
    writeln!(w, "%%MatrixMarket matrix array real general").map_err(io_err)?;
    writeln!(w, "{} 1", sys.f.len()).map_err(io_err)?;
    for v in &sys.f {
        writeln!(w, "{v:e}").map_err(io_err)?;
    }
    w.flush().map_err(io_err)?;
    eprintln!(
        "wrote {} equations ({}x{} mesh, alpha={}) to {}",
        sys.k.n(),
        cell.nx,
        cell.ny,
        cell.alpha,
        dir.display()
    );
    Ok(())
}
