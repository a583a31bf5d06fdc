//! `equidissect`: solve, render and inspect area-prescribed triangulations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equidissect::combo::{enumerate_types, BoundarySymmetry, EnumerateOptions};
use equidissect::degen::InspectOptions;
use equidissect::report::{inspect_report, run_types, solve_report, to_text, type_json, TypeRun};
use equidissect::svg::{render_solution, render_type};
use equidissect::{Error, ProblemFile, SolveConfig, SquareStrategy};

#[derive(Parser)]
#[command(name = "equidissect", version, about = "Triangulations of polygons with prescribed face areas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and print a JSON report.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Attach algebraicity certificates (types with at most 2 interior vertices).
        #[arg(long)]
        certify: bool,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a geometric solution as SVG.
    Render {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Solution index within the type.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Type index, for files with an enumerate directive.
        #[arg(long = "type", default_value_t = 0)]
        type_index: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve, then analyze every diverged path.
    Inspect {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List combinatorial types with `n` boundary and `i` interior vertices.
    EnumerateTypes {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, value_enum, default_value_t = Symmetry::None)]
        symmetry: Symmetry,
        #[arg(long, default_value_t = 3)]
        max_i: usize,
        /// Also write one SVG drawing per type into this directory.
        #[arg(long)]
        svg_dir: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Symmetry {
    None,
    Rotations,
    Dihedral,
}

impl From<Symmetry> for BoundarySymmetry {
    fn from(s: Symmetry) -> Self {
        match s {
            Symmetry::None => BoundarySymmetry::None,
            Symmetry::Rotations => BoundarySymmetry::Rotations,
            Symmetry::Dihedral => BoundarySymmetry::Dihedral,
        }
    }
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for the homotopy constant and any sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest interior vertex count accepted.
    #[arg(long, default_value_t = 3)]
    max_i: usize,
    /// Leftover-equation filter before refinement.
    #[arg(long)]
    tol_filter: Option<f64>,
    /// Newton refinement target on the full system.
    #[arg(long)]
    tol_refine: Option<f64>,
    /// Full-system residual a solution must meet.
    #[arg(long)]
    tol_residual: Option<f64>,
    /// Distance under which two solutions are merged.
    #[arg(long)]
    tol_dedup: Option<f64>,
    /// Imaginary part below which a coordinate is real.
    #[arg(long)]
    tol_real: Option<f64>,
    /// Relative singular-value threshold of the isolation check.
    #[arg(long)]
    tol_rank: Option<f64>,
    /// Residual below which a tracked endpoint counts as converged.
    #[arg(long)]
    tol_converged: Option<f64>,
    /// Coordinate modulus at which a path is declared divergent.
    #[arg(long)]
    tol_divergence: Option<f64>,
    /// Smallest step before a path is declared failed.
    #[arg(long)]
    tol_min_step: Option<f64>,
    /// `|z|` below which a limit point is at infinity.
    #[arg(long)]
    tol_infinity: Option<f64>,
}

impl Common {
    fn solve_config(&self, file: &ProblemFile) -> SolveConfig {
        let mut c = SolveConfig { seed: self.seed, ..SolveConfig::default() };
        if let Some(faces) = &file.square_faces {
            c.square = SquareStrategy::Faces(faces.clone());
        }
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut c.filter_tol, self.tol_filter);
        set(&mut c.refine_tol, self.tol_refine);
        set(&mut c.residual_tol, self.tol_residual);
        set(&mut c.dedup_tol, self.tol_dedup);
        set(&mut c.real_tol, self.tol_real);
        set(&mut c.rank_tol, self.tol_rank);
        set(&mut c.tracker.converged_residual, self.tol_converged);
        set(&mut c.tracker.divergence_threshold, self.tol_divergence);
        set(&mut c.tracker.min_step, self.tol_min_step);
        c
    }

    fn inspect_options(&self, config: &SolveConfig) -> InspectOptions {
        InspectOptions {
            infinity_tol: self.tol_infinity.unwrap_or(InspectOptions::default().infinity_tol),
            divergence_threshold: config.tracker.divergence_threshold,
            imposed_faces: None,
        }
    }
}

/// Errors caused by the input rather than by the computation.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::InvalidPolygon(_)
            | Error::InvalidType(_)
            | Error::MissingArea(_)
            | Error::DimensionMismatch { .. }
            | Error::CapExceeded { .. }
            | Error::Uncovered(_)
    )
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if is_input_error(&e) { 2 } else { 1 }, message: e.to_string() }
    }
}

fn io_failure(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure { code: 1, message: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(file: &PathBuf, common: &Common, certify: bool) -> Result<(Vec<TypeRun>, SolveConfig), Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| io_failure(file, e))?;
    let problem = ProblemFile::parse(&text)?;
    let opts = EnumerateOptions { max_interior: common.max_i, ..EnumerateOptions::default() };
    let instances = problem.instances(&opts)?;
    if let Some(inst) = instances.iter().find(|i| i.ty.interior_count() > common.max_i) {
        return Err(Failure {
            code: 2,
            message: format!(
                "the type has {} interior vertices, above --max-i {}",
                inst.ty.interior_count(),
                common.max_i
            ),
        });
    }
    let config = common.solve_config(&problem);
    Ok((run_types(instances, &config, certify)?, config))
}

/// Exit status: 3 when no type is feasible, 4 when any path failed.
fn status(runs: &[TypeRun]) -> u8 {
    if !runs.is_empty() && runs.iter().all(|r| r.set.infeasible.is_some()) {
        3
    } else if runs.iter().any(|r| r.set.counts.failed > 0) {
        4
    } else {
        0
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve { file, common, certify, output } => {
            let (runs, config) = load(&file, &common, certify)?;
            let infinity = common.inspect_options(&config).infinity_tol;
            emit(&output, &to_text(&solve_report(&runs, common.seed, infinity)?))?;
            Ok(status(&runs))
        }
        Command::Inspect { file, common, output } => {
            let (runs, config) = load(&file, &common, false)?;
            let opts = common.inspect_options(&config);
            emit(&output, &to_text(&inspect_report(&runs, common.seed, &opts)?))?;
            Ok(status(&runs))
        }
        Command::Render { file, common, index, type_index, output } => {
            let (runs, _) = load(&file, &common, false)?;
            let run = runs.get(type_index).ok_or_else(|| Failure {
                code: 1,
                message: format!("type index {type_index} out of range ({} types)", runs.len()),
            })?;
            let sol = run.set.solutions.get(index).ok_or_else(|| Failure {
                code: 1,
                message: format!(
                    "solution index {index} out of range ({} solutions)",
                    run.set.solutions.len()
                ),
            })?;
            let svg = render_solution(&run.instance, sol)
                .map_err(|e| Failure { code: 1, message: format!("solution {index}: {e}") })?;
            emit(&output, &svg)?;
            Ok(0)
        }
        Command::EnumerateTypes { n, i, symmetry, max_i, svg_dir, output } => {
            let opts = EnumerateOptions { max_interior: max_i, symmetry: symmetry.into(), ..Default::default() };
            let types = enumerate_types(n, i, &opts)?;
            if let Some(dir) = &svg_dir {
                std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
                for (k, g) in types.iter().enumerate() {
                    let path = dir.join(format!("type-{:03}.svg", k + 1));
                    std::fs::write(&path, render_type(g)).map_err(|e| io_failure(&path, e))?;
                }
            }
            let v = serde_json::json!({
                "n": n,
                "i": i,
                "count": types.len(),
                "types": types.iter().map(type_json).collect::<Vec<_>>(),
            });
            emit(&output, &to_text(&v))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
