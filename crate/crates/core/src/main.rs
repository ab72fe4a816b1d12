use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use chamberlab::coxeter::{CoxeterMatrix, CoxeterSystem, GenSet, Side, Word};
use chamberlab::error::{Error, Result};
use chamberlab::geometry::{IncidenceGeometry, ProjectivePlane};
use chamberlab::models::{DeskModel, ModelKind};
use chamberlab::opposition::{
    scan_dualities, verify_fixed_simplex, verify_local_descent, verify_main0, verify_main2_all,
    verify_no_opposite_automorphism, verify_point_displacement, verify_polarities,
};
use chamberlab::report::CheckReport;
use chamberlab::symmetry::{collineation_group, standard_correlation, DualityCoset};

#[derive(Parser)]
#[command(name = "chamberlab", version, about = "Exhaustive opposition checks on small buildings and geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Projective planes.
    Plane {
        #[command(subcommand)]
        action: PlaneAction,
    },
    /// Scans over every map of a kind.
    Scan {
        #[command(subcommand)]
        target: ScanTarget,
    },
    /// Runs an exhaustive verification on a model.
    Verify(VerifyArgs),
    /// Word problem utilities.
    Coxeter(CoxeterArgs),
}

#[derive(Subcommand)]
enum PlaneAction {
    /// Point, line and flag counts of PG(2,q).
    Info {
        #[arg(long)]
        q: u32,
    },
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Size of the worker pool (default: available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Report `elapsed_ms` as 0 so that repeated runs are byte-identical.
    #[arg(long)]
    omit_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum ScanTarget {
    /// Absolute points of every duality of PG(2,q).
    Dualities {
        #[arg(long)]
        q: u32,
        /// Read the plane from a geometry file instead of building PG(2,q).
        #[arg(long)]
        geometry: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Main0,
    Main1,
    Main2,
    Main3,
    Axioms,
    Beukjeeven,
    Baer,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Pg,
    Gq,
    A3,
    Thin,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    q: Option<u32>,
    /// Coxeter type of the thin model.
    #[arg(long = "type", value_parser = ["A2", "B2"])]
    thin_type: Option<String>,
    /// With main0: compare local descent from chamber 0 with the global minimum.
    #[arg(long)]
    local: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoxeterAction {
    Reduce,
    Length,
    Descents,
    Longest,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Args)]
struct CoxeterArgs {
    #[arg(value_enum)]
    action: CoxeterAction,
    /// Coxeter matrix file: the rank, then the rows.
    #[arg(long)]
    matrix: PathBuf,
    /// Letters `stuv…` or comma separated indices.
    #[arg(long, default_value = "")]
    word: String,
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,
    /// Generators of the parabolic subgroup for `longest` (default: all).
    #[arg(long)]
    subset: Option<String>,
    #[arg(long)]
    json: bool,
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Plane { action: PlaneAction::Info { q } } => plane_info(q),
        Command::Scan { target: ScanTarget::Dualities { q, geometry, output } } => {
            init_workers(&output)?;
            scan_plane_dualities(q, geometry, &output)
        }
        Command::Verify(args) => {
            init_workers(&args.output)?;
            verify(&args)
        }
        Command::Coxeter(args) => coxeter(&args),
    }
}

fn init_workers(output: &Output) -> Result<()> {
    if let Some(n) = output.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(())
}

fn emit(report: &mut CheckReport, output: &Output) -> Result<Outcome> {
    if output.omit_timing {
        report.elapsed_ms = 0;
    }
    let text = match output.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    eprintln!(
        "{} {} on {}: {} cases, {} failures",
        if report.passed() { "PASS" } else { "FAIL" },
        report.check,
        report.model,
        report.total,
        report.failures.len()
    );
    Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn plane_info(q: u32) -> Result<Outcome> {
    let plane = ProjectivePlane::new(q)?;
    let g = plane.geometry();
    let info = json!({
        "q": q,
        "points": g.point_count(),
        "lines": g.line_count(),
        "flags": g.flags().len(),
        "parameters": [g.parameters().0, g.parameters().1],
        "gonality": g.gonality(),
    });
    println!("{}", serde_json::to_string_pretty(&info).expect("serializable"));
    Ok(Outcome::Pass)
}

fn scan_plane_dualities(q: u32, geometry: Option<PathBuf>, output: &Output) -> Result<Outcome> {
    let plane = ProjectivePlane::new(q)?;
    let supplied = match &geometry {
        Some(path) => {
            let g = IncidenceGeometry::parse(&read(path)?)?;
            let expected = plane.geometry();
            if g.point_count() != expected.point_count() || g.line_count() != expected.line_count() {
                return Err(Error::InvalidGeometry(format!(
                    "expected {} points and {} lines for q = {q}",
                    expected.point_count(),
                    expected.line_count()
                )));
            }
            Some(g)
        }
        None => None,
    };
    let group = collineation_group(&plane)?;
    let correlation = standard_correlation(&plane);
    let coset = DualityCoset::new(&group, &correlation);
    let target = supplied.as_ref().unwrap_or(plane.geometry());
    let mut scan = scan_dualities(target, q, &coset, &format!("pg{q}"));
    eprintln!("absolute points: dualities");
    for (count, n) in &scan.histogram {
        eprintln!("{count:>4}: {n}");
    }
    for (condition, n) in &scan.conditions {
        eprintln!("order condition {condition}: {n}");
    }
    emit(&mut scan.report, output)
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let kind = match args.model {
        ModelArg::Pg => ModelKind::Pg,
        ModelArg::Gq => ModelKind::Gq,
        ModelArg::A3 => ModelKind::A3,
        ModelArg::Thin => ModelKind::Thin,
    };
    if let Check::Baer = args.check {
        if kind != ModelKind::Pg {
            return Err(Error::Unsupported("the polarity checks need --model pg".into()));
        }
        let mut report = verify_polarities(&ProjectivePlane::new(args.q.unwrap_or(2))?)?;
        return emit(&mut report, &args.output);
    }
    let model = DeskModel::load(kind, args.q, args.thin_type.as_deref())?;
    let mut report = match args.check {
        Check::Main0 if args.local => verify_local_descent(&model),
        Check::Main0 => verify_main0(&model),
        Check::Main1 => verify_no_opposite_automorphism(&model),
        Check::Main2 => verify_main2_all(&model),
        Check::Main3 => {
            let scan = verify_fixed_simplex(&model);
            eprintln!("involutions: {}, fixing no proper residue: {}", scan.involutions, scan.without_fixed_residue);
            scan.report
        }
        Check::Axioms => {
            let mut report = model.twin().verify_twin_axioms(model.name());
            let gate = model.twin().plus().verify_gate_property(model.name());
            report.elapsed_ms += gate.elapsed_ms;
            report.absorb(gate);
            report
        }
        Check::Beukjeeven => {
            let scan = verify_point_displacement(&model)?;
            eprintln!("max-min-displacement {}", scan.max_min_displacement);
            scan.report
        }
        Check::Baer => unreachable!("handled above"),
    };
    emit(&mut report, &args.output)
}

fn coxeter(args: &CoxeterArgs) -> Result<Outcome> {
    let matrix = CoxeterMatrix::parse(&read(&args.matrix)?)?;
    let system = CoxeterSystem::new(matrix);
    let rank = system.rank();
    let word = Word::parse(&args.word, rank)?;
    let (action, result) = match args.action {
        CoxeterAction::Reduce => ("reduce", system.try_reduce(word.letters())?.word().to_string()),
        CoxeterAction::Length => ("length", system.try_reduce(word.letters())?.length().to_string()),
        CoxeterAction::Descents => {
            let side = match args.side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            ("descents", system.descents(&system.try_reduce(word.letters())?, side).to_string())
        }
        CoxeterAction::Longest => {
            let set = match &args.subset {
                Some(text) => Word::parse(text, rank)?.letters().iter().map(|&s| s as usize).collect(),
                None => GenSet::full(rank),
            };
            ("longest", system.longest_element(set)?.word().to_string())
        }
    };
    if args.json {
        println!("{}", json!({ "action": action, "word": word.to_string(), "result": result }));
    } else {
        println!("{result}");
    }
    Ok(Outcome::Pass)
}
