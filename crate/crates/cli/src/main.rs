use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bczip::calibrate::{measure, CalibrationOptions};
use bczip::codec::{compress_bytes, decompress};
use bczip::cost::Calibration;
use bczip::tradeoff::{gen_pathological, sweep, LevelMapping, LevelRange, SWEEP_CSV_HEADER};
use bczip::{solve_fptas, solve_graph, CostModel, ParseGraph, SolveError, SpaceModel, TimeModel};

#[derive(Parser)]
#[command(name = "bczip", version, about = "Compression under a decode-time budget")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file within a time budget.
    Compress(CompressArgs),
    /// Restore the original bytes from a container.
    Decompress { input: PathBuf, output: PathBuf },
    /// Print one CSV row per compression level.
    Sweep(SweepArgs),
    /// Measure memory latencies and write a calibration file.
    Calibrate(CalibrateArgs),
    /// Write the string `B_0 ... B_m`, `B_i = '$'^(c+i) P`, to stdout.
    GenPathological {
        pattern: String,
        c: usize,
        m: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TimeKind {
    Log,
    Calibrated,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value = "byte-oriented")]
    space_model: SpaceModel,
    #[arg(long, value_enum, default_value = "log")]
    time_model: TimeKind,
    /// Calibration file; implies `--time-model calibrated`.
    #[arg(long)]
    calibration: Option<PathBuf>,
}

#[derive(Args)]
struct CompressArgs {
    input: PathBuf,
    output: PathBuf,
    /// Decode-time budget in ticks.
    #[arg(long, required_unless_present = "level", conflicts_with = "level")]
    time_bound: Option<u64>,
    /// Level in [0, 1]: 0 is the fastest parsing, 1 the smallest.
    #[arg(long)]
    level: Option<f64>,
    /// Use the approximation scheme with this epsilon.
    #[arg(long)]
    epsilon: Option<f64>,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct SweepArgs {
    input: PathBuf,
    #[arg(long, default_value = "0:1:0.1")]
    levels: LevelRange,
    /// Space models to sweep; one CSV block per model.
    #[arg(long, value_delimiter = ',', default_value = "byte-oriented")]
    models: Vec<SpaceModel>,
    #[arg(long, value_enum, default_value = "log")]
    time_model: TimeKind,
    #[arg(long)]
    calibration: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    output: PathBuf,
    /// Working set of the far level in bytes.
    #[arg(long, default_value_t = CalibrationOptions::default().far_bytes)]
    far_bytes: usize,
    /// Timed loads per level.
    #[arg(long, default_value_t = CalibrationOptions::default().accesses)]
    accesses: usize,
}

enum Failure {
    Usage(String),
    Infeasible(String),
    Decode(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::Decode(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Infeasible(m) | Failure::Decode(m) => m,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("{}: {e}", path.display()))
}

fn solve_err(e: SolveError) -> Failure {
    match e {
        SolveError::Infeasible { budget, min_ticks } => Failure::Infeasible(format!(
            "Infeasible: budget={budget} min_ticks={min_ticks}"
        )),
        other => Failure::Usage(other.to_string()),
    }
}

fn time_model(kind: TimeKind, calibration: Option<&Path>) -> Result<TimeModel, Failure> {
    match (kind, calibration) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            let cal = Calibration::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(cal.time_model())
        }
        (TimeKind::Log, None) => Ok(TimeModel::log()),
        (TimeKind::Calibrated, None) => Ok(Calibration::default().time_model()),
    }
}

fn graph_of(text: &[u8], model: CostModel) -> Result<ParseGraph<'_>, Failure> {
    ParseGraph::build(text, model).map_err(|e| Failure::Usage(e.to_string()))
}

fn compress(args: CompressArgs) -> Result<(), Failure> {
    let text = fs::read(&args.input).map_err(io_err(&args.input))?;
    let time = time_model(args.model.time_model, args.model.calibration.as_deref())?;
    let graph = graph_of(&text, CostModel::new(args.model.space_model, time))?;
    let budget = match (args.time_bound, args.level) {
        (Some(t), _) => t,
        (None, Some(level)) if (0.0..=1.0).contains(&level) => LevelMapping::for_graph(&graph).budget(level),
        (None, _) => return Err(Failure::Usage("--level must lie in [0, 1]".into())),
    };
    let report = match args.epsilon {
        Some(eps) => solve_fptas(&graph, budget, eps),
        None => solve_graph(&graph, budget),
    }
    .map_err(solve_err)?;
    let container = compress_bytes(&text, &report.parsing).map_err(|e| Failure::Usage(e.to_string()))?;
    fs::write(&args.output, container).map_err(io_err(&args.output))?;
    println!("{}", report.report_line());
    Ok(())
}

fn decompress_cmd(input: &Path, output: &Path) -> Result<(), Failure> {
    let data = fs::read(input).map_err(io_err(input))?;
    let text = decompress(&data).map_err(|e| Failure::Decode(e.to_string()))?;
    fs::write(output, text).map_err(io_err(output))
}

fn sweep_cmd(args: SweepArgs) -> Result<(), Failure> {
    let text = fs::read(&args.input).map_err(io_err(&args.input))?;
    let time = time_model(args.time_model, args.calibration.as_deref())?;
    let levels = args.levels.levels();
    let mut out = String::new();
    for space in &args.models {
        let graph = graph_of(&text, CostModel::new(*space, time))?;
        let rows = sweep(&graph, &levels).map_err(solve_err)?;
        if args.models.len() > 1 {
            out.push_str(&format!("# space_model={}\n", space.name()));
        }
        out.push_str(SWEEP_CSV_HEADER);
        out.push('\n');
        for row in rows {
            out.push_str(&format!("{row}\n"));
        }
    }
    io::stdout().write_all(out.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
}

fn calibrate_cmd(args: CalibrateArgs) -> Result<(), Failure> {
    let opts = CalibrationOptions {
        far_bytes: args.far_bytes,
        accesses: args.accesses.max(1),
        ..CalibrationOptions::default()
    };
    let m = measure(&opts);
    if !(m.tick_ns.is_finite() && m.tick_ns > 0.0) {
        return Err(Failure::Usage("clock resolution too coarse to measure a tick".into()));
    }
    let cal = m.calibration();
    fs::write(&args.output, cal.to_string()).map_err(io_err(&args.output))?;
    eprintln!(
        "latency_ns={:.2},{:.2},{:.2} tick_ns={:.4}",
        m.latency_ns[0], m.latency_ns[1], m.latency_ns[2], m.tick_ns
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compress(args) => compress(args),
        Command::Decompress { input, output } => decompress_cmd(&input, &output),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Calibrate(args) => calibrate_cmd(args),
        Command::GenPathological { pattern, c, m } => {
            let bytes = gen_pathological(pattern.as_bytes(), c, m).map_err(|e| Failure::Usage(e.to_string()))?;
            io::stdout().write_all(&bytes).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
