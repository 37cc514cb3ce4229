use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclic_jobshop::bench::{self, BenchConfig, BestKnownRegistry, OrderSet};
use cyclic_jobshop::corpus::Corpus;
use cyclic_jobshop::exec::{anneal_seeds, best_of, Execution};
use cyclic_jobshop::instance::{format_time, lower_bound, read_instance, Format, Instance, LoadError};
use cyclic_jobshop::sa::{trace_csv, SaConfig, SaOverrides};
use cyclic_jobshop::schedule::{decode, render_gantt_scaled, validate, GanttFormat, ScheduleDocument};
use cyclic_jobshop::{expand, CyclicInstance};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_USAGE: u8 = 64;

/// Cyclic job-shop scheduling with simulated annealing.
#[derive(Debug, Parser)]
#[command(name = "cjsp", version)]
struct Cli {
    /// Print timings and progress to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance expanded to order k and write the schedule as JSON.
    Solve(SolveArgs),
    /// Write the order-k expansion of an instance in the extended format.
    Expand(ExpandArgs),
    /// Check a schedule JSON against its instance.
    Validate(ValidateArgs),
    /// Run the repetition-versus-cyclic benchmark over a corpus.
    Bench(BenchArgs),
    /// Render a schedule JSON as an SVG or ASCII Gantt chart.
    Gantt(GanttArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Orlib,
    Extended,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Auto => Format::Auto,
            InputFormat::Orlib => Format::OrLib,
            InputFormat::Extended => Format::Extended,
        }
    }
}

#[derive(Debug, Args)]
struct InstanceArgs {
    /// Instance file.
    #[arg(long, short = 'i')]
    instance: PathBuf,
    /// Instance file format.
    #[arg(long, value_enum, default_value = "auto")]
    input_format: InputFormat,
}

#[derive(Debug, Args)]
struct SaArgs {
    /// Config file with `key = value` lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base random seed.
    #[arg(long, env = "CJSP_SEED")]
    seed: Option<u64>,
    /// Number of outer cooling steps (default 3000, 6000 for orders >= 6).
    #[arg(long)]
    steps: Option<u64>,
    /// Swap attempts per temperature (default 3000, 6000 for orders >= 6).
    #[arg(long)]
    steps_per_temp: Option<u64>,
    /// Starting temperature (default 1.0).
    #[arg(long)]
    initial_temperature: Option<f64>,
    /// Multiplicative cooling per outer step, in (0, 1) (default 0.97).
    #[arg(long)]
    cooling_fraction: Option<f64>,
    /// Acceptance scale constant (default 0.01).
    #[arg(long)]
    kt: Option<f64>,
    /// Wall-clock limit per chain, in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl SaArgs {
    fn overrides(&self) -> Result<SaOverrides, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text = read_file(path)?;
                SaOverrides::from_config_text(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
            }
            None => SaOverrides::default(),
        };
        Ok(file.merge(SaOverrides {
            initial_temperature: self.initial_temperature,
            cooling_steps: self.steps,
            cooling_fraction: self.cooling_fraction,
            steps_per_temp: self.steps_per_temp,
            kt: self.kt,
            seed: self.seed,
            time_limit: self.time_limit,
        }))
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InstanceArgs,
    /// Order k: number of times every job is produced.
    #[arg(long, short = 'k', default_value_t = 1)]
    order: usize,
    /// Independent chains (seeds seed..seed+N); the best is kept.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Worker threads for multi-seed runs (1 = sequential).
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    sa: SaArgs,
    /// Write the schedule JSON here instead of stdout.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
    /// Write the best chain's per-step trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    /// Instance file.
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    input_format: InputFormat,
    /// Order k.
    #[arg(long, short = 'k')]
    order: usize,
    /// Output file (stdout when omitted).
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InstanceArgs,
    /// Schedule JSON written by `solve`.
    schedule: PathBuf,
    /// Order to expand to; defaults to the order recorded in the schedule.
    #[arg(long, short = 'k')]
    order: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Md,
    Json,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Corpus directory (uses its manifest.txt when present).
    #[arg(long, default_value = "corpus")]
    dir: PathBuf,
    /// Restrict to these instances (repeatable).
    #[arg(long)]
    instance: Vec<String>,
    /// Orders, e.g. `1,2,4` or `1..10`.
    #[arg(long, default_value = "1,2,4")]
    orders: String,
    /// Seeds per instance and order.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Extra best-known values as `name,best1` CSV.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value = "md")]
    format: ReportFormat,
    /// Worker threads (1 = sequential; default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    sa: SaArgs,
    /// Output file (stdout when omitted).
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GanttArgs {
    /// Schedule JSON written by `solve`.
    schedule: PathBuf,
    /// Plain-text chart instead of SVG.
    #[arg(long, conflicts_with = "svg")]
    ascii: bool,
    /// SVG chart (the default).
    #[arg(long)]
    svg: bool,
    /// Output file (stdout when omitted).
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Config(String),
    Io(String),
    Violations,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Violations => EXIT_VIOLATIONS,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io { .. } => CliError::Io(e.to_string()),
            LoadError::Parse { .. } => CliError::Parse(e.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn load(input: &InstanceArgs) -> Result<Instance, CliError> {
    Ok(read_instance(&input.instance, input.input_format.into())?)
}

fn expand_checked(inst: &Instance, order: usize) -> Result<CyclicInstance, CliError> {
    expand(inst, order).map_err(|e| CliError::Config(e.to_string()))
}

fn execution(workers: Option<usize>) -> Execution {
    workers.map_or_else(Execution::default, Execution::with_workers)
}

fn solve(args: SolveArgs, verbose: u8) -> Result<(), CliError> {
    let inst = load(&args.input)?;
    let cyclic = expand_checked(&inst, args.order)?;
    if args.seeds == 0 {
        return Err(CliError::Config("--seeds must be at least 1".into()));
    }
    let cfg = SaConfig {
        trace: args.trace.is_some(),
        ..args.sa.overrides()?.resolve(args.order)
    };
    let results = anneal_seeds(cyclic.expanded(), &cfg, args.seeds, execution(args.workers))
        .map_err(|e| CliError::Config(e.to_string()))?;
    let best = best_of(&results).expect("at least one seed ran");

    let sched = decode(cyclic.expanded(), &best.best_perm).expect("annealer returns valid permutations");
    let doc = ScheduleDocument::new(&cyclic, &sched);
    emit(args.out.as_deref(), doc.to_json().as_bytes())?;
    if let (Some(path), Some(trace)) = (&args.trace, &best.trace) {
        fs::write(path, trace_csv(trace)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }

    let scale = inst.scale();
    let line = format!(
        "makespan {} (order {}, lower bound {}, seed {})",
        format_time(sched.makespan, scale),
        args.order,
        format_time(lower_bound(cyclic.expanded()), scale),
        best.seed
    );
    if args.out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    if results.iter().any(|r| r.timed_out) {
        eprintln!("warning: time limit reached, reporting the best schedule found so far");
    }
    if verbose > 0 {
        for r in &results {
            eprintln!(
                "seed {}: {} in {:.2}s ({} evaluations)",
                r.seed,
                format_time(r.best_makespan, scale),
                r.elapsed.as_secs_f64(),
                r.evaluations
            );
        }
    }
    Ok(())
}

fn expand_cmd(args: ExpandArgs) -> Result<(), CliError> {
    let inst = read_instance(&args.instance, args.input_format.into())?;
    let cyclic = expand_checked(&inst, args.order)?;
    emit(args.out.as_deref(), cyclic.to_extended().as_bytes())
}

fn validate_cmd(args: ValidateArgs) -> Result<(), CliError> {
    let inst = load(&args.input)?;
    let text = read_file(&args.schedule)?;
    let doc = ScheduleDocument::from_json(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.schedule.display())))?;
    let cyclic = expand_checked(&inst, args.order.unwrap_or(doc.order))?;
    let violations = validate(cyclic.expanded(), &doc.schedule());
    if violations.is_empty() {
        println!(
            "ok: {} operations, makespan {}",
            doc.entries.len(),
            format_time(doc.makespan, inst.scale())
        );
        Ok(())
    } else {
        for v in &violations {
            println!("{v}");
        }
        eprintln!("{} violation(s)", violations.len());
        Err(CliError::Violations)
    }
}

fn bench_cmd(args: BenchArgs, verbose: u8) -> Result<(), CliError> {
    let orders = OrderSet::parse(&args.orders).map_err(CliError::Config)?;
    if args.seeds == 0 {
        return Err(CliError::Config("--seeds must be at least 1".into()));
    }
    let mut corpus = Corpus::from_dir(&args.dir).map_err(|e| match e {
        cyclic_jobshop::corpus::CorpusError::Io { .. } => CliError::Io(e.to_string()),
        cyclic_jobshop::corpus::CorpusError::Manifest { .. } => CliError::Parse(e.to_string()),
    })?;
    if !args.instance.is_empty() {
        corpus = corpus.select(&args.instance).map_err(CliError::Config)?;
    }

    let mut registry = BestKnownRegistry::builtin();
    registry
        .extend_from_corpus(&corpus)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    if let Some(path) = &args.registry {
        registry
            .extend_from_csv(&read_file(path)?)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    }

    let config = BenchConfig {
        orders,
        seeds: args.seeds,
        sa: args.sa.overrides()?,
        execution: execution(args.workers),
    };
    for &k in &config.orders.orders {
        config
            .sa
            .resolve(k)
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }

    let report = bench::run_benchmark(&corpus, &registry, &config);
    let text = match args.format {
        ReportFormat::Csv => bench::to_csv(&report),
        ReportFormat::Md => bench::to_markdown(&report),
        ReportFormat::Json => bench::to_json(&report),
    };
    emit(args.out.as_deref(), text.as_bytes())?;
    for f in &report.failures {
        eprintln!("failed: {} {:?}: {}", f.instance, f.order, f.error);
    }
    if verbose > 0 {
        for r in &report.rows {
            eprintln!("{} order {}: {:.2}s", r.instance, r.order, r.elapsed);
        }
    }
    Ok(())
}

fn gantt_cmd(args: GanttArgs) -> Result<(), CliError> {
    let text = read_file(&args.schedule)?;
    let doc = ScheduleDocument::from_json(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.schedule.display())))?;
    let format = if args.ascii { GanttFormat::Ascii } else { GanttFormat::Svg };
    let bytes = render_gantt_scaled(&doc.schedule(), format, doc.scale).map_err(|e| CliError::Parse(e.to_string()))?;
    emit(args.out.as_deref(), &bytes)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let verbose = cli.verbose;
    let result = match cli.command {
        Command::Solve(a) => solve(a, verbose),
        Command::Expand(a) => expand_cmd(a),
        Command::Validate(a) => validate_cmd(a),
        Command::Bench(a) => bench_cmd(a, verbose),
        Command::Gantt(a) => gantt_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Parse(m) | CliError::Config(m) | CliError::Io(m) => eprintln!("error: {m}"),
                CliError::Violations => {}
            }
            ExitCode::from(e.exit_code())
        }
    }
}
