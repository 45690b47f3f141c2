//! Command-line front end.
//!
//! Exit codes: 0 success, 1 infeasible usage graph (`verify`), 2 unreadable
//! or malformed input, 3 invalid instance or configuration, 4 training
//! divergence. Data goes to `--out` or stdout, diagnostics to stderr.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::fedsim::{preset_instance, run_experiment, ExperimentReport, ExperimentSpec, Method, Preset, TrainConfig};
use crate::graph::{violations, Instance, UsageGraph};
use crate::oracle::{optimal_step, violating_path, MAX_PATH_NODES};
use crate::partition::{min_clique_cover, scc_coalitions};
use crate::selector::{select_all, solve_step};
use format::{
    parse_instance, parse_toml, parse_usage, to_toml, LoadError, PartitionOutput, SelectOutput, SimulateFile,
    VerifyOutput, ViolationRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_DIVERGED: i32 = 4;

#[derive(Parser, Debug, Clone)]
#[command(name = "fedcomp", version, about = "Conflict-free collaborator selection among competing participants")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build the usage graph for an instance.
    Select(SelectArgs),
    /// Check a usage graph against an instance.
    Verify(VerifyArgs),
    /// Clique cover of the non-competing graph and its SCC coalitions.
    Partition(SelectArgs),
    /// Run the synthetic experiment pipeline.
    Simulate(SimulateArgs),
    /// Render a saved experiment report as CSV.
    Report(ReportArgs),
}

/// Where the instance comes from: a file, or a preset with estimated benefits.
#[derive(Args, Debug, Clone)]
pub struct InstanceSource {
    #[arg(long, value_name = "PATH", conflicts_with = "preset", required_unless_present = "preset")]
    pub instance: Option<PathBuf>,
    #[arg(long, value_name = "NAME", value_parser = parse_preset)]
    pub preset: Option<Preset>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct SelectArgs {
    #[command(flatten)]
    pub source: InstanceSource,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: InstanceSource,
    #[arg(long, value_name = "PATH")]
    pub usage: PathBuf,
    /// Also replay the selection and compare each step with the exhaustive optimum.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SimulateArgs {
    #[arg(long, value_name = "NAME", value_parser = parse_preset, conflicts_with = "config", required_unless_present = "config")]
    pub preset: Option<Preset>,
    /// Custom experiment description.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub methods: Option<Vec<Method>>,
    #[arg(long, value_name = "N")]
    pub reps: Option<usize>,
    /// CSV table destination.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Full report with per-repetition records.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    Preset::parse(s).ok_or_else(|| format!("unknown preset '{s}' (expected weak_noniid or strong_noniid)"))
}

/// A failed command: exit code plus a message for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TrainingDiverged { .. } => EXIT_DIVERGED,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(p) => Failure::new(EXIT_PARSE, p.to_string()),
            LoadError::Invalid(e) => e.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(source: &InstanceSource) -> Result<Instance, Failure> {
    match (&source.instance, source.preset) {
        (Some(path), _) => Ok(parse_instance(&read(path)?, &path.display().to_string())?),
        (None, Some(preset)) => Ok(preset_instance(preset, source.seed, &TrainConfig::default())?),
        (None, None) => Err(Failure::new(EXIT_PARSE, "one of --instance or --preset is required")),
    }
}

pub fn run_select(args: &SelectArgs) -> Result<i32, Failure> {
    let instance = load_instance(&args.source)?;
    let (usage, trace) = select_all(&instance);
    emit(args.out.as_deref(), &to_toml(&SelectOutput::new(&usage, &trace)))?;
    Ok(EXIT_OK)
}

fn replay_oracle(instance: &Instance) -> Result<Vec<crate::oracle::OracleVerdict>, Error> {
    let (_, trace) = select_all(instance);
    let mut usage = UsageGraph::identity(instance.n());
    let mut out = Vec::with_capacity(trace.order.len());
    for &i in &trace.order {
        out.push(optimal_step(instance, &usage, i)?);
        solve_step(instance, &mut usage, i);
    }
    Ok(out)
}

pub fn run_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    let instance = load_instance(&args.source)?;
    let path = &args.usage;
    let usage = parse_usage(&read(path)?, &path.display().to_string(), &instance)?;

    let pairs = violations(&instance, &usage);
    let closure_check = pairs.is_empty();
    let path_check = if instance.n() > MAX_PATH_NODES {
        eprintln!(
            "note: n = {} exceeds {MAX_PATH_NODES}, path enumeration skipped; closure check only",
            instance.n()
        );
        "skipped".to_string()
    } else {
        let found = violating_path(&instance, &usage)?;
        if found.is_some() == closure_check {
            return Err(Failure::new(EXIT_INVALID, "closure and path checks disagree"));
        }
        if found.is_none() { "pass" } else { "fail" }.to_string()
    };
    let violations = pairs
        .iter()
        .map(|&(from, to)| ViolationRecord {
            from,
            to,
            path: usage.path(from, to).map(|p| p.nodes).unwrap_or_default(),
        })
        .collect::<Vec<_>>();
    for v in &violations {
        let labels: Vec<String> = v.path.iter().map(|k| format!("v{}", k + 1)).collect();
        eprintln!("violation: v{} reaches competitor v{} via {}", v.from + 1, v.to + 1, labels.join(" -> "));
    }
    let oracle = if !args.oracle {
        Vec::new()
    } else if instance.n() > MAX_PATH_NODES {
        eprintln!("note: n = {} exceeds {MAX_PATH_NODES}, oracle replay skipped", instance.n());
        Vec::new()
    } else {
        replay_oracle(&instance)?
    };
    let report = VerifyOutput {
        feasible: closure_check,
        closure_check,
        path_check,
        violations,
        oracle,
    };
    emit(args.out.as_deref(), &to_toml(&report))?;
    Ok(if closure_check { EXIT_OK } else { EXIT_INFEASIBLE })
}

pub fn run_partition(args: &SelectArgs) -> Result<i32, Failure> {
    let instance = load_instance(&args.source)?;
    let cover = min_clique_cover(&instance);
    let coalitions = scc_coalitions(&instance, &cover);
    let out = PartitionOutput {
        n: instance.n(),
        mode: cover.mode,
        clique_cover: cover.groups,
        scc_coalitions: coalitions.groups,
    };
    emit(args.out.as_deref(), &to_toml(&out))?;
    Ok(EXIT_OK)
}

fn simulate_spec(args: &SimulateArgs) -> Result<ExperimentSpec, Failure> {
    let mut spec = match (args.preset, &args.config) {
        (Some(preset), _) => ExperimentSpec::preset(preset, args.seed),
        (None, Some(path)) => {
            let file: SimulateFile =
                parse_toml(&read(path)?, &path.display().to_string()).map_err(LoadError::Parse)?;
            let synthetic = file.synthetic();
            synthetic.validate()?;
            ExperimentSpec {
                label: "custom".to_string(),
                competing_edges: file.competing()?,
                benefit: file.benefit()?,
                training: file.training.clone(),
                methods: file.methods.clone().unwrap_or_else(|| Method::ALL.to_vec()),
                synthetic,
            }
        }
        (None, None) => return Err(Failure::new(EXIT_PARSE, "one of --preset or --config is required")),
    };
    if let Some(methods) = &args.methods {
        spec.methods = methods.clone();
    }
    if let Some(reps) = args.reps {
        spec.training.repetitions = reps;
    }
    if spec.methods.is_empty() {
        return Err(Failure::new(EXIT_INVALID, "no methods requested"));
    }
    if spec.training.repetitions == 0 {
        return Err(Failure::new(EXIT_INVALID, "--reps must be at least 1"));
    }
    // Validates the competing graph before any training happens.
    let n = spec.synthetic.n;
    Instance::from_edges(n, &spec.competing_edges, &[])?;
    Ok(spec)
}

pub fn run_simulate(args: &SimulateArgs) -> Result<i32, Failure> {
    let spec = simulate_spec(args)?;
    let report = run_experiment(&spec)?;
    if let Some(path) = &args.report {
        emit(Some(path), &to_toml(&report))?;
    }
    emit(args.out.as_deref(), &report.to_csv())?;
    Ok(EXIT_OK)
}

pub fn run_report(args: &ReportArgs) -> Result<i32, Failure> {
    let path = &args.input;
    let report: ExperimentReport =
        parse_toml(&read(path)?, &path.display().to_string()).map_err(LoadError::Parse)?;
    emit(args.out.as_deref(), &report.to_csv())?;
    Ok(EXIT_OK)
}

pub fn run(config: &RunConfig) -> i32 {
    let result = match &config.command {
        Command::Select(a) => run_select(a),
        Command::Verify(a) => run_verify(a),
        Command::Partition(a) => run_partition(a),
        Command::Simulate(a) => run_simulate(a),
        Command::Report(a) => run_report(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Parses arguments and runs; usage errors exit with the parse code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
