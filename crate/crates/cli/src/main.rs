use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use realga::bench::{emit_report, run_single, write_report};
use realga::testbed::optima_fixture;
use realga::{AlgorithmId, AlgorithmParams, BenchmarkConfig, Error, FunctionId, GenerationRecord, ReportFormat};

const CONFIG_HELP: &str = "\
Configuration files hold one `key=value` per line; blank lines and lines \
starting with `#` are ignored. Keys are the long flag names (alg, function, \
functions, runs, seed, max-gens, jobs, format, out, trace) or algorithm \
parameters as accepted by --set. Command-line flags override file values, \
and --set overrides parameters from the file.";

#[derive(Debug, Parser)]
#[command(
    name = "realga",
    version,
    about = "Real-coded evolutionary optimizers and their benchmark campaigns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Execute one seeded run and print its result as key=value lines.
    #[command(after_help = CONFIG_HELP)]
    Run(RunArgs),
    /// Execute a campaign of repeated runs and write the summary report.
    #[command(after_help = CONFIG_HELP)]
    Bench(BenchArgs),
    /// Print the test-function catalog (id, dimension, bounds).
    List,
    /// Print the reference optima with the oracle that produced each.
    Optima,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Algorithm: de, sade, sade-ceraf or binga.
    #[arg(long)]
    alg: Option<String>,
    /// Seed (bench: seed of the first run; run i uses seed + i).
    #[arg(long)]
    seed: Option<u64>,
    /// Generation budget after initialization.
    #[arg(long = "max-gens")]
    max_gens: Option<u32>,
    /// Algorithm parameter override, e.g. `--set cr=0.3`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// key=value configuration file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Test function id, e.g. F1 or Hartman2 (case-insensitive).
    #[arg(long)]
    function: Option<String>,
    /// Write a per-generation CSV trace to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated function ids, or `all`.
    #[arg(long)]
    functions: Option<String>,
    /// Independent runs per function.
    #[arg(long)]
    runs: Option<u32>,
    /// Worker threads; 0 uses every logical CPU.
    #[arg(long)]
    jobs: Option<usize>,
    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: csv or text.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("cannot write `{}`: {source}", path.display())]
    Output { path: PathBuf, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Lib(e) if e.is_config_error() => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Settings merged from the config file and the command line.
#[derive(Debug, Default)]
struct Settings {
    values: BTreeMap<String, String>,
    params: Vec<(String, String)>,
}

const SETTING_KEYS: &[&str] = &[
    "alg",
    "function",
    "functions",
    "runs",
    "seed",
    "max-gens",
    "jobs",
    "format",
    "out",
    "trace",
];

impl Settings {
    fn load(common: &CommonArgs) -> CliResult<Self> {
        let mut settings = Settings::default();
        if let Some(path) = &common.config {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read config `{}`: {e}", path.display())))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = split_pair(line)
                    .map_err(|e| CliError::Config(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
                if SETTING_KEYS.contains(&k.as_str()) {
                    settings.values.insert(k, v);
                } else {
                    settings.params.push((k, v));
                }
            }
        }
        for pair in &common.set {
            settings.params.push(split_pair(pair).map_err(CliError::Config)?);
        }
        settings.flag("alg", &common.alg);
        settings.flag("seed", &common.seed);
        settings.flag("max-gens", &common.max_gens);
        Ok(settings)
    }

    fn flag<V: ToString>(&mut self, key: &str, value: &Option<V>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v.to_string());
        }
    }

    fn get<V: FromStr>(&self, key: &str, default: Option<V>) -> CliResult<V> {
        match self.values.get(key) {
            Some(raw) => raw
                .parse()
                .map_err(|_| CliError::Config(format!("invalid value `{raw}` for `{key}`"))),
            None => default.ok_or_else(|| CliError::Config(format!("missing required `--{key}`"))),
        }
    }

    fn params(&self) -> CliResult<AlgorithmParams> {
        let mut params = AlgorithmParams::default();
        for (k, v) in &self.params {
            params.set(k, v)?;
        }
        Ok(params)
    }
}

fn split_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected key=value, got `{s}`")),
    }
}

fn parse_functions(spec: &str) -> CliResult<Vec<FunctionId>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(FunctionId::ALL.to_vec());
    }
    Ok(spec
        .split(',')
        .map(|s| s.parse::<FunctionId>())
        .collect::<realga::Result<Vec<_>>>()?)
}

fn cmd_run(args: RunArgs, out: &mut impl Write) -> CliResult<()> {
    let mut settings = Settings::load(&args.common)?;
    settings.flag("function", &args.function);
    settings.flag("trace", &args.trace.as_ref().map(|p| p.display().to_string()));

    let alg: AlgorithmId = settings.get::<String>("alg", None)?.parse()?;
    let function: FunctionId = settings.get::<String>("function", None)?.parse()?;
    let seed: u64 = settings.get("seed", Some(0))?;
    let max_gens: u32 = settings.get("max-gens", Some(500))?;
    let trace: Option<PathBuf> = settings.values.get("trace").map(PathBuf::from);
    let params = settings.params()?;
    params.validate(alg, function.dimension())?;

    let mut records: Vec<GenerationRecord> = Vec::new();
    let instance = function.instance::<f64>();
    let result = run_single(alg, &instance, &params, max_gens, seed, |r| {
        if trace.is_some() {
            records.push(r.clone());
        }
    })?;

    let point: Vec<String> = result.best_point.iter().map(|v| v.to_string()).collect();
    let text = format!(
        "algorithm={alg}\nfunction={function}\ndimension={}\nseed={}\nsuccess={}\nnfc={}\ngenerations={}\nbest_value={}\nbest_point={}\noptimum={}\n",
        function.dimension(),
        result.seed,
        result.success,
        result.nfc,
        result.generations,
        result.best_value,
        point.join(" "),
        function.reference_optimum(),
    );
    out.write_all(text.as_bytes()).map_err(stdout_err)?;

    if let Some(path) = trace {
        write_trace(&records, alg == AlgorithmId::SadeCeraf, &path)?;
    }
    Ok(())
}

fn trace_csv(records: &[GenerationRecord], with_events: bool) -> String {
    let mut s = String::from("generation,best_value,nfc");
    if with_events {
        s.push_str(",ceraf_event");
    }
    s.push('\n');
    for r in records {
        let _ = write!(s, "{},{},{}", r.generation, r.best_value, r.nfc);
        if with_events {
            let events: Vec<&str> = r.events.iter().map(|e| e.kind.as_str()).collect();
            let _ = write!(s, ",{}", events.join(";"));
        }
        s.push('\n');
    }
    s
}

fn write_trace(records: &[GenerationRecord], with_events: bool, path: &Path) -> CliResult<()> {
    fs::write(path, trace_csv(records, with_events)).map_err(|source| CliError::Output {
        path: path.to_path_buf(),
        source,
    })
}

fn cmd_bench(args: BenchArgs, out: &mut impl Write) -> CliResult<()> {
    let mut settings = Settings::load(&args.common)?;
    settings.flag("functions", &args.functions);
    settings.flag("runs", &args.runs);
    settings.flag("jobs", &args.jobs);
    settings.flag("format", &args.format);
    settings.flag("out", &args.out.as_ref().map(|p| p.display().to_string()));

    let alg: AlgorithmId = settings.get::<String>("alg", None)?.parse()?;
    let functions = parse_functions(&settings.get::<String>("functions", Some("all".into()))?)?;
    let format: ReportFormat = settings.get::<String>("format", Some("csv".into()))?.parse()?;
    let config = BenchmarkConfig {
        algorithm: alg,
        functions,
        runs: settings.get("runs", Some(100))?,
        max_generations: settings.get("max-gens", Some(500))?,
        base_seed: settings.get("seed", Some(0))?,
        params: settings.params()?,
        jobs: settings.get("jobs", Some(0))?,
    };
    let rows = realga::run_campaign(&config)?;
    match settings.values.get("out") {
        Some(path) => write_report(&rows, format, Path::new(path))?,
        None => emit_report(&rows, format, out).map_err(stdout_err)?,
    }
    Ok(())
}

fn cmd_list(out: &mut impl Write) -> CliResult<()> {
    let mut s = String::new();
    for id in FunctionId::ALL {
        let bounds = id.bounds();
        let shown = if bounds.iter().all(|b| *b == bounds[0]) && bounds.len() > 1 {
            format!("[{}, {}]^{}", bounds[0].0, bounds[0].1, bounds.len())
        } else {
            bounds
                .iter()
                .map(|(lo, hi)| format!("[{lo}, {hi}]"))
                .collect::<Vec<_>>()
                .join(" x ")
        };
        let _ = writeln!(s, "{:<10} {:>2}  {shown}", id.name(), id.dimension());
    }
    out.write_all(s.as_bytes()).map_err(stdout_err)
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Output {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args, &mut out),
        Command::Bench(args) => cmd_bench(args, &mut out),
        Command::List => cmd_list(&mut out),
        Command::Optima => out.write_all(optima_fixture().as_bytes()).map_err(stdout_err),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.exit_code() == 1 {
                eprintln!("\nUsage: realga <run|bench|list|optima> [OPTIONS]; see `realga --help`.");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
