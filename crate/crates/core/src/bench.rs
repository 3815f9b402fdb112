//! Repeated-run benchmark campaigns: success rate and mean number of
//! fitness calls over successful runs, per function.
//!
//! Run `i` of a campaign uses seed `base_seed + i`, so every row can be
//! re-derived run by run.

use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::binga::{sga_run_observed, BingaParams};
use crate::ceraf::{sade_ceraf_run_observed, CerafParams};
use crate::de::{de_run_observed, DeParams, LambdaPolicy};
use crate::error::{Error, Result};
use crate::objective::{GenerationRecord, RunResult};
use crate::rng::RandomSource;
use crate::sade::{sade_run_observed, SadeParams};
use crate::testbed::{FunctionId, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    De,
    Sade,
    SadeCeraf,
    Binga,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 4] = [
        AlgorithmId::De,
        AlgorithmId::Sade,
        AlgorithmId::SadeCeraf,
        AlgorithmId::Binga,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::De => "de",
            AlgorithmId::Sade => "sade",
            AlgorithmId::SadeCeraf => "sade-ceraf",
            AlgorithmId::Binga => "binga",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        AlgorithmId::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            Error::config(format!(
                "unknown algorithm `{s}` (expected one of: de, sade, sade-ceraf, binga)"
            ))
        })
    }
}

/// Parameters for every algorithm; a campaign uses the set matching its algorithm.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlgorithmParams {
    pub de: DeParams,
    pub sade: SadeParams,
    pub ceraf: CerafParams,
    pub binga: BingaParams,
}

impl AlgorithmParams {
    /// Keys accepted by [`AlgorithmParams::set`].
    pub const KEYS: &'static [&'static str] = &[
        "pop",
        "f1",
        "f2",
        "lambda",
        "random_weights",
        "cr",
        "mr",
        "radioactivity",
        "local_range",
        "rad",
        "zone_mutation_prob",
        "stagnation_limit",
        "decay",
        "stagnation_tolerance",
        "zone_scope",
        "zone_mutation_rate",
        "bits",
        "crossover_prob",
        "p_bit",
        "elites",
    ];

    /// Applies one `key=value` override. `pop` sets the population size of
    /// every algorithm; `lambda` takes `full` or `random:<p>`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<V: FromStr>(key: &str, value: &str) -> Result<V> {
            value
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("invalid value `{value}` for `{key}`")))
        }
        match key.trim() {
            "pop" => {
                let n: usize = num(key, value)?;
                self.de.pop_size = Some(n);
                self.sade.pop_size = Some(n);
                self.binga.pop_size = Some(n);
            }
            "f1" => self.de.f1 = num(key, value)?,
            "f2" => self.de.f2 = num(key, value)?,
            "lambda" => {
                self.de.lambda = match value.trim() {
                    "full" => LambdaPolicy::Full,
                    v => match v.strip_prefix("random:") {
                        Some(p) => LambdaPolicy::RandomSubset {
                            inclusion: num(key, p)?,
                        },
                        None => return Err(Error::config(format!("invalid lambda policy `{v}`"))),
                    },
                }
            }
            "random_weights" => self.de.random_weights = num(key, value)?,
            "cr" => self.sade.cr = num(key, value)?,
            "mr" => self.sade.mr = num(key, value)?,
            "radioactivity" => self.sade.radioactivity = num(key, value)?,
            "local_range" => self.sade.local_range_fraction = num(key, value)?,
            "rad" => self.ceraf.rad = num(key, value)?,
            "zone_mutation_prob" => self.ceraf.zone_mutation_prob = num(key, value)?,
            "stagnation_limit" => self.ceraf.stagnation_limit = Some(num(key, value)?),
            "decay" => self.ceraf.decay_per_event = num(key, value)?,
            "stagnation_tolerance" => self.ceraf.stagnation_tolerance = num(key, value)?,
            "zone_scope" => self.ceraf.zone_scope = value.parse()?,
            "zone_mutation_rate" => self.ceraf.zone_mutation_rate = num(key, value)?,
            "bits" => self.binga.bits_per_variable = num(key, value)?,
            "crossover_prob" => self.binga.crossover_prob = num(key, value)?,
            "p_bit" => self.binga.p_bit = Some(num(key, value)?),
            "elites" => self.binga.elites = num(key, value)?,
            other => {
                return Err(Error::config(format!(
                    "unknown parameter `{other}` (known: {})",
                    Self::KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    pub fn validate(&self, algorithm: AlgorithmId, dimension: usize) -> Result<()> {
        match algorithm {
            AlgorithmId::De => self.de.validate(),
            AlgorithmId::Sade => self.sade.validate(),
            AlgorithmId::SadeCeraf => self.sade.validate().and_then(|_| self.ceraf.validate()),
            AlgorithmId::Binga => self.binga.validate(dimension),
        }
    }
}

/// One seeded run of `algorithm` on `f`, reporting every generation to `observer`.
pub fn run_single<O>(
    algorithm: AlgorithmId,
    f: &TestFunction<f64>,
    params: &AlgorithmParams,
    max_generations: u32,
    seed: u64,
    observer: O,
) -> Result<RunResult<f64>>
where
    O: FnMut(&GenerationRecord),
{
    let mut rng = RandomSource::new(seed);
    match algorithm {
        AlgorithmId::De => de_run_observed(f, &params.de, max_generations, &mut rng, observer),
        AlgorithmId::Sade => sade_run_observed(f, &params.sade, max_generations, &mut rng, observer),
        AlgorithmId::SadeCeraf => {
            sade_ceraf_run_observed(f, &params.sade, &params.ceraf, max_generations, &mut rng, observer).map(|(r, _)| r)
        }
        AlgorithmId::Binga => sga_run_observed(f, &params.binga, max_generations, &mut rng, observer),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub algorithm: AlgorithmId,
    pub functions: Vec<FunctionId>,
    pub runs: u32,
    pub max_generations: u32,
    pub base_seed: u64,
    pub params: AlgorithmParams,
    /// Worker threads; `0` means one per logical CPU.
    pub jobs: usize,
}

impl BenchmarkConfig {
    pub fn new(algorithm: AlgorithmId, functions: Vec<FunctionId>) -> Self {
        Self {
            algorithm,
            functions,
            runs: 100,
            max_generations: 500,
            base_seed: 0,
            params: AlgorithmParams::default(),
            jobs: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.functions.is_empty() {
            return Err(Error::config("no functions selected"));
        }
        if self.runs == 0 {
            return Err(Error::config("runs must be positive"));
        }
        if self.max_generations == 0 {
            return Err(Error::config("max generations must be positive"));
        }
        for id in &self.functions {
            self.params.validate(self.algorithm, id.dimension())?;
        }
        Ok(())
    }

    /// Seed of run `i`.
    pub fn seed_for(&self, run: u32) -> u64 {
        self.base_seed.wrapping_add(u64::from(run))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub function: FunctionId,
    pub dimension: usize,
    pub algorithm: AlgorithmId,
    pub runs: u32,
    pub successes: u32,
    /// `100 * successes / runs`.
    pub success_rate: f64,
    /// Mean NFC over successful runs; `None` without successes.
    pub avg_nfc_success: Option<f64>,
    pub base_seed: u64,
}

/// Aggregates per-run results into a table row.
pub fn aggregate(
    function: FunctionId,
    algorithm: AlgorithmId,
    base_seed: u64,
    results: &[RunResult<f64>],
) -> BenchmarkRow {
    let runs = results.len() as u32;
    let successful: Vec<u64> = results.iter().filter(|r| r.success).map(|r| r.nfc).collect();
    let successes = successful.len() as u32;
    let avg_nfc_success =
        (!successful.is_empty()).then(|| successful.iter().map(|&n| n as f64).sum::<f64>() / successful.len() as f64);
    BenchmarkRow {
        function,
        dimension: function.dimension(),
        algorithm,
        runs,
        successes,
        success_rate: if runs == 0 {
            0.0
        } else {
            100.0 * f64::from(successes) / f64::from(runs)
        },
        avg_nfc_success,
        base_seed,
    }
}

/// Per-run results of a campaign, grouped by function in config order.
pub fn run_campaign_results(config: &BenchmarkConfig) -> Result<Vec<(FunctionId, Vec<RunResult<f64>>)>> {
    config.validate()?;
    let instances: Vec<TestFunction<f64>> = config.functions.iter().map(|id| id.instance()).collect();
    let tasks: Vec<(usize, u32)> = (0..instances.len())
        .flat_map(|k| (0..config.runs).map(move |i| (k, i)))
        .collect();
    let run_task = |&(k, i): &(usize, u32)| {
        run_single(
            config.algorithm,
            &instances[k],
            &config.params,
            config.max_generations,
            config.seed_for(i),
            |_| {},
        )
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    // Indexed collection keeps task order regardless of completion order.
    let flat: Vec<RunResult<f64>> = pool.install(|| tasks.par_iter().map(run_task).collect::<Result<Vec<_>>>())?;

    let runs = config.runs as usize;
    Ok(config
        .functions
        .iter()
        .zip(flat.chunks(runs))
        .map(|(&id, chunk)| (id, chunk.to_vec()))
        .collect())
}

pub fn run_campaign(config: &BenchmarkConfig) -> Result<Vec<BenchmarkRow>> {
    Ok(run_campaign_results(config)?
        .iter()
        .map(|(id, results)| aggregate(*id, config.algorithm, config.base_seed, results))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "text" | "aligned-text" => Ok(ReportFormat::Text),
            other => Err(Error::config(format!("unknown report format `{other}`"))),
        }
    }
}

pub const CSV_HEADER: &str = "function,dimension,algorithm,runs,success_rate_pct,avg_nfc_success,base_seed";

/// Writes the report. CSV leaves an absent NFC empty; text prints `-`.
pub fn emit_report<W: Write>(rows: &[BenchmarkRow], format: ReportFormat, mut out: W) -> io::Result<()> {
    if rows.is_empty() {
        return Err(io::Error::new(io::ErrorKind::InvalidInput, "no rows to report"));
    }
    match format {
        ReportFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in rows {
                let nfc = r.avg_nfc_success.map(|v| format!("{v:.1}")).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{:.2},{},{}",
                    r.function, r.dimension, r.algorithm, r.runs, r.success_rate, nfc, r.base_seed
                )?;
            }
        }
        ReportFormat::Text => {
            let alg = rows[0].algorithm.name().to_uppercase();
            writeln!(out, "{:<14}{:>4}  {:>8}{:>12}", "Test function", "N", alg, "")?;
            writeln!(out, "{:<14}{:>4}  {:>8}{:>12}", "", "", "SR %", "NFC")?;
            for r in rows {
                let nfc = r
                    .avg_nfc_success
                    .map(|v| format!("{v:.0}"))
                    .unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "{:<14}{:>4}  {:>8.0}{:>12}",
                    r.function.name(),
                    r.dimension,
                    r.success_rate,
                    nfc
                )?;
            }
            let total: u32 = rows.iter().map(|r| r.runs).sum();
            let ok: u32 = rows.iter().map(|r| r.successes).sum();
            writeln!(
                out,
                "{:<14}{:>4}  {:>8.1}{:>12}",
                "Overall",
                "",
                100.0 * f64::from(ok) / f64::from(total.max(1)),
                ""
            )?;
        }
    }
    Ok(())
}

/// [`emit_report`] into a file, creating or truncating it.
pub fn write_report(rows: &[BenchmarkRow], format: ReportFormat, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    let mut w = io::BufWriter::new(file);
    emit_report(rows, format, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}
