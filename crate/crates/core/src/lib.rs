//! Real-coded evolutionary optimizers for box-constrained multimodal
//! minimization.
//!
//! * [`de`]: Differential Evolution with best-individual attraction.
//! * [`sade`]: the simplified differential GA (mutation + differential
//!   crossover, modified tournament reduction).
//! * [`ceraf`]: SADE extended with decaying "radioactive" zones around local
//!   extremes it has already found.
//! * [`binga`]: a plain binary GA used as a baseline.
//! * [`testbed`]: twenty classic multimodal test functions with reference optima.
//! * [`bench`]: repeated-run campaigns reporting success rate and fitness calls.
//!
//! All algorithms are generic over the floating-point type through [`Scalar`];
//! the aliases at the crate root fix it to `f64`.
//!
//! ```
//! use realga::{de_run, DeParams, FunctionId, RandomSource};
//!
//! let f = FunctionId::Branin.instance::<f64>();
//! let result = de_run(&f, &DeParams::default(), 500, &mut RandomSource::new(7)).unwrap();
//! assert!(result.success);
//! ```

pub mod bench;
pub mod binga;
pub mod ceraf;
pub mod de;
pub mod domain;
pub mod error;
pub mod objective;
pub mod population;
pub mod rng;
pub mod sade;
pub mod scalar;
pub mod testbed;

pub use bench::{run_campaign, AlgorithmId, AlgorithmParams, BenchmarkConfig, BenchmarkRow, ReportFormat};
pub use binga::{sga_run, BingaParams};
pub use ceraf::{sade_ceraf_run, CerafParams};
pub use de::{de_run, DeParams, LambdaPolicy};
pub use domain::clamp_to_domain;
pub use error::{Error, Result};
pub use objective::{is_success, EvalCounter, FnObjective, GenerationRecord, Objective, ZoneEvent, ZoneEventKind};
pub use population::{evaluate_individual, init_population, Provenance};
pub use rng::RandomSource;
pub use sade::{sade_run, SadeParams};
pub use scalar::Scalar;
pub use testbed::{catalog, FunctionId};

pub type RealVector = domain::RealVector<f64>;
pub type SearchDomain = domain::SearchDomain<f64>;
pub type Individual = population::Individual<f64>;
pub type Population = population::Population<f64>;
pub type RunResult = objective::RunResult<f64>;
pub type TestFunction = testbed::TestFunction<f64>;
pub type RadioactiveZone = ceraf::RadioactiveZone<f64>;
pub type CerafState = ceraf::CerafState<f64>;
pub type BinaryEncoding = binga::BinaryEncoding<f64>;
