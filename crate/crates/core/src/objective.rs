use crate::domain::{RealVector, SearchDomain};
use crate::scalar::Scalar;

/// A minimization target on a box domain with a known optimum value.
pub trait Objective<T: Scalar> {
    fn name(&self) -> &str;

    fn domain(&self) -> &SearchDomain<T>;

    /// Objective value at `x`. `x` has length `self.dimension()`.
    fn evaluate(&self, x: &[T]) -> T;

    /// Known global minimum value `f*`, used by the success criterion.
    fn optimum(&self) -> T;

    fn dimension(&self) -> usize {
        self.domain().dim()
    }
}

impl<T: Scalar, O: Objective<T> + ?Sized> Objective<T> for &O {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn domain(&self) -> &SearchDomain<T> {
        (**self).domain()
    }
    fn evaluate(&self, x: &[T]) -> T {
        (**self).evaluate(x)
    }
    fn optimum(&self) -> T {
        (**self).optimum()
    }
}

/// Objective backed by a closure.
pub struct FnObjective<T, F> {
    name: String,
    domain: SearchDomain<T>,
    optimum: T,
    func: F,
}

impl<T: Scalar, F: Fn(&[T]) -> T> FnObjective<T, F> {
    pub fn new(name: impl Into<String>, domain: SearchDomain<T>, optimum: T, func: F) -> Self {
        Self {
            name: name.into(),
            domain,
            optimum,
            func,
        }
    }
}

impl<T: Scalar, F: Fn(&[T]) -> T> Objective<T> for FnObjective<T, F> {
    fn name(&self) -> &str {
        &self.name
    }
    fn domain(&self) -> &SearchDomain<T> {
        &self.domain
    }
    fn evaluate(&self, x: &[T]) -> T {
        (self.func)(x)
    }
    fn optimum(&self) -> T {
        self.optimum
    }
}

/// Success rule of the benchmark methodology: within 1 % of `|optimum|`, or
/// within an absolute 0.1 when the optimum is zero.
pub fn is_success<T: Scalar>(best_value: T, optimum: T) -> bool {
    let gap = (best_value - optimum).abs();
    if optimum == T::zero() {
        gap < T::lit(0.1)
    } else {
        gap < T::lit(0.01) * optimum.abs()
    }
}

/// Number of objective evaluations ("fitness calls") spent by one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounter {
    count: u64,
}

impl EvalCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub(crate) fn tick(&mut self) {
        self.count += 1;
    }
}

/// Outcome of one optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<T> {
    pub success: bool,
    /// Evaluations consumed when success was detected, or in total on failure.
    pub nfc: u64,
    /// Completed generations after the initial population.
    pub generations: u32,
    pub best_value: T,
    pub best_point: RealVector<T>,
    pub seed: u64,
}

/// Zone bookkeeping events emitted by the CERAF extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZoneEventKind {
    ZoneCreated,
    ZoneShrunk,
    Improvement,
}

impl ZoneEventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ZoneEventKind::ZoneCreated => "zone-created",
            ZoneEventKind::ZoneShrunk => "zone-shrunk",
            ZoneEventKind::Improvement => "improvement",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZoneEvent {
    pub generation: u32,
    pub kind: ZoneEventKind,
    /// Index of the zone concerned; `None` for improvements.
    pub zone: Option<usize>,
    pub best_value: f64,
}

/// Snapshot handed to run observers after every completed generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub generation: u32,
    /// Best objective value found so far.
    pub best_value: f64,
    pub nfc: u64,
    pub events: Vec<ZoneEvent>,
}
