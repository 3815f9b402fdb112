//! Reference binary-coded GA: fixed-point encoding, bit-flip mutation,
//! one-point crossover, roulette parent sampling and elitist truncation.
//!
//! Kept as the baseline the real-coded methods are compared against; it is
//! not tuned.

use std::cmp::Ordering;

use crate::domain::{RealVector, SearchDomain};
use crate::error::{Error, Result};
use crate::objective::{is_success, EvalCounter, GenerationRecord, Objective, RunResult};
use crate::population::{default_pop_size, evaluate_individual, Individual, Provenance};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![true; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl std::str::FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::contract(format!("invalid bit `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bitstring)
    }
}

impl std::fmt::Display for Bitstring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Fixed-width quantization of each coordinate: code `k` maps to
/// `lower + k * (upper - lower) / (2^bits - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryEncoding<T> {
    bits_per_variable: u32,
    domain: SearchDomain<T>,
}

impl<T: Scalar> BinaryEncoding<T> {
    pub fn new(bits_per_variable: u32, domain: SearchDomain<T>) -> Result<Self> {
        if !(1..=52).contains(&bits_per_variable) {
            return Err(Error::config(format!(
                "bits per variable must lie in 1..=52, got {bits_per_variable}"
            )));
        }
        Ok(Self {
            bits_per_variable,
            domain,
        })
    }

    pub fn bits_per_variable(&self) -> u32 {
        self.bits_per_variable
    }

    pub fn domain(&self) -> &SearchDomain<T> {
        &self.domain
    }

    /// Total string length.
    pub fn len(&self) -> usize {
        self.bits_per_variable as usize * self.domain.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn max_code(&self) -> u64 {
        (1u64 << self.bits_per_variable) - 1
    }

    /// Quantization step of coordinate `j`.
    pub fn step(&self, j: usize) -> T {
        self.domain.range(j) / T::lit(self.max_code() as f64)
    }

    pub fn encode(&self, x: &[T]) -> Result<Bitstring> {
        self.domain.check_dim(x.len())?;
        let width = self.bits_per_variable as usize;
        let max = self.max_code();
        let mut bits = Vec::with_capacity(self.len());
        for (j, &xj) in x.iter().enumerate() {
            let rel = ((xj - self.domain.lower()[j]) / self.step(j)).round().as_f64();
            let code = if rel.is_nan() || rel <= 0.0 {
                0
            } else {
                (rel as u64).min(max)
            };
            bits.extend((0..width).rev().map(|b| (code >> b) & 1 == 1));
        }
        Ok(Bitstring(bits))
    }

    pub fn decode(&self, s: &Bitstring) -> Result<RealVector<T>> {
        if s.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: s.len(),
            });
        }
        let width = self.bits_per_variable as usize;
        let max = self.max_code();
        let coords =
            s.0.chunks(width)
                .enumerate()
                .map(|(j, chunk)| {
                    let code = chunk.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
                    let (lo, hi) = (self.domain.lower()[j], self.domain.upper()[j]);
                    if code == max {
                        hi
                    } else {
                        (lo + T::lit(code as f64) * self.step(j)).min(hi)
                    }
                })
                .collect();
        Ok(RealVector::from_vec_unchecked(coords))
    }
}

/// Flips each bit independently with probability `p_bit`.
pub fn bit_mutate(s: &Bitstring, p_bit: f64, rng: &mut RandomSource) -> Bitstring {
    Bitstring(s.0.iter().map(|&b| b ^ rng.bernoulli(p_bit)).collect())
}

/// Swaps the tails of `a` and `b` after position `cut` (`1 <= cut < len`).
pub fn crossover_at(a: &Bitstring, b: &Bitstring, cut: usize) -> Result<(Bitstring, Bitstring)> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if cut == 0 || cut >= a.len() {
        return Err(Error::contract(format!("cut {cut} outside 1..{}", a.len())));
    }
    let mut c1 = a.0[..cut].to_vec();
    c1.extend_from_slice(&b.0[cut..]);
    let mut c2 = b.0[..cut].to_vec();
    c2.extend_from_slice(&a.0[cut..]);
    Ok((Bitstring(c1), Bitstring(c2)))
}

/// One-point crossover at a uniform cut in `1..len`.
pub fn one_point_crossover(a: &Bitstring, b: &Bitstring, rng: &mut RandomSource) -> Result<(Bitstring, Bitstring)> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::contract("crossover needs strings of length at least 2"));
    }
    let cut = 1 + rng.index(a.len() - 1);
    crossover_at(a, b, cut)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BingaParams {
    pub bits_per_variable: u32,
    pub crossover_prob: f64,
    /// Per-bit flip probability; `None` means `1 / string length`.
    pub p_bit: Option<f64>,
    /// Best parents carried over unchanged each generation.
    pub elites: usize,
    /// `None` means `10 n`.
    pub pop_size: Option<usize>,
}

impl Default for BingaParams {
    fn default() -> Self {
        Self {
            bits_per_variable: 16,
            crossover_prob: 0.7,
            p_bit: None,
            elites: 1,
            pop_size: None,
        }
    }
}

impl BingaParams {
    pub fn pop_size_for(&self, dimension: usize) -> usize {
        self.pop_size.unwrap_or_else(|| default_pop_size(dimension))
    }

    pub fn validate(&self, dimension: usize) -> Result<()> {
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return Err(Error::config("crossover probability must lie in [0, 1]"));
        }
        if matches!(self.p_bit, Some(p) if !(0.0..=1.0).contains(&p)) {
            return Err(Error::config("bit flip probability must lie in [0, 1]"));
        }
        let pop = self.pop_size_for(dimension);
        if pop < 2 {
            return Err(Error::config("binary GA needs a population of at least 2"));
        }
        if self.elites >= pop {
            return Err(Error::config("elite count must be below the population size"));
        }
        if self.bits_per_variable as usize * dimension < 2 {
            return Err(Error::config("encoded strings must have at least 2 bits"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Member<T> {
    code: Bitstring,
    ind: Individual<T>,
}

fn by_fitness<T: Scalar>(a: &Member<T>, b: &Member<T>) -> Ordering {
    a.ind
        .fitness_or_inf()
        .partial_cmp(&b.ind.fitness_or_inf())
        .unwrap_or(Ordering::Equal)
}

/// Roulette weights for minimization: `f_max - f_i`, plus a small floor so
/// the worst member keeps a non-zero chance.
fn roulette_weights<T: Scalar>(members: &[Member<T>]) -> Vec<f64> {
    let values: Vec<f64> = members.iter().map(|m| m.ind.fitness_or_inf().as_f64()).collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let floor = 1e-3 * (max - min).max(f64::MIN_POSITIVE);
    values.iter().map(|v| max - v + floor).collect()
}

fn sample_roulette(weights: &[f64], total: f64, rng: &mut RandomSource) -> usize {
    let mut target = rng.uniform() * total;
    for (i, &w) in weights.iter().enumerate() {
        if target < w {
            return i;
        }
        target -= w;
    }
    weights.len() - 1
}

pub fn sga_run<T, F>(f: &F, params: &BingaParams, max_generations: u32, rng: &mut RandomSource) -> Result<RunResult<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    sga_run_observed(f, params, max_generations, rng, |_| {})
}

/// Generational binary GA with a callback after every generation.
///
/// Each generation creates `pop` children from roulette-sampled parent pairs
/// (crossover with `crossover_prob`, then bit mutation), evaluates them, and
/// keeps the `elites` best parents plus the best children.
pub fn sga_run_observed<T, F, O>(
    f: &F,
    params: &BingaParams,
    max_generations: u32,
    rng: &mut RandomSource,
    mut observer: O,
) -> Result<RunResult<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
    O: FnMut(&GenerationRecord),
{
    if max_generations == 0 {
        return Err(Error::contract("max_generations must be at least 1"));
    }
    let dim = f.dimension();
    params.validate(dim)?;
    let enc = BinaryEncoding::new(params.bits_per_variable, f.domain().clone())?;
    let pop_size = params.pop_size_for(dim);
    let p_bit = params.p_bit.unwrap_or(1.0 / enc.len() as f64);
    let mut counter = EvalCounter::new();

    let mut pop = Vec::with_capacity(pop_size);
    for _ in 0..pop_size {
        let code = Bitstring((0..enc.len()).map(|_| rng.bernoulli(0.5)).collect());
        let mut ind = Individual::new(enc.decode(&code)?, Provenance::Initial);
        evaluate_individual(&mut ind, f, &mut counter)?;
        pop.push(Member { code, ind });
    }
    pop.sort_by(by_fitness);

    let mut generation = 0;
    loop {
        let best = &pop[0].ind;
        let best_value = best.fitness_or_inf();
        if generation > 0 {
            observer(&GenerationRecord {
                generation,
                best_value: best_value.as_f64(),
                nfc: counter.count(),
                events: Vec::new(),
            });
        }
        let success = is_success(best_value, f.optimum());
        if success || generation == max_generations {
            return Ok(RunResult {
                success,
                nfc: counter.count(),
                generations: generation,
                best_value,
                best_point: best.genome.clone(),
                seed: rng.seed(),
            });
        }

        let weights = roulette_weights(&pop);
        let total: f64 = weights.iter().sum();
        let mut children = Vec::with_capacity(pop_size);
        while children.len() < pop_size {
            let a = &pop[sample_roulette(&weights, total, rng)].code;
            let b = &pop[sample_roulette(&weights, total, rng)].code;
            let (c1, c2) = if rng.bernoulli(params.crossover_prob) {
                one_point_crossover(a, b, rng)?
            } else {
                (a.clone(), b.clone())
            };
            for code in [c1, c2] {
                if children.len() == pop_size {
                    break;
                }
                let code = bit_mutate(&code, p_bit, rng);
                let mut ind = Individual::new(enc.decode(&code)?, Provenance::Crossover);
                evaluate_individual(&mut ind, f, &mut counter)?;
                children.push(Member { code, ind });
            }
        }
        children.sort_by(by_fitness);
        pop.truncate(params.elites);
        pop.extend(children.into_iter().take(pop_size - params.elites));
        pop.sort_by(by_fitness);
        debug_assert_eq!(pop.len(), pop_size);
        generation += 1;
    }
}
