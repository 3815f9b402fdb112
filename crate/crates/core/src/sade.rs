//! SADE: simplified differential crossover plus mutation doubles the
//! population, a modified tournament halves it again.

use crate::domain::{RealVector, SearchDomain};
use crate::error::{Error, Result};
use crate::objective::{is_success, EvalCounter, GenerationRecord, Objective, RunResult};
use crate::population::{
    best_index, default_pop_size, evaluate_all, init_population, Individual, Population, Provenance,
};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SadeParams {
    /// Weight of the difference vector in the crossover.
    pub cr: f64,
    /// Interpolation weight towards a random point in [`mutate`].
    pub mr: f64,
    /// Probability that a new slot is filled by a mutation operator.
    pub radioactivity: f64,
    /// Half-width of the local mutation, as a fraction of each coordinate's range.
    pub local_range_fraction: f64,
    /// `None` means `10 n`.
    pub pop_size: Option<usize>,
}

impl Default for SadeParams {
    fn default() -> Self {
        Self {
            cr: 0.2,
            mr: 0.5,
            radioactivity: 0.2,
            local_range_fraction: 0.0025,
            pop_size: None,
        }
    }
}

impl SadeParams {
    pub fn pop_size_for(&self, dimension: usize) -> usize {
        self.pop_size.unwrap_or_else(|| default_pop_size(dimension))
    }

    pub fn validate(&self) -> Result<()> {
        if !self.cr.is_finite() {
            return Err(Error::config("cr must be finite"));
        }
        if !(0.0..=1.0).contains(&self.mr) {
            return Err(Error::config(format!("mr = {} must lie in [0, 1]", self.mr)));
        }
        if !(0.0..=1.0).contains(&self.radioactivity) {
            return Err(Error::config(format!(
                "radioactivity = {} must lie in [0, 1]",
                self.radioactivity
            )));
        }
        if !(self.local_range_fraction >= 0.0 && self.local_range_fraction.is_finite()) {
            return Err(Error::config("local_range_fraction must be a non-negative number"));
        }
        if matches!(self.pop_size, Some(n) if n < 3) {
            return Err(Error::config("SADE needs a population of at least 3"));
        }
        Ok(())
    }
}

/// `p + cr (q - r)`, unclamped.
pub fn simplified_differential<T: Scalar>(p: &[T], q: &[T], r: &[T], cr: T) -> Result<Vec<T>> {
    if p.len() != q.len() || p.len() != r.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: if q.len() != p.len() { q.len() } else { r.len() },
        });
    }
    Ok(p.iter()
        .zip(q.iter().zip(r.iter()))
        .map(|(&pj, (&qj, &rj))| pj + cr * (qj - rj))
        .collect())
}

/// `x + mr (target - x)`.
pub fn mutate_towards<T: Scalar>(x: &[T], target: &[T], mr: T) -> Vec<T> {
    x.iter().zip(target).map(|(&xj, &tj)| xj + mr * (tj - xj)).collect()
}

/// Moves `x` a fraction `mr` of the way towards a uniform random point of the domain.
///
/// For `mr` in `[0, 1]` this is a convex combination of two feasible points;
/// the result is still clamped to absorb rounding.
pub fn mutate<T: Scalar>(x: &[T], domain: &SearchDomain<T>, mr: f64, rng: &mut RandomSource) -> RealVector<T> {
    let target = domain.sample(rng);
    let mut out = mutate_towards(x, &target, T::lit(mr));
    domain.clamp_in_place(&mut out);
    RealVector::from_vec_unchecked(out)
}

/// Perturbs every coordinate by a uniform offset in `[-h_j, h_j]`,
/// `h_j = fraction * range_j`, then clamps.
pub fn local_mutate<T: Scalar>(
    x: &[T],
    domain: &SearchDomain<T>,
    fraction: f64,
    rng: &mut RandomSource,
) -> RealVector<T> {
    let mut out: Vec<T> = x
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let half = T::lit(fraction) * domain.range(j);
            xj + half * T::lit(rng.uniform_in(-1.0, 1.0))
        })
        .collect();
    domain.clamp_in_place(&mut out);
    RealVector::from_vec_unchecked(out)
}

/// Modified tournament: repeatedly draw two distinct members and drop the worse
/// until `target` remain. Equal fitness drops the second-drawn member.
///
/// The best member can never be the worse of a pair, so it always survives.
pub fn tournament_reduce<T: Scalar>(
    mut members: Vec<Individual<T>>,
    target: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Individual<T>>> {
    if members.len() <= target {
        return Err(Error::contract(format!(
            "cannot reduce {} members to {target}",
            members.len()
        )));
    }
    if target == 0 {
        return Err(Error::contract("reduction target must be positive"));
    }
    if !members.iter().all(Individual::is_evaluated) {
        return Err(Error::contract("tournament needs evaluated members"));
    }
    while members.len() > target {
        let [a, b] = rng.distinct_indices::<2>(members.len(), None);
        let loser = if members[a].fitness_or_inf() > members[b].fitness_or_inf() {
            a
        } else {
            b
        };
        members.swap_remove(loser);
    }
    Ok(members)
}

/// Creates `pop_size` unevaluated offspring from the (evaluated) parents.
///
/// Each slot is a mutant with probability `radioactivity` (fair coin between
/// [`mutate`] and [`local_mutate`] of a uniformly drawn parent), otherwise a
/// clamped [`simplified_differential`] of three distinct parents.
pub fn breed<T: Scalar>(
    parents: &[Individual<T>],
    domain: &SearchDomain<T>,
    params: &SadeParams,
    count: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Individual<T>>> {
    let n = parents.len();
    if n < 3 {
        return Err(Error::contract(format!("SADE needs at least 3 parents, have {n}")));
    }
    let cr = T::lit(params.cr);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let child = if rng.bernoulli(params.radioactivity) {
            let source = &parents[rng.index(n)].genome;
            if rng.bernoulli(0.5) {
                Individual::new(mutate(source, domain, params.mr, rng), Provenance::Mutation)
            } else {
                Individual::new(
                    local_mutate(source, domain, params.local_range_fraction, rng),
                    Provenance::LocalMutation,
                )
            }
        } else {
            let [p, q, r] = rng.distinct_indices::<3>(n, None);
            let mut genome = simplified_differential(&parents[p].genome, &parents[q].genome, &parents[r].genome, cr)?;
            domain.clamp_in_place(&mut genome);
            Individual::new(RealVector::from_vec_unchecked(genome), Provenance::Crossover)
        };
        out.push(child);
    }
    Ok(out)
}

/// One SADE generation: breed, evaluate the offspring, reduce back to size.
pub fn sade_generation<T, F>(
    pop: &mut Population<T>,
    f: &F,
    params: &SadeParams,
    rng: &mut RandomSource,
    counter: &mut EvalCounter,
) -> Result<()>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    if !pop.all_evaluated() {
        return Err(Error::contract("SADE generation requires an evaluated population"));
    }
    let mut offspring = breed(&pop.members, f.domain(), params, pop.nominal_size, rng)?;
    evaluate_all(&mut offspring, f, counter)?;
    reduce(pop, offspring, rng)
}

pub(crate) fn reduce<T: Scalar>(
    pop: &mut Population<T>,
    offspring: Vec<Individual<T>>,
    rng: &mut RandomSource,
) -> Result<()> {
    let mut doubled = std::mem::take(&mut pop.members);
    doubled.extend(offspring);
    pop.members = tournament_reduce(doubled, pop.nominal_size, rng)?;
    Ok(())
}

pub fn sade_run<T, F>(f: &F, params: &SadeParams, max_generations: u32, rng: &mut RandomSource) -> Result<RunResult<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    sade_run_observed(f, params, max_generations, rng, |_| {})
}

/// [`sade_run`] with a callback after every generation.
pub fn sade_run_observed<T, F, O>(
    f: &F,
    params: &SadeParams,
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
    params.validate()?;
    let mut counter = EvalCounter::new();
    let mut pop = init_population(f.domain(), params.pop_size_for(f.dimension()), rng)?;
    evaluate_all(&mut pop.members, f, &mut counter)?;

    let mut generation = 0;
    loop {
        let best = &pop.members[best_index(&pop.members).expect("non-empty population")];
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
        sade_generation(&mut pop, f, params, rng, &mut counter)?;
        generation += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testbed::FunctionId;

    fn rv(v: &[f64]) -> RealVector<f64> {
        RealVector::new(v.to_vec()).unwrap()
    }

    fn evaluated(values: &[f64]) -> Vec<Individual<f64>> {
        values
            .iter()
            .map(|&v| Individual {
                genome: rv(&[v]),
                fitness: Some(v),
                provenance: Provenance::Initial,
            })
            .collect()
    }

    #[test]
    fn simplified_differential_direct() {
        let out: Vec<f64> = simplified_differential(&[1.0, 2.0], &[4.0, 6.0], &[2.0, 4.0], 0.2).unwrap();
        assert!((out[0] - 1.4).abs() < 1e-12 && (out[1] - 2.4).abs() < 1e-12);
        assert_eq!(
            simplified_differential(&[1.0, 2.0], &[4.0, 6.0], &[2.0, 4.0], 0.0).unwrap(),
            vec![1.0, 2.0]
        );
        assert_eq!(
            simplified_differential(&[1.0, 2.0], &[3.0, 3.0], &[3.0, 3.0], 0.7).unwrap(),
            vec![1.0, 2.0]
        );
        assert!(simplified_differential(&[1.0], &[1.0, 2.0], &[1.0], 0.2).is_err());
    }

    #[test]
    fn mutate_towards_direct() {
        assert_eq!(mutate_towards(&[0.0, 0.0], &[2.0, 2.0], 0.5), vec![1.0, 1.0]);
        assert_eq!(mutate_towards(&[0.3, 0.4], &[2.0, 2.0], 0.0), vec![0.3, 0.4]);
        assert_eq!(mutate_towards(&[0.3, 0.4], &[2.0, 2.0], 1.0), vec![2.0, 2.0]);
    }

    #[test]
    fn local_mutation_stays_within_fraction() {
        let d = SearchDomain::uniform_box(1, 0.0, 1.0).unwrap();
        let mut rng = RandomSource::new(9);
        for _ in 0..10_000 {
            let out = local_mutate(&[0.5_f64], &d, 0.0025, &mut rng);
            assert!((out[0] - 0.5).abs() <= 0.0025 + 1e-15);
        }
        assert_eq!(local_mutate(&[0.5], &d, 0.0, &mut rng).as_slice(), &[0.5]);
    }

    #[test]
    fn local_mutation_clamps_at_boundary() {
        let d = SearchDomain::uniform_box(1, 0.0, 1.0).unwrap();
        let mut rng = RandomSource::new(10);
        let mut seen_boundary = false;
        for _ in 0..1000 {
            let out = local_mutate(&[1.0], &d, 0.01, &mut rng);
            assert!(out[0] <= 1.0);
            seen_boundary |= out[0] == 1.0;
        }
        assert!(seen_boundary);
    }

    #[test]
    fn tournament_halves_and_keeps_best() {
        let mut rng = RandomSource::new(1);
        let members = evaluated(&[5.0, 3.0, 9.0, 1.0, 7.0, 2.0, 8.0, 6.0]);
        let out = tournament_reduce(members, 4, &mut rng).unwrap();
        assert_eq!(out.len(), 4);
        assert!(out.iter().any(|m| m.fitness == Some(1.0)));
    }

    #[test]
    fn tournament_on_ties_keeps_count() {
        let mut rng = RandomSource::new(2);
        let out = tournament_reduce(evaluated(&[1.0; 10]), 5, &mut rng).unwrap();
        assert_eq!(out.len(), 5);
    }

    #[test]
    fn tournament_rejects_bad_targets() {
        let mut rng = RandomSource::new(3);
        assert!(tournament_reduce(evaluated(&[1.0, 2.0]), 2, &mut rng).is_err());
        assert!(tournament_reduce(evaluated(&[1.0, 2.0]), 0, &mut rng).is_err());
    }

    #[test]
    fn generation_doubles_then_reduces() {
        let f = FunctionId::Hartman1.instance::<f64>();
        let mut rng = RandomSource::new(4);
        let mut counter = EvalCounter::new();
        let mut pop = init_population(&f.domain, 30, &mut rng).unwrap();
        evaluate_all(&mut pop.members, &f, &mut counter).unwrap();
        sade_generation(&mut pop, &f, &SadeParams::default(), &mut rng, &mut counter).unwrap();
        assert_eq!(counter.count(), 60);
        assert_eq!(pop.len(), 30);
    }

    #[test]
    fn radioactivity_extremes_select_operator_family() {
        let f = FunctionId::Branin.instance::<f64>();
        let mut rng = RandomSource::new(5);
        let mut counter = EvalCounter::new();
        let mut pop = init_population(&f.domain, 20, &mut rng).unwrap();
        evaluate_all(&mut pop.members, &f, &mut counter).unwrap();

        let none = SadeParams {
            radioactivity: 0.0,
            ..SadeParams::default()
        };
        let kids = breed(&pop.members, &f.domain, &none, 20, &mut rng).unwrap();
        assert!(kids.iter().all(|k| k.provenance == Provenance::Crossover));

        let all = SadeParams {
            radioactivity: 1.0,
            ..SadeParams::default()
        };
        let kids = breed(&pop.members, &f.domain, &all, 20, &mut rng).unwrap();
        assert!(kids.iter().all(|k| k.provenance.is_mutation()));
    }

    #[test]
    fn sade_solves_camelback() {
        let f = FunctionId::Camelback.instance::<f64>();
        for seed in 0..10 {
            let r = sade_run(&f, &SadeParams::default(), 500, &mut RandomSource::new(seed)).unwrap();
            assert!(r.success, "seed {seed}: {r:?}");
        }
    }
}
