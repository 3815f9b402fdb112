//! Differential Evolution with best-individual attraction and greedy
//! one-to-one replacement.
//!
//! For member `i` and every coordinate `j` in the active set,
//!
//! ```text
//! trial_j = x_ij + f1 (x_pj - x_qj) + f2 (best_j - x_ij)
//! ```
//!
//! where `p`, `q` are two further random members. Coordinates outside the
//! active set are copied from `x_i`. The trial replaces `x_i` only when it is
//! strictly better.

use crate::domain::RealVector;
use crate::error::{Error, Result};
use crate::objective::{is_success, EvalCounter, GenerationRecord, Objective, RunResult};
use crate::population::{
    default_pop_size, evaluate_all, evaluate_individual, init_population, Individual, Population, Provenance,
};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// Which coordinates the differential operator touches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaPolicy {
    /// Every coordinate.
    Full,
    /// Each coordinate independently with the given probability, redrawn per trial.
    RandomSubset { inclusion: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeParams {
    pub f1: f64,
    pub f2: f64,
    pub lambda: LambdaPolicy,
    /// `None` means `10 n`.
    pub pop_size: Option<usize>,
    /// Draw `f1`, `f2` uniformly from (0, 1) for every trial instead of using the fixed values.
    pub random_weights: bool,
}

impl Default for DeParams {
    fn default() -> Self {
        Self {
            f1: 0.85,
            f2: 0.85,
            lambda: LambdaPolicy::Full,
            pop_size: None,
            random_weights: false,
        }
    }
}

impl DeParams {
    pub fn pop_size_for(&self, dimension: usize) -> usize {
        self.pop_size.unwrap_or_else(|| default_pop_size(dimension))
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("f1", self.f1), ("f2", self.f2)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::config(format!("{name} = {v} must lie in (0, 1]")));
            }
        }
        if let LambdaPolicy::RandomSubset { inclusion } = self.lambda {
            if !(0.0..=1.0).contains(&inclusion) {
                return Err(Error::config(format!(
                    "lambda inclusion {inclusion} must lie in [0, 1]"
                )));
            }
        }
        if matches!(self.pop_size, Some(n) if n < 3) {
            return Err(Error::config("DE needs a population of at least 3"));
        }
        Ok(())
    }
}

/// The raw differential step for one member, without clamping.
///
/// `active[j]` selects the coordinates that move.
pub fn differential_step<T: Scalar>(
    current: &[T],
    p: &[T],
    q: &[T],
    best: &[T],
    f1: T,
    f2: T,
    active: &[bool],
) -> Vec<T> {
    current
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            if active[j] {
                c + f1 * (p[j] - q[j]) + f2 * (best[j] - c)
            } else {
                c
            }
        })
        .collect()
}

/// Builds the replacement candidate for member `i`.
pub fn de_trial<T: Scalar>(
    i: usize,
    pop: &Population<T>,
    best: &Individual<T>,
    params: &DeParams,
    domain: &crate::domain::SearchDomain<T>,
    rng: &mut RandomSource,
) -> Result<Individual<T>> {
    let n = pop.len();
    if n < 3 {
        return Err(Error::contract(format!("DE trial needs at least 3 members, have {n}")));
    }
    if i >= n {
        return Err(Error::contract(format!("member index {i} out of range")));
    }
    let [p, q] = rng.distinct_indices::<2>(n, Some(i));
    let dim = domain.dim();
    let active: Vec<bool> = match params.lambda {
        LambdaPolicy::Full => vec![true; dim],
        LambdaPolicy::RandomSubset { inclusion } => (0..dim).map(|_| rng.bernoulli(inclusion)).collect(),
    };
    let (f1, f2) = if params.random_weights {
        (open_unit(rng), open_unit(rng))
    } else {
        (params.f1, params.f2)
    };
    let mut genome = differential_step(
        &pop.members[i].genome,
        &pop.members[p].genome,
        &pop.members[q].genome,
        &best.genome,
        T::lit(f1),
        T::lit(f2),
        &active,
    );
    domain.clamp_in_place(&mut genome);
    Ok(Individual::new(
        RealVector::from_vec_unchecked(genome),
        Provenance::Crossover,
    ))
}

/// Uniform draw from the open interval (0, 1).
fn open_unit(rng: &mut RandomSource) -> f64 {
    loop {
        let u = rng.uniform();
        if u > 0.0 {
            return u;
        }
    }
}

/// One DE generation: a trial per member, evaluated and kept when strictly better.
///
/// The attractor is the best member at the start of the generation; replacements
/// take effect immediately, so later trials may draw already-replaced members.
pub fn de_generation<T, F>(
    pop: &mut Population<T>,
    f: &F,
    params: &DeParams,
    rng: &mut RandomSource,
    counter: &mut EvalCounter,
) -> Result<()>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    if !pop.all_evaluated() {
        return Err(Error::contract("DE generation requires an evaluated population"));
    }
    let best = pop.best().cloned().ok_or_else(|| Error::contract("empty population"))?;
    for i in 0..pop.len() {
        let mut trial = de_trial(i, pop, &best, params, f.domain(), rng)?;
        evaluate_individual(&mut trial, f, counter)?;
        if trial.fitness_or_inf() < pop.members[i].fitness_or_inf() {
            pop.members[i] = trial;
        }
    }
    Ok(())
}

pub fn de_run<T, F>(f: &F, params: &DeParams, max_generations: u32, rng: &mut RandomSource) -> Result<RunResult<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    de_run_observed(f, params, max_generations, rng, |_| {})
}

/// [`de_run`] with a callback after every generation.
pub fn de_run_observed<T, F, O>(
    f: &F,
    params: &DeParams,
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
        let best = pop.best().expect("non-empty population");
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
        de_generation(&mut pop, f, params, rng, &mut counter)?;
        generation += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::SearchDomain;
    use crate::testbed::FunctionId;

    #[test]
    fn differential_step_direct_evaluation() {
        let t: Vec<f64> = differential_step(
            &[0.0, 0.0],
            &[1.0, 0.0],
            &[0.0, 0.0],
            &[2.0, 2.0],
            0.85,
            0.85,
            &[true, true],
        );
        assert!((t[0] - 2.55).abs() < 1e-12);
        assert!((t[1] - 1.7).abs() < 1e-12);
    }

    #[test]
    fn equal_donors_and_best_at_current_leave_point_fixed() {
        let x = [0.3, -0.7];
        let t = differential_step(&x, &[5.0, 5.0], &[5.0, 5.0], &x, 0.85, 0.85, &[true, true]);
        assert_eq!(t, x);
    }

    #[test]
    fn empty_lambda_copies_member() {
        let d = SearchDomain::uniform_box(3, -1.0, 1.0).unwrap();
        let mut rng = RandomSource::new(4);
        let mut pop = init_population(&d, 6, &mut rng).unwrap();
        for (k, m) in pop.members.iter_mut().enumerate() {
            m.fitness = Some(k as f64);
        }
        let params = DeParams {
            lambda: LambdaPolicy::RandomSubset { inclusion: 0.0 },
            ..DeParams::default()
        };
        let best = pop.members[0].clone();
        for i in 0..6 {
            let t = de_trial(i, &pop, &best, &params, &d, &mut rng).unwrap();
            assert_eq!(t.genome, pop.members[i].genome);
            assert_eq!(t.provenance, Provenance::Crossover);
            assert!(t.fitness.is_none());
        }
    }

    #[test]
    fn trial_needs_three_members() {
        let d = SearchDomain::uniform_box(1, 0.0, 1.0).unwrap();
        let mut rng = RandomSource::new(0);
        let mut pop = init_population(&d, 2, &mut rng).unwrap();
        pop.members.iter_mut().for_each(|m| m.fitness = Some(0.0));
        let best = pop.members[0].clone();
        assert!(matches!(
            de_trial(0, &pop, &best, &DeParams::default(), &d, &mut rng),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn zero_weights_make_generation_the_identity() {
        let f = FunctionId::Branin.instance::<f64>();
        let mut rng = RandomSource::new(12);
        let mut counter = EvalCounter::new();
        let mut pop = init_population(&f.domain, 20, &mut rng).unwrap();
        evaluate_all(&mut pop.members, &f, &mut counter).unwrap();
        let before = pop.clone();
        let params = DeParams {
            f1: 0.0,
            f2: 0.0,
            ..DeParams::default()
        };
        de_generation(&mut pop, &f, &params, &mut rng, &mut counter).unwrap();
        assert_eq!(pop, before);
        assert_eq!(counter.count(), 40);
    }

    #[test]
    fn generation_charges_one_call_per_member_and_keeps_size() {
        let f = FunctionId::Shekel1.instance::<f64>();
        let mut rng = RandomSource::new(3);
        let mut counter = EvalCounter::new();
        let mut pop = init_population(&f.domain, 40, &mut rng).unwrap();
        evaluate_all(&mut pop.members, &f, &mut counter).unwrap();
        for g in 1..=5 {
            de_generation(&mut pop, &f, &DeParams::default(), &mut rng, &mut counter).unwrap();
            assert_eq!(counter.count(), 40 * (g + 1));
            assert_eq!(pop.len(), 40);
        }
    }

    #[test]
    fn rejects_zero_generation_budget() {
        let f = FunctionId::F1.instance::<f64>();
        let err = de_run(&f, &DeParams::default(), 0, &mut RandomSource::new(1)).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn run_is_deterministic() {
        let f = FunctionId::Camelback.instance::<f64>();
        let a = de_run(&f, &DeParams::default(), 500, &mut RandomSource::new(77)).unwrap();
        let b = de_run(&f, &DeParams::default(), 500, &mut RandomSource::new(77)).unwrap();
        assert_eq!(a, b);
        assert!(a.success);
    }

    #[test]
    fn runs_in_single_precision() {
        let f = FunctionId::Goldprice.instance::<f32>();
        let r = de_run(&f, &DeParams::default(), 500, &mut RandomSource::new(5)).unwrap();
        assert!(r.success, "{r:?}");
    }

    #[test]
    fn random_weights_still_converge_on_f1() {
        let f = FunctionId::F1.instance::<f64>();
        let params = DeParams {
            random_weights: true,
            ..DeParams::default()
        };
        let ok = (0..20)
            .filter(|&s| de_run(&f, &params, 500, &mut RandomSource::new(s)).unwrap().success)
            .count();
        assert!(ok >= 18, "{ok}/20");
    }
}
