use std::cmp::Ordering;

use crate::domain::{RealVector, SearchDomain};
use crate::error::{Error, Result};
use crate::objective::{EvalCounter, Objective};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// Operator that produced an individual.
///
/// CERAF only shrinks zones for catches of crossover offspring, so the tag
/// travels with every genome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Initial,
    Crossover,
    Mutation,
    LocalMutation,
    ZoneMutation,
}

impl Provenance {
    pub fn is_mutation(self) -> bool {
        matches!(
            self,
            Provenance::Mutation | Provenance::LocalMutation | Provenance::ZoneMutation
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual<T> {
    pub genome: RealVector<T>,
    /// Objective value at `genome`; `None` until evaluated.
    pub fitness: Option<T>,
    pub provenance: Provenance,
}

impl<T: Scalar> Individual<T> {
    pub fn new(genome: RealVector<T>, provenance: Provenance) -> Self {
        Self {
            genome,
            fitness: None,
            provenance,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        self.fitness.is_some()
    }

    /// Fitness, or `+inf` for an unevaluated individual.
    #[inline]
    pub fn fitness_or_inf(&self) -> T {
        self.fitness.unwrap_or_else(T::infinity)
    }
}

/// Index of the lowest-fitness individual; ties go to the lowest index.
pub fn best_index<T: Scalar>(members: &[Individual<T>]) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, m) in members.iter().enumerate() {
        let f = m.fitness_or_inf();
        match best {
            Some((_, bf)) if f.partial_cmp(&bf) != Some(Ordering::Less) => {}
            _ => best = Some((i, f)),
        }
    }
    best.map(|(i, _)| i)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population<T> {
    pub members: Vec<Individual<T>>,
    pub nominal_size: usize,
}

impl<T: Scalar> Population<T> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn best_index(&self) -> Option<usize> {
        best_index(&self.members)
    }

    pub fn best(&self) -> Option<&Individual<T>> {
        self.best_index().map(|i| &self.members[i])
    }

    pub fn all_evaluated(&self) -> bool {
        self.members.iter().all(Individual::is_evaluated)
    }
}

/// Default population size `10 n`.
pub fn default_pop_size(dimension: usize) -> usize {
    10 * dimension
}

/// `size` individuals drawn uniformly from `domain`, unevaluated.
pub fn init_population<T: Scalar>(
    domain: &SearchDomain<T>,
    size: usize,
    rng: &mut RandomSource,
) -> Result<Population<T>> {
    if size < 2 {
        return Err(Error::contract(format!("population size {size} is below 2")));
    }
    let members = (0..size)
        .map(|_| Individual::new(domain.sample(rng), Provenance::Initial))
        .collect();
    Ok(Population {
        members,
        nominal_size: size,
    })
}

/// Evaluates `ind` once, charging one call to `counter`.
///
/// Re-submitting an evaluated individual is a contract error.
pub fn evaluate_individual<T, F>(ind: &mut Individual<T>, f: &F, counter: &mut EvalCounter) -> Result<()>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    if ind.is_evaluated() {
        return Err(Error::contract("individual evaluated twice"));
    }
    let value = f.evaluate(&ind.genome);
    counter.tick();
    if !value.is_finite() {
        return Err(Error::NonFiniteObjective {
            function: f.name().to_string(),
            value: value.as_f64(),
            point: ind.genome.to_f64_vec(),
        });
    }
    ind.fitness = Some(value);
    Ok(())
}

pub(crate) fn evaluate_all<T, F>(members: &mut [Individual<T>], f: &F, counter: &mut EvalCounter) -> Result<()>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    members.iter_mut().try_for_each(|m| evaluate_individual(m, f, counter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::FnObjective;

    fn sphere() -> FnObjective<f64, impl Fn(&[f64]) -> f64> {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        FnObjective::new("sphere", d, 0.0, |x: &[f64]| x.iter().map(|c| c * c).sum())
    }

    #[test]
    fn init_population_respects_bounds_and_size() {
        let d = SearchDomain::uniform_box(1, 0.0, 1.0).unwrap();
        let pop = init_population(&d, 5, &mut RandomSource::new(1)).unwrap();
        assert_eq!(pop.len(), 5);
        assert_eq!(pop.nominal_size, 5);
        for m in &pop.members {
            assert!(d.contains(&m.genome));
            assert_eq!(m.provenance, Provenance::Initial);
            assert!(m.fitness.is_none());
        }
    }

    #[test]
    fn init_population_default_size_is_ten_n() {
        let d = SearchDomain::uniform_box(2, -10.0, 10.0).unwrap();
        let pop = init_population(&d, default_pop_size(2), &mut RandomSource::new(2)).unwrap();
        assert_eq!(pop.nominal_size, 20);
    }

    #[test]
    fn init_population_is_deterministic() {
        let d = SearchDomain::uniform_box(3, -2.0, 7.0).unwrap();
        let a = init_population(&d, 30, &mut RandomSource::new(11)).unwrap();
        let b = init_population(&d, 30, &mut RandomSource::new(11)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn init_population_rejects_tiny_size() {
        let d = SearchDomain::uniform_box(1, 0.0, 1.0).unwrap();
        assert!(init_population(&d, 1, &mut RandomSource::new(0)).is_err());
    }

    #[test]
    fn evaluation_counts_and_refuses_repeats() {
        let f = sphere();
        let mut counter = EvalCounter::new();
        let mut a = Individual::new(RealVector::new(vec![0.0, 0.0]).unwrap(), Provenance::Initial);
        let mut b = Individual::new(RealVector::new(vec![0.5, 0.5]).unwrap(), Provenance::Initial);
        evaluate_individual(&mut a, &f, &mut counter).unwrap();
        evaluate_individual(&mut b, &f, &mut counter).unwrap();
        assert_eq!(counter.count(), 2);
        assert_eq!(a.fitness, Some(0.0));
        assert_eq!(b.fitness, Some(0.5));
        assert!(evaluate_individual(&mut a, &f, &mut counter).is_err());
        assert_eq!(counter.count(), 2);
    }

    #[test]
    fn non_finite_objective_reports_point() {
        let d = SearchDomain::uniform_box(1, 0.0, 1.0).unwrap();
        let f = FnObjective::new("bad", d, 0.0, |_: &[f64]| f64::NAN);
        let mut c = EvalCounter::new();
        let mut ind = Individual::new(RealVector::new(vec![0.25]).unwrap(), Provenance::Initial);
        match evaluate_individual(&mut ind, &f, &mut c) {
            Err(Error::NonFiniteObjective { point, .. }) => assert_eq!(point, vec![0.25]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn best_index_prefers_lowest_index_on_ties() {
        let g = || RealVector::new(vec![0.0]).unwrap();
        let mut members: Vec<Individual<f64>> = (0..3).map(|_| Individual::new(g(), Provenance::Initial)).collect();
        members[0].fitness = Some(2.0);
        members[1].fitness = Some(1.0);
        members[2].fitness = Some(1.0);
        assert_eq!(best_index(&members), Some(1));
    }
}
