//! CERAF: radioactive zones around discovered local extremes.
//!
//! When the population best stops improving for `stagnation_limit`
//! generations, the current best genome becomes the centre of an axis-aligned
//! ellipsoid ("zone"). Individuals that sit in any zone are mutated and
//! re-evaluated, and every catch of a non-mutation individual shrinks the
//! catching zone by a constant factor. Zones are never deleted and never reach
//! zero size.
//!
//! Stagnation is measured per episode: the reference is the lowest population
//! best since the last zone was declared, and a generation only counts as
//! progress when it beats that reference by more than `stagnation_tolerance`
//! of its magnitude. With `zone_scope = Offspring`, `zone_mutation_rate` equal
//! to the SADE rate and a zero tolerance, the zones act on fresh offspring only.

use std::fmt;

use crate::domain::{RealVector, SearchDomain};
use crate::error::{Error, Result};
use crate::objective::{is_success, EvalCounter, GenerationRecord, Objective, RunResult, ZoneEvent, ZoneEventKind};
use crate::population::{evaluate_all, init_population, Individual, Population, Provenance};
use crate::rng::RandomSource;
use crate::sade::{breed, mutate, reduce, SadeParams};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CerafParams {
    /// Initial zone semi-axis as a fraction of each coordinate's range.
    pub rad: f64,
    /// Probability that a caught offspring is mutated.
    pub zone_mutation_prob: f64,
    /// Generations without improvement before a zone is declared; `None` means `ceil(1700 / pop)`.
    pub stagnation_limit: Option<usize>,
    /// Relative shrink of a zone per catch.
    pub decay_per_event: f64,
    /// An improvement of the best value smaller than this fraction of its
    /// magnitude still counts as a stagnating generation.
    pub stagnation_tolerance: f64,
    /// Which members are checked against the zones each generation.
    pub zone_scope: ZoneScope,
    /// Mutation rate of zone mutation.
    pub zone_mutation_rate: f64,
}

/// Members subject to zone mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZoneScope {
    /// Only the new, unevaluated offspring.
    Offspring,
    /// Offspring and parents; a mutated parent is re-evaluated as a new individual.
    #[default]
    Population,
}

impl std::str::FromStr for ZoneScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "offspring" => Ok(ZoneScope::Offspring),
            "population" => Ok(ZoneScope::Population),
            other => Err(Error::config(format!(
                "unknown zone scope `{other}` (offspring | population)"
            ))),
        }
    }
}

impl Default for CerafParams {
    fn default() -> Self {
        Self {
            rad: 0.25,
            zone_mutation_prob: 1.0,
            stagnation_limit: None,
            decay_per_event: 0.005,
            stagnation_tolerance: 1e-3,
            zone_scope: ZoneScope::Population,
            zone_mutation_rate: 1.0,
        }
    }
}

impl CerafParams {
    pub fn stagnation_limit_for(&self, pop_size: usize) -> usize {
        self.stagnation_limit
            .unwrap_or_else(|| 1700usize.div_ceil(pop_size.max(1)))
            .max(1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rad > 0.0 && self.rad < 1.0) {
            return Err(Error::config(format!("rad = {} must lie in (0, 1)", self.rad)));
        }
        if !(self.zone_mutation_prob > 0.0 && self.zone_mutation_prob <= 1.0) {
            return Err(Error::config(format!(
                "zone mutation probability {} must lie in (0, 1]",
                self.zone_mutation_prob
            )));
        }
        if !(self.decay_per_event > 0.0 && self.decay_per_event < 1.0) {
            return Err(Error::config(format!(
                "decay {} must lie in (0, 1)",
                self.decay_per_event
            )));
        }
        if !(self.stagnation_tolerance >= 0.0 && self.stagnation_tolerance < 1.0) {
            return Err(Error::config(format!(
                "stagnation tolerance {} must lie in [0, 1)",
                self.stagnation_tolerance
            )));
        }
        if !(self.zone_mutation_rate > 0.0 && self.zone_mutation_rate <= 1.0) {
            return Err(Error::config(format!(
                "zone mutation rate {} must lie in (0, 1]",
                self.zone_mutation_rate
            )));
        }
        if self.stagnation_limit == Some(0) {
            return Err(Error::config("stagnation limit must be positive"));
        }
        Ok(())
    }
}

/// Axis-aligned ellipsoid marking a found local extreme.
#[derive(Debug, Clone, PartialEq)]
pub struct RadioactiveZone<T> {
    center: RealVector<T>,
    initial_semi_axes: Vec<T>,
    semi_axes: Vec<T>,
    decay_per_event: f64,
    shrink_events: u32,
}

impl<T: Scalar> RadioactiveZone<T> {
    /// Zone at `center` with semi-axes `rad * range_j`.
    pub fn new(center: RealVector<T>, domain: &SearchDomain<T>, rad: f64, decay_per_event: f64) -> Result<Self> {
        domain.check_dim(center.dim())?;
        let semi_axes: Vec<T> = (0..domain.dim()).map(|j| T::lit(rad) * domain.range(j)).collect();
        if semi_axes.iter().any(|&r| r <= T::zero()) {
            return Err(Error::config("zone semi-axes must be positive"));
        }
        Ok(Self {
            center,
            initial_semi_axes: semi_axes.clone(),
            semi_axes,
            decay_per_event,
            shrink_events: 0,
        })
    }

    pub fn center(&self) -> &RealVector<T> {
        &self.center
    }

    pub fn semi_axes(&self) -> &[T] {
        &self.semi_axes
    }

    pub fn initial_semi_axes(&self) -> &[T] {
        &self.initial_semi_axes
    }

    pub fn shrink_events(&self) -> u32 {
        self.shrink_events
    }

    /// `sum ((x_j - c_j) / r_j)^2 <= 1`.
    pub fn contains(&self, x: &[T]) -> Result<bool> {
        if x.len() != self.center.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.center.dim(),
                found: x.len(),
            });
        }
        Ok(self.contains_unchecked(x))
    }

    fn contains_unchecked(&self, x: &[T]) -> bool {
        let mut s = T::zero();
        for ((&xj, &cj), &rj) in x.iter().zip(self.center.iter()).zip(self.semi_axes.iter()) {
            let u = (xj - cj) / rj;
            s = s + u * u;
            if s > T::one() {
                return false;
            }
        }
        true
    }

    /// Records one catch: semi-axes become `initial * (1 - decay)^k`.
    ///
    /// Recomputed from the initial size rather than compounded, so the decay
    /// law holds exactly; floored at the smallest positive value.
    pub fn shrink(&mut self) {
        self.shrink_events += 1;
        let factor = T::lit(1.0 - self.decay_per_event).powi(self.shrink_events as i32);
        for (r, &r0) in self.semi_axes.iter_mut().zip(&self.initial_semi_axes) {
            *r = (r0 * factor).max(T::min_positive_value());
        }
    }
}

pub fn zone_contains<T: Scalar>(zone: &RadioactiveZone<T>, x: &[T]) -> Result<bool> {
    zone.contains(x)
}

/// What [`apply_radioactivity`] did to one batch of offspring.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RadioactivityOutcome {
    /// Offspring found inside at least one zone.
    pub caught: usize,
    /// Offspring replaced by a zone mutation.
    pub mutated: usize,
    /// Total (offspring, zone) shrink events.
    pub shrink_events: usize,
    /// Zones that shrank at least once, ascending.
    pub shrunk_zones: Vec<usize>,
}

/// Forces mutation of fresh offspring caught in any zone.
///
/// A caught offspring is mutated with probability `zone_mutation_prob` (one
/// application of [`mutate`] with rate `mr`). If it was crossover offspring and
/// got mutated, every zone containing it shrinks once; mutation offspring leave
/// zone sizes alone.
pub fn apply_radioactivity<T: Scalar>(
    offspring: &mut [Individual<T>],
    zones: &mut [RadioactiveZone<T>],
    params: &CerafParams,
    mr: f64,
    domain: &SearchDomain<T>,
    rng: &mut RandomSource,
) -> Result<RadioactivityOutcome> {
    let mut outcome = RadioactivityOutcome::default();
    if zones.is_empty() {
        return Ok(outcome);
    }
    let mut shrunk = vec![false; zones.len()];
    for child in offspring.iter_mut() {
        if child.is_evaluated() {
            return Err(Error::contract("radioactivity applies to unevaluated offspring only"));
        }
        irradiate(child, zones, params, mr, domain, rng, &mut outcome, &mut shrunk)?;
    }
    outcome.shrunk_zones = shrunk_indices(&shrunk);
    Ok(outcome)
}

/// Zone mutation of already-evaluated parents.
///
/// Mutated parents are removed from `pop` and returned unevaluated, to be
/// evaluated with the offspring. Shrinking follows [`apply_radioactivity`],
/// with initial-population members counting like crossover offspring.
pub fn irradiate_parents<T: Scalar>(
    pop: &mut Population<T>,
    zones: &mut [RadioactiveZone<T>],
    params: &CerafParams,
    mr: f64,
    domain: &SearchDomain<T>,
    rng: &mut RandomSource,
) -> Result<(Vec<Individual<T>>, RadioactivityOutcome)> {
    let mut outcome = RadioactivityOutcome::default();
    if zones.is_empty() {
        return Ok((Vec::new(), outcome));
    }
    let mut shrunk = vec![false; zones.len()];
    let mut kept = Vec::with_capacity(pop.members.len());
    let mut mutated = Vec::new();
    for mut member in std::mem::take(&mut pop.members) {
        if irradiate(&mut member, zones, params, mr, domain, rng, &mut outcome, &mut shrunk)? {
            member.fitness = None;
            mutated.push(member);
        } else {
            kept.push(member);
        }
    }
    pop.members = kept;
    outcome.shrunk_zones = shrunk_indices(&shrunk);
    Ok((mutated, outcome))
}

/// Checks one individual against the zones; returns whether it was mutated.
#[allow(clippy::too_many_arguments)]
fn irradiate<T: Scalar>(
    ind: &mut Individual<T>,
    zones: &mut [RadioactiveZone<T>],
    params: &CerafParams,
    mr: f64,
    domain: &SearchDomain<T>,
    rng: &mut RandomSource,
    outcome: &mut RadioactivityOutcome,
    shrunk: &mut [bool],
) -> Result<bool> {
    domain.check_dim(ind.genome.dim())?;
    let containing: Vec<usize> = zones
        .iter()
        .enumerate()
        .filter(|(_, z)| z.contains_unchecked(&ind.genome))
        .map(|(k, _)| k)
        .collect();
    if containing.is_empty() {
        return Ok(false);
    }
    outcome.caught += 1;
    if !rng.bernoulli(params.zone_mutation_prob) {
        return Ok(false);
    }
    let shrinks = !ind.provenance.is_mutation();
    ind.genome = mutate(&ind.genome, domain, mr, rng);
    ind.provenance = Provenance::ZoneMutation;
    outcome.mutated += 1;
    if shrinks {
        for &k in &containing {
            zones[k].shrink();
            shrunk[k] = true;
            outcome.shrink_events += 1;
        }
    }
    Ok(true)
}

fn shrunk_indices(shrunk: &[bool]) -> Vec<usize> {
    shrunk.iter().enumerate().filter_map(|(k, &s)| s.then_some(k)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CerafState<T> {
    pub zones: Vec<RadioactiveZone<T>>,
    pub stagnation_counter: usize,
    /// Best genome and value seen during the run, independent of the population.
    pub best_so_far: Option<(RealVector<T>, T)>,
    /// Lowest population best since the last zone was declared.
    pub stagnation_reference: Option<T>,
}

impl<T: Scalar> Default for CerafState<T> {
    fn default() -> Self {
        Self {
            zones: Vec::new(),
            stagnation_counter: 0,
            best_so_far: None,
            stagnation_reference: None,
        }
    }
}

impl<T: Scalar> CerafState<T> {
    pub fn best_value(&self) -> Option<T> {
        self.best_so_far.as_ref().map(|(_, v)| *v)
    }
}

/// End-of-generation bookkeeping: track the best value, count stagnating
/// generations, and declare a zone at the population's best genome once the
/// count reaches the limit. Declaring a zone starts a new episode.
pub fn update_stagnation<T: Scalar>(
    state: &mut CerafState<T>,
    pop: &Population<T>,
    params: &CerafParams,
    domain: &SearchDomain<T>,
    generation: u32,
) -> Result<Vec<ZoneEvent>> {
    let best = pop.best().ok_or_else(|| Error::contract("empty population"))?;
    let value = best
        .fitness
        .ok_or_else(|| Error::contract("population best is unevaluated"))?;
    let mut events = Vec::new();

    let previous = state.best_value();
    if previous.is_none_or(|b| value < b) {
        state.best_so_far = Some((best.genome.clone(), value));
        events.push(ZoneEvent {
            generation,
            kind: ZoneEventKind::Improvement,
            zone: None,
            best_value: value.as_f64(),
        });
    }
    let reference = state.stagnation_reference;
    let significant = reference.is_none_or(|b| (b - value).as_f64() > params.stagnation_tolerance * b.as_f64().abs());
    if reference.is_none_or(|b| value < b) {
        state.stagnation_reference = Some(value);
    }
    if significant {
        state.stagnation_counter = 0;
        return Ok(events);
    }

    state.stagnation_counter += 1;
    if state.stagnation_counter >= params.stagnation_limit_for(pop.nominal_size) {
        let zone = RadioactiveZone::new(best.genome.clone(), domain, params.rad, params.decay_per_event)?;
        state.zones.push(zone);
        state.stagnation_counter = 0;
        state.stagnation_reference = None;
        events.push(ZoneEvent {
            generation,
            kind: ZoneEventKind::ZoneCreated,
            zone: Some(state.zones.len() - 1),
            best_value: state.best_value().map_or(f64::NAN, Scalar::as_f64),
        });
    }
    Ok(events)
}

pub fn sade_ceraf_run<T, F>(
    f: &F,
    sade: &SadeParams,
    ceraf: &CerafParams,
    max_generations: u32,
    rng: &mut RandomSource,
) -> Result<RunResult<T>>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
{
    sade_ceraf_run_observed(f, sade, ceraf, max_generations, rng, |_| {}).map(|(r, _)| r)
}

/// [`sade_ceraf_run`] with a per-generation callback; also returns the final zone state.
pub fn sade_ceraf_run_observed<T, F, O>(
    f: &F,
    sade: &SadeParams,
    ceraf: &CerafParams,
    max_generations: u32,
    rng: &mut RandomSource,
    mut observer: O,
) -> Result<(RunResult<T>, CerafState<T>)>
where
    T: Scalar,
    F: Objective<T> + ?Sized,
    O: FnMut(&GenerationRecord),
{
    if max_generations == 0 {
        return Err(Error::contract("max_generations must be at least 1"));
    }
    sade.validate()?;
    ceraf.validate()?;
    let domain = f.domain();
    let mut counter = EvalCounter::new();
    let mut pop = init_population(domain, sade.pop_size_for(f.dimension()), rng)?;
    evaluate_all(&mut pop.members, f, &mut counter)?;

    let mut state = CerafState::default();
    update_stagnation(&mut state, &pop, ceraf, domain, 0)?;

    let mut generation = 0;
    let mut events = Vec::new();
    loop {
        let (best_point, best_value) = state.best_so_far.clone().expect("initialised above");
        if generation > 0 {
            observer(&GenerationRecord {
                generation,
                best_value: best_value.as_f64(),
                nfc: counter.count(),
                events: std::mem::take(&mut events),
            });
        }
        let success = is_success(best_value, f.optimum());
        if success || generation == max_generations {
            let result = RunResult {
                success,
                nfc: counter.count(),
                generations: generation,
                best_value,
                best_point,
                seed: rng.seed(),
            };
            return Ok((result, state));
        }

        generation += 1;
        let mut offspring = breed(&pop.members, domain, sade, pop.nominal_size, rng)?;
        let zone_mr = ceraf.zone_mutation_rate;
        let mut outcome = apply_radioactivity(&mut offspring, &mut state.zones, ceraf, zone_mr, domain, rng)?;
        if ceraf.zone_scope == ZoneScope::Population {
            let (mutated, parents) = irradiate_parents(&mut pop, &mut state.zones, ceraf, zone_mr, domain, rng)?;
            offspring.extend(mutated);
            outcome.shrunk_zones.extend(parents.shrunk_zones);
            outcome.shrunk_zones.sort_unstable();
            outcome.shrunk_zones.dedup();
        }
        let current_best = state.best_value().map_or(f64::NAN, Scalar::as_f64);
        events.extend(outcome.shrunk_zones.iter().map(|&k| ZoneEvent {
            generation,
            kind: ZoneEventKind::ZoneShrunk,
            zone: Some(k),
            best_value: current_best,
        }));
        evaluate_all(&mut offspring, f, &mut counter)?;
        reduce(&mut pop, offspring, rng)?;
        events.extend(update_stagnation(&mut state, &pop, ceraf, domain, generation)?);
    }
}

impl fmt::Display for ZoneEvent {
    /// Event-log line: `generation event zone best_value`, `-` for no zone.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zone = self.zone.map_or_else(|| "-".to_string(), |z| z.to_string());
        write!(
            f,
            "{} {} {} {:e}",
            self.generation,
            self.kind.as_str(),
            zone,
            self.best_value
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::Provenance;
    use crate::testbed::FunctionId;

    fn rv(v: &[f64]) -> RealVector<f64> {
        RealVector::new(v.to_vec()).unwrap()
    }

    fn unit_zone(center: &[f64]) -> RadioactiveZone<f64> {
        // rad 0.5 on [-1, 1] gives semi-axes 1.
        let d = SearchDomain::uniform_box(center.len(), -1.0, 1.0).unwrap();
        RadioactiveZone::new(rv(center), &d, 0.5, 0.005).unwrap()
    }

    #[test]
    fn ellipsoid_membership() {
        let z = unit_zone(&[0.0, 0.0]);
        assert_eq!(z.semi_axes(), &[1.0, 1.0]);
        assert!(zone_contains(&z, &[0.5, 0.5]).unwrap());
        assert!(zone_contains(&z, &[0.0, 0.0]).unwrap());
        assert!(!zone_contains(&z, &[1.1, 0.0]).unwrap());
        assert!(zone_contains(&z, &[0.0]).is_err());
    }

    #[test]
    fn initial_semi_axes_scale_with_range() {
        let d = SearchDomain::new(vec![-5.0, 0.0], vec![10.0, 15.0]).unwrap();
        let z = RadioactiveZone::new(rv(&[0.0, 0.0]), &d, 0.25, 0.005).unwrap();
        assert_eq!(z.semi_axes(), &[3.75, 3.75]);
    }

    #[test]
    fn one_crossover_catch_shrinks_by_half_percent() {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        let mut zones = vec![unit_zone(&[0.0, 0.0])];
        let mut kids = vec![Individual::new(rv(&[0.1, 0.1]), Provenance::Crossover)];
        let out = apply_radioactivity(
            &mut kids,
            &mut zones,
            &CerafParams::default(),
            0.5,
            &d,
            &mut RandomSource::new(1),
        )
        .unwrap();
        assert_eq!(out.shrink_events, 1);
        assert_eq!(out.shrunk_zones, vec![0]);
        assert_eq!(zones[0].semi_axes(), &[0.995, 0.995]);
        assert_eq!(kids[0].provenance, Provenance::ZoneMutation);
    }

    #[test]
    fn mutation_offspring_do_not_shrink_zones() {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        let mut zones = vec![unit_zone(&[0.0, 0.0])];
        let mut kids = vec![
            Individual::new(rv(&[0.1, 0.1]), Provenance::Mutation),
            Individual::new(rv(&[0.0, 0.2]), Provenance::LocalMutation),
        ];
        let out = apply_radioactivity(
            &mut kids,
            &mut zones,
            &CerafParams::default(),
            0.5,
            &d,
            &mut RandomSource::new(2),
        )
        .unwrap();
        assert_eq!(out.caught, 2);
        assert_eq!(out.mutated, 2);
        assert_eq!(out.shrink_events, 0);
        assert_eq!(zones[0].semi_axes(), &[1.0, 1.0]);
    }

    #[test]
    fn no_zones_pass_through() {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        let mut kids = vec![Individual::new(rv(&[0.1, 0.1]), Provenance::Crossover)];
        let before = kids.clone();
        let out = apply_radioactivity(
            &mut kids,
            &mut [],
            &CerafParams::default(),
            0.5,
            &d,
            &mut RandomSource::new(3),
        )
        .unwrap();
        assert_eq!(out, RadioactivityOutcome::default());
        assert_eq!(kids, before);
    }

    #[test]
    fn overlapping_zones_each_shrink() {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        let mut zones = vec![unit_zone(&[0.0, 0.0]), unit_zone(&[0.2, 0.0]), unit_zone(&[-0.9, -0.9])];
        let mut kids = vec![Individual::new(rv(&[0.1, 0.0]), Provenance::Crossover)];
        let out = apply_radioactivity(
            &mut kids,
            &mut zones,
            &CerafParams::default(),
            0.5,
            &d,
            &mut RandomSource::new(4),
        )
        .unwrap();
        assert_eq!(out.shrink_events, 2);
        assert_eq!(out.shrunk_zones, vec![0, 1]);
        assert_eq!(zones[2].shrink_events(), 0);
    }

    #[test]
    fn default_stagnation_limit() {
        assert_eq!(CerafParams::default().stagnation_limit_for(20), 85);
        assert_eq!(CerafParams::default().stagnation_limit_for(60), 29);
        assert_eq!(CerafParams::default().stagnation_limit_for(10), 170);
        assert_eq!(CerafParams::default().stagnation_limit_for(5000), 1);
    }

    fn evaluated_pop(values: &[f64]) -> Population<f64> {
        Population {
            members: values
                .iter()
                .map(|&v| Individual {
                    genome: rv(&[v / 100.0, 0.0]),
                    fitness: Some(v),
                    provenance: Provenance::Initial,
                })
                .collect(),
            nominal_size: 20,
        }
    }

    #[test]
    fn zone_declared_after_limit_and_counter_resets() {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        let params = CerafParams::default();
        let mut state = CerafState::default();
        let pop = evaluated_pop(&[5.0; 20]);
        update_stagnation(&mut state, &pop, &params, &d, 0).unwrap();
        for g in 1..=84 {
            let ev = update_stagnation(&mut state, &pop, &params, &d, g).unwrap();
            assert!(ev.is_empty());
        }
        assert!(state.zones.is_empty());
        let ev = update_stagnation(&mut state, &pop, &params, &d, 85).unwrap();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].kind, ZoneEventKind::ZoneCreated);
        assert_eq!(state.zones.len(), 1);
        assert_eq!(state.stagnation_counter, 0);
    }

    #[test]
    fn improvement_resets_counter() {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        let params = CerafParams::default();
        let mut state = CerafState::default();
        update_stagnation(&mut state, &evaluated_pop(&[5.0; 20]), &params, &d, 0).unwrap();
        for g in 1..=10 {
            update_stagnation(&mut state, &evaluated_pop(&[5.0; 20]), &params, &d, g).unwrap();
        }
        assert_eq!(state.stagnation_counter, 10);
        let ev = update_stagnation(&mut state, &evaluated_pop(&[4.0; 20]), &params, &d, 11).unwrap();
        assert_eq!(ev[0].kind, ZoneEventKind::Improvement);
        assert_eq!(state.stagnation_counter, 0);
        assert_eq!(state.best_value(), Some(4.0));
    }

    #[test]
    fn sub_tolerance_gains_still_stagnate() {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        let params = CerafParams {
            stagnation_limit: Some(5),
            ..CerafParams::default()
        };
        let mut state = CerafState::default();
        update_stagnation(&mut state, &evaluated_pop(&[-3.0; 20]), &params, &d, 0).unwrap();
        let mut created = None;
        for g in 1..=5 {
            let v = -3.0 - 1e-4 * g as f64;
            let ev = update_stagnation(&mut state, &evaluated_pop(&[v; 20]), &params, &d, g).unwrap();
            assert_eq!(ev[0].kind, ZoneEventKind::Improvement);
            if ev.iter().any(|e| e.kind == ZoneEventKind::ZoneCreated) {
                created = Some(g);
            }
        }
        assert_eq!(created, Some(5));
        assert_eq!(state.stagnation_reference, None);

        let strict = CerafParams {
            stagnation_tolerance: 0.0,
            ..params
        };
        let mut state = CerafState::default();
        for g in 0..=10 {
            let v = -3.0 - 1e-4 * g as f64;
            update_stagnation(&mut state, &evaluated_pop(&[v; 20]), &strict, &d, g).unwrap();
        }
        assert!(state.zones.is_empty());
    }

    #[test]
    fn parents_in_zones_are_pulled_out_unevaluated() {
        let d = SearchDomain::uniform_box(2, -1.0, 1.0).unwrap();
        let mut zones = vec![unit_zone(&[0.0, 0.0])];
        let mut pop = Population {
            members: vec![
                Individual {
                    genome: rv(&[0.1, 0.0]),
                    fitness: Some(1.0),
                    provenance: Provenance::Initial,
                },
                Individual {
                    genome: rv(&[0.9, 0.9]),
                    fitness: Some(2.0),
                    provenance: Provenance::Crossover,
                },
            ],
            nominal_size: 2,
        };
        let (moved, out) = irradiate_parents(
            &mut pop,
            &mut zones,
            &CerafParams::default(),
            1.0,
            &d,
            &mut RandomSource::new(5),
        )
        .unwrap();
        assert_eq!(pop.members.len(), 1);
        assert_eq!(pop.members[0].fitness, Some(2.0));
        assert_eq!(moved.len(), 1);
        assert!(!moved[0].is_evaluated());
        assert_eq!(moved[0].provenance, Provenance::ZoneMutation);
        assert_eq!(out.shrunk_zones, vec![0]);
        assert_eq!(zones[0].shrink_events(), 1);
    }

    #[test]
    fn behaves_like_sade_when_solved_quickly() {
        let f = FunctionId::Branin.instance::<f64>();
        for seed in 0..10 {
            let (r, state) = sade_ceraf_run_observed(
                &f,
                &SadeParams::default(),
                &CerafParams::default(),
                500,
                &mut RandomSource::new(seed),
                |_| {},
            )
            .unwrap();
            assert!(r.success);
            assert!(state.zones.is_empty());
        }
    }

    #[test]
    fn event_log_line_format() {
        let e = ZoneEvent {
            generation: 12,
            kind: ZoneEventKind::ZoneCreated,
            zone: Some(0),
            best_value: -3.25,
        };
        assert_eq!(e.to_string(), "12 zone-created 0 -3.25e0");
    }
}
