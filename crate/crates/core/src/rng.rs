use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random stream owned by a single run.
///
/// Backed by ChaCha8, whose output is specified independently of platform and
/// word size, so equal seeds give equal streams everywhere.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform real in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform real in `[lo, hi)`; returns `lo` when the interval is empty.
    #[inline]
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n`. `n` must be positive.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        self.rng.gen_range(0..n as u64) as usize
    }

    /// `true` with probability `p` (clamped to `[0, 1]`).
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        if p <= 0.0 {
            false
        } else if p >= 1.0 {
            true
        } else {
            self.uniform() < p
        }
    }

    /// `k` mutually distinct indices from `0..n`, none equal to `exclude`.
    ///
    /// Draws by rejection, which is cheap for the small `k` used here.
    pub fn distinct_indices<const K: usize>(&mut self, n: usize, exclude: Option<usize>) -> [usize; K] {
        let available = n - usize::from(exclude.is_some_and(|e| e < n));
        assert!(available >= K, "cannot draw {K} distinct indices from {available}");
        let mut out = [0usize; K];
        let mut filled = 0;
        while filled < K {
            let candidate = self.index(n);
            if Some(candidate) == exclude || out[..filled].contains(&candidate) {
                continue;
            }
            out[filled] = candidate;
            filled += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_seeds_give_equal_streams() {
        let mut a = RandomSource::new(99);
        let mut b = RandomSource::new(99);
        for _ in 0..1000 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
            assert_eq!(a.index(17), b.index(17));
        }
    }

    #[test]
    fn uniform_stays_in_unit_interval() {
        let mut r = RandomSource::new(1);
        for _ in 0..10_000 {
            let u = r.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn distinct_indices_respect_exclusion() {
        let mut r = RandomSource::new(5);
        for _ in 0..1000 {
            let [p, q] = r.distinct_indices::<2>(3, Some(1));
            assert_ne!(p, q);
            assert!(p != 1 && q != 1);
        }
    }

    #[test]
    #[should_panic]
    fn distinct_indices_panics_when_pool_too_small() {
        RandomSource::new(0).distinct_indices::<3>(3, Some(0));
    }
}
