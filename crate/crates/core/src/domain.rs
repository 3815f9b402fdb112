use std::ops::Deref;

use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// Non-empty vector of finite coordinates in problem units.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector<T>(Vec<T>);

impl<T: Scalar> RealVector<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::contract("vector must have at least one coordinate"));
        }
        if let Some(j) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::contract(format!("coordinate {j} is not finite")));
        }
        Ok(Self(coords))
    }

    /// Wraps coordinates produced by an operator whose inputs were already finite.
    pub(crate) fn from_vec_unchecked(coords: Vec<T>) -> Self {
        debug_assert!(!coords.is_empty());
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.as_f64()).collect()
    }
}

impl<T> Deref for RealVector<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for RealVector<T> {
    type Error = Error;

    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

/// Axis-aligned feasible box `lower[j] <= x[j] <= upper[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchDomain<T> {
    lower: RealVector<T>,
    upper: RealVector<T>,
}

impl<T: Scalar> SearchDomain<T> {
    pub fn new(lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Domain(format!(
                "lower has {} bounds, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        let lower = RealVector::new(lower).map_err(|e| Error::Domain(e.to_string()))?;
        let upper = RealVector::new(upper).map_err(|e| Error::Domain(e.to_string()))?;
        for (j, (lo, hi)) in lower.iter().zip(upper.iter()).enumerate() {
            if lo >= hi {
                return Err(Error::Domain(format!(
                    "coordinate {j}: lower bound {lo} is not below upper bound {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lo, hi]` in each of `n` dimensions.
    pub fn uniform_box(n: usize, lo: T, hi: T) -> Result<Self> {
        Self::new(vec![lo; n], vec![hi; n])
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &RealVector<T> {
        &self.lower
    }

    pub fn upper(&self) -> &RealVector<T> {
        &self.upper
    }

    /// Width `upper[j] - lower[j]` of coordinate `j`.
    #[inline]
    pub fn range(&self, j: usize) -> T {
        self.upper[j] - self.lower[j]
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .all(|(c, (lo, hi))| c >= lo && c <= hi)
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }

    /// Projects coordinates onto the box in place.
    #[inline]
    pub(crate) fn clamp_in_place(&self, x: &mut [T]) {
        for ((c, lo), hi) in x.iter_mut().zip(self.lower.iter()).zip(self.upper.iter()) {
            *c = c.max(*lo).min(*hi);
        }
    }

    /// Uniform random point of the box.
    pub fn sample(&self, rng: &mut RandomSource) -> RealVector<T> {
        let coords = self
            .lower
            .iter()
            .zip(self.upper.iter())
            .map(|(&lo, &hi)| {
                let v = lo + (hi - lo) * T::lit(rng.uniform());
                // Rounding of the affine map can land a hair above `hi` in f32.
                v.min(hi)
            })
            .collect();
        RealVector::from_vec_unchecked(coords)
    }
}

/// Projects every coordinate of `x` onto `[lower[j], upper[j]]`.
///
/// Interior coordinates are returned unchanged.
pub fn clamp_to_domain<T: Scalar>(x: &[T], domain: &SearchDomain<T>) -> Result<RealVector<T>> {
    domain.check_dim(x.len())?;
    let mut out = x.to_vec();
    domain.clamp_in_place(&mut out);
    RealVector::new(out)
}
