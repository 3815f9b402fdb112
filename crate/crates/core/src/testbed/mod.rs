//! The twenty-function multimodal test bed.
//!
//! Every function is a minimization target on a box. Reference optima come
//! from `fixtures/reference_optima.txt`, produced by
//! `scripts/reference_oracle.py` (dense grids for n <= 2, 10^4-start local
//! refinement for the Hartman and Shekel families, analytic minimizers for the
//! structured 10/20-dimensional functions).

mod tables;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::domain::SearchDomain;
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::scalar::Scalar;

pub use tables::*;

/// Identifier of a test function, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionId {
    F1,
    F3,
    Branin,
    Camelback,
    Goldprice,
    PShubert1,
    PShubert2,
    Quartic,
    Shubert,
    Hartman1,
    Shekel1,
    Shekel2,
    Shekel3,
    Hartman2,
    Hosc45,
    Brown1,
    Brown3,
    F5n,
    F10n,
    F15n,
}

impl FunctionId {
    pub const ALL: [FunctionId; 20] = [
        FunctionId::F1,
        FunctionId::F3,
        FunctionId::Branin,
        FunctionId::Camelback,
        FunctionId::Goldprice,
        FunctionId::PShubert1,
        FunctionId::PShubert2,
        FunctionId::Quartic,
        FunctionId::Shubert,
        FunctionId::Hartman1,
        FunctionId::Shekel1,
        FunctionId::Shekel2,
        FunctionId::Shekel3,
        FunctionId::Hartman2,
        FunctionId::Hosc45,
        FunctionId::Brown1,
        FunctionId::Brown3,
        FunctionId::F5n,
        FunctionId::F10n,
        FunctionId::F15n,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::F1 => "F1",
            FunctionId::F3 => "F3",
            FunctionId::Branin => "Branin",
            FunctionId::Camelback => "Camelback",
            FunctionId::Goldprice => "Goldprice",
            FunctionId::PShubert1 => "PShubert1",
            FunctionId::PShubert2 => "PShubert2",
            FunctionId::Quartic => "Quartic",
            FunctionId::Shubert => "Shubert",
            FunctionId::Hartman1 => "Hartman1",
            FunctionId::Shekel1 => "Shekel1",
            FunctionId::Shekel2 => "Shekel2",
            FunctionId::Shekel3 => "Shekel3",
            FunctionId::Hartman2 => "Hartman2",
            FunctionId::Hosc45 => "Hosc45",
            FunctionId::Brown1 => "Brown1",
            FunctionId::Brown3 => "Brown3",
            FunctionId::F5n => "F5n",
            FunctionId::F10n => "F10n",
            FunctionId::F15n => "F15n",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            FunctionId::F1 | FunctionId::F3 => 1,
            FunctionId::Branin
            | FunctionId::Camelback
            | FunctionId::Goldprice
            | FunctionId::PShubert1
            | FunctionId::PShubert2
            | FunctionId::Quartic
            | FunctionId::Shubert => 2,
            FunctionId::Hartman1 => 3,
            FunctionId::Shekel1 | FunctionId::Shekel2 | FunctionId::Shekel3 => 4,
            FunctionId::Hartman2 => 6,
            FunctionId::Hosc45 => 10,
            FunctionId::Brown1 | FunctionId::Brown3 | FunctionId::F5n | FunctionId::F10n | FunctionId::F15n => 20,
        }
    }

    /// `(lower, upper)` bounds per coordinate.
    pub fn bounds(self) -> Vec<(f64, f64)> {
        let n = self.dimension();
        match self {
            FunctionId::F1 => vec![(0.0, 1.0)],
            FunctionId::F3 => vec![(-10.0, 10.0)],
            FunctionId::Branin => vec![(-5.0, 10.0), (0.0, 15.0)],
            FunctionId::Camelback => vec![(-3.0, 3.0), (-2.0, 2.0)],
            FunctionId::Goldprice => vec![(-2.0, 2.0); 2],
            FunctionId::PShubert1 | FunctionId::PShubert2 | FunctionId::Quartic | FunctionId::Shubert => {
                vec![(-10.0, 10.0); 2]
            }
            FunctionId::Hartman1 | FunctionId::Hartman2 => vec![(0.0, 1.0); n],
            FunctionId::Shekel1 | FunctionId::Shekel2 | FunctionId::Shekel3 => vec![(0.0, 10.0); n],
            FunctionId::Hosc45 => (1..=n).map(|i| (0.0, i as f64)).collect(),
            FunctionId::Brown1 | FunctionId::Brown3 => vec![(-1.0, 4.0); n],
            FunctionId::F5n | FunctionId::F10n | FunctionId::F15n => vec![(-10.0, 10.0); n],
        }
    }

    pub fn domain<T: Scalar>(self) -> SearchDomain<T> {
        let (lower, upper) = self.bounds().into_iter().map(|(l, u)| (T::lit(l), T::lit(u))).unzip();
        SearchDomain::new(lower, upper).expect("built-in bounds are valid")
    }

    /// Known global minimum value, from the committed oracle fixture.
    pub fn reference_optimum(self) -> f64 {
        optimum_records()[self as usize].value
    }

    /// Evaluates the function at `x`, checking the dimension.
    pub fn evaluate<T: Scalar>(self, x: &[T]) -> Result<T> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: x.len(),
            });
        }
        Ok(self.eval(x))
    }

    /// Evaluates without the dimension check.
    pub fn eval<T: Scalar>(self, x: &[T]) -> T {
        debug_assert_eq!(x.len(), self.dimension());
        match self {
            FunctionId::F1 => f1(x[0]),
            FunctionId::F3 => f3(x[0]),
            FunctionId::Branin => branin(x[0], x[1]),
            FunctionId::Camelback => camelback(x[0], x[1]),
            FunctionId::Goldprice => goldprice(x[0], x[1]),
            FunctionId::PShubert1 => pshubert(x[0], x[1], T::lit(0.5)),
            FunctionId::PShubert2 => pshubert(x[0], x[1], T::one()),
            FunctionId::Quartic => quartic(x[0], x[1]),
            FunctionId::Shubert => shubert(x[0], x[1]),
            FunctionId::Hartman1 => hartman(x, &HARTMAN1_A, &HARTMAN1_C, &HARTMAN1_P),
            FunctionId::Shekel1 => shekel(x, 5),
            FunctionId::Shekel2 => shekel(x, 7),
            FunctionId::Shekel3 => shekel(x, 10),
            FunctionId::Hartman2 => hartman(x, &HARTMAN2_A, &HARTMAN2_C, &HARTMAN2_P),
            FunctionId::Hosc45 => hosc45(x),
            FunctionId::Brown1 => brown1(x),
            FunctionId::Brown3 => brown3(x),
            FunctionId::F5n => f5n(x),
            FunctionId::F10n => f10n(x),
            FunctionId::F15n => f15n(x),
        }
    }

    /// A [`TestFunction`] for this id over scalar type `T`.
    pub fn instance<T: Scalar>(self) -> TestFunction<T> {
        TestFunction {
            id: self,
            domain: self.domain(),
            optimum: T::lit(self.reference_optimum()),
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    /// Case-insensitive match on the function name.
    fn from_str(s: &str) -> Result<Self> {
        FunctionId::ALL
            .iter()
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::config(format!("unknown function `{s}`")))
    }
}

/// A test function bound to its domain and reference optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction<T> {
    pub id: FunctionId,
    pub domain: SearchDomain<T>,
    pub optimum: T,
}

impl<T: Scalar> Objective<T> for TestFunction<T> {
    fn name(&self) -> &str {
        self.id.name()
    }

    fn domain(&self) -> &SearchDomain<T> {
        &self.domain
    }

    #[inline]
    fn evaluate(&self, x: &[T]) -> T {
        self.id.eval(x)
    }

    fn optimum(&self) -> T {
        self.optimum
    }
}

/// All twenty functions in table order.
pub fn catalog<T: Scalar>() -> Vec<TestFunction<T>> {
    FunctionId::ALL.iter().map(|id| id.instance()).collect()
}

/// Checked evaluation of test function `id` at `x`.
pub fn evaluate_test_function<T: Scalar>(id: FunctionId, x: &[T]) -> Result<T> {
    id.evaluate(x)
}

pub fn reference_optimum(id: FunctionId) -> f64 {
    id.reference_optimum()
}

/// One line of the reference-optima fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimumRecord {
    pub id: FunctionId,
    pub value: f64,
    /// Minimizer as printed by the oracle (rounded, space separated).
    pub minimizer: String,
    /// How the oracle obtained the value.
    pub oracle: String,
}

const OPTIMA_FIXTURE: &str = include_str!("../../fixtures/reference_optima.txt");

/// Raw text of the reference-optima fixture.
pub fn optima_fixture() -> &'static str {
    OPTIMA_FIXTURE
}

/// Parsed fixture, indexed in [`FunctionId::ALL`] order.
pub fn optimum_records() -> &'static [OptimumRecord] {
    static RECORDS: OnceLock<Vec<OptimumRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| parse_optima(OPTIMA_FIXTURE).expect("committed optima fixture is well-formed"))
}

fn parse_optima(text: &str) -> Result<Vec<OptimumRecord>> {
    let mut records: Vec<OptimumRecord> = Vec::with_capacity(20);
    for line in text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let mut cols = line.split('\t');
        let (Some(id), Some(value), Some(minimizer), Some(oracle)) =
            (cols.next(), cols.next(), cols.next(), cols.next())
        else {
            return Err(Error::config(format!("malformed optima line `{line}`")));
        };
        let value: f64 = value
            .parse()
            .map_err(|_| Error::config(format!("bad optimum value `{value}`")))?;
        records.push(OptimumRecord {
            id: id.parse()?,
            value,
            minimizer: minimizer.to_string(),
            oracle: oracle.to_string(),
        });
    }
    records.sort_by_key(|r| r.id);
    let ids: Vec<FunctionId> = records.iter().map(|r| r.id).collect();
    if ids != FunctionId::ALL {
        return Err(Error::config("optima fixture must list each function exactly once"));
    }
    Ok(records)
}

fn f1<T: Scalar>(x: T) -> T {
    let pi = T::PI();
    T::lit(2.0) * (x - T::lit(0.75)).powi(2) + (T::lit(5.0) * pi * x - T::lit(0.4) * pi).sin() - T::lit(0.125)
}

fn f3<T: Scalar>(x: T) -> T {
    let mut s = T::zero();
    for j in 1..=5 {
        let jt = T::lit(j as f64);
        s = s + jt * ((jt + T::one()) * x + jt).sin();
    }
    -s
}

fn branin<T: Scalar>(x: T, y: T) -> T {
    let pi = T::PI();
    let b = T::lit(5.1) / (T::lit(4.0) * pi * pi);
    let c = T::lit(5.0) / pi;
    let d = T::lit(6.0);
    let h = T::lit(10.0);
    let f = T::one() / (T::lit(8.0) * pi);
    (y - b * x * x + c * x - d).powi(2) + h * (T::one() - f) * x.cos() + h
}

fn camelback<T: Scalar>(x: T, y: T) -> T {
    let x2 = x * x;
    let y2 = y * y;
    (T::lit(4.0) - T::lit(2.1) * x2 + x2 * x2 / T::lit(3.0)) * x2 + x * y + (T::lit(-4.0) + T::lit(4.0) * y2) * y2
}

fn goldprice<T: Scalar>(x: T, y: T) -> T {
    let l = T::lit;
    let a = T::one()
        + (x + y + T::one()).powi(2)
            * (l(19.0) - l(14.0) * x + l(3.0) * x * x - l(14.0) * y + l(6.0) * x * y + l(3.0) * y * y);
    let b = l(30.0)
        + (l(2.0) * x - l(3.0) * y).powi(2)
            * (l(18.0) - l(32.0) * x + l(12.0) * x * x + l(48.0) * y - l(36.0) * x * y + l(27.0) * y * y);
    a * b
}

fn shubert_factor<T: Scalar>(t: T) -> T {
    let mut s = T::zero();
    for i in 1..=5 {
        let it = T::lit(i as f64);
        s = s + it * ((it + T::one()) * t + it).cos();
    }
    s
}

fn shubert<T: Scalar>(x: T, y: T) -> T {
    shubert_factor(x) * shubert_factor(y)
}

fn pshubert<T: Scalar>(x: T, y: T, beta: T) -> T {
    let dx = x - T::lit(PSHUBERT_CENTER[0]);
    let dy = y - T::lit(PSHUBERT_CENTER[1]);
    shubert(x, y) + beta * (dx * dx + dy * dy)
}

fn quartic<T: Scalar>(x: T, y: T) -> T {
    let x2 = x * x;
    x2 * x2 / T::lit(4.0) - x2 / T::lit(2.0) + x / T::lit(10.0) + y * y / T::lit(2.0)
}

/// `-sum_i c_i exp(-sum_j a_ij (x_j - p_ij)^2)` over the rows of the given tables.
pub fn hartman<T: Scalar, const N: usize>(x: &[T], a: &[[f64; N]; 4], c: &[f64; 4], p: &[[f64; N]; 4]) -> T {
    let mut s = T::zero();
    for i in 0..4 {
        let mut inner = T::zero();
        for j in 0..N {
            let d = x[j] - T::lit(p[i][j]);
            inner = inner + T::lit(a[i][j]) * d * d;
        }
        s = s + T::lit(c[i]) * (-inner).exp();
    }
    -s
}

fn shekel<T: Scalar>(x: &[T], m: usize) -> T {
    let mut s = T::zero();
    for (row, &c) in SHEKEL_A.iter().zip(SHEKEL_C.iter()).take(m) {
        let mut dist = T::zero();
        for (xj, &aj) in x.iter().zip(row.iter()) {
            let d = *xj - T::lit(aj);
            dist = dist + d * d;
        }
        s = s + T::one() / (dist + T::lit(c));
    }
    -s
}

fn hosc45<T: Scalar>(x: &[T]) -> T {
    // prod x_i / n! accumulated as prod (x_i / i) to stay well scaled.
    let scaled = x
        .iter()
        .enumerate()
        .fold(T::one(), |acc, (i, &xi)| acc * xi / T::lit((i + 1) as f64));
    T::lit(2.0) - scaled
}

fn brown1<T: Scalar>(x: &[T]) -> T {
    let three = T::lit(3.0);
    let mut linear = T::zero();
    let mut rest = T::zero();
    for i in (0..x.len() - 1).step_by(2) {
        let gap = x[i] - x[i + 1];
        linear = linear + (x[i] - three);
        rest = rest + T::lit(1e-3) * (x[i] - three).powi(2) - gap + (T::lit(20.0) * gap).exp();
    }
    linear * linear + rest
}

fn brown3<T: Scalar>(x: &[T]) -> T {
    x.windows(2)
        .map(|w| {
            let a = w[0] * w[0];
            let b = w[1] * w[1];
            a.powf(b + T::one()) + b.powf(a + T::one())
        })
        .fold(T::zero(), |acc, v| acc + v)
}

fn f5n<T: Scalar>(x: &[T]) -> T {
    let pi = T::PI();
    let one = T::one();
    let y = |i: usize| one + T::lit(0.25) * (x[i] - one);
    let n = x.len();
    let mut s = T::lit(10.0) * (pi * y(0)).sin().powi(2);
    for i in 0..n - 1 {
        s = s + (y(i) - one).powi(2) * (one + T::lit(10.0) * (pi * y(i + 1)).sin().powi(2));
    }
    s = s + (y(n - 1) - one).powi(2);
    pi / T::lit(20.0) * s
}

fn f10n<T: Scalar>(x: &[T]) -> T {
    let pi = T::PI();
    let one = T::one();
    let n = x.len();
    let mut s = T::lit(10.0) * (pi * x[0]).sin().powi(2);
    for i in 0..n - 1 {
        s = s + (x[i] - one).powi(2) * (one + T::lit(10.0) * (pi * x[i + 1]).sin().powi(2));
    }
    s = s + (x[n - 1] - one).powi(2);
    pi / T::lit(20.0) * s
}

fn f15n<T: Scalar>(x: &[T]) -> T {
    let pi = T::PI();
    let one = T::one();
    let three_pi = T::lit(3.0) * pi;
    let n = x.len();
    let mut s = (three_pi * x[0]).sin().powi(2);
    for i in 0..n - 1 {
        s = s + (x[i] - one).powi(2) * (one + (three_pi * x[i + 1]).sin().powi(2));
    }
    let last = x[n - 1];
    s = s + T::lit(0.1) * (last - one).powi(2) * (one + (T::lit(2.0) * pi * last).sin().powi(2));
    T::lit(0.1) * s
}
