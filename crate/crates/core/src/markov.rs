//! Random walks on `S_n` whose increments are class measures.
//!
//! The walk is `X_0 = e`, `X_j = τ_j X_{j-1}` with `τ_j ~ ν_j`, where
//! permutations act on `{0, .., n-1}` as image arrays and the product `τ x`
//! is the composition `i ↦ τ[x[i]]`.
//!
//! Class measures are stored by cycle type with exact rational weights, so
//! exact work stays in the `p(n)`-dimensional class algebra. On an irrep
//! `S^λ` a class measure acts as the scalar `(1/f^λ) Σ_μ ν(μ) χ^λ(μ)`;
//! since the number of fixed points is `1 + χ^(n-1,1)`, the expected number
//! of fixed points after `k` steps is `1 + (n-1) Π_j s_j`.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use num_traits::Zero;
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::MnCache;
use crate::error::{Error, Result};
use crate::partitions::{
    class_size, cycle_type_of, enumerate_partitions, fixed_points, syt_count, CycleType, Partition,
};
use crate::scalar::{ratio_to_string, Exact};

/// Largest `n` accepted by [`convolve`].
pub const DEFAULT_CONVOLVE_MAX_N: usize = 7;

/// Number of independent RNG streams a simulation is split into.
pub const SIMULATION_LANES: u64 = 64;

/// Probability measure on `S_n` that is constant on conjugacy classes.
///
/// `weights[μ]` is the total mass of the class `C_μ`, not the mass of a
/// single element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMeasure<T: Exact> {
    n: usize,
    weights: BTreeMap<CycleType, Ratio<T>>,
}

impl<T: Exact> ClassMeasure<T> {
    /// Validates weights: every class has weight `n`, every weight is
    /// nonnegative, and the total is exactly one. Zero weights are dropped.
    pub fn new(n: usize, weights: impl IntoIterator<Item = (CycleType, Ratio<T>)>) -> Result<Self> {
        let mut map: BTreeMap<CycleType, Ratio<T>> = BTreeMap::new();
        for (mu, w) in weights {
            if mu.weight() != n {
                return Err(Error::WeightMismatch {
                    expected: n,
                    found: mu.weight(),
                });
            }
            if w < Ratio::zero() {
                return Err(Error::InvalidMeasure(format!(
                    "negative weight {} on class {mu}",
                    ratio_to_string(&w)
                )));
            }
            let slot = map.entry(mu).or_insert_with(Ratio::zero);
            *slot = slot.clone() + w;
        }
        map.retain(|_, w| !w.is_zero());
        let total = map.values().fold(Ratio::zero(), |acc: Ratio<T>, w| acc + w.clone());
        if total != Ratio::from_integer(T::one()) {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {}, not 1",
                ratio_to_string(&total)
            )));
        }
        Ok(Self { n, weights: map })
    }

    /// All mass on one class.
    pub fn point_mass(mu: CycleType) -> Self {
        let n = mu.weight();
        let mut weights = BTreeMap::new();
        weights.insert(mu, Ratio::from_integer(T::one()));
        Self { n, weights }
    }

    /// Point mass on the identity.
    pub fn identity(n: usize) -> Self {
        Self::point_mass(Partition::column(n))
    }

    /// Normalizes nonnegative integer weights into a measure.
    pub fn from_counts(n: usize, counts: impl IntoIterator<Item = (CycleType, T)>) -> Result<Self> {
        let counts: Vec<(CycleType, T)> = counts.into_iter().collect();
        let total = counts.iter().fold(T::zero(), |acc, (_, c)| acc + c.clone());
        if !total.is_positive() {
            return Err(Error::InvalidMeasure("counts must have a positive total".into()));
        }
        Self::new(n, counts.into_iter().map(|(mu, c)| (mu, Ratio::new(c, total.clone()))))
    }

    /// Uniform over the elements of `S_n`.
    pub fn uniform(n: usize) -> Self {
        let order: T = crate::scalar::factorial(n);
        let weights = enumerate_partitions(n)
            .into_iter()
            .map(|mu| {
                let w = Ratio::new(class_size::<T>(&mu), order.clone());
                (mu, w)
            })
            .collect();
        Self { n, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &BTreeMap<CycleType, Ratio<T>> {
        &self.weights
    }

    pub fn weight_of(&self, mu: &CycleType) -> Ratio<T> {
        self.weights.get(mu).cloned().unwrap_or_else(Ratio::zero)
    }

    /// Classes carrying positive weight.
    pub fn support(&self) -> impl Iterator<Item = &CycleType> {
        self.weights.keys()
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .weights
            .iter()
            .map(|(mu, w)| json!({ "type": mu, "weight": ratio_to_string(w) }))
            .collect();
        json!({ "classes": classes })
    }
}

/// Increment distributions `ν_1, ..., ν_k` of a walk on `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec<T: Exact> {
    n: usize,
    steps: Vec<ClassMeasure<T>>,
}

#[derive(Deserialize)]
struct ChainDoc {
    n: usize,
    steps: Vec<StepDoc>,
}

#[derive(Deserialize)]
struct StepDoc {
    classes: Vec<ClassDoc>,
}

#[derive(Deserialize)]
struct ClassDoc {
    #[serde(rename = "type")]
    cycle_type: Vec<usize>,
    weight: String,
}

impl<T: Exact> ChainSpec<T> {
    pub fn new(n: usize, steps: Vec<ClassMeasure<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("a chain needs n >= 1".into()));
        }
        if steps.is_empty() {
            return Err(Error::Precondition("a chain needs at least one step".into()));
        }
        if let Some(bad) = steps.iter().find(|s| s.n() != n) {
            return Err(Error::WeightMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(Self { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[ClassMeasure<T>] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The chain truncated to its first `k` steps.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        Self::new(self.n, self.steps.iter().take(k).cloned().collect())
    }

    /// Parses `{"n": int, "steps": [{"classes": [{"type": [ints], "weight": "p/q"}]}]}`.
    ///
    /// Syntax and shape problems come back as [`Error::Parse`] naming the
    /// line/column or offending field; weights that are negative or do not
    /// sum to exactly one come back as [`Error::InvalidMeasure`].
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: ChainDoc = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        if doc.n == 0 {
            return Err(Error::Parse("field `n`: must be at least 1".into()));
        }
        if doc.steps.is_empty() {
            return Err(Error::Parse("field `steps`: at least one step is required".into()));
        }
        let mut steps = Vec::with_capacity(doc.steps.len());
        for (si, step) in doc.steps.into_iter().enumerate() {
            let mut seen = BTreeMap::new();
            for (ci, class) in step.classes.into_iter().enumerate() {
                let field = format!("steps[{si}].classes[{ci}]");
                if class.cycle_type.contains(&0) {
                    return Err(Error::Parse(format!("{field}.type: cycle lengths must be positive")));
                }
                let mu = Partition::from_unsorted(class.cycle_type);
                if mu.weight() != doc.n {
                    return Err(Error::Parse(format!(
                        "{field}.type: cycle lengths sum to {}, expected n = {}",
                        mu.weight(),
                        doc.n
                    )));
                }
                let w: Ratio<T> = parse_ratio(&class.weight)
                    .ok_or_else(|| Error::Parse(format!("{field}.weight: `{}` is not a rational p/q", class.weight)))?;
                if seen.insert(mu.clone(), w).is_some() {
                    return Err(Error::Parse(format!("{field}.type: class {mu} listed twice")));
                }
            }
            let measure = ClassMeasure::new(doc.n, seen).map_err(|e| match e {
                Error::InvalidMeasure(msg) => Error::InvalidMeasure(format!("steps[{si}]: {msg}")),
                other => other,
            })?;
            steps.push(measure);
        }
        Self::new(doc.n, steps)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "steps": self.steps.iter().map(ClassMeasure::to_json).collect::<Vec<_>>(),
        })
    }
}

fn parse_ratio<T: Exact>(s: &str) -> Option<Ratio<T>> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<T>().ok()?, b.trim().parse::<T>().ok()?),
        None => (s.parse::<T>().ok()?, T::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Ratio::new(num, den))
}

/// `ν̂(S^λ) = s · I`; this holds the scalar `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierScalar<T: Exact> {
    pub shape: Partition,
    pub value: Ratio<T>,
}

fn fourier_scalar_cached<T: Exact>(
    nu: &ClassMeasure<T>,
    lambda: &Partition,
    cache: &mut MnCache<T>,
) -> Result<FourierScalar<T>> {
    if lambda.weight() != nu.n() {
        return Err(Error::WeightMismatch {
            expected: nu.n(),
            found: lambda.weight(),
        });
    }
    let mut sum = Ratio::zero();
    for (mu, w) in nu.weights() {
        let chi = cache.character(lambda, mu)?;
        sum = sum + w.clone() * Ratio::from_integer(chi);
    }
    let value = sum / Ratio::from_integer(syt_count::<T>(lambda));
    Ok(FourierScalar {
        shape: lambda.clone(),
        value,
    })
}

/// `(1/f^λ) Σ_μ ν(μ) χ^λ(μ)`.
pub fn fourier_scalar<T: Exact>(nu: &ClassMeasure<T>, lambda: &Partition) -> Result<FourierScalar<T>> {
    fourier_scalar_cached(nu, lambda, &mut MnCache::new())
}

/// Exact `E[fix(X_k)]` for the full chain.
pub fn expected_fixed_points<T: Exact>(chain: &ChainSpec<T>) -> Result<Ratio<T>> {
    Ok(expected_fixed_points_by_step(chain)?
        .pop()
        .expect("chains have at least one step"))
}

/// Exact `E[fix(X_j)]` for `j = 1..=k`.
pub fn expected_fixed_points_by_step<T: Exact>(chain: &ChainSpec<T>) -> Result<Vec<Ratio<T>>> {
    let n = chain.n();
    let one = Ratio::from_integer(T::one());
    if n == 1 {
        return Ok(vec![one; chain.len()]);
    }
    let standard = Partition::standard(n);
    let dim = Ratio::from_integer(T::from_usize_exact(n - 1));
    let mut cache = MnCache::new();
    let mut product = one.clone();
    let mut out = Vec::with_capacity(chain.len());
    for nu in chain.steps() {
        product = product * fourier_scalar_cached(nu, &standard, &mut cache)?.value;
        out.push(one.clone() + dim.clone() * product.clone());
    }
    Ok(out)
}

/// Every permutation of `{0..n}`, lexicographic.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("pivot has a successor");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// `(τ x)(i) = τ[x[i]]`.
pub fn compose(tau: &[usize], x: &[usize]) -> Vec<usize> {
    x.iter().map(|&i| tau[i]).collect()
}

/// Distribution of `τ ω` for independent `τ ~ ν`, `ω ~ omega`, by brute force
/// over class elements. Restricted to `n <= cap`.
pub fn convolve_with_cap<T: Exact>(
    nu: &ClassMeasure<T>,
    omega: &ClassMeasure<T>,
    cap: usize,
) -> Result<ClassMeasure<T>> {
    let n = nu.n();
    if omega.n() != n {
        return Err(Error::WeightMismatch {
            expected: n,
            found: omega.n(),
        });
    }
    if n > cap {
        return Err(Error::ResourceGuard {
            what: "convolution",
            n,
            cap,
        });
    }
    let mut by_class: HashMap<CycleType, Vec<Vec<usize>>> = HashMap::new();
    for perm in all_permutations(n) {
        by_class.entry(cycle_type_of(&perm)).or_default().push(perm);
    }
    let mut out: BTreeMap<CycleType, Ratio<T>> = BTreeMap::new();
    for (kappa, w_omega) in omega.weights() {
        // The class of τh is distributed identically for every h in C_κ.
        let rep = &by_class[kappa][0];
        for (mu, w_nu) in nu.weights() {
            let members = &by_class[mu];
            let mut counts: HashMap<CycleType, usize> = HashMap::new();
            for tau in members {
                *counts.entry(cycle_type_of(&compose(tau, rep))).or_default() += 1;
            }
            let size = T::from_usize_exact(members.len());
            for (prod, c) in counts {
                let p = w_nu.clone() * w_omega.clone() * Ratio::new(T::from_usize_exact(c), size.clone());
                let slot = out.entry(prod).or_insert_with(Ratio::zero);
                *slot = slot.clone() + p;
            }
        }
    }
    ClassMeasure::new(n, out)
}

/// [`convolve_with_cap`] with the default cap.
pub fn convolve<T: Exact>(nu: &ClassMeasure<T>, omega: &ClassMeasure<T>) -> Result<ClassMeasure<T>> {
    convolve_with_cap(nu, omega, DEFAULT_CONVOLVE_MAX_N)
}

/// Uniformly random permutation of cycle type `μ`.
///
/// A uniform arrangement of `0..n` is cut into consecutive blocks of lengths
/// `μ_1, μ_2, ...` and each block read as a cycle; every permutation of type
/// `μ` arises from exactly `z_μ` arrangements.
pub fn sample_class<R: Rng + ?Sized>(mu: &CycleType, rng: &mut R) -> Vec<usize> {
    let n = mu.weight();
    let mut word: Vec<usize> = (0..n).collect();
    word.shuffle(rng);
    let mut perm = vec![0; n];
    let mut start = 0;
    for &len in mu.parts() {
        let block = &word[start..start + len];
        for j in 0..len {
            perm[block[j]] = block[(j + 1) % len];
        }
        start += len;
    }
    perm
}

/// Draws cycle types with probabilities given by a class measure.
enum ClassPicker {
    Exact(WeightedIndex<u64>),
    Approx(WeightedIndex<f64>),
}

struct ClassSampler {
    classes: Vec<CycleType>,
    picker: ClassPicker,
}

impl ClassSampler {
    fn new<T: Exact>(nu: &ClassMeasure<T>) -> Self {
        let classes: Vec<CycleType> = nu.weights().keys().cloned().collect();
        // Integer weights over the common denominator when they fit in u64.
        let lcm = nu.weights().values().fold(T::one(), |acc, w| acc.lcm(w.denom()));
        let ints: Option<Vec<u64>> = nu
            .weights()
            .values()
            .map(|w| (w.numer().clone() * (lcm.clone() / w.denom().clone())).to_u64())
            .collect();
        let picker = match ints.and_then(|v| WeightedIndex::new(v).ok()) {
            Some(idx) => ClassPicker::Exact(idx),
            None => {
                let approx: Vec<f64> = nu
                    .weights()
                    .values()
                    .map(|w| w.numer().to_f64().unwrap_or(0.0) / w.denom().to_f64().unwrap_or(1.0))
                    .collect();
                ClassPicker::Approx(WeightedIndex::new(approx).expect("measure has positive mass"))
            }
        };
        Self { classes, picker }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &CycleType {
        let i = match &self.picker {
            ClassPicker::Exact(w) => w.sample(rng),
            ClassPicker::Approx(w) => w.sample(rng),
        };
        &self.classes[i]
    }
}

/// Outcome of a seeded simulation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub seed: u64,
    pub trials: u64,
    pub n: usize,
    pub steps: usize,
    /// Empirical mean of `fix(X_k)`.
    pub mean_fixed_points: f64,
    /// Standard error of that mean (sample standard deviation over `sqrt(trials)`).
    pub std_error: f64,
    /// Empirical mean of `fix(X_j)` for `j = 1..=k`.
    pub per_step_means: Vec<f64>,
}

/// Generator for lane `lane` of a run seeded with `seed`.
///
/// ChaCha8 keyed by `seed_from_u64(seed)`, with the lane as the stream id;
/// streams are identical across platforms.
pub fn lane_rng(seed: u64, lane: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(lane);
    rng
}

/// Runs `trials` independent copies of the walk.
///
/// Trials are split across [`SIMULATION_LANES`] fixed lanes, each with its
/// own stream from [`lane_rng`], and the lane tallies are integers, so the
/// summary is identical for a given seed no matter how lanes are scheduled.
pub fn simulate<T: Exact>(chain: &ChainSpec<T>, trials: u64, seed: u64) -> Result<SimulationSummary> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    let n = chain.n();
    let k = chain.len();
    let samplers: Vec<ClassSampler> = chain.steps().iter().map(ClassSampler::new).collect();

    let tallies: Vec<(Vec<u64>, u128)> = (0..SIMULATION_LANES)
        .into_par_iter()
        .map(|lane| {
            let count = trials / SIMULATION_LANES + u64::from(lane < trials % SIMULATION_LANES);
            let mut rng = lane_rng(seed, lane);
            let mut step_sums = vec![0u64; k];
            let mut sq_sum = 0u128;
            for _ in 0..count {
                let mut x: Vec<usize> = (0..n).collect();
                let mut last = n;
                for (j, sampler) in samplers.iter().enumerate() {
                    let mu = sampler.sample(&mut rng);
                    let tau = sample_class(mu, &mut rng);
                    x = compose(&tau, &x);
                    last = x.iter().enumerate().filter(|&(i, &v)| i == v).count();
                    step_sums[j] += last as u64;
                }
                sq_sum += (last as u128) * (last as u128);
            }
            (step_sums, sq_sum)
        })
        .collect();

    let mut step_sums = vec![0u64; k];
    let mut sq_sum = 0u128;
    for (sums, sq) in tallies {
        for (acc, s) in step_sums.iter_mut().zip(sums) {
            *acc += s;
        }
        sq_sum += sq;
    }
    let nf = trials as f64;
    let per_step_means: Vec<f64> = step_sums.iter().map(|&s| s as f64 / nf).collect();
    let mean = per_step_means[k - 1];
    let last_sum = step_sums[k - 1] as f64;
    let std_error = if trials > 1 {
        let var = ((sq_sum as f64) - last_sum * last_sum / nf) / (nf - 1.0);
        (var.max(0.0) / nf).sqrt()
    } else {
        0.0
    };
    Ok(SimulationSummary {
        seed,
        trials,
        n,
        steps: k,
        mean_fixed_points: mean,
        std_error,
        per_step_means,
    })
}

/// Cycle types with exactly one fixed point.
pub fn one_fixed_point_classes(n: usize) -> Vec<CycleType> {
    enumerate_partitions(n)
        .into_iter()
        .filter(|mu| fixed_points(mu) == 1)
        .collect()
}

/// Random measure on a random nonempty subset of `classes`, with integer
/// weights in `1..=max_weight` normalized to one.
pub fn random_measure_on<T: Exact, R: Rng + ?Sized>(
    n: usize,
    classes: &[CycleType],
    max_weight: u32,
    rng: &mut R,
) -> Result<ClassMeasure<T>> {
    if classes.is_empty() {
        return Err(Error::Precondition("no classes to put mass on".into()));
    }
    let mut counts: Vec<(CycleType, T)> = Vec::new();
    for mu in classes {
        if rng.gen_bool(0.5) {
            let w = T::from_u32(rng.gen_range(1..=max_weight.max(1))).expect("small weight");
            counts.push((mu.clone(), w));
        }
    }
    if counts.is_empty() {
        let mu = classes[rng.gen_range(0..classes.len())].clone();
        counts.push((mu, T::one()));
    }
    ClassMeasure::from_counts(n, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Ratio<i64>;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> Q {
        Ratio::new(a, b)
    }

    #[test]
    fn measure_validation() {
        assert!(ClassMeasure::<i64>::new(3, vec![(p(&[2, 1]), q(1, 2)), (p(&[3]), q(1, 2))]).is_ok());
        assert!(matches!(
            ClassMeasure::<i64>::new(3, vec![(p(&[2, 1]), q(99, 100))]),
            Err(Error::InvalidMeasure(_))
        ));
        assert!(matches!(
            ClassMeasure::<i64>::new(3, vec![(p(&[2, 1]), q(3, 2)), (p(&[3]), q(-1, 2))]),
            Err(Error::InvalidMeasure(_))
        ));
        assert!(matches!(
            ClassMeasure::<i64>::new(3, vec![(p(&[2, 2]), q(1, 1))]),
            Err(Error::WeightMismatch { .. })
        ));
        let m = ClassMeasure::<i64>::new(3, vec![(p(&[2, 1]), q(1, 1)), (p(&[3]), q(0, 1))]).unwrap();
        assert_eq!(m.support().collect::<Vec<_>>(), vec![&p(&[2, 1])]);
    }

    #[test]
    fn uniform_measure_sums_to_one() {
        let u = ClassMeasure::<i64>::uniform(5);
        assert_eq!(u.weight_of(&p(&[2, 1, 1, 1])), q(10, 120));
        assert_eq!(u.weights().values().sum::<Q>(), q(1, 1));
    }

    #[test]
    fn fourier_scalar_examples() {
        for lambda in enumerate_partitions(5) {
            let s = fourier_scalar(&ClassMeasure::<i64>::identity(5), &lambda).unwrap();
            assert_eq!(s.value, q(1, 1));
        }
        let nu = ClassMeasure::<i64>::point_mass(p(&[3, 1]));
        assert_eq!(fourier_scalar(&nu, &p(&[3, 1])).unwrap().value, q(0, 1));
        let nu = ClassMeasure::<i64>::point_mass(p(&[2, 1, 1]));
        assert_eq!(fourier_scalar(&nu, &p(&[3, 1])).unwrap().value, q(1, 3));
        assert!(fourier_scalar(&nu, &p(&[3, 2])).is_err());
    }

    #[test]
    fn uniform_measure_kills_nontrivial_irreps() {
        let u = ClassMeasure::<i64>::uniform(5);
        for lambda in enumerate_partitions(5) {
            let expect = if lambda == Partition::row(5) { q(1, 1) } else { q(0, 1) };
            assert_eq!(fourier_scalar(&u, &lambda).unwrap().value, expect);
        }
    }

    #[test]
    fn expected_fixed_points_examples() {
        let chain = ChainSpec::new(5, vec![ClassMeasure::<i64>::identity(5)]).unwrap();
        assert_eq!(expected_fixed_points(&chain).unwrap(), q(5, 1));
        let chain = ChainSpec::new(5, vec![ClassMeasure::<i64>::point_mass(p(&[2, 1, 1, 1]))]).unwrap();
        assert_eq!(expected_fixed_points(&chain).unwrap(), q(3, 1));
        let chain = ChainSpec::new(
            4,
            vec![
                ClassMeasure::<i64>::point_mass(p(&[3, 1])),
                ClassMeasure::<i64>::point_mass(p(&[1, 1, 1, 1])),
                ClassMeasure::<i64>::point_mass(p(&[2, 1, 1])),
            ],
        )
        .unwrap();
        assert_eq!(expected_fixed_points_by_step(&chain).unwrap(), vec![q(1, 1); 3]);
        let one = ChainSpec::new(1, vec![ClassMeasure::<i64>::identity(1)]).unwrap();
        assert_eq!(expected_fixed_points(&one).unwrap(), q(1, 1));
    }

    #[test]
    fn chain_validation() {
        assert!(ChainSpec::<i64>::new(3, vec![]).is_err());
        assert!(ChainSpec::new(3, vec![ClassMeasure::<i64>::identity(4)]).is_err());
    }

    #[test]
    fn transpositions_squared_in_s3() {
        let t = ClassMeasure::<i64>::point_mass(p(&[2, 1]));
        let c = convolve(&t, &t).unwrap();
        let expect = ClassMeasure::new(3, vec![(p(&[1, 1, 1]), q(1, 3)), (p(&[3]), q(2, 3))]).unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn convolution_identity_and_cap() {
        let nu = ClassMeasure::<i64>::new(4, vec![(p(&[2, 2]), q(1, 3)), (p(&[3, 1]), q(2, 3))]).unwrap();
        assert_eq!(convolve(&nu, &ClassMeasure::identity(4)).unwrap(), nu);
        assert_eq!(convolve(&ClassMeasure::identity(4), &nu).unwrap(), nu);
        let big = ClassMeasure::<i64>::identity(8);
        assert!(matches!(convolve(&big, &big), Err(Error::ResourceGuard { .. })));
        assert!(convolve(&nu, &ClassMeasure::identity(3)).is_err());
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(all_permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(5).len(), 120);
    }

    #[test]
    fn sample_class_structure() {
        let mut rng = lane_rng(3, 0);
        for _ in 0..50 {
            assert_eq!(
                sample_class(&Partition::column(6), &mut rng),
                (0..6).collect::<Vec<_>>()
            );
            assert_eq!(cycle_type_of(&sample_class(&p(&[6]), &mut rng)), p(&[6]));
            assert_eq!(
                cycle_type_of(&sample_class(&p(&[3, 2, 2, 1]), &mut rng)),
                p(&[3, 2, 2, 1])
            );
        }
    }

    #[test]
    fn identity_chain_simulates_exactly() {
        let chain = ChainSpec::new(6, vec![ClassMeasure::<i64>::identity(6); 3]).unwrap();
        let s = simulate(&chain, 1000, 9).unwrap();
        assert_eq!(s.mean_fixed_points, 6.0);
        assert_eq!(s.std_error, 0.0);
        assert_eq!(s.per_step_means, vec![6.0; 3]);
        assert!(simulate(&chain, 0, 9).is_err());
    }

    #[test]
    fn simulation_is_seed_deterministic() {
        let chain = ChainSpec::new(5, vec![ClassMeasure::<i64>::uniform(5); 2]).unwrap();
        let a = simulate(&chain, 5000, 42).unwrap();
        let b = simulate(&chain, 5000, 42).unwrap();
        let c = simulate(&chain, 5000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.mean_fixed_points, c.mean_fixed_points);
    }

    #[test]
    fn chain_json_parsing() {
        let text = r#"{"n": 4, "steps": [
            {"classes": [{"type": [3, 1], "weight": "1/2"}, {"type": [1, 2, 1], "weight": "1/2"}]},
            {"classes": [{"type": [4], "weight": "1"}]}
        ]}"#;
        let chain = ChainSpec::<BigInt>::from_json_str(text).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(
            chain.steps()[0].weight_of(&p(&[2, 1, 1])),
            Ratio::new(BigInt::from(1), BigInt::from(2))
        );
        let back = ChainSpec::<BigInt>::from_json_str(&chain.to_json().to_string()).unwrap();
        assert_eq!(back, chain);
    }

    #[test]
    fn chain_json_errors() {
        let cases = [
            (r#"{"n": 3, "steps": ["#, "line 1"),
            (r#"{"n": 3, "steps": []}"#, "steps"),
            (
                r#"{"n": 3, "steps": [{"classes": [{"type": [2, 2], "weight": "1"}]}]}"#,
                "steps[0].classes[0].type",
            ),
            (
                r#"{"n": 3, "steps": [{"classes": [{"type": [3], "weight": "x"}]}]}"#,
                "steps[0].classes[0].weight",
            ),
            (
                r#"{"n": 3, "steps": [{"classes": [{"type": [3], "weight": "1/0"}]}]}"#,
                "weight",
            ),
            (
                r#"{"n": 3, "steps": [{"classes": [{"type": [3], "weight": "1/2"}, {"type": [3], "weight": "1/2"}]}]}"#,
                "twice",
            ),
        ];
        for (text, needle) in cases {
            match ChainSpec::<i64>::from_json_str(text) {
                Err(Error::Parse(msg)) => assert!(msg.contains(needle), "{msg} lacks {needle}"),
                other => panic!("expected parse error for {text}, got {other:?}"),
            }
        }
        let short = r#"{"n": 3, "steps": [{"classes": [{"type": [3], "weight": "99/100"}]}]}"#;
        assert!(matches!(
            ChainSpec::<i64>::from_json_str(short),
            Err(Error::InvalidMeasure(_))
        ));
    }

    #[test]
    fn one_fixed_point_class_lists() {
        assert_eq!(one_fixed_point_classes(3), vec![p(&[2, 1])]);
        assert_eq!(one_fixed_point_classes(5), vec![p(&[4, 1]), p(&[2, 2, 1])]);
        assert!(one_fixed_point_classes(2).is_empty());
    }
}
