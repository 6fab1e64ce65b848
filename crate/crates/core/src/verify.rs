//! Verification suites that check closed forms against oracles and exact
//! values against simulation.
//!
//! Suites never stop at the first mismatch: every case runs and the report
//! lists them all in canonical order.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{fixed_point_character, CharacterTable, DEFAULT_MAX_N};
use crate::error::{Error, Result};
use crate::markov::{
    convolve, expected_fixed_points_by_step, fourier_scalar, lane_rng, one_fixed_point_classes, random_measure_on,
    simulate, ChainSpec, ClassMeasure, SIMULATION_LANES,
};
use crate::partitions::{enumerate_partitions, syt_count, Partition};
use crate::scalar::{ratio_to_string, Exact};
use crate::tensor::{closed_form, closed_form_bound, decompose, oracle_multiplicity_in, Method, RepKind};

/// Width of the Monte Carlo acceptance band, in standard errors.
pub const MC_SIGMA_BAND: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Pass,
    Fail,
    /// Informational only; never affects `passed`.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationCase {
    pub inputs: Value,
    pub expected: String,
    pub actual: String,
    pub status: CaseStatus,
}

impl VerificationCase {
    fn check(inputs: Value, expected: String, actual: String) -> Self {
        let status = if expected == actual {
            CaseStatus::Pass
        } else {
            CaseStatus::Fail
        };
        Self {
            inputs,
            expected,
            actual,
            status,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub cases: Vec<VerificationCase>,
    /// Out-of-range comparisons, reported but not judged.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<VerificationCase>,
    #[serde(serialize_with = "serialize_secs", rename = "elapsed_seconds")]
    pub elapsed: Duration,
}

fn serialize_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerificationReport {
    fn new(suite: &str, cases: Vec<VerificationCase>, diagnostics: Vec<VerificationCase>, started: Instant) -> Self {
        let passed = cases.iter().all(|c| c.status == CaseStatus::Pass);
        Self {
            suite: suite.to_string(),
            passed,
            cases,
            diagnostics,
            elapsed: started.elapsed(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationCase> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Fail)
    }

    /// JSON form with `elapsed_seconds` removed, for determinism comparisons.
    pub fn to_json_without_timing(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("elapsed_seconds");
        }
        v
    }
}

/// Which tensor powers `verify_prop1` / `verify_cor2` sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RPolicy {
    /// Every `r` with `1 <= r <= n - λ_2`.
    #[default]
    ValidityRange,
    /// The validity range, plus `extra` values of `r` beyond it recorded as
    /// diagnostics comparing the formula with the true multiplicity.
    WithDiagnostics { extra: usize },
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    if n_max > DEFAULT_MAX_N {
        return Err(Error::ResourceGuard {
            what: "verification sweep",
            n: n_max,
            cap: DEFAULT_MAX_N,
        });
    }
    Ok(())
}

/// Unchecked closed form, for diagnostics beyond the validity range.
fn formula_value(lambda: &Partition, r: usize, kind: RepKind) -> BigInt {
    // Evaluate on a padded shape whose first row is long enough to put r in range;
    // the formula only depends on λ̄ and r.
    let mut parts = lambda.parts().to_vec();
    let need = r + lambda.part(1);
    if parts.is_empty() {
        parts.push(need);
    } else if parts[0] < need {
        parts[0] = need;
    }
    let padded = Partition::new(parts).expect("first row only grows");
    closed_form::<BigInt>(&padded, r.max(1), kind).expect("padded shape is in range")
}

fn sweep(suite: &str, n_max: usize, policy: RPolicy, kind: RepKind) -> Result<VerificationReport> {
    check_n_max(n_max)?;
    let started = Instant::now();
    let tables: Vec<CharacterTable<BigInt>> = (1..=n_max)
        .into_par_iter()
        .map(|n| CharacterTable::build(n, DEFAULT_MAX_N))
        .collect::<Result<_>>()?;
    let work: Vec<(usize, Partition)> = (1..=n_max)
        .flat_map(|n| enumerate_partitions(n).into_iter().map(move |l| (n, l)))
        .collect();
    let extra = match policy {
        RPolicy::ValidityRange => 0,
        RPolicy::WithDiagnostics { extra } => extra,
    };
    let results: Vec<(Vec<VerificationCase>, Vec<VerificationCase>)> = work
        .par_iter()
        .map(|(n, lambda)| {
            let table = &tables[n - 1];
            let bound = closed_form_bound(lambda);
            let mut cases = Vec::new();
            for r in 1..=bound {
                let inputs = json!({ "n": n, "shape": lambda, "r": r, "rep": kind });
                let (expected, actual) = match (
                    oracle_multiplicity_in(table, lambda, r, kind),
                    closed_form::<BigInt>(lambda, r, kind),
                ) {
                    (Ok(o), Ok(c)) => (o.to_string(), c.to_string()),
                    (o, c) => (
                        o.map_or_else(|e| format!("error: {e}"), |v| v.to_string()),
                        c.map_or_else(|e| format!("error: {e}"), |v| v.to_string()),
                    ),
                };
                cases.push(VerificationCase::check(inputs, expected, actual));
            }
            let mut diags = Vec::new();
            for r in bound + 1..=bound + extra {
                let inputs = json!({ "n": n, "shape": lambda, "r": r, "rep": kind });
                let expected = oracle_multiplicity_in(table, lambda, r, kind)
                    .map_or_else(|e| format!("error: {e}"), |v| v.to_string());
                let actual = formula_value(lambda, r, kind).to_string();
                diags.push(VerificationCase {
                    inputs,
                    expected,
                    actual,
                    status: CaseStatus::Info,
                });
            }
            (cases, diags)
        })
        .collect();
    let (cases, diags): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok(VerificationReport::new(
        suite,
        cases.into_iter().flatten().collect(),
        diags.into_iter().flatten().collect(),
        started,
    ))
}

/// Closed form `a_{λ,r}` against the character oracle for all `n <= n_max`.
pub fn verify_prop1(n_max: usize, policy: RPolicy) -> Result<VerificationReport> {
    sweep("prop1", n_max, policy, RepKind::Defining)
}

/// Closed form `b_{λ,r}` against the character oracle for all `n <= n_max`.
pub fn verify_cor2(n_max: usize) -> Result<VerificationReport> {
    verify_cor2_with(n_max, RPolicy::ValidityRange)
}

pub fn verify_cor2_with(n_max: usize, policy: RPolicy) -> Result<VerificationReport> {
    sweep("cor2", n_max, policy, RepKind::Standard)
}

/// Oracle tables satisfy `Σ_λ mult·f^λ = dim^r` for `n <= n_max`, `0 <= r <= r_max`.
pub fn verify_dimensions(n_max: usize, r_max: usize) -> Result<VerificationReport> {
    check_n_max(n_max)?;
    let started = Instant::now();
    let work: Vec<(usize, usize, RepKind)> = (1..=n_max)
        .flat_map(|n| (0..=r_max).flat_map(move |r| [(n, r, RepKind::Defining), (n, r, RepKind::Standard)]))
        .collect();
    let cases = work
        .par_iter()
        .map(|&(n, r, kind)| {
            let t = decompose::<BigInt>(n, r, kind, Method::Oracle)?;
            let inputs = json!({ "n": n, "r": r, "rep": kind });
            Ok(VerificationCase::check(
                inputs,
                t.expected_dimension().to_string(),
                t.dimension_sum().to_string(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("dimensions", cases, Vec::new(), started))
}

/// Character table checks for `n <= n_max`: the standard character equals
/// fixed points minus one, it vanishes on one-fixed-point classes, the
/// identity column holds `f^λ`, and both orthogonality relations hold.
pub fn verify_characters(n_max: usize) -> Result<VerificationReport> {
    check_n_max(n_max)?;
    let started = Instant::now();
    let per_n = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let t = CharacterTable::<BigInt>::build(n, DEFAULT_MAX_N)?;
            let mut cases = Vec::new();
            if n >= 2 {
                let std = Partition::standard(n);
                for mu in t.classes() {
                    let expected = fixed_point_character::<BigInt>(mu) - BigInt::from(1);
                    let actual = t.value(&std, mu).expect("standard shape is a row");
                    cases.push(VerificationCase::check(
                        json!({ "n": n, "check": "standard_character", "class": mu }),
                        expected.to_string(),
                        actual.to_string(),
                    ));
                }
            }
            let id = Partition::column(n);
            for lambda in t.shapes() {
                cases.push(VerificationCase::check(
                    json!({ "n": n, "check": "degree", "shape": lambda }),
                    syt_count::<BigInt>(lambda).to_string(),
                    t.value(lambda, &id).expect("identity class is a column").to_string(),
                ));
            }
            for (check, ok) in [
                ("row_orthogonality", t.rows_orthonormal()),
                ("column_orthogonality", t.columns_orthogonal()),
            ] {
                cases.push(VerificationCase::check(
                    json!({ "n": n, "check": check }),
                    "true".into(),
                    ok.to_string(),
                ));
            }
            Ok(cases)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "characters",
        per_n.into_iter().flatten().collect(),
        Vec::new(),
        started,
    ))
}

/// For `pairs` random class-measure pairs per `n <= n_max`, the Fourier
/// scalar of the convolution equals the product of the scalars at every `λ`.
pub fn verify_fourier(n_max: usize, pairs: usize, seed: u64) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut rng = lane_rng(seed, SIMULATION_LANES + 2);
    let mut work = Vec::new();
    for n in 1..=n_max {
        let classes = enumerate_partitions(n);
        for i in 0..pairs {
            let nu: ClassMeasure<BigInt> = random_measure_on(n, &classes, 20, &mut rng)?;
            let omega: ClassMeasure<BigInt> = random_measure_on(n, &classes, 20, &mut rng)?;
            work.push((n, i, nu, omega));
        }
    }
    let per_pair = work
        .par_iter()
        .map(|(n, i, nu, omega)| {
            let conv = convolve(nu, omega)?;
            enumerate_partitions(*n)
                .into_iter()
                .map(|lambda| {
                    let lhs = fourier_scalar(&conv, &lambda)?.value;
                    let rhs = fourier_scalar(nu, &lambda)?.value * fourier_scalar(omega, &lambda)?.value;
                    Ok(VerificationCase::check(
                        json!({ "n": n, "pair": i, "shape": lambda }),
                        ratio_to_string(&rhs),
                        ratio_to_string(&lhs),
                    ))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "fourier",
        per_pair.into_iter().flatten().collect(),
        Vec::new(),
        started,
    ))
}

/// Parameters for [`verify_prop3`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prop3Config {
    pub n: usize,
    pub k_max: usize,
    pub chains: usize,
    pub seed: u64,
    /// Monte Carlo trials per chain; 0 skips simulation.
    pub trials: u64,
}

impl Prop3Config {
    pub fn new(n: usize, k_max: usize, chains: usize, seed: u64) -> Self {
        Self {
            n,
            k_max,
            chains,
            seed,
            trials: 20_000,
        }
    }
}

/// Random chain whose first step is a random mixture over one-fixed-point
/// classes and whose remaining `k - 1` steps are arbitrary class measures.
pub fn random_one_fixed_point_chain<T: Exact, R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<ChainSpec<T>> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "n = {n}: a one-fixed-point class needs n >= 3"
        )));
    }
    if k == 0 {
        return Err(Error::Precondition("chains need k >= 1".into()));
    }
    let first_classes = one_fixed_point_classes(n);
    let all = enumerate_partitions(n);
    let mut steps = vec![random_measure_on(n, &first_classes, 20, rng)?];
    for _ in 1..k {
        steps.push(random_measure_on(n, &all, 20, rng)?);
    }
    ChainSpec::new(n, steps)
}

/// Exact expected fixed points equal 1 at every step `k <= k_max` of random
/// one-fixed-point-start chains, and simulation agrees within
/// [`MC_SIGMA_BAND`] standard errors.
pub fn verify_prop3(config: Prop3Config) -> Result<VerificationReport> {
    let Prop3Config {
        n,
        k_max,
        chains,
        seed,
        trials,
    } = config;
    if n < 3 {
        return Err(Error::Precondition(format!(
            "n = {n}: a one-fixed-point class needs n >= 3"
        )));
    }
    if k_max == 0 {
        return Err(Error::Precondition("k_max must be at least 1".into()));
    }
    let started = Instant::now();
    let mut rng = lane_rng(seed, SIMULATION_LANES + 1);
    let specs: Vec<ChainSpec<BigInt>> = (0..chains)
        .map(|_| random_one_fixed_point_chain(n, k_max, &mut rng))
        .collect::<Result<_>>()?;
    let one = Ratio::from_integer(BigInt::from(1));
    let per_chain = specs
        .par_iter()
        .enumerate()
        .map(|(c, chain)| {
            let mut cases = Vec::new();
            for (j, e) in expected_fixed_points_by_step(chain)?.into_iter().enumerate() {
                cases.push(VerificationCase::check(
                    json!({ "n": n, "chain": c, "k": j + 1, "check": "exact" }),
                    ratio_to_string(&one),
                    ratio_to_string(&e),
                ));
            }
            if trials > 0 {
                let sim_seed = seed.wrapping_add(c as u64);
                let s = simulate(chain, trials, sim_seed)?;
                let within = (s.mean_fixed_points - 1.0).abs() <= MC_SIGMA_BAND * s.std_error;
                cases.push(VerificationCase {
                    inputs: json!({
                        "n": n, "chain": c, "k": k_max, "check": "monte_carlo",
                        "trials": trials, "seed": sim_seed,
                    }),
                    expected: format!("1 ± {MC_SIGMA_BAND}σ"),
                    actual: format!("{} (σ = {})", s.mean_fixed_points, s.std_error),
                    status: if within { CaseStatus::Pass } else { CaseStatus::Fail },
                });
            }
            Ok(cases)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "prop3",
        per_chain.into_iter().flatten().collect(),
        Vec::new(),
        started,
    ))
}
