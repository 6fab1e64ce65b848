//! Irreducible multiplicities in tensor powers of the defining representation
//! `ϱ` and of the standard representation `S^(n-1,1)`.
//!
//! Two independent routes are provided: closed forms in Stirling numbers,
//! valid for `1 <= r <= n - λ_2`, and the character inner product
//! `⟨χ^r, χ^λ⟩`, valid for every `r >= 0`.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::{CharacterTable, MnCache, DEFAULT_MAX_N};
use crate::error::{Error, Result};
use crate::partitions::{class_size, enumerate_partitions, fixed_points, syt_count, truncate, CycleType, Partition};
use crate::scalar::{factorial, pow, Exact};
use crate::seqcomb::{with_tables, SeqTables};

/// Which representation is raised to the tensor power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    /// `ϱ`, dimension `n`, character = fixed points.
    Defining,
    /// `S^(n-1,1)`, dimension `n-1`, character = fixed points minus one.
    Standard,
}

impl RepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RepKind::Defining => "defining",
            RepKind::Standard => "standard",
        }
    }

    /// Character value on the class `μ`.
    pub fn character<T: Exact>(self, mu: &CycleType) -> T {
        let fix = T::from_usize_exact(fixed_points(mu));
        match self {
            RepKind::Defining => fix,
            RepKind::Standard => fix - T::one(),
        }
    }

    pub fn dimension(self, n: usize) -> usize {
        match self {
            RepKind::Defining => n,
            RepKind::Standard => n.saturating_sub(1),
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How multiplicities were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
    /// Closed form where in range, oracle elsewhere; entries record which.
    Auto,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Oracle => "oracle",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `n - λ_2`, with `λ_2 = 0` for a one-row shape.
pub fn closed_form_bound(lambda: &Partition) -> usize {
    lambda.weight() - lambda.part(1)
}

pub fn in_closed_form_range(lambda: &Partition, r: usize) -> bool {
    r >= 1 && r <= closed_form_bound(lambda)
}

fn check_range(lambda: &Partition, r: usize) -> Result<()> {
    if in_closed_form_range(lambda, r) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            shape: lambda.to_string(),
            r,
            bound: closed_form_bound(lambda),
        })
    }
}

/// `Σ_{i=m}^{s} C(i,m) S(s,i)`.
fn stirling_tail<T: Exact>(tables: &mut SeqTables<T>, s: usize, m: usize) -> T {
    (m..=s).fold(T::zero(), |acc, i| {
        acc + tables.binomial.get(i, m) * tables.stirling.get(s, i)
    })
}

/// Multiplicity `a_{λ,r}` of `S^λ` in `ϱ^{⊗r}` by the Stirling closed form
/// `f^λ̄ Σ_{i=|λ̄|}^{r} C(i,|λ̄|) S(r,i)`.
///
/// Only defined for `1 <= r <= n - λ_2`; anything else is [`Error::OutOfRange`].
pub fn a_multiplicity<T: Exact>(lambda: &Partition, r: usize) -> Result<T> {
    check_range(lambda, r)?;
    let bar = truncate(lambda);
    let m = bar.weight();
    let tail = with_tables(|t: &mut SeqTables<T>| stirling_tail(t, r, m));
    Ok(syt_count::<T>(&bar) * tail)
}

/// Multiplicity `b_{λ,r}` of `S^λ` in `(S^(n-1,1))^{⊗r}`: the binomial
/// transform `f^λ̄ Σ_{s=|λ̄|}^{r} (-1)^{r-s} C(r,s) Σ_{i=|λ̄|}^{s} C(i,|λ̄|) S(s,i)`.
pub fn b_multiplicity<T: Exact>(lambda: &Partition, r: usize) -> Result<T> {
    check_range(lambda, r)?;
    let bar = truncate(lambda);
    let m = bar.weight();
    let sum = with_tables(|t: &mut SeqTables<T>| {
        (m..=r).fold(T::zero(), |acc, s| {
            let term = t.binomial.get(r, s) * stirling_tail(t, s, m);
            if (r - s).is_multiple_of(2) {
                acc + term
            } else {
                acc - term
            }
        })
    });
    let b = syt_count::<T>(&bar) * sum;
    if b.is_negative() {
        return Err(Error::InvariantViolation(format!(
            "b multiplicity for {lambda}, r = {r} came out negative ({b})"
        )));
    }
    Ok(b)
}

/// Closed form for the given representation.
pub fn closed_form<T: Exact>(lambda: &Partition, r: usize, kind: RepKind) -> Result<T> {
    match kind {
        RepKind::Defining => a_multiplicity(lambda, r),
        RepKind::Standard => b_multiplicity(lambda, r),
    }
}

/// `(1/n!) Σ_μ |C_μ| c(μ)^r χ^λ(μ)` over exact rationals, with the
/// character row supplied by the caller in the order of `classes`.
fn inner_product<T: Exact>(lambda: &Partition, classes: &[CycleType], row: &[T], r: usize, kind: RepKind) -> Result<T> {
    let n = lambda.weight();
    let order = factorial::<T>(n);
    let exp = u32::try_from(r).map_err(|_| Error::Precondition(format!("tensor power {r} too large")))?;
    let total = classes
        .iter()
        .zip(row)
        .fold(Ratio::from_integer(T::zero()), |acc, (mu, chi)| {
            let term = class_size::<T>(mu) * pow(&kind.character::<T>(mu), exp) * chi.clone();
            acc + Ratio::new(term, order.clone())
        });
    if !total.is_integer() {
        return Err(Error::InvariantViolation(format!(
            "character inner product for {lambda}, r = {r}, {kind} is not integral: {}/{}",
            total.numer(),
            total.denom()
        )));
    }
    let m = total.to_integer();
    if m.is_negative() {
        return Err(Error::InvariantViolation(format!(
            "character inner product for {lambda}, r = {r}, {kind} is negative: {m}"
        )));
    }
    Ok(m)
}

/// Multiplicity of `S^λ` in the `r`-th tensor power computed from characters.
///
/// Valid for every `r >= 0`; `r = 0` gives the trivial-representation indicator.
pub fn oracle_multiplicity<T: Exact>(lambda: &Partition, r: usize, kind: RepKind) -> Result<T> {
    let classes = enumerate_partitions(lambda.weight());
    let mut cache = MnCache::new();
    let row = classes
        .iter()
        .map(|mu| cache.character(lambda, mu))
        .collect::<Result<Vec<T>>>()?;
    inner_product(lambda, &classes, &row, r, kind)
}

/// [`oracle_multiplicity`] reading characters from a prebuilt table.
pub fn oracle_multiplicity_in<T: Exact>(
    table: &CharacterTable<T>,
    lambda: &Partition,
    r: usize,
    kind: RepKind,
) -> Result<T> {
    let row = table.row(lambda).ok_or(Error::WeightMismatch {
        expected: table.n(),
        found: lambda.weight(),
    })?;
    inner_product(lambda, table.classes(), row, r, kind)
}

/// Closed form when `(λ, r)` is in range, oracle otherwise.
pub fn multiplicity_auto<T: Exact>(lambda: &Partition, r: usize, kind: RepKind) -> Result<(T, Method)> {
    if in_closed_form_range(lambda, r) {
        closed_form(lambda, r, kind).map(|m| (m, Method::ClosedForm))
    } else {
        oracle_multiplicity(lambda, r, kind).map(|m| (m, Method::Oracle))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionEntry<T> {
    pub shape: Partition,
    pub multiplicity: T,
    /// `ClosedForm` or `Oracle`, never `Auto`.
    pub method: Method,
}

/// Multiplicities of every `S^λ`, `λ ⊢ n`, in a tensor power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTable<T> {
    pub n: usize,
    pub r: usize,
    pub rep_kind: RepKind,
    pub method: Method,
    /// Canonical order. With `Method::ClosedForm` only in-range shapes appear.
    pub entries: Vec<DecompositionEntry<T>>,
    /// Shapes skipped by `Method::ClosedForm` because `r > n - λ_2`.
    pub out_of_range: Vec<Partition>,
}

/// Decomposes `ϱ^{⊗r}` or `(S^(n-1,1))^{⊗r}` over all `λ ⊢ n`.
pub fn decompose<T: Exact>(n: usize, r: usize, kind: RepKind, method: Method) -> Result<DecompositionTable<T>> {
    decompose_with_cap(n, r, kind, method, DEFAULT_MAX_N)
}

/// [`decompose`] with an explicit cap on `n` for oracle character tables.
pub fn decompose_with_cap<T: Exact>(
    n: usize,
    r: usize,
    kind: RepKind,
    method: Method,
    cap: usize,
) -> Result<DecompositionTable<T>> {
    if n == 0 {
        return Err(Error::Precondition("decompose needs n >= 1".into()));
    }
    if method == Method::ClosedForm && r == 0 {
        return Err(Error::Precondition(
            "closed forms are stated for r >= 1; use the oracle for r = 0".into(),
        ));
    }
    let shapes = enumerate_partitions(n);
    let needs_table = match method {
        Method::Oracle => true,
        Method::Auto => shapes.iter().any(|l| !in_closed_form_range(l, r)),
        Method::ClosedForm => false,
    };
    let table = if needs_table {
        Some(CharacterTable::<T>::build(n, cap)?)
    } else {
        None
    };

    let computed: Vec<Option<Result<DecompositionEntry<T>>>> = shapes
        .par_iter()
        .map(|lambda| {
            let use_closed = match method {
                Method::ClosedForm => {
                    if !in_closed_form_range(lambda, r) {
                        return None;
                    }
                    true
                }
                Method::Oracle => false,
                Method::Auto => in_closed_form_range(lambda, r),
            };
            let res = if use_closed {
                closed_form(lambda, r, kind).map(|m| (m, Method::ClosedForm))
            } else {
                let t = table.as_ref().expect("table built whenever the oracle is needed");
                oracle_multiplicity_in(t, lambda, r, kind).map(|m| (m, Method::Oracle))
            };
            Some(res.map(|(multiplicity, method)| DecompositionEntry {
                shape: lambda.clone(),
                multiplicity,
                method,
            }))
        })
        .collect();

    let mut entries = Vec::with_capacity(shapes.len());
    let mut out_of_range = Vec::new();
    for (lambda, slot) in shapes.into_iter().zip(computed) {
        match slot {
            Some(entry) => entries.push(entry?),
            None => out_of_range.push(lambda),
        }
    }
    Ok(DecompositionTable {
        n,
        r,
        rep_kind: kind,
        method,
        entries,
        out_of_range,
    })
}

impl<T: Exact> DecompositionTable<T> {
    pub fn get(&self, lambda: &Partition) -> Option<&T> {
        self.entries
            .iter()
            .find(|e| &e.shape == lambda)
            .map(|e| &e.multiplicity)
    }

    pub fn is_complete(&self) -> bool {
        self.out_of_range.is_empty()
    }

    /// `Σ_λ mult_λ · f^λ` over stored entries.
    pub fn dimension_sum(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, e| {
            acc + e.multiplicity.clone() * syt_count::<T>(&e.shape)
        })
    }

    /// Dimension of the tensor power: `n^r` or `(n-1)^r`.
    pub fn expected_dimension(&self) -> T {
        pow(&T::from_usize_exact(self.rep_kind.dimension(self.n)), self.r as u32)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "shape": e.shape,
                    "multiplicity": e.multiplicity.to_string(),
                    "method": e.method,
                })
            })
            .collect();
        json!({
            "n": self.n,
            "r": self.r,
            "rep": self.rep_kind,
            "method": self.method,
            "entries": entries,
            "out_of_range": self.out_of_range,
            "dimension_sum": self.dimension_sum().to_string(),
            "expected_dimension": self.expected_dimension().to_string(),
        })
    }

    /// `shape,multiplicity,method` rows; the shape is quoted since it holds commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("shape,multiplicity,method\n");
        for e in &self.entries {
            out.push_str(&format!("\"{}\",{},{}\n", e.shape, e.multiplicity, e.method));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcomb::bell;
    use num_bigint::BigInt;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn a_examples() {
        for r in 1..=6 {
            assert_eq!(a_multiplicity::<i64>(&Partition::row(6), r).unwrap(), bell::<i64>(r));
            assert_eq!(
                oracle_multiplicity::<i64>(&Partition::row(6), r, RepKind::Defining).unwrap(),
                bell::<i64>(r)
            );
        }
        assert_eq!(a_multiplicity::<i64>(&p(&[4, 1]), 1).unwrap(), 1);
        assert_eq!(a_multiplicity::<i64>(&p(&[4, 1]), 2).unwrap(), 3);
        assert_eq!(
            oracle_multiplicity::<i64>(&p(&[4, 1]), 2, RepKind::Defining).unwrap(),
            3
        );
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_multiplicity::<i64>(&Partition::row(5), 1).unwrap(), 0);
        assert_eq!(b_multiplicity::<i64>(&p(&[4, 1]), 1).unwrap(), 1);
        assert_eq!(b_multiplicity::<i64>(&p(&[4, 1, 1]), 2).unwrap(), 1);
        assert_eq!(
            oracle_multiplicity::<i64>(&p(&[4, 1, 1]), 2, RepKind::Standard).unwrap(),
            1
        );
    }

    #[test]
    fn range_errors_name_the_bound() {
        let err = a_multiplicity::<i64>(&p(&[3, 2]), 4).unwrap_err();
        assert_eq!(
            err,
            Error::OutOfRange {
                shape: "(3,2)".into(),
                r: 4,
                bound: 3
            }
        );
        assert!(a_multiplicity::<i64>(&p(&[3, 2]), 0).is_err());
        assert!(b_multiplicity::<i64>(&p(&[3, 2]), 0).is_err());
        assert!(a_multiplicity::<i64>(&p(&[3]), 3).is_ok());
        assert!(a_multiplicity::<i64>(&p(&[3]), 4).is_err());
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(
            oracle_multiplicity::<i64>(&Partition::row(4), 0, RepKind::Defining).unwrap(),
            1
        );
        assert_eq!(
            oracle_multiplicity::<i64>(&p(&[3, 1]), 0, RepKind::Defining).unwrap(),
            0
        );
        assert_eq!(oracle_multiplicity::<i64>(&p(&[3]), 3, RepKind::Defining).unwrap(), 5);
        assert_eq!(a_multiplicity::<i64>(&p(&[3]), 3).unwrap(), 5);
    }

    #[test]
    fn decompose_defining_r1() {
        let t = decompose::<BigInt>(4, 1, RepKind::Defining, Method::Oracle).unwrap();
        let nonzero: Vec<_> = t
            .entries
            .iter()
            .filter(|e| e.multiplicity != BigInt::from(0))
            .map(|e| (e.shape.clone(), e.multiplicity.clone()))
            .collect();
        assert_eq!(nonzero, vec![(p(&[4]), BigInt::from(1)), (p(&[3, 1]), BigInt::from(1))]);
        assert_eq!(t.entries.len(), 5);
    }

    #[test]
    fn decompose_dimension_sums() {
        let d = decompose::<i64>(5, 2, RepKind::Defining, Method::Oracle).unwrap();
        assert_eq!(d.dimension_sum(), 25);
        let s = decompose::<i64>(5, 2, RepKind::Standard, Method::Oracle).unwrap();
        assert_eq!(s.dimension_sum(), 16);
        assert_eq!(s.expected_dimension(), 16);
    }

    #[test]
    fn decompose_closed_flags_out_of_range() {
        let t = decompose::<i64>(4, 3, RepKind::Defining, Method::ClosedForm).unwrap();
        // bounds: (4)->4, (3,1)->3, (2,2)->2, (2,1,1)->3, (1^4)->3
        assert_eq!(t.out_of_range, vec![p(&[2, 2])]);
        assert_eq!(t.entries.len(), 4);
        assert!(decompose::<i64>(4, 0, RepKind::Defining, Method::ClosedForm).is_err());
        assert!(decompose::<i64>(0, 1, RepKind::Defining, Method::Oracle).is_err());
    }

    #[test]
    fn decompose_auto_annotates() {
        let t = decompose::<i64>(4, 3, RepKind::Standard, Method::Auto).unwrap();
        assert!(t.is_complete());
        for e in &t.entries {
            let expect = if e.shape == p(&[2, 2]) {
                Method::Oracle
            } else {
                Method::ClosedForm
            };
            assert_eq!(e.method, expect);
        }
        assert_eq!(t.dimension_sum(), 27);
        let (m, how) = multiplicity_auto::<i64>(&p(&[2, 2]), 3, RepKind::Standard).unwrap();
        assert_eq!(how, Method::Oracle);
        assert_eq!(m, t.get(&p(&[2, 2])).copied().unwrap());
    }

    #[test]
    fn r0_only_through_oracle() {
        let t = decompose::<i64>(3, 0, RepKind::Standard, Method::Auto).unwrap();
        assert_eq!(t.get(&p(&[3])), Some(&1));
        assert_eq!(t.get(&p(&[2, 1])), Some(&0));
        assert!(t.entries.iter().all(|e| e.method == Method::Oracle));
    }

    #[test]
    fn serializations() {
        let t = decompose::<i64>(3, 1, RepKind::Defining, Method::Oracle).unwrap();
        let v = t.to_json();
        assert_eq!(v["rep"], "defining");
        assert_eq!(v["method"], "oracle");
        assert_eq!(v["entries"][1]["shape"], json!([2, 1]));
        assert_eq!(v["entries"][1]["multiplicity"], "1");
        assert_eq!(v["dimension_sum"], "3");
        assert_eq!(
            t.to_csv(),
            "shape,multiplicity,method\n\"(3)\",1,oracle\n\"(2,1)\",1,oracle\n\"(1,1,1)\",0,oracle\n"
        );
    }
}
