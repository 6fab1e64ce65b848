//! Integer partitions, Young-diagram counts and conjugacy-class bookkeeping.
//!
//! A [`Partition`] serves both as a shape `λ` indexing an irreducible
//! representation and as a cycle type `μ` indexing a conjugacy class.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{factorial, pow, Exact};

/// Weakly decreasing sequence of positive integers.
///
/// `Ord` is reverse lexicographic on the parts, so sorting ascending (or
/// iterating a `BTreeMap` keyed by partitions) yields the canonical order
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

/// A partition read as the cycle lengths of a permutation.
pub type CycleType = Partition;

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts `parts` into weakly decreasing order; zero parts are dropped.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let n = parts.iter().sum();
        Self { parts, n }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-row shape `(n)`; empty when `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_sorted(vec![n])
        }
    }

    /// The identity cycle type `(1, ..., 1)`.
    pub fn column(n: usize) -> Self {
        Self::from_sorted(vec![1; n])
    }

    /// The shape `(n-1, 1)` of the standard representation. Requires `n >= 2`.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 2, "the standard shape needs n >= 2");
        Self::from_sorted(vec![n - 1, 1])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (zero-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Conjugate (transposed) shape.
    pub fn conjugate(&self) -> Self {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Self::from_sorted(parts)
    }

    /// Multiplicity of each part size.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    PartitionIter::new(n).collect()
}

/// Iterator over the partitions of `n`, reverse lexicographic.
pub struct PartitionIter {
    next: Option<Vec<usize>>,
}

impl PartitionIter {
    pub fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Self { next: Some(first) }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor: decrement the last part exceeding 1, then refill the
        // freed weight greedily with parts no larger than the new value.
        if let Some(pos) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..pos].to_vec();
            let v = current[pos] - 1;
            let mut rest = current.len() - pos;
            succ.push(v);
            while rest > 0 {
                let take = rest.min(v);
                succ.push(take);
                rest -= take;
            }
            self.next = Some(succ);
        }
        Some(Partition::from_sorted(current))
    }
}

/// `λ̄ = (λ_2, λ_3, ...)`: the shape with its first row removed.
pub fn truncate(lambda: &Partition) -> Partition {
    Partition::from_sorted(lambda.parts.iter().skip(1).copied().collect())
}

/// Hook length of every cell, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<usize> {
    let conj = lambda.conjugate();
    let mut hooks = Vec::with_capacity(lambda.weight());
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row {
            hooks.push(row - j + conj.part(j) - i - 1);
        }
    }
    hooks
}

/// Number of standard Young tableaux `f^λ`, by the hook length formula.
pub fn syt_count<T: Exact>(lambda: &Partition) -> T {
    let hooks = hook_lengths(lambda)
        .into_iter()
        .fold(T::one(), |acc, h| acc * T::from_usize_exact(h));
    factorial::<T>(lambda.weight()) / hooks
}

/// Centralizer order `z_μ = Π_i i^{m_i} m_i!`.
pub fn centralizer_order<T: Exact>(mu: &CycleType) -> T {
    mu.multiplicities().into_iter().fold(T::one(), |acc, (part, mult)| {
        acc * pow(&T::from_usize_exact(part), mult as u32) * factorial::<T>(mult)
    })
}

/// Size of the conjugacy class of cycle type `μ` in `S_{|μ|}`.
pub fn class_size<T: Exact>(mu: &CycleType) -> T {
    factorial::<T>(mu.weight()) / centralizer_order::<T>(mu)
}

/// Number of parts equal to 1.
pub fn fixed_points(mu: &CycleType) -> usize {
    mu.parts.iter().filter(|&&p| p == 1).count()
}

/// Cycle type of a permutation given as an image array (`perm[i]` is the image of `i`).
pub fn cycle_type_of(perm: &[usize]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts)
}
