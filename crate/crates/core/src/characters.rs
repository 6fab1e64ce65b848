//! Irreducible characters of `S_n` by the Murnaghan–Nakayama rule.
//!
//! Rim hooks are located on the beta-set (first-column hook lengths) of the
//! shape: removing a rim hook of length `k` corresponds to moving one bead
//! from `b` to a free position `b - k`, and its height equals the number of
//! beads strictly between the two positions.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{class_size, enumerate_partitions, fixed_points, CycleType, Partition};
use crate::scalar::{factorial, Exact};

/// Default cap on `n` for full table builds.
pub const DEFAULT_MAX_N: usize = 12;

/// Memo for Murnaghan–Nakayama evaluations keyed by (shape, remaining cycle parts).
///
/// One cache may be reused across many calls sharing the same `n`; a
/// [`CharacterTable`] build uses one cache per row.
#[derive(Debug, Default)]
pub struct MnCache<T> {
    memo: HashMap<(Partition, Vec<usize>), T>,
}

impl<T: Exact> MnCache<T> {
    pub fn new() -> Self {
        Self { memo: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `χ^λ(μ)`; fails when the weights differ.
    pub fn character(&mut self, lambda: &Partition, mu: &CycleType) -> Result<T> {
        if lambda.weight() != mu.weight() {
            return Err(Error::WeightMismatch {
                expected: lambda.weight(),
                found: mu.weight(),
            });
        }
        Ok(self.eval(lambda, mu.parts()))
    }

    // `cycles` is weakly decreasing; the largest remaining part is stripped first.
    fn eval(&mut self, lambda: &Partition, cycles: &[usize]) -> T {
        let Some((&k, rest)) = cycles.split_first() else {
            return if lambda.is_empty() { T::one() } else { T::zero() };
        };
        if lambda.len() <= 1 {
            // One row: every rim hook is horizontal, so the value is 1.
            return T::one();
        }
        let key = (lambda.clone(), cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = T::zero();
        for (smaller, height) in remove_rim_hooks(lambda, k) {
            let v = self.eval(&smaller, rest);
            if height % 2 == 0 {
                total = total + v;
            } else {
                total = total - v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Every shape obtained from `lambda` by deleting a rim hook of length `k`,
/// paired with the hook's height (rows spanned minus one).
pub fn remove_rim_hooks(lambda: &Partition, k: usize) -> Vec<(Partition, usize)> {
    let len = lambda.len();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i))
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, c| c.cmp(a));
        let parts = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        out.push((Partition::new(parts).expect("bead move yields a partition"), height));
    }
    out
}

/// `χ^λ(μ)` with a fresh memo.
pub fn mn_character<T: Exact>(lambda: &Partition, mu: &CycleType) -> Result<T> {
    MnCache::new().character(lambda, mu)
}

/// Character of the defining representation: the number of fixed points.
pub fn fixed_point_character<T: Exact>(mu: &CycleType) -> T {
    T::from_usize_exact(fixed_points(mu))
}

/// Full character table of `S_n`, rows and columns in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable<T> {
    n: usize,
    shapes: Vec<Partition>,
    classes: Vec<CycleType>,
    values: Vec<Vec<T>>,
}

/// Builds the table for `1 <= n <= DEFAULT_MAX_N`.
pub fn character_table<T: Exact>(n: usize) -> Result<CharacterTable<T>> {
    CharacterTable::build(n, DEFAULT_MAX_N)
}

impl<T: Exact> CharacterTable<T> {
    /// Builds the table for `1 <= n <= cap`, rows in parallel.
    pub fn build(n: usize, cap: usize) -> Result<Self> {
        if n == 0 || n > cap {
            return Err(Error::ResourceGuard {
                what: "character table",
                n,
                cap,
            });
        }
        let shapes = enumerate_partitions(n);
        let classes = shapes.clone();
        let values = shapes
            .par_iter()
            .map(|lambda| {
                let mut cache = MnCache::new();
                classes.iter().map(|mu| cache.eval(lambda, mu.parts())).collect()
            })
            .collect();
        Ok(Self {
            n,
            shapes,
            classes,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn shape_index(&self, lambda: &Partition) -> Option<usize> {
        self.shapes.binary_search(lambda).ok()
    }

    pub fn class_index(&self, mu: &CycleType) -> Option<usize> {
        self.classes.binary_search(mu).ok()
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[T]> {
        self.shape_index(lambda).map(|i| self.values[i].as_slice())
    }

    pub fn value(&self, lambda: &Partition, mu: &CycleType) -> Option<&T> {
        let i = self.shape_index(lambda)?;
        let j = self.class_index(mu)?;
        Some(&self.values[i][j])
    }

    /// `{"n", "shapes", "classes", "values"}` with values as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let values: Vec<Vec<String>> = self
            .values
            .iter()
            .map(|row| row.iter().map(T::to_string).collect())
            .collect();
        serde_json::json!({
            "n": self.n,
            "shapes": self.shapes,
            "classes": self.classes,
            "values": values,
        })
    }

    /// Bare value grid: one line per shape, one column per class, both in
    /// canonical order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.values {
            let line: Vec<String> = row.iter().map(T::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// `Σ_μ |C_μ| χ^λ(μ) χ^λ'(μ) = n! [λ = λ']` for every pair of rows.
    pub fn rows_orthonormal(&self) -> bool {
        let sizes: Vec<T> = self.classes.iter().map(class_size::<T>).collect();
        let order = factorial::<T>(self.n);
        (0..self.shapes.len()).all(|a| {
            (a..self.shapes.len()).all(|b| {
                let s = sizes
                    .iter()
                    .zip(self.values[a].iter().zip(&self.values[b]))
                    .fold(T::zero(), |acc, (c, (x, y))| acc + c.clone() * x.clone() * y.clone());
                s == if a == b { order.clone() } else { T::zero() }
            })
        })
    }

    /// `Σ_λ χ^λ(μ) χ^λ(μ') = z_μ [μ = μ']` for every pair of columns.
    pub fn columns_orthogonal(&self) -> bool {
        let order = factorial::<T>(self.n);
        (0..self.classes.len()).all(|a| {
            (a..self.classes.len()).all(|b| {
                let s = self
                    .values
                    .iter()
                    .fold(T::zero(), |acc, row| acc + row[a].clone() * row[b].clone());
                let expect = if a == b {
                    order.clone() / class_size::<T>(&self.classes[a])
                } else {
                    T::zero()
                };
                s == expect
            })
        })
    }
}
