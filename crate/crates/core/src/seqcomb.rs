//! Binomial coefficients, Stirling numbers of the second kind and Bell numbers.
//!
//! Everything is built by integer recurrences. The free functions share a
//! process-wide cache per scalar type, grown on demand behind a mutex.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::scalar::Exact;

/// Triangle of `S(r, i)` for `0 <= i <= r <= max_r`.
#[derive(Debug, Clone)]
pub struct StirlingTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Exact> Default for StirlingTable<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Exact> StirlingTable<T> {
    pub fn new() -> Self {
        Self {
            rows: vec![vec![T::one()]],
        }
    }

    pub fn with_max_r(max_r: usize) -> Self {
        let mut t = Self::new();
        t.ensure(max_r);
        t
    }

    pub fn max_r(&self) -> usize {
        self.rows.len() - 1
    }

    /// Extends the triangle through row `r`.
    pub fn ensure(&mut self, r: usize) {
        while self.rows.len() <= r {
            let prev = self.rows.last().expect("row 0 always present");
            let m = prev.len();
            let mut row = Vec::with_capacity(m + 1);
            row.push(T::zero());
            for i in 1..=m {
                // S(r,i) = i*S(r-1,i) + S(r-1,i-1)
                let stay = if i < m {
                    T::from_usize_exact(i) * prev[i].clone()
                } else {
                    T::zero()
                };
                row.push(stay + prev[i - 1].clone());
            }
            self.rows.push(row);
        }
    }

    pub fn get(&mut self, r: usize, i: usize) -> T {
        if i > r {
            return T::zero();
        }
        self.ensure(r);
        self.rows[r][i].clone()
    }

    /// Stored row `r`, or `None` if not yet computed.
    pub fn row(&self, r: usize) -> Option<&[T]> {
        self.rows.get(r).map(Vec::as_slice)
    }

    pub fn bell(&mut self, t: usize) -> T {
        self.ensure(t);
        self.rows[t].iter().fold(T::zero(), |acc, s| acc + s.clone())
    }
}

/// Pascal's triangle, grown on demand.
#[derive(Debug, Clone)]
pub struct BinomialTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Exact> Default for BinomialTable<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Exact> BinomialTable<T> {
    pub fn new() -> Self {
        Self {
            rows: vec![vec![T::one()]],
        }
    }

    pub fn ensure(&mut self, a: usize) {
        while self.rows.len() <= a {
            let prev = self.rows.last().expect("row 0 always present");
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(T::one());
            for w in prev.windows(2) {
                row.push(w[0].clone() + w[1].clone());
            }
            row.push(T::one());
            self.rows.push(row);
        }
    }

    pub fn get(&mut self, a: usize, b: usize) -> T {
        if b > a {
            return T::zero();
        }
        self.ensure(a);
        self.rows[a][b].clone()
    }
}

/// Per-scalar-type bundle of cached tables.
#[derive(Debug)]
pub struct SeqTables<T: Exact> {
    pub stirling: StirlingTable<T>,
    pub binomial: BinomialTable<T>,
}

impl<T: Exact> Default for SeqTables<T> {
    fn default() -> Self {
        Self {
            stirling: StirlingTable::new(),
            binomial: BinomialTable::new(),
        }
    }
}

type CacheMap = HashMap<TypeId, Box<dyn Any + Send>>;

fn caches() -> &'static Mutex<CacheMap> {
    static CACHES: OnceLock<Mutex<CacheMap>> = OnceLock::new();
    CACHES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Runs `f` against the shared tables for scalar type `T`.
pub fn with_tables<T: Exact, R>(f: impl FnOnce(&mut SeqTables<T>) -> R) -> R {
    let mut guard = caches().lock().unwrap_or_else(|e| e.into_inner());
    let entry = guard
        .entry(TypeId::of::<T>())
        .or_insert_with(|| Box::new(SeqTables::<T>::default()));
    let tables = entry
        .downcast_mut::<SeqTables<T>>()
        .expect("cache entry keyed by its own TypeId");
    f(tables)
}

/// Stirling number of the second kind `S(r, i)`.
pub fn stirling2<T: Exact>(r: usize, i: usize) -> T {
    with_tables(|t: &mut SeqTables<T>| t.stirling.get(r, i))
}

/// Bell number `B_t`, with `B_0 = 1`.
pub fn bell<T: Exact>(t: usize) -> T {
    with_tables(|tb: &mut SeqTables<T>| tb.stirling.bell(t))
}

/// Binomial coefficient, zero when `b > a`.
pub fn binomial<T: Exact>(a: usize, b: usize) -> T {
    with_tables(|t: &mut SeqTables<T>| t.binomial.get(a, b))
}
