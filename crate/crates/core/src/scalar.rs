use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer scalar used by every computation in the crate.
///
/// Blanket-implemented, so `BigInt`, `i128`, `i64` and `i32` all qualify.
/// Fixed-width types overflow silently in release builds once values grow
/// past their range; use `BigInt` for anything beyond small `n`.
pub trait Exact:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("usize value does not fit the scalar type")
    }
}

impl<T> Exact for T where
    T: Integer
        + Signed
        + Clone
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Debug
        + Display
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn ratio_to_string<T: Exact>(q: &Ratio<T>) -> String {
    if q.denom() == &T::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Exact>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

pub fn factorial<T: Exact>(n: usize) -> T {
    (2..=n).fold(T::one(), |acc, k| acc * T::from_usize_exact(k))
}
