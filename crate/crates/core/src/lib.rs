//! Exact representation-theoretic computations for the symmetric group `S_n`.
//!
//! The crate computes irreducible multiplicities in tensor powers of the
//! defining representation and of the standard representation `S^(n-1,1)`,
//! both through closed forms in Stirling numbers and through an independent
//! character inner product. It also propagates the expected number of fixed
//! points of random walks whose increments are class measures, exactly via
//! Fourier scalars and empirically via seeded simulation.
//!
//! All exact code is generic over an integer scalar implementing [`Exact`]
//! (`BigInt`, `i128`, `i64`, ...). The aliases below fix the scalar to
//! [`BigInt`], which is what the command-line tool and the verification
//! suites use.

pub mod characters;
pub mod error;
pub mod markov;
pub mod partitions;
pub mod scalar;
pub mod seqcomb;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::{CycleType, Partition};
pub use scalar::Exact;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Character table with arbitrary-precision entries.
pub type BigCharacterTable = characters::CharacterTable<BigInt>;
/// Decomposition table with arbitrary-precision multiplicities.
pub type BigDecompositionTable = tensor::DecompositionTable<BigInt>;
/// Class measure with arbitrary-precision rational weights.
pub type BigClassMeasure = markov::ClassMeasure<BigInt>;
/// Chain specification with arbitrary-precision rational weights.
pub type BigChainSpec = markov::ChainSpec<BigInt>;
/// Fourier scalar with an arbitrary-precision rational value.
pub type BigFourierScalar = markov::FourierScalar<BigInt>;
/// Stirling table with arbitrary-precision entries.
pub type BigStirlingTable = seqcomb::StirlingTable<BigInt>;
