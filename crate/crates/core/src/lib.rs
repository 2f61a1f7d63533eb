//! Combinatorics of nanowords and nanophrases: Gauss phrases with projected
//! letters, cyclic equivalence via shift moves, the singular-letter finite
//! type calculus with its universal invariant, linking matrices, and the
//! Arnold basic invariants of signed words.
//!
//! Everything is exact: integers, rationals, and formal sums over canonical
//! forms. All values are immutable and every operation is a pure function.
//!
//! ```
//! use nanoinv::{Alphabet, Phrase};
//!
//! let alphabet = Alphabet::signed();
//! let word = Phrase::parse("A:+ B:- A:+ | B:-", &alphabet)?;
//! assert_eq!(word.rank(), 2);
//! assert_eq!(nanoinv::cyclic::cyclic_orbit(&word).len(), 2);
//! # Ok::<(), nanoinv::Error>(())
//! ```

pub mod algebra;
pub mod alphabet;
pub mod cli;
pub mod cyclic;
pub mod enumerate;
pub mod error;
pub mod finite_type;
pub mod invariants;
pub mod phrase;
pub mod verify;

pub use algebra::FormalSum;
pub use alphabet::Alphabet;
pub use cyclic::CyclicClass;
pub use error::{Error, Result};
pub use phrase::{CanonicalForm, Phrase};

/// Exact rational numbers; the Arnold invariants take values here.
pub type Rational = num_rational::Ratio<i64>;
