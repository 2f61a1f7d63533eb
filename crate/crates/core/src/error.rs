use thiserror::Error;

/// Errors reported by parsing, enumeration, and invariant evaluation.
///
/// Every domain error names the operation it arose in and the precondition
/// that was violated, so CLI users see which input was at fault.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("letter {name} occurs {count} times; every letter must occur exactly twice")]
    GaussCondition { name: String, count: usize },

    #[error("unknown projection symbol {symbol:?} at byte {position}")]
    UnknownSymbol { symbol: String, position: usize },

    #[error("letter {name} is written with conflicting projections")]
    ConflictingProjection { name: String },

    #[error("invalid alphabet: {message}")]
    InvalidAlphabet { message: String },

    #[error("{operation}: component index {index} out of range for {count} components")]
    ComponentIndex {
        operation: &'static str,
        index: usize,
        count: usize,
    },

    #[error("{operation}: component counts differ ({left} vs {right})")]
    ComponentMismatch {
        operation: &'static str,
        left: usize,
        right: usize,
    },

    #[error("{operation}: phrases are declared over different alphabets")]
    AlphabetMismatch { operation: &'static str },

    #[error("{operation}: input must be free of singular letters")]
    SingularInput { operation: &'static str },

    #[error("star_all: input already contains singular letters")]
    AlreadySingular,

    #[error("{operation}: input must be a one-component word")]
    NotAWord { operation: &'static str },

    #[error("{operation}: alphabet must be {{+,-}} with nu(+) = -")]
    NotSigned { operation: &'static str },

    #[error("{operation}: {quantity} {actual} exceeds the capacity bound {bound}")]
    Capacity {
        operation: &'static str,
        quantity: &'static str,
        actual: u128,
        bound: u128,
    },

    #[error("{operation}: invalid move site: {message}")]
    InvalidSite {
        operation: &'static str,
        message: String,
    },

    #[error("verify: unknown suite {name:?}")]
    UnknownSuite { name: String },

    #[error("{operation}: unknown invariant {name:?}")]
    UnknownInvariant {
        operation: &'static str,
        name: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
