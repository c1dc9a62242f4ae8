//! Error type shared by the library.

use thiserror::Error;

/// Errors reported by constructors and checked operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The rank is out of range for the requested type.
    #[error("invalid rank {rank} for type {kind}")]
    InvalidRank {
        /// Type letter.
        kind: String,
        /// Requested rank.
        rank: usize,
    },
    /// The requested type has no realization in this library.
    #[error("type {0} is not supported")]
    UnsupportedType(String),
    /// The group enumeration exceeded the configured cap.
    #[error("Weyl group has more than {cap} elements")]
    GroupTooLarge {
        /// Configured cap.
        cap: usize,
    },
    /// No closedness classification is known for this type.
    #[error("no closedness classification for type {0}")]
    UnclassifiedType(String),
    /// The operation is only defined for another type.
    #[error("operation requires type {expected}, got {got}")]
    WrongType {
        /// Required type.
        expected: String,
        /// Supplied type.
        got: String,
    },
    /// A subset mentions simple roots that do not exist.
    #[error("invalid simple-root subset: {0}")]
    InvalidSubset(String),
    /// A truncated power series operation lost all significant terms.
    #[error("input already reaches truncation degree {0}")]
    TruncationExceeded(u32),
    /// A coefficient is not invariant under the required parabolic subgroup.
    #[error("element is not invariant under the parabolic subgroup {0}")]
    NotParabolicInvariant(String),
    /// Index sets of composed tuples do not match.
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    /// A vertex value does not lie in its vertex module.
    #[error("value at vertex {0} is not invariant under its stabilizer")]
    VertexModuleViolation(String),
    /// The operation needs the additive law.
    #[error("operation is only supported for the additive law")]
    UnsupportedLaw,
    /// A lattice vector is outside the chosen lattice.
    #[error("vector is not in the chosen lattice")]
    NotInLattice,
    /// Malformed input data.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
