use thiserror::Error;

use crate::decomposition::DecompositionViolation;
use crate::fusion::RingViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("label index {label} out of range for a ring with {rank} labels")]
    LabelOutOfRange { label: usize, rank: usize },

    #[error("unknown label name {0:?}")]
    UnknownLabel(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("Verlinde entry N[{a}][{b}][{c}] is {residual:e} away from an integer")]
    ResidualTooLarge {
        a: usize,
        b: usize,
        c: usize,
        residual: f64,
    },

    #[error("S-matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogName(String),

    #[error("fusion ring violates {} axiom(s), first: {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidRing(Vec<RingViolation>),

    #[error("invalid modular data: {0}")]
    InvalidModularData(String),

    #[error("modular data is not modular (transparent non-vacuum labels present)")]
    NotModular,

    #[error("genus {genus} exceeds the supported maximum {max}")]
    GenusTooLarge { genus: u32, max: u32 },

    #[error("boundary index {index} out of range (boundary has {len} circles)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("circles {0} and {1} do not have opposite orientations")]
    OrientationMismatch(usize, usize),

    #[error("boundary index {0} used more than once in a matching")]
    DuplicateMatch(usize),

    #[error("decomposition is invalid: {}", .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidDecomposition(Vec<DecompositionViolation>),

    #[error("labeling has {found} labels, expected {expected}")]
    LabelingLength { expected: usize, found: usize },

    #[error("{edges} internal edges exceed the brute-force cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },

    #[error("internal edge {0} does not join two distinct pants")]
    EdgeNotBetweenTwoPants(usize),

    #[error("parse error{}: {message}", .position.map(|(l, c)| format!(" at line {l}, column {c}")).unwrap_or_default())]
    Parse {
        message: String,
        position: Option<(usize, usize)>,
    },

    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LabelOutOfRange { .. } => "LabelOutOfRange",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::Overflow => "Overflow",
            Error::ResidualTooLarge { .. } => "ResidualTooLarge",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::UnknownCatalogName(_) => "UnknownCatalogName",
            Error::InvalidRing(_) => "ValidationError",
            Error::InvalidModularData(_) => "ValidationError",
            Error::NotModular => "NotModular",
            Error::GenusTooLarge { .. } => "GenusTooLarge",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::OrientationMismatch(..) => "OrientationMismatch",
            Error::DuplicateMatch(_) => "DuplicateMatch",
            Error::InvalidDecomposition(_) => "InvalidDecomposition",
            Error::LabelingLength { .. } => "LabelingLength",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::EdgeNotBetweenTwoPants(_) => "EdgeNotBetweenTwoPants",
            Error::Parse { .. } => "ParseError",
            Error::Validation(_) => "ValidationError",
        }
    }
}
