use core::fmt;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Degree sum is not 2n - 2.
    SumMismatch { sum: i64, expected: i64 },
    /// A degree entry is zero or negative.
    NonPositiveEntry,
    /// Fewer than two vertices.
    TooSmall,
    /// Sequences of unequal length where padding is disabled.
    LengthMismatch { left: usize, right: usize },
    /// The two sequences are not comparable under (weak) majorization.
    NotComparable,
    /// Parameter out of range for the requested factory sequence.
    InvalidParameter(&'static str),
    /// A leveled degree sequence whose child counts cannot be realized.
    InconsistentLevels {
        level: usize,
        expected: usize,
        actual: usize,
    },
    /// Input exceeds the desk-scale guard.
    TooLarge { limit: u64 },
    /// The named vertex pair is not an edge.
    NotAnEdge,
    /// The shift endpoints are not at the same level.
    NotSameLevel,
    /// The shift would create a cycle or disconnect the tree.
    WouldDisconnect,
    /// The shifted edge does not hang below a non-root branch.
    NotABranchEdge,
    /// The named pair is not a parent/child pair in the rooted view.
    NotParentChild,
    /// The map supplied to the majorization lemma is not a permutation.
    BadPermutation,
    /// Edge list does not describe a tree / forest.
    InvalidGraph(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SumMismatch { sum, expected } => {
                write!(f, "SumMismatch: degree sum {sum}, expected {expected}")
            }
            Error::NonPositiveEntry => write!(f, "NonPositiveEntry: every degree must be >= 1"),
            Error::TooSmall => write!(f, "TooSmall: need at least 2 vertices"),
            Error::LengthMismatch { left, right } => {
                write!(f, "LengthMismatch: {left} vs {right} entries")
            }
            Error::NotComparable => write!(f, "NotComparable: sequences are not majorization-comparable"),
            Error::InvalidParameter(msg) => write!(f, "InvalidParameter: {msg}"),
            Error::InconsistentLevels { level, expected, actual } => write!(
                f,
                "InconsistentLevels: level {level} has {actual} vertices, child counts give {expected}"
            ),
            Error::TooLarge { limit } => write!(f, "TooLarge: exceeds guard {limit}"),
            Error::NotAnEdge => write!(f, "NotAnEdge"),
            Error::NotSameLevel => write!(f, "NotSameLevel"),
            Error::WouldDisconnect => write!(f, "WouldDisconnect"),
            Error::NotABranchEdge => write!(f, "NotABranchEdge"),
            Error::NotParentChild => write!(f, "NotParentChild"),
            Error::BadPermutation => write!(f, "BadPermutation"),
            Error::InvalidGraph(msg) => write!(f, "InvalidGraph: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
