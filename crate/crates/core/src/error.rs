use std::fmt;

use thiserror::Error;

use crate::Elem;

/// Why a table fails to be a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupFailure {
    NoIdentity,
    NotAssociative { a: Elem, b: Elem, c: Elem },
    MissingInverse { a: Elem },
}

impl fmt::Display for GroupFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFailure::NoIdentity => write!(f, "no two-sided identity"),
            GroupFailure::NotAssociative { a, b, c } => {
                write!(f, "not associative at a={a} b={b} c={c}")
            }
            GroupFailure::MissingInverse { a } => write!(f, "no inverse for a={a}"),
        }
    }
}

/// Validation failures. Witness indices refer to the element order of the
/// tables as they were handed in.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("empty carrier")]
    Empty,
    #[error("table orders differ: add has {add}, mul has {mul}")]
    OrderMismatch { add: usize, mul: usize },
    #[error("table has {len} entries, expected {expected}")]
    BadShape { len: usize, expected: usize },
    #[error("{table} table entry at ({row}, {col}) is {value}, outside 0..{order}")]
    EntryOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("NotAGroup: {0}")]
    NotAGroup(GroupFailure),
    #[error("AddNotAssociative a={a} b={b} c={c}")]
    AddNotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("NotLeftCancellative row={row}: {row}+{b} = {row}+{c}")]
    NotLeftCancellative { row: Elem, b: Elem, c: Elem },
    #[error("CompatibilityViolation a={a} b={b} c={c}")]
    CompatibilityViolation { a: Elem, b: Elem, c: Elem },
    #[error("InternalInconsistency: {0}")]
    InternalInconsistency(String),
}

impl ValidationError {
    /// Renders the diagnostic with element labels in place of indices.
    pub fn describe(&self, labels: &[String]) -> String {
        let l = |i: &Elem| labels.get(*i).cloned().unwrap_or_else(|| i.to_string());
        match self {
            ValidationError::NotAGroup(GroupFailure::NotAssociative { a, b, c }) => format!(
                "NotAGroup: (B,∘) not associative at a={} b={} c={}",
                l(a),
                l(b),
                l(c)
            ),
            ValidationError::NotAGroup(GroupFailure::MissingInverse { a }) => {
                format!("NotAGroup: no inverse for a={}", l(a))
            }
            ValidationError::AddNotAssociative { a, b, c } => {
                format!("AddNotAssociative a={} b={} c={}", l(a), l(b), l(c))
            }
            ValidationError::NotLeftCancellative { row, b, c } => format!(
                "NotLeftCancellative row={}: {}+{} = {}+{}",
                l(row),
                l(row),
                l(b),
                l(row),
                l(c)
            ),
            ValidationError::CompatibilityViolation { a, b, c } => {
                format!("CompatibilityViolation a={} b={} c={}", l(a), l(b), l(c))
            }
            other => other.to_string(),
        }
    }
}

/// Failures of operations on validated structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("element {0} is not in G = B + 0")]
    NotInG(Elem),
    #[error("empty operand")]
    EmptyOperand,
    #[error("E is not an ideal (witness b={b} e={e}: b∘e∘b⁻ = {conjugate} ∉ E)")]
    ENotIdeal { b: Elem, e: Elem, conjugate: Elem },
    #[error("subset is not a subsemigroup of (B,+): {a}+{b} leaves it")]
    NotASubsemigroup { a: Elem, b: Elem },
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("subset is not closed under both operations: {0}")]
    NotClosed(String),
    #[error("quotient ill-defined at a={a} b={b}")]
    QuotientIllDefined { a: Elem, b: Elem },
    #[error("map is not an endomorphism: φ({a}∘{b}) ≠ φ({a})∘φ({b})")]
    NotEndomorphism { a: Elem, b: Elem },
    #[error("map is not idempotent at {0}")]
    NotIdempotent(Elem),
    #[error("action is not a homomorphism at {a}, {b}")]
    NotAHomomorphism { a: Elem, b: Elem },
    #[error("action of {actor} is not an automorphism of the target")]
    NotAutomorphism { actor: Elem },
    #[error("(B,+) is not a group")]
    AddNotAGroup,
    #[error("structures have different orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("order {order} exceeds the raw enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("independent routes disagree: {0}")]
    InconsistentEquivalences(String),
    #[error("consistency violation [{theorem}]: {witness}")]
    ConsistencyViolation {
        theorem: &'static str,
        witness: String,
    },
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
