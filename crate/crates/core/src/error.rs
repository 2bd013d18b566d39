use std::fmt;

use crate::lattice::AtomSet;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("exponent overflow (limit {})", u32::MAX)]
    ExponentOverflow,

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("invalid lattice: {0}")]
    Validation(ValidationError),

    #[error("{0} is not an element of the lattice")]
    NotInLattice(AtomSet),

    #[error("interval endpoints {0} and {1} are not comparable")]
    IncomparableEndpoints(AtomSet, AtomSet),

    #[error("degenerate ideal: the unit monomial is a generator")]
    DegenerateIdeal,

    #[error("{what}: {got} exceeds the limit of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Error {
        Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Every requirement a set family failed when it was offered as a lattice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationError {
    /// Atom count outside `1..=64`.
    pub bad_atom_count: Option<usize>,
    /// Sets mentioning atoms outside `1..=n`.
    pub out_of_range: Vec<Vec<usize>>,
    /// Missing members among the empty set, the singletons and the full set.
    pub missing_required: Vec<AtomSet>,
    /// Pairs whose intersection is not in the family.
    pub non_closed_pairs: Vec<(AtomSet, AtomSet)>,
}

impl ValidationError {
    pub fn is_empty(&self) -> bool {
        self.bad_atom_count.is_none()
            && self.out_of_range.is_empty()
            && self.missing_required.is_empty()
            && self.non_closed_pairs.is_empty()
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.bad_atom_count {
            parts.push(format!("atom count {n} outside 1..=64"));
        }
        for s in &self.out_of_range {
            parts.push(format!("set {s:?} has atoms out of range"));
        }
        for s in &self.missing_required {
            parts.push(format!("missing required set {s}"));
        }
        for (p, q) in &self.non_closed_pairs {
            parts.push(format!("{p} ∩ {q} = {} is missing", p.intersection(*q)));
        }
        write!(f, "{}", parts.join("; "))
    }
}
