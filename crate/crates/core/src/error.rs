use thiserror::Error;

use crate::chirotope::{Label, ValidationReport};

pub type Result<T> = std::result::Result<T, Error>;

/// Unified error type for the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least {min} points, got {got}")]
    NTooSmall { min: usize, got: usize },

    #[error("n = {got} exceeds the supported maximum {max} for this operation")]
    NTooLarge { max: usize, got: usize },

    #[error("points {i} and {j} coincide")]
    DuplicatePoint { i: usize, j: usize },

    #[error("points {i}, {j}, {k} are collinear")]
    CollinearTriple { i: usize, j: usize, k: usize },

    #[error("labels must be pairwise distinct and in range: {labels:?} (n = {n})")]
    RepeatedLabel { labels: Vec<Label>, n: usize },

    #[error("sign table has length {got}, expected {expected} for n = {n}")]
    BadTableLength { n: usize, expected: usize, got: usize },

    #[error("subset of size {got} is too small; need at least {min}")]
    SubsetTooSmall { min: usize, got: usize },

    #[error("brute-force search is guarded to n <= {max}, got n = {got}")]
    NTooLargeForBrute { max: usize, got: usize },

    #[error("{what} must be at least {min}, got {got}")]
    ArityTooSmall { what: &'static str, min: usize, got: usize },

    #[error("k must be even, got {got}")]
    KNotEven { got: usize },

    #[error("point {p} is a member of X")]
    PInX { p: Label },

    #[error("point {p} does not belong to spike {spike}")]
    NotInSpike { spike: usize, p: Label },

    #[error("points {p} and {q} in spike {spike} satisfy more than one order relation")]
    AmbiguousRelation { spike: usize, p: Label, q: Label },

    #[error("points {p} and {q} in spike {spike} satisfy no order relation")]
    NoRelation { spike: usize, p: Label, q: Label },

    #[error("triple {labels:?} in spike {spike} is not a chain under the {kind} order")]
    NotAChain {
        spike: usize,
        kind: &'static str,
        labels: Vec<Label>,
    },

    #[error("vertical triple {labels:?} in spike {spike} classifies as {status}")]
    BothOrNeither {
        spike: usize,
        labels: Vec<Label>,
        status: &'static str,
    },

    #[error("triple coloring violates the transitive-closure rule at chain {witness:?}")]
    InvalidColoring { witness: [usize; 4] },

    #[error("no {k}-element subset in convex position exists")]
    NoConvexKSet { k: usize },

    #[error("exhaustive clustering is guarded to n <= {max_n}, k <= {max_k} (got n = {n}, k = {k})")]
    ExhaustiveGuard {
        max_n: usize,
        max_k: usize,
        n: usize,
        k: usize,
    },

    #[error("a join guaranteed convex failed revalidation: {context} -> {members:?}")]
    AssemblyContradiction {
        context: String,
        members: Vec<Label>,
    },

    #[error("generator gave up after {attempts} rejected attempts")]
    ExhaustedAttempts { attempts: usize },

    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("sign table fails axiom validation ({} violation(s) recorded)", report.violations.len())]
    AxiomViolation { report: ValidationReport },

    #[error("stored coordinates disagree with the sign table at triple ({i}, {j}, {k})")]
    CoordsInconsistent { i: usize, j: usize, k: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(&'static str),
}
