use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("entry {index} is {value}, expected +1 or -1")]
    NotBinary { index: usize, value: i64 },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("parameters fail lambda*(v-1) = sum k(k-1): {lhs} != {rhs}")]
    InfeasibleParams { lhs: i64, rhs: i64 },

    #[error("length {v} is odd, so it cannot carry a periodic Golay parameter set")]
    OddLength { v: usize },

    #[error("lambda = {r} + {s} - {v}/2 is negative")]
    NegativeLambda { v: usize, r: usize, s: usize },

    #[error("{a}^2 + {b}^2 = {sum} differs from 2v = {}", 2 * .v)]
    DecompositionFails { v: usize, a: i64, b: i64, sum: i64 },

    #[error("expected a two-block parameter set, got {blocks} blocks")]
    NotAPair { blocks: usize },

    #[error("{value} is not a unit modulo {v}")]
    NotAUnit { v: usize, value: usize },

    #[error("{value} is not the smallest element of its orbit (representative is {rep})")]
    NotARepresentative { value: usize, rep: usize },

    #[error("index {value} is listed twice")]
    DuplicateIndex { value: usize },

    #[error("element {value} is out of range for modulus {v}")]
    OutOfRange { v: usize, value: usize },

    #[error("subset cuts across the orbit of {rep}")]
    NotOrbitUnion { rep: usize },

    #[error("PAF_A({shift}) + PAF_B({shift}) = {sum}, expected 0")]
    NotComplementary { shift: usize, sum: i64 },

    #[error("pair parameters are infeasible: {reason}")]
    ParameterInfeasible { reason: String },

    #[error("PAF and difference-count checks disagree on a pair at v = {v}")]
    CheckDisagreement { v: usize },

    #[error("no combination of the available orbit sizes sums to {target}")]
    UnreachableCardinality { target: usize },

    #[error("difference count {count} at c = {diff} exceeds lambda = {lambda}")]
    CountExceedsLambda { diff: usize, count: u32, lambda: u32 },

    #[error("moduli differ: {left} vs {right}")]
    IncompatibleModuli { left: usize, right: usize },

    #[error("prime {p} divides v to the odd power {t}; v is not a sum of two squares")]
    OddExponent { p: u64, t: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {value} is not a canonical orbit representative (expected {rep})")]
    RepNotCanonical { line: usize, value: usize, rep: usize },

    #[error("line {line}: stated parameters {stated:?} differ from derived {derived:?}")]
    ParamMismatch { line: usize, stated: (usize, usize, i64), derived: (usize, usize, i64) },

    #[error("invalid search plan: {}", .0.join("; "))]
    InvalidPlan(Vec<String>),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
