//! Error types shared across the crate.

use thiserror::Error;

/// Failures while constructing or slicing tournaments.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("invalid vertex count {n}")]
    InvalidCount { n: usize },
    #[error("{q} is not prime")]
    NotPrime { q: usize },
    #[error("{q} is not congruent to 3 mod 4")]
    BadResidueClass { q: usize },
    #[error("n = {n} is not a multiple of the block size {block}")]
    NotMultiple { n: usize, block: usize },
    #[error("provided block of size {size} contains a transitive sub-tournament on {k} + 1 vertices")]
    BlockNotFree { size: usize, k: usize },
    #[error("witness search for k = {k} exhausted its budget; best size achieved: {best_size}")]
    SearchExhausted { k: usize, best_size: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set over universe {set} used with tournament of size {n}")]
    UniverseMismatch { set: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("pair ({u}, {v}) has zero or two orientations")]
    BrokenPair { u: usize, v: usize },
    #[error("row of vertex {vertex} has bits set beyond n")]
    DirtyPadding { vertex: usize },
    #[error("edge count {got}, expected {expect}")]
    BadEdgeCount { got: u64, expect: u64 },
}

/// A vertex sequence failed to be a directed path of the host tournament.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {vertex} appears more than once")]
    Duplicate { vertex: usize },
    #[error("consecutive pair at positions {pos}, {} is not an edge", pos + 1)]
    NotAnEdge { pos: usize },
}

/// Structural or orientation defects of a claimed shortcut tree.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree has {got} vertex slots, tournament has {expect}")]
    SizeMismatch { got: usize, expect: usize },
    #[error("root {root} out of range")]
    RootOutOfRange { root: usize },
    #[error("child {child} out of range")]
    ChildOutOfRange { child: usize },
    #[error("vertex {vertex} is reached twice (two parents or a cycle)")]
    DoubleParent { vertex: usize },
    #[error("vertex {vertex} is not reachable from the root")]
    Unreachable { vertex: usize },
    #[error("left descendant {descendant} of {vertex} is not an in-neighbor")]
    LeftOrientation { vertex: usize, descendant: usize },
    #[error("right descendant {descendant} of {vertex} is not an out-neighbor")]
    RightOrientation { vertex: usize, descendant: usize },
}

/// Errors from the exact (exponential-time) oracles.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the cap {cap} for this oracle; pass an explicit cap to override")]
    CapExceeded { n: usize, cap: usize },
    #[error("n = {n} exceeds the hard limit {limit} (state space too large)")]
    HardLimit { n: usize, limit: usize },
}

/// Errors from pair statistics over too-small tournaments.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("operation needs two distinct vertices")]
    SameVertex,
    #[error("tournament has fewer than two vertices")]
    TooSmall,
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
}

/// Parse failures for the canonical file formats.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing or malformed header line (expected \"tournament v1\")")]
    BadMagic,
    #[error("missing or malformed size line (expected \"n=<N>\")")]
    BadSizeLine,
    #[error("declared n = 0 is not a valid tournament size")]
    ZeroSize,
    #[error("expected {expect} matrix rows, found {got}")]
    RowCountMismatch { got: usize, expect: usize },
    #[error("row {row} has {got} cells, expected {expect}")]
    RowLengthMismatch { row: usize, got: usize, expect: usize },
    #[error("cell ({row}, {col}) is not '0' or '1'")]
    BadCell { row: usize, col: usize },
    #[error("diagonal cell ({i}, {i}) must be 0")]
    DiagonalNotZero { i: usize },
    #[error("pair ({u}, {v}) is oriented both ways or neither way")]
    Antisymmetry { u: usize, v: usize },
    #[error("line {line}: {what}")]
    BadLine { line: usize, what: String },
    #[error("unexpected trailing content at line {line}")]
    TrailingContent { line: usize },
}
