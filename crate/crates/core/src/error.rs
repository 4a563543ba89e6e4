use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised across parsing, validation, and solving.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header line {line}: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("malformed entry line {line}: {reason}")]
    MalformedEntry { line: usize, reason: String },
    #[error("out-of-range entry line {line}: ({row}, {col}) outside {rows}x{cols}")]
    EntryOutOfRange {
        line: usize,
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate entry line {line}")]
    DuplicateEntry { line: usize },
    #[error("instance file must hold two pattern blocks separated by '---', found {blocks}")]
    InstanceBlocks { blocks: usize },

    #[error("star ({row}, {col}) outside {rows}x{cols} pattern")]
    StarOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate star ({row}, {col})")]
    DuplicateStar { row: usize, col: usize },
    #[error("column index {index} out of range for {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },
    #[error("expected a square pattern, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("state matrix is {n}x{n} but input matrix has {rows} rows")]
    ShapeMismatch { n: usize, rows: usize },
    #[error("system must have at least one state")]
    NoStates,
    #[error("edge ({from}, {to}) references a vertex outside 0..{vertices}")]
    EdgeOutOfRange {
        from: usize,
        to: usize,
        vertices: usize,
    },
    #[error("input vertex {vertex} has an incoming edge")]
    InputHasIncoming { vertex: usize },
    #[error("state vertices must precede input vertices")]
    StatesNotPrefix,

    #[error("set-cover universe must be non-empty")]
    EmptyUniverse,
    #[error("element {element} of set {set} outside universe 0..{universe}")]
    ElementOutOfRange {
        set: usize,
        element: usize,
        universe: usize,
    },
    #[error("uncoverable: element {element} is in no set")]
    Uncoverable { element: usize },
    #[error("set index {index} out of range for {sets} sets")]
    SetOutOfRange { index: usize, sets: usize },

    #[error("reduction precondition failed: state bipartite graph has no perfect matching")]
    AssumptionViolated,
    #[error("infeasible instance: non-top-linked SCC {scc} is actuated by no input")]
    Infeasible { scc: usize },
    #[error("brute-force refused: {inputs} inputs exceed the cap of {cap}")]
    BruteCapExceeded { inputs: usize, cap: usize },
    #[error("missing diagonal star at ({index}, {index})")]
    MissingDiagonal { index: usize },
    #[error("selected inputs {chosen:?} failed the controllability postcheck")]
    PostcheckFailed { chosen: Vec<usize> },
}
