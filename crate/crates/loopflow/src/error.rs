//! Library error type.
//!
//! Numeric payloads (residuals, discrepancies) are carried as display
//! strings so the enum stays independent of the scalar backend; they are
//! diagnostics, not values to compute with.

use thiserror::Error;

use crate::grid::{Cell, Node};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A flux claimed to be divergence-free has net outflow at a node.
    #[error("flux is not divergence-free: residual {residual} at node ({}, {})", node.x, node.y)]
    NotDivergenceFree { node: Node, residual: String },

    /// Float-mode potential integration found two routes to a cell that
    /// disagree beyond tolerance.
    #[error("inconsistent circulation between cells ({}, {}) and ({}, {}): discrepancy {discrepancy}",
            cells.0.x, cells.0.y, cells.1.x, cells.1.y)]
    InconsistentCirculation { cells: (Cell, Cell), discrepancy: String },

    /// Operation requires a set with exactly one 4-connected component.
    #[error("pixel set is not indecomposable (has {components} 4-components)")]
    NotIndecomposable { components: usize },

    /// Operation requires a simple pixel set (nonempty, 4-connected, with an
    /// 8-connected complement).
    #[error("pixel set is not simple")]
    NotSimple,

    /// Superlevel sets handed to `build_from_superlevels` must be nested.
    #[error("superlevel sets at positions {} and {} are not nested", pair.0, pair.1)]
    NotNested { pair: (usize, usize) },

    /// Extraction requires a nonnegative field.
    #[error("field has a negative value at cell ({}, {})", cell.x, cell.y)]
    NotNonNegative { cell: Cell },

    /// Extraction requires a field that is not identically zero.
    #[error("field is identically zero")]
    IdenticallyZero,

    /// Monotone decomposition exceeded its iteration cap; this signals an
    /// implementation bug, not a property of the input.
    #[error("monotone decomposition did not terminate within {iteration_cap} extractions")]
    NonTermination { iteration_cap: usize },

    /// The field is not monotone (some threshold has a disconnected
    /// superlevel set or a trapped sublevel region) or changes sign.
    #[error("field is not a constant-sign monotone field")]
    NotMonotone,

    /// Two objects that must share a grid do not.
    #[error("grid mismatch: {0}x{1} vs {2}x{3}")]
    GridMismatch(u32, u32, u32, u32),

    /// Path stripping requires cycle-free support; carries one directed
    /// cycle as witness (a closed node sequence).
    #[error("flux support contains a directed cycle through {} nodes", cycle.len().saturating_sub(1))]
    NotAcyclic { cycle: Vec<Node> },

    /// Extreme-point certification requires a unit-norm input.
    #[error("field does not have unit norm: {norm}")]
    NotNormalized { norm: String },

    /// A verification precondition failed (e.g. orientation check on a pair
    /// that is not an exact decomposition).
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// A curve violates its structural invariants (too short, non-unit
    /// steps, endpoints of a closed curve differ, ...).
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    /// Cone-constrained checks need positive constants and weights; the
    /// payload is the full diagnostic.
    #[error("{0}")]
    NonPositiveConstant(String),

    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
