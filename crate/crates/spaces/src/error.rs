use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed atom data: non-finite entries, negative value or mass.
    #[error("invalid atom {index}: {reason}")]
    InvalidAtom { index: usize, reason: String },

    /// An argument outside an operation's domain (t <= 0, lambda <= 0, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Index parameters outside their admissible range (p < 1, kappa on the
    /// boundary, flavor/index mismatch, ...).
    #[error("invalid indices: {0}")]
    InvalidIndices(String),

    /// Malformed grid data: dimension, resolution, box or cell errors.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A cube that does not fit inside the grid it is applied to.
    #[error("cube out of bounds: {0}")]
    CubeOutOfBounds(String),

    /// Input document could not be parsed into a step profile or grid.
    #[error("parse error: {0}")]
    Parse(String),
}
