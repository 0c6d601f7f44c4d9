use thiserror::Error;

/// Shape of a matrix as `(rows, cols)`.
pub type Shape = (usize, usize);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: Shape,
        right: Shape,
    },
    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrices must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("entry ({row}, {col}) = {value} is not a finite nonnegative real")]
    InvalidEntry { row: usize, col: usize, value: f64 },
    #[error("index {} out of range 1..={n}", .index + 1)]
    IndexOutOfRange { index: usize, n: usize },
    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("not an isometry ({property}): {detail}")]
    NotAnIsometry {
        property: IsometryProperty,
        detail: String,
    },
    #[error("z = {z} lies outside the range [{lo}, {hi}]")]
    ValueOutOfRange { z: f64, lo: f64, hi: f64 },
    #[error("brute-force cap exceeded: n = {n} > cap = {cap} (raise it with --cap or TROPIRANGE_CAP)")]
    CapExceeded { n: usize, cap: usize },
    #[error("the local spectral radius is undefined at the zero vector")]
    ZeroVector,
    #[error("diagonal is not in ascending order at position {position}")]
    DiagonalNotSorted { position: usize },
    #[error("empty set")]
    EmptySet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSquare { .. } => "not_square",
            Error::Empty => "empty_matrix",
            Error::EntryCount { .. } => "entry_count",
            Error::InvalidEntry { .. } => "invalid_entry",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::KOutOfRange { .. } => "k_out_of_range",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::NotAnIsometry { .. } => "not_an_isometry",
            Error::ValueOutOfRange { .. } => "value_out_of_range",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::ZeroVector => "zero_vector",
            Error::DiagonalNotSorted { .. } => "diagonal_not_sorted",
            Error::EmptySet => "empty_set",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Parse { .. } => "parse",
        }
    }
}

/// The structural property of an isometry that failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryProperty {
    /// More columns than rows, or no columns.
    Shape,
    /// Distinct columns share a nonzero row.
    DisjointSupports,
    /// An entry lies outside `[0, 1]`.
    UnitBox,
    /// A column does not peak at exactly 1.
    ColumnPeak,
    /// A column has no private row holding a 1.
    PrivateAnchor,
    /// No `k x k` permutation submatrix.
    PermutationSubmatrix,
}

impl std::fmt::Display for IsometryProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IsometryProperty::Shape => "shape",
            IsometryProperty::DisjointSupports => "disjoint supports",
            IsometryProperty::UnitBox => "entries in [0,1]",
            IsometryProperty::ColumnPeak => "column maximum equals 1",
            IsometryProperty::PrivateAnchor => "private anchor row",
            IsometryProperty::PermutationSubmatrix => "permutation submatrix",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
