use core::fmt;

/// Errors produced by the combinatorial core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A permutation must have at least one letter.
    EmptyPermutation,
    /// A value occurs more than once in a word that must be a bijection.
    DuplicateValue { value: u32 },
    /// A value lies outside `1..=n`.
    OutOfRangeValue { value: u32, n: usize },
    /// Row lengths increase somewhere, so they do not form a partition.
    NotPartitionShape,
    /// A tableau row is empty.
    EmptyRow { row: usize },
    /// A tableau row is not strictly increasing.
    RowNotIncreasing { row: usize },
    /// A standard tableau was required.
    NotStandard,
    /// Two tableaux were required to have the same shape.
    ShapeMismatch,
    /// No steady state was reached within the move cap.
    CapExceeded { cap: usize },
    /// An involution was required.
    NotInvolution,
    /// A noncrossing involution was required.
    NotNoncrossing,
    /// A box-ball configuration was malformed.
    InvalidConfiguration(&'static str),
    /// An argument fell outside the operation's domain.
    InvalidArgument(&'static str),
    /// Text could not be parsed.
    Parse(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPermutation => write!(f, "permutation is empty"),
            Error::DuplicateValue { value } => write!(f, "value {value} appears more than once"),
            Error::OutOfRangeValue { value, n } => {
                write!(f, "value {value} is outside 1..={n}")
            }
            Error::NotPartitionShape => write!(f, "row lengths are not weakly decreasing"),
            Error::EmptyRow { row } => write!(f, "row {row} is empty"),
            Error::RowNotIncreasing { row } => write!(f, "row {row} is not strictly increasing"),
            Error::NotStandard => write!(f, "tableau is not standard"),
            Error::ShapeMismatch => write!(f, "tableaux have different shapes"),
            Error::CapExceeded { cap } => {
                write!(f, "no steady state reached within {cap} moves")
            }
            Error::NotInvolution => write!(f, "permutation is not an involution"),
            Error::NotNoncrossing => write!(f, "involution has a crossing"),
            Error::InvalidConfiguration(msg) => write!(f, "invalid configuration: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
