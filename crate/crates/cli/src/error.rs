use std::fmt;

use patmine_core::condense::CondenseError;
use patmine_core::constraints::ConstraintError;
use patmine_core::io::FormatError;
use patmine_core::mining::MiningError;
use patmine_core::oracle::OracleError;
use patmine_core::tiling::TilingError;

/// A failed run, carrying its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Unsatisfiable tiling or an oracle disagreement. Exit 1.
    Negative(String),
    /// Bad flags, mismatched kinds, bounds exceeded. Exit 2.
    Usage(String),
    /// Unreadable or malformed input, or an unwritable output. Exit 3.
    Input(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Negative(m) | Failure::Usage(m) | Failure::Input(m) => f.write_str(m),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<MiningError> for Failure {
    fn from(e: MiningError) -> Self {
        match e {
            MiningError::InvalidMinSupport(_) | MiningError::InvalidLimit(_) => Failure::Usage(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ConstraintError> for Failure {
    fn from(e: ConstraintError) -> Self {
        match e {
            ConstraintError::MissingWeights | ConstraintError::KindMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<CondenseError> for Failure {
    fn from(e: CondenseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<TilingError> for Failure {
    fn from(e: TilingError) -> Self {
        match e {
            TilingError::TooManyCandidates { .. } | TilingError::InvalidTau(_) | TilingError::UnknownName { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}
