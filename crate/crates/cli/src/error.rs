use std::fmt;

use gradlab::coset::CosetError;
use gradlab::group::GroupError;
use gradlab::homology::HomologyError;
use gradlab::qnormal::QNormalError;
use gradlab::raag::RaagError;
use gradlab::rebuilding::RebuildingError;

/// Failure with its exit code: 2 input, 3 budget, 4 verification.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Budget(m) => write!(f, "budget exceeded: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CosetError> for CliError {
    fn from(e: CosetError) -> Self {
        match e {
            CosetError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Coset(c) => c.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<QNormalError> for CliError {
    fn from(e: QNormalError) -> Self {
        match e {
            QNormalError::Coset(c) => c.into(),
            QNormalError::NoCosetModel => CliError::Budget(e.to_string()),
            QNormalError::MissingWitness(_)
            | QNormalError::WitnessRejected(_)
            | QNormalError::WitnessCount { .. }
            | QNormalError::NoFactorization { .. }
            | QNormalError::TruncationTooSmall(_) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RaagError> for CliError {
    fn from(e: RaagError) -> Self {
        match e {
            RaagError::QNormal(q) => q.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RebuildingError> for CliError {
    fn from(e: RebuildingError) -> Self {
        match e {
            RebuildingError::Unvalidated(_) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
