//! Exit codes: 0 success, 1 verification failure, 2 usage or bad input, 3 refusal.

use std::fmt;

use polysched_core::Error as CoreError;

#[derive(Debug)]
pub enum Failure {
    /// The output was produced but does not check out.
    Verification(String),
    /// A guard or precondition declined the input.
    Refused(String),
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Refused(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Refused(m) => write!(f, "refused: {m}"),
            Failure::Usage(e) | Failure::Internal(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<CoreError>() {
            Some(CoreError::Refused { .. } | CoreError::DensityTooHigh { .. } | CoreError::NotPowerOfTwo { .. }) => {
                Failure::Refused(format!("{e:#}"))
            }
            Some(CoreError::Internal(_)) => Failure::Internal(e),
            _ => Failure::Usage(e),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;
