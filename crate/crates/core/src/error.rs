use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("size cap exceeded: {what} has {size} elements, cap is {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("not a valid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("subgroup is not central: {0}")]
    NotCentral(String),
    #[error("group is not two-step nilpotent")]
    NotTwoStep,
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("consistency check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user input rather than by a failed internal check.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_)
                | Error::InvalidParameter(_)
                | Error::CapExceeded { .. }
                | Error::FamilyMismatch(_)
                | Error::InvalidCocycle(_)
                | Error::NotCentral(_)
                | Error::NotTwoStep
                | Error::NotHomomorphism(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
