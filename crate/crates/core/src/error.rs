use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("did not converge: {0}")]
    NonConvergence(String),
    #[error("parameter outside supported domain: {0}")]
    OutOfDomain(String),
    #[error("size {size} exceeds enumeration cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("requested {requested} digits exceed backend cap {cap}")]
    PrecisionUnachievable { requested: u32, cap: u32 },
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("product truncation not certified: {0}")]
    TruncationUncertified(String),
    #[error("unsupported scaling: {0}")]
    UnsupportedScaling(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NonConvergence(_) => "NonConvergence",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::TooLarge { .. } => "TooLarge",
            Error::MalformedPermutation(_) => "MalformedPermutation",
            Error::PrecisionUnachievable { .. } => "PrecisionUnachievable",
            Error::PrecisionLoss(_) => "PrecisionLoss",
            Error::TruncationUncertified(_) => "TruncationUncertified",
            Error::UnsupportedScaling(_) => "UnsupportedScaling",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
