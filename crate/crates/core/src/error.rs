use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("matrix is singular")]
    Singular,

    #[error("{what} exceeds the enumeration cap of {cap} elements")]
    CapExceeded { what: String, cap: usize },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("elements do not generate the group")]
    NotGenerating,

    #[error("index set is not closed under multiplication")]
    NotClosed,

    #[error("generator images do not define an automorphism")]
    NotAnAutomorphism,

    #[error("inverting automorphism has order {order}, expected 2")]
    InverterNotInvolution { order: usize },

    #[error("internal consistency check failed: {0}")]
    Defect(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, cap: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap,
        }
    }

    pub fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }
}
