use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("polynomial is not monic (leading coefficient {0})")]
    NonMonic(i64),

    #[error("polynomial is reducible over the rationals: {0}")]
    ReduciblePolynomial(String),

    #[error("inconsistent invariants: {0}")]
    InconsistentInvariants(String),

    #[error("missing invariants: {0}")]
    MissingInvariants(String),

    #[error("invalid splitting override: {0}")]
    InvalidOverride(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The prime divides the polynomial discriminant and no override was given.
    #[error("prime {p} divides disc(min_poly); supply a splitting override")]
    UnsupportedPrime { p: u64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("need at least 3 usable points, got {usable} ({dropped} zero residuals dropped)")]
    InsufficientData { usable: usize, dropped: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
