use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("empty family: {0}")]
    EmptyFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("monomial {0} is not a minimal generator of the ideal")]
    NotAGenerator(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("ideal is not equigenerated")]
    NotEquigenerated,

    #[error("ideal is not artinian: no pure power of x{0} among the generators")]
    NotArtinian(usize),

    #[error("oracle budget exceeded: lcm box volume {volume} > {budget}")]
    BudgetExceeded { volume: u128, budget: u128 },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
