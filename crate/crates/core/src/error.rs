use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid generators: {0}")]
    InvalidGenerators(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The wave for `j` would enumerate `count` shift vectors, above `cap`.
    #[error("enumeration cap exceeded for j = {j}: {j}^{exponent} = {count} shift vectors, cap is {cap}")]
    CapExceeded {
        j: u64,
        exponent: usize,
        count: u128,
        cap: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
