use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be positive")]
    InvalidModulus(i64),
    #[error("{a} has no inverse modulo {r}")]
    NoInverse { a: i64, r: i64 },
    #[error("index {q} is not coprime to local order {r}")]
    IncompatibleIndex { q: u32, r: u32 },
    #[error("volume formula needs q >= 3, got q = {0}")]
    VolumeUndefined(u32),
    #[error("invalid orbifold point {b}/{r}: {reason}")]
    InvalidPoint { b: i64, r: i64, reason: &'static str },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("exclusion file line {line}: {msg}")]
    Exclusion { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
