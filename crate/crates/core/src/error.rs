use thiserror::Error;

/// Errors surfaced by the library.
///
/// The CLI maps `Parse` and `Domain` to exit code 1 and `SizeLimit` to exit
/// code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size limit exceeded: {what} is {actual}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse {
            what,
            detail: detail.into(),
        }
    }
}

/// Size limits applied by the exhaustive enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest word any exhaustive word-space enumeration will accept.
    pub max_word_len: usize,
    /// Largest `|W_c|` a brute-force scan will walk.
    pub max_space: u128,
    /// Longest length for enumerating all normalized words.
    pub max_normalized_len: usize,
    /// Longest word for hook-configuration enumeration.
    pub max_vhc_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_word_len: 12,
            max_space: 50_000_000,
            max_normalized_len: 10,
            max_vhc_len: 12,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, actual: u128, limit: u128) -> Result<()> {
        if actual > limit {
            Err(Error::SizeLimit {
                what,
                actual,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
