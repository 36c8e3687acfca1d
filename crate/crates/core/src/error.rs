use alloc::string::String;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("({a}, {b}) is not a groomed pair")]
    NotGroomed { a: i64, b: i64 },
    #[error("w7 is undefined at a + 7b = 0")]
    CuspImage,
    #[error("both Weierstrass coefficients are zero")]
    ZeroModel,
    #[error("j-invariant 0 or 1728: A·B must be nonzero")]
    SpecialJInvariant,
    #[error("{what} = {value} is above the limit {limit}")]
    AboveGuard {
        what: &'static str,
        value: String,
        limit: String,
    },
    #[error("{what} = {value} is below the minimum {minimum}")]
    BelowMinimum {
        what: &'static str,
        value: String,
        minimum: String,
    },
    #[error("rep table bound {have} is smaller than the required {need}")]
    TableTooSmall { have: u64, need: u64 },
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn above_guard<T: core::fmt::Display, L: core::fmt::Display>(
    what: &'static str,
    value: T,
    limit: L,
) -> Error {
    use alloc::string::ToString;
    Error::AboveGuard {
        what,
        value: value.to_string(),
        limit: limit.to_string(),
    }
}

pub(crate) fn below_minimum<T: core::fmt::Display, L: core::fmt::Display>(
    what: &'static str,
    value: T,
    minimum: L,
) -> Error {
    use alloc::string::ToString;
    Error::BelowMinimum {
        what,
        value: value.to_string(),
        minimum: minimum.to_string(),
    }
}
