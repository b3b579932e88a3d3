use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {reason} (expected `1`, `0`, `0.<trits>` or `0.<trits>(<trits>)` over digits 0,1,2)")]
    Parse { input: String, reason: String },

    #[error(
        "{input:?} ends in an all-2s period; such expansions are written in their terminating \
         form (`{canonical}`), only the number 1 keeps the all-2s expansion"
    )]
    AllTwosPeriod { input: String, canonical: String },

    #[error("cannot parse rational {0:?}: expected `<num>/<den>` with den > 0")]
    ParseRational(String),

    #[error("value {0} lies outside [0, 1]")]
    OutOfUnitInterval(String),

    #[error("digit {0} is not a ternary digit")]
    InvalidTrit(u8),

    #[error("unknown map {0:?} (known: f, f01, f02, f12, f1..f6)")]
    UnknownMap(String),

    #[error("invalid map table {0:?}: expected three digits from 0,1,2, e.g. `021`")]
    InvalidMapTable(String),

    #[error("map {0} is not a merge map (two digits to 0, one digit to 1)")]
    NotMergeMap(String),

    #[error("unknown identity {0:?} (known: ff2..ff9, thm)")]
    UnknownIdentity(String),

    #[error("{0} is not ternary-rational (its expansion does not terminate)")]
    NotTerminating(String),

    #[error("{0} is an endpoint of [0, 1]; only a one-sided limit exists there")]
    Endpoint(String),

    #[error("points coincide: {0}")]
    EqualPoints(String),

    #[error("{what} must be at least {min}, got {value}")]
    TooSmall { what: &'static str, value: u64, min: u64 },

    #[error("{what} = {value} exceeds the configured budget of {max}")]
    OverBudget { what: &'static str, value: u64, max: u64 },

    #[error("unknown {what} {value:?}")]
    UnknownOption { what: &'static str, value: String },
}
