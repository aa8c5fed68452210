//! Error type shared by every module.

/// Everything that can go wrong outside of a plain programming bug.
///
/// `BudgetExceeded` and `Unavailable` are the "honest refusal" variants:
/// a computation that would overrun its configured budget returns one of
/// these instead of a wrong or truncated number.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Parameters violate a precondition (q < 2, rho > n, K < 1, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An index argument lies outside the range a table was built for.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// The work needed provably exceeds the configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A method cannot produce a value for these parameters within its
    /// limits (LP node budget, recursion step budget, ...).
    #[error("unavailable: {0}")]
    Unavailable(String),

    /// An internal exactness invariant failed (a division that must be
    /// exact was not, an orthogonality check did not hold, ...). Seeing
    /// this means a bug, not bad input.
    #[error("arithmetic invariant violated: {0}")]
    ArithmeticBug(String),

    /// No irreducible polynomial is compiled in for this (q, m).
    #[error("unsupported field: no modulus stored for q={q}, m={m}")]
    UnsupportedField { q: u64, m: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
