//! Exact arithmetic for partitions into distinct Fibonacci numbers
//! (OEIS A000119).
//!
//! The library computes:
//!
//! - `R(H)`: the number of ways to write `H` as a sum of distinct Fibonacci
//!   numbers (as values, so 1 is available once), with `R(0) = 1`;
//! - `A(H) = Σ_{n=0}^{H} R(n)`: the summatory function, plus the mean
//!   `M(H) = A(H)/H` and the logarithmic average `B(H)`;
//! - certified numerical enclosures of `c₁ = liminf A(H)/H^λ` and
//!   `c₂ = limsup A(H)/H^λ`, where `λ = log 2 / log φ`, by subdividing
//!   `[F_m, F_{m+1})` according to leading Zeckendorf digits.
//!
//! Everything value-critical runs in exact big-integer or big-rational
//! arithmetic; approximate high-precision reals appear only in the final
//! `λ`-power evaluations, with explicit slack in the reported enclosures.

pub mod asymptotics;
pub mod bigfib;
pub mod oracle;
pub mod partition;
pub mod precision;
pub mod summatory;

pub use asymptotics::{bounds, enumerate_patterns, BoundsReport, EndpointEstimate, OffsetPattern};
pub use bigfib::{fib, max_fib_index, ZeckendorfExpansion};
pub use oracle::{build_oracle, OracleTable};
pub use partition::{r_carlitz, r_exact, r_robbins, recursion_tables, RecursionTables};
pub use summatory::{a_exact, a_fib, a_recursive, b_log_average, f_weight, mean, ratio_series};

/// Non-negative integer of unbounded magnitude; inputs like 10^100 are fine.
pub type BigNat = num_bigint::BigUint;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Zeckendorf expansion or offset pattern failed validation.
    #[error("validation error: {0}")]
    InvalidExpansion(String),

    /// A table would exceed the configured memory budget.
    #[error("resource error: {0}")]
    Resource(String),

    /// The working precision cannot separate competing extrema; the result
    /// would not be trustworthy at the requested number of digits.
    #[error("precision error: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
