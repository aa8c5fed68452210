//! Bounds on the minimum cardinality of rank-metric covering codes.
//!
//! A code `C ⊆ GF(q^m)^n` has covering radius `ρ` when every vector of the
//! ambient space lies within rank distance `ρ` of some codeword, rank
//! distance being the rank of the difference expanded as an `m × n` matrix
//! over GF(q). `K(q^m, n, ρ)` denotes the least cardinality of such a code.
//! This crate computes exact integer lower and upper bounds for it:
//!
//! - [`qcombinat`]: q-analog counting (Gaussian binomials, sphere and ball
//!   volumes of the rank metric).
//! - [`krawtchouk`]: the q-Krawtchouk eigenvalues of the rank-metric
//!   association scheme.
//! - [`geometry`]: exact sphere/ball intersection numbers and a union
//!   volume bound for balls around an arbitrary code.
//! - [`bounds`]: the bound algorithms themselves (linear-programming and
//!   sphere-covering lower bounds; greedy, excess-refined and explicit
//!   construction upper bounds) plus a `best_bounds` aggregator.
//! - [`exactcodes`]: small-field machinery (GF(q^m) arithmetic, matrix
//!   rank, Gabidulin codes, exhaustive covering-radius sweeps, an exact
//!   minimum-covering search) used both as constructions and as
//!   brute-force oracles for everything above.
//!
//! All arithmetic is exact: `BigInt` throughout, `BigRational` inside the
//! LP solver. Nothing here rounds.
//!
//! With the default `parallel` feature the exhaustive sweeps in
//! [`exactcodes`] distribute over a rayon thread pool; sequential
//! `*_seq` variants are always compiled and produce identical results.
//! The thread count honours the `RANKCOV_THREADS` environment variable.

pub mod bounds;
pub mod error;
pub mod exactcodes;
pub mod geometry;
pub mod krawtchouk;
pub mod qcombinat;

pub use error::{Error, Result};
pub use qcombinat::SpaceParams;

/// Builds the global rayon pool sized from `RANKCOV_THREADS` if the
/// variable is set and the pool was not already initialised. Safe to call
/// repeatedly; later calls are no-ops. Without the `parallel` feature this
/// does nothing.
pub fn init_threads() {
    #[cfg(feature = "parallel")]
    {
        use std::sync::OnceLock;
        static INIT: OnceLock<()> = OnceLock::new();
        INIT.get_or_init(|| {
            if let Ok(v) = std::env::var("RANKCOV_THREADS") {
                if let Ok(threads) = v.trim().parse::<usize>() {
                    if threads >= 1 {
                        // Ignore the error: the pool may already exist.
                        let _ = rayon::ThreadPoolBuilder::new()
                            .num_threads(threads)
                            .build_global();
                    }
                }
            }
        });
    }
}
