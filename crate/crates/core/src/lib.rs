//! Monte Carlo simulation of heavy-tailed Lévy flights and α-stable
//! processes, and of their first-passage times out of the space-time
//! regions `{(t, x) : t > 0, |x| <= r t^κ}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`distributions`]: Chambers–Mallows–Stuck stable sampler, exact Pareto
//!   jumps, stable Lévy-measure tails.
//! - [`paths`]: Lévy flights, rescaled interpolated walks, grid-sampled stable
//!   and stable-plus-drift processes.
//! - [`passage`]: regions, exit detection, running suprema, survival curves.
//! - [`theory`]: closed-form regime classification of `(α, κ)`.
//! - [`mc`]: replication engine, KS and Hill statistics, experiments.
//! - [`cli`]: config parsing, output writers and the batch runner behind the
//!   `levy-passage` binary.
//!
//! Randomness only enters through [`rng::replication_stream`], keyed by
//! `(seed, family, replication)`, so every experiment is reproducible
//! bit-for-bit regardless of the number of worker threads.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod distributions;
pub mod error;
pub mod mc;
pub mod passage;
pub mod paths;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
