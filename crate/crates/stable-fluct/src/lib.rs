//! Closed-form fluctuation identities for alpha-stable Levy processes —
//! exit and entrance laws, resolvents, hitting kernels and the exponents of
//! the Levy processes and Markov additive processes that underlie them via
//! the Lamperti and Lamperti-Kiu transforms — together with a Monte Carlo
//! path-simulation harness that validates each identity at desk scale.
//!
//! The accompanying guide (under `book/`) walks through the concepts; its
//! code snippets compile as doc-tests of this crate.

pub mod ball;
pub mod error;
pub mod interval;
pub mod lamperti;
pub mod montecarlo;
pub mod quad;
pub mod specfun;
pub mod stable;
pub mod stats;

pub use error::{Error, Result};
pub use stable::{validate_params, StableParams};
