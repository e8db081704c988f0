//! Elicitable functionals, strictly consistent scoring functions, numerical
//! property verifiers, and M-estimation by empirical-score minimization.
//!
//! The crate is organized around five pieces:
//! - [`dist`]: distributions, expectations, and functional evaluation
//! - [`scores`]: the scoring-function and identification-function catalog
//! - [`props`]: probe-based verification of consistency, order-sensitivity,
//!   self-calibration, equivariance, and generator conditions
//! - [`mest`]: sampling, empirical-score minimization, and experiments
//! - [`cli`]: config parsing, dataset ingestion, and the command front end

pub mod cli;
pub mod dist;
pub mod domain;
pub mod error;
pub mod mest;
pub mod props;
pub mod quadrature;
pub mod scores;

pub use error::{ElicitError, Result};
