//! Shadowed κ-μ fading models.
//!
//! This crate implements the full family of single- and double-shadowed κ-μ
//! envelope distributions for wireless channel modeling:
//!
//! - [`specfun`] — scalar special functions (log-gamma, Bessel K/I of real
//!   order, confluent and Gauss hypergeometric functions, the Tricomi U
//!   function and regularized generalized hypergeometric series) tuned for
//!   the extreme parameter ranges the fading PDFs require.
//! - [`models`] — analytical PDF evaluators for the base κ-μ model and the
//!   twelve shadowed variants (three single-shadowed and three
//!   double-shadowed types, two example shadowing laws each), plus the
//!   special-case parameter reductions that connect them.
//! - [`sampling`] — deterministic random-variate generators that draw
//!   envelopes directly from each signal model.
//! - [`oracle`] — an independent mixture-integral evaluator of every
//!   shadowed PDF, used as ground truth for the series implementations.
//! - [`fitkit`] — histogram construction, nonlinear least-squares parameter
//!   estimation and AIC-based model ranking.
//! - [`checks`] — the built-in self-check grids (normalization, oracle
//!   agreement, reductions) shared by the CLI and the test suite.

pub mod checks;
pub mod error;
pub mod fitkit;
pub mod models;
pub mod oracle;
pub mod quad;
pub mod sampling;
pub mod specfun;

pub use error::{Error, Result};
// re-exports added as modules land
pub use specfun::SeriesControl;
