//! Bayesian model selection for hierarchical log-linear models of
//! multi-way contingency tables.
//!
//! The crate implements the Diaconis–Ylvisaker conjugate prior on
//! baseline-constrained log-linear parameters, exact (hyper-Dirichlet)
//! and Laplace-approximate marginal likelihoods, the prior induced on
//! cell probabilities, and MC³ stochastic search over decomposable,
//! graphical and hierarchical model classes.
//!
//! The main entry points are:
//!
//! - [`table::Table`] — contingency-table storage and CSV ingestion,
//! - [`model::InteractionSet`] — a hierarchical interaction set `D` with
//!   its baseline-constrained parameter layout,
//! - [`prior::HyperParams`] — the conjugate prior `(s, α)` with exact and
//!   factorized normalizing constants,
//! - [`laplace`] — mode finding and the Laplace evidence approximation,
//! - [`induced`] — the induced density on cell probabilities,
//! - [`search`] — MC³ model search and posterior summaries.

pub mod graph;
pub mod induced;
pub mod laplace;
pub mod model;
pub mod prior;
pub mod search;
pub mod table;
pub mod varset;

mod error;

pub use error::{Error, Result};
