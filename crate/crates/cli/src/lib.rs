//! Library side of the `mazurtate` command-line tool: λ pattern
//! prediction, the published tables, the eigen-symbol cache and the
//! command implementations used by `main`.

pub mod cache;
pub mod commands;
pub mod pattern;
pub mod tables;

pub use pattern::{predict_lambda, q_term, Pattern};
