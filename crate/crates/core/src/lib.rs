//! Sparse sequences that avoid formations and long alternations.
//!
//! The crate is organised around four kinds of objects:
//!
//! - [`seq`]: sequences of positive integer letters, blocked sequences and
//!   their text format;
//! - [`checkers`]: sparsity, alternation, Davenport-Schinzel order, formation
//!   length and pattern containment;
//! - [`matrix`]: 0-1 matrices, containment of forbidden submatrices, the
//!   Kővári–Sós–Turán bound and the incidence bridge to blocked sequences;
//! - [`constructions`]: explicit lower-bound witnesses (troop sequences,
//!   their sparsity lifts via hypergraph edge coloring, and reversed-block
//!   sequences);
//!
//! plus [`oracles`], exhaustive searches that compute the true extremal
//! values on small instances, and [`report`] and [`cli`], which back the `formations`
//! command-line tool.

pub mod checkers;
pub mod cli;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod matrix;
pub mod oracles;
pub mod report;
pub mod seq;

pub use error::{Error, Result};
pub use seq::{BlockedSequence, Letter, PatternSequence, Sequence};
