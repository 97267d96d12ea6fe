//! `rtcat` verifies right triangulated structure on finite additive
//! categories presented by generators and structure constants: it computes
//! approximation ideals and mutation pairs, builds quotient categories with
//! their induced shift, and machine-checks the triangulation axioms on
//! concrete fixtures.
//!
//! Everything is exact (prime fields or rationals) and deterministic:
//! identical inputs, including the search seed, produce byte-identical
//! reports. "Undecided" is a first-class outcome for searches that exceed
//! their enumeration budget; it is never silently collapsed into yes or no.

pub mod addcat;
pub mod approx;
pub mod catalog;
pub mod exactla;
pub mod io;
pub mod quotient;
pub mod report;
pub mod rtstruct;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}
