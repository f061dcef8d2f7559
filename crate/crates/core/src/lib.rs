//! Exact computation with semistar operations on a catalogue of integral
//! domains whose fractional ideals admit finite symbolic descriptions.

pub mod error;
pub mod laws;
pub mod models;
pub mod ops;
pub mod report;
pub mod invertibility;
pub mod nagata;
pub mod harness;

pub use error::{Error, Result};
