//! Exact computations around limits of Witten–Reshetikhin–Turaev traces on `Σ × S¹`.

pub mod amu;
pub mod asymptotics;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod laurent;
pub mod qtorus;
pub mod trace;
pub mod verlinde;

pub use error::{Error, Result};
