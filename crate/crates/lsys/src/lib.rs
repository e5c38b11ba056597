//! Schrödinger L-systems on the half-line: Weyl functions, transfer and
//! impedance functions, c-entropy, operator classification and the two dual
//! c-entropy optimization problems.

pub mod classify;
pub mod curve;
pub mod entropy;
pub mod error;
pub mod lsystem;
pub mod report;
pub mod solve;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use lsystem::{BoundaryParam, EntropyReport, ExtReal, LSystem};
pub use num_complex::Complex64;
pub use weyl::{Potential, SolverParams, WeylConstants, WeylModel};
