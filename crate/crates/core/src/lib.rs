//! Markovian (GKSL) generators decomposed into a universal rank-one family,
//! and recombined by Suzuki-Trotter product formulas.

pub mod cli;
pub mod decompose;
pub mod error;
pub mod io;
pub mod lambda_atom;
pub mod lindblad;
pub mod numerics;
pub mod sample;
pub mod sud;
pub mod trotter;

pub use error::{Error, Result};
