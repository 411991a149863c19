//! Dense complex linear algebra used by the rest of the crate.
//!
//! Everything here is a pure function of its inputs. Matrices are small
//! (at most a few hundred rows for superoperators), so the kernels favour
//! accuracy and determinism over blocking or SIMD.

mod eigh;
mod expm;
mod lu;
mod matrix;
mod norms;

pub use eigh::{eigh, HermitianEigen};
pub use expm::expm;
pub use lu::{det, solve};
pub use matrix::{ComplexMatrix, C64};
pub(crate) use matrix::{I, ZERO};
pub use norms::{hermitian_eigenvalues, trace_distance, trace_norm};

pub(crate) fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}
