use super::eigh::eigh;
use super::matrix::{ComplexMatrix, ZERO};
use crate::error::Result;

/// Eigenvalues (descending) of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eigh(m)?.values)
}

/// Schatten 1-norm: the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    m.ensure_square()?;
    let scale = m.frobenius_norm();
    if scale == 0.0 {
        return Ok(0.0);
    }
    if m.hermitian_residual() <= 1e-14 * scale {
        return Ok(eigh(m)?.values.iter().map(|x| x.abs()).sum());
    }
    // eigenvalues of [[0, M], [M†, 0]] are ±σ_k, without the precision loss of √eig(M†M)
    let n = m.rows();
    let dilation = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => m[(i, j - n)],
        (false, true) => m[(j, i - n)].conj(),
        _ => ZERO,
    });
    Ok(0.5 * eigh(&dilation)?.values.iter().map(|x| x.abs()).sum::<f64>())
}

/// `½‖ρ − σ‖₁`.
pub fn trace_distance(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    Ok(0.5 * trace_norm(&(rho - sigma))?)
}
