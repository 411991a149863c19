use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Solves `A X = B` by LU factorisation with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    if b.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.rows(),
        });
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let m = b.cols();

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| lu[(i, col)].norm().total_cmp(&lu[(j, col)].norm()))
            .unwrap_or(col);
        if lu[(pivot, col)].norm() == 0.0 {
            return Err(Error::InvalidArgument("singular matrix in solve".into()));
        }
        if pivot != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            for j in 0..m {
                let tmp = x[(col, j)];
                x[(col, j)] = x[(pivot, j)];
                x[(pivot, j)] = tmp;
            }
        }
        let diag = lu[(col, col)];
        for row in col + 1..n {
            let factor = lu[(row, col)] / diag;
            if factor == ZERO {
                continue;
            }
            lu[(row, col)] = factor;
            for j in col + 1..n {
                let v = lu[(col, j)];
                lu[(row, j)] -= factor * v;
            }
            for j in 0..m {
                let v = x[(col, j)];
                x[(row, j)] -= factor * v;
            }
        }
    }

    for j in 0..m {
        for row in (0..n).rev() {
            let mut acc = x[(row, j)];
            for k in row + 1..n {
                acc -= lu[(row, k)] * x[(k, j)];
            }
            x[(row, j)] = acc / lu[(row, row)];
        }
    }
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(x)
}

/// Determinant by LU with partial pivoting.
pub fn det(a: &ComplexMatrix) -> Result<C64> {
    let n = a.ensure_square()?;
    let mut lu = a.clone();
    let mut acc = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| lu[(i, col)].norm().total_cmp(&lu[(j, col)].norm()))
            .unwrap_or(col);
        if lu[(pivot, col)].norm() == 0.0 {
            return Ok(ZERO);
        }
        if pivot != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            acc = -acc;
        }
        let diag = lu[(col, col)];
        acc *= diag;
        for row in col + 1..n {
            let factor = lu[(row, col)] / diag;
            for j in col + 1..n {
                let v = lu[(col, j)];
                lu[(row, j)] -= factor * v;
            }
        }
    }
    Ok(acc)
}
