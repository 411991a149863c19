use crate::error::{Error, Result};
use crate::numerics::{expm, ComplexMatrix};

/// Linear map on `d×d` matrices acting on column-stacked vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    d: usize,
    matrix: ComplexMatrix,
}

impl Superoperator {
    pub fn from_matrix(d: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != d * d || matrix.cols() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: matrix.rows(),
            });
        }
        Ok(Self { d, matrix })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            d,
            matrix: ComplexMatrix::zeros(d * d, d * d),
        }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            d,
            matrix: ComplexMatrix::identity(d * d),
        }
    }

    /// `ρ ↦ X ρ Y`.
    pub fn sandwich(x: &ComplexMatrix, y: &ComplexMatrix) -> Self {
        Self {
            d: x.rows(),
            matrix: y.transpose().kron(x),
        }
    }

    /// `ρ ↦ U ρ U†`.
    pub fn conjugation(u: &ComplexMatrix) -> Self {
        Self::sandwich(u, &u.adjoint())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.d || rho.cols() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: rho.rows(),
            });
        }
        ComplexMatrix::unvectorize(&self.matrix.matvec(&rho.vectorize()), self.d, self.d)
    }

    /// `e^{tS}`.
    pub fn exp(&self, t: f64) -> Result<Self> {
        Ok(Self {
            d: self.d,
            matrix: expm(&self.matrix.scale_real(t))?,
        })
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Self) -> Self {
        Self {
            d: self.d,
            matrix: &self.matrix * &first.matrix,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            d: self.d,
            matrix: self.matrix.scale_real(s),
        }
    }

    /// Frobenius distance between the matrix representations.
    pub fn distance(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).frobenius_norm()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.max_abs() == 0.0
    }
}

impl std::ops::Add for &Superoperator {
    type Output = Superoperator;

    fn add(self, rhs: &Superoperator) -> Superoperator {
        Superoperator {
            d: self.d,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl std::ops::AddAssign<&Superoperator> for Superoperator {
    fn add_assign(&mut self, rhs: &Superoperator) {
        self.matrix += &rhs.matrix;
    }
}
