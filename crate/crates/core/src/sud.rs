//! Generalised Gell-Mann basis of su(d), its structure constants, the
//! coordinate map `f: su(d) → ℝ^{d²−1}` and adjoint-representation matrices.
//!
//! Basis order: the `d−1` diagonal elements `d^(l)`, then every `σ_x^(j,k)`
//! for `j < k` in lexicographic order, then every `σ_y^(j,k)` likewise.
//! All elements are Hermitian, traceless and orthonormal under `tr(F_a F_b)`.

use crate::error::{Error, Result};
use crate::numerics::{expm, real, ComplexMatrix, C64, I, ZERO};

const UNITARY_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct GellMannBasis {
    d: usize,
    elements: Vec<ComplexMatrix>,
}

impl GellMannBasis {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let mut elements = Vec::with_capacity(d * d - 1);
        for l in 1..d {
            let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
            let mut diag = vec![0.0; d];
            for x in diag.iter_mut().take(l) {
                *x = norm;
            }
            diag[l] = -(l as f64) * norm;
            elements.push(ComplexMatrix::from_real_diag(&diag));
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (j, k) in pairs(d) {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = real(h);
            m[(k, j)] = real(h);
            elements.push(m);
        }
        for (j, k) in pairs(d) {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = C64::new(0.0, -h);
            m[(k, j)] = C64::new(0.0, h);
            elements.push(m);
        }
        Ok(Self { d, elements })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `d² − 1`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn get(&self, index: usize) -> &ComplexMatrix {
        &self.elements[index]
    }

    /// Slot of `σ_x^(j,k)` (zero-based levels, `j < k`).
    pub fn sigma_x_index(&self, j: usize, k: usize) -> usize {
        self.d - 1 + pair_index(self.d, j, k)
    }

    /// Slot of `σ_y^(j,k)` (zero-based levels, `j < k`).
    pub fn sigma_y_index(&self, j: usize, k: usize) -> usize {
        self.d - 1 + self.d * (self.d - 1) / 2 + pair_index(self.d, j, k)
    }

    /// Hilbert-Schmidt coefficients `c_γ = tr(F_γ X)`.
    pub fn coefficients(&self, x: &ComplexMatrix) -> Result<Vec<C64>> {
        self.check_dim(x)?;
        Ok(self.elements.iter().map(|f| f.trace_product(x)).collect())
    }

    /// `Σ c_γ F_γ`.
    pub fn combine(&self, c: &[C64]) -> Result<ComplexMatrix> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: c.len(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.d, self.d);
        for (f, &z) in self.elements.iter().zip(c) {
            if z != ZERO {
                out += &f.scale(z);
            }
        }
        Ok(out)
    }

    fn check_dim(&self, x: &ComplexMatrix) -> Result<()> {
        let n = x.ensure_square()?;
        if n != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: n,
            });
        }
        Ok(())
    }
}

pub fn gell_mann_basis(d: usize) -> Result<GellMannBasis> {
    GellMannBasis::new(d)
}

fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |j| (j + 1..d).map(move |k| (j, k)))
}

fn pair_index(d: usize, j: usize, k: usize) -> usize {
    assert!(j < k && k < d, "invalid level pair ({j}, {k}) for d = {d}");
    (0..j).map(|a| d - 1 - a).sum::<usize>() + (k - j - 1)
}

/// Dense `f_{γαβ}` with `[F_γ, F_α] = i Σ_β f_{γαβ} F_β`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    values: Vec<f64>,
}

impl StructureConstants {
    pub fn side(&self) -> usize {
        self.n
    }

    pub fn get(&self, g: usize, a: usize, b: usize) -> f64 {
        self.values[(g * self.n + a) * self.n + b]
    }

    /// `[G_γ]_{αβ} = i f_{γαβ}`.
    pub fn generator(&self, g: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |a, b| C64::new(0.0, self.get(g, a, b)))
    }
}

pub fn structure_constants(basis: &GellMannBasis) -> StructureConstants {
    let n = basis.len();
    let mut values = vec![0.0; n * n * n];
    for g in 0..n {
        for a in g + 1..n {
            let comm = basis.get(g).commutator(basis.get(a));
            for b in 0..n {
                let v = (-I * comm.trace_product(basis.get(b))).re;
                values[(g * n + a) * n + b] = v;
                values[(a * n + g) * n + b] = -v;
            }
        }
    }
    StructureConstants { n, values }
}

/// `x_γ = −i tr(F_γ X)`, so that `X = Σ x_γ (iF_γ)`.
pub fn to_vector(x: &ComplexMatrix, basis: &GellMannBasis) -> Result<Vec<C64>> {
    let scale = x.frobenius_norm().max(1.0);
    let trace = x.trace().norm();
    if trace > TRACE_TOL * scale {
        return Err(Error::NotTraceless { trace });
    }
    Ok(basis.coefficients(x)?.into_iter().map(|c| -I * c).collect())
}

/// Real coordinates of an anti-Hermitian traceless matrix.
pub fn to_real_vector(x: &ComplexMatrix, basis: &GellMannBasis) -> Result<Vec<f64>> {
    let v = to_vector(x, basis)?;
    let scale = x.frobenius_norm().max(1.0);
    let imag = v.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > TRACE_TOL * scale {
        return Err(Error::NotHermitian { residual: imag });
    }
    Ok(v.into_iter().map(|z| z.re).collect())
}

/// `Σ x_γ (iF_γ)`.
pub fn from_vector(x: &[C64], basis: &GellMannBasis) -> Result<ComplexMatrix> {
    let scaled: Vec<C64> = x.iter().map(|&z| I * z).collect();
    basis.combine(&scaled)
}

pub fn from_real_vector(x: &[f64], basis: &GellMannBasis) -> Result<ComplexMatrix> {
    from_vector(&x.iter().map(|&v| real(v)).collect::<Vec<_>>(), basis)
}

/// `G_{αβ} = tr(F_α U F_β U†)`, the matrix of `X ↦ UXU†` in coordinates.
#[derive(Debug, Clone)]
pub struct AdjointMatrix {
    matrix: ComplexMatrix,
    unitary: ComplexMatrix,
}

impl AdjointMatrix {
    /// Real entries stored in a complex container for direct products with GKS matrices.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.matrix[(a, b)].re
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.matrix.matvec(v)
    }

    /// `G A Gᵀ`.
    pub fn conjugate(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &(&self.matrix * a) * &self.matrix.transpose()
    }
}

pub fn adjoint_matrix(u: &ComplexMatrix, basis: &GellMannBasis) -> Result<AdjointMatrix> {
    basis.check_dim(u)?;
    let residual = u.unitary_residual();
    if residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let n = basis.len();
    let u_dag = u.adjoint();
    let conjugated: Vec<ComplexMatrix> = basis
        .elements()
        .iter()
        .map(|f| &(u * f) * &u_dag)
        .collect();
    let matrix = ComplexMatrix::from_fn(n, n, |a, b| {
        real(basis.get(a).trace_product(&conjugated[b]).re)
    });
    Ok(AdjointMatrix {
        matrix,
        unitary: u.clone(),
    })
}

/// Adjoint matrix of `exp(iΣ r_γ F_γ)` computed as `exp(−iΣ r_γ G_γ)`.
pub fn adjoint_from_generator(r: &[f64], constants: &StructureConstants) -> Result<ComplexMatrix> {
    let n = constants.side();
    if r.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: r.len(),
        });
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (g, &rg) in r.iter().enumerate() {
        if rg != 0.0 {
            m += &constants.generator(g).scale(C64::new(0.0, -rg));
        }
    }
    expm(&m)
}
