//! GKSL generators in GKS-matrix and diagonal form, their Liouvillian
//! superoperators, exact evolution and the (1→1) norm estimate.
//!
//! Generator convention:
//! `L(ρ) = i[ρ, H] + Σ_{lk} A_{lk} (F_l ρ F_k† − ½{F_k† F_l, ρ})`.

mod norm;
mod superoperator;

pub use norm::{one_one_norm, one_one_norm_with, NormEstimate};
pub use superoperator::Superoperator;

use crate::error::{Error, Result};
use crate::numerics::{eigh, real, ComplexMatrix, C64, I};
use crate::sud::GellMannBasis;

const HERMITIAN_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;
/// Relative cutoff separating nonzero eigenvalues of `A` from numerical zeros.
pub const RANK_CUTOFF: f64 = 1e-12;

fn check_hermitian(h: &ComplexMatrix, d: usize) -> Result<()> {
    let n = h.ensure_square()?;
    if n != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: n,
        });
    }
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = h.hermitian_residual();
    if residual > HERMITIAN_TOL * h.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Hamiltonian plus positive-semidefinite GKS matrix over a Gell-Mann basis.
#[derive(Debug, Clone)]
pub struct GksGenerator {
    h: ComplexMatrix,
    a: ComplexMatrix,
    basis: GellMannBasis,
}

impl GksGenerator {
    pub fn new(h: ComplexMatrix, a: ComplexMatrix, basis: GellMannBasis) -> Result<Self> {
        let d = basis.d();
        check_hermitian(&h, d)?;
        let n = a.ensure_square()?;
        if n != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: n,
            });
        }
        check_hermitian(&a, n)?;
        let min = min_eigenvalue(&a)?;
        if min < -PSD_TOL * a.frobenius_norm() {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
        Ok(Self { h, a, basis })
    }

    pub fn zero(d: usize) -> Result<Self> {
        let basis = GellMannBasis::new(d)?;
        let n = basis.len();
        Self::new(ComplexMatrix::zeros(d, d), ComplexMatrix::zeros(n, n), basis)
    }

    pub fn d(&self) -> usize {
        self.basis.d()
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.h
    }

    pub fn gks_matrix(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn basis(&self) -> &GellMannBasis {
        &self.basis
    }

    /// Smallest eigenvalue of `A`.
    pub fn min_gks_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue(&self.a)
    }

    /// Number of eigenvalues of `A` above the rank cutoff.
    pub fn rank(&self) -> Result<usize> {
        let cutoff = RANK_CUTOFF * self.a.frobenius_norm();
        Ok(eigh(&self.a)?.values.iter().filter(|&&v| v > cutoff).count())
    }

    pub fn liouvillian(&self) -> Superoperator {
        liouvillian_matrix(self)
    }
}

fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    Ok(eigh(a)?.values.last().copied().unwrap_or(0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LindbladTerm {
    pub rate: f64,
    pub operator: ComplexMatrix,
}

/// Hamiltonian plus rates `γ_k ≥ 0` and jump operators `L_k`.
#[derive(Debug, Clone)]
pub struct DiagonalGenerator {
    d: usize,
    h: ComplexMatrix,
    terms: Vec<LindbladTerm>,
}

impl DiagonalGenerator {
    pub fn new(h: ComplexMatrix, terms: Vec<LindbladTerm>) -> Result<Self> {
        let d = h.ensure_square()?;
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        check_hermitian(&h, d)?;
        for term in &terms {
            if !(term.rate >= 0.0) || !term.rate.is_finite() {
                return Err(Error::NegativeRate(term.rate));
            }
            let n = term.operator.ensure_square()?;
            if n != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: n,
                });
            }
            if !term.operator.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { d, h, terms })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.h
    }

    pub fn terms(&self) -> &[LindbladTerm] {
        &self.terms
    }

    /// Built directly from the jump operators, independent of any basis.
    pub fn liouvillian(&self) -> Superoperator {
        let mut s = hamiltonian_liouvillian(&self.h);
        for term in &self.terms {
            s += &dissipator(&term.operator).scale(term.rate);
        }
        s
    }
}

/// `ρ ↦ −i[H, ρ]`.
pub fn hamiltonian_liouvillian(h: &ComplexMatrix) -> Superoperator {
    let d = h.rows();
    let id = ComplexMatrix::identity(d);
    let left = Superoperator::sandwich(&h.scale(-I), &id);
    let right = Superoperator::sandwich(&id, &h.scale(I));
    &left + &right
}

/// `ρ ↦ LρL† − ½{L†L, ρ}`.
pub fn dissipator(l: &ComplexMatrix) -> Superoperator {
    let d = l.rows();
    let id = ComplexMatrix::identity(d);
    let ldl = (&l.adjoint() * l).scale_real(-0.5);
    let mut s = Superoperator::sandwich(l, &l.adjoint());
    s += &Superoperator::sandwich(&ldl, &id);
    s += &Superoperator::sandwich(&id, &ldl);
    s
}

/// Dissipator of the rank-one GKS matrix `a a†`: the jump operator `Σ a_γ F_γ`.
pub fn rank_one_liouvillian(a: &[C64], basis: &GellMannBasis) -> Result<Superoperator> {
    Ok(dissipator(&basis.combine(a)?))
}

pub fn liouvillian_matrix(g: &GksGenerator) -> Superoperator {
    let d = g.d();
    let n = g.basis.len();
    let id = ComplexMatrix::identity(d);
    let mut s = hamiltonian_liouvillian(&g.h);
    // Σ A_lk F_l ρ F_k†  and  K = Σ A_lk F_k† F_l
    let mut jump = ComplexMatrix::zeros(d * d, d * d);
    let mut k = ComplexMatrix::zeros(d, d);
    for l in 0..n {
        let fl = g.basis.get(l);
        for m in 0..n {
            let alm = g.a[(l, m)];
            if alm.norm() == 0.0 {
                continue;
            }
            let fm = g.basis.get(m);
            jump += &fm.conj().kron(fl).scale(alm);
            k += &(fm * fl).scale(alm);
        }
    }
    s += &Superoperator::from_matrix(d, jump).expect("shape");
    let half = k.scale_real(-0.5);
    s += &Superoperator::sandwich(&half, &id);
    s += &Superoperator::sandwich(&id, &half);
    s
}

/// Expands each jump operator in the basis. A nonzero trace part `c₀ I` of
/// `L = L₀ + c₀ I` is moved into the Hamiltonian as
/// `(i/2) γ (c̄₀ L₀ − c₀ L₀†)`.
pub fn from_diagonal(g: &DiagonalGenerator) -> Result<GksGenerator> {
    let d = g.d;
    let basis = GellMannBasis::new(d)?;
    let n = basis.len();
    let mut a = ComplexMatrix::zeros(n, n);
    let mut h = g.h.clone();
    let id = ComplexMatrix::identity(d);
    for term in &g.terms {
        let c0 = term.operator.trace() / d as f64;
        let traceless = &term.operator - &id.scale(c0);
        let c = basis.coefficients(&traceless)?;
        a += &ComplexMatrix::outer(&c, &c).scale_real(term.rate);
        if c0.norm() > 0.0 {
            let corr = &traceless.scale(c0.conj()) - &traceless.adjoint().scale(c0);
            h += &corr.scale(I * (0.5 * term.rate));
        }
    }
    // restore exact symmetry lost to rounding
    let a = (&a + &a.adjoint()).scale_real(0.5);
    let h = (&h + &h.adjoint()).scale_real(0.5);
    GksGenerator::new(h, a, basis)
}

/// Eigen-decomposes `A`; eigenvalues above the rank cutoff become rates.
pub fn to_diagonal(g: &GksGenerator) -> Result<DiagonalGenerator> {
    let e = eigh(&g.a)?;
    let cutoff = RANK_CUTOFF * g.a.frobenius_norm();
    let mut terms = Vec::new();
    for (k, &lambda) in e.values.iter().enumerate() {
        if lambda > cutoff {
            terms.push(LindbladTerm {
                rate: lambda,
                operator: g.basis.combine(&e.vector(k))?,
            });
        }
    }
    DiagonalGenerator::new(g.h.clone(), terms)
}

/// Density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    rho: ComplexMatrix,
}

impl QuantumState {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        let d = rho.ensure_square()?;
        if !rho.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = rho.hermitian_residual();
        if residual > 1e-10 {
            return Err(Error::InvalidState(format!(
                "not Hermitian (residual {residual:.3e})"
            )));
        }
        let tr = rho.trace();
        if (tr - real(1.0)).norm() > 1e-10 {
            return Err(Error::InvalidState(format!("trace {} != 1", tr.re)));
        }
        let min = eigh(&rho)?.values.last().copied().unwrap_or(0.0);
        if min < -1e-9 {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        let _ = d;
        Ok(Self { rho })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            rho: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
        }
    }

    /// `|k⟩⟨k|`.
    pub fn basis_state(d: usize, k: usize) -> Self {
        let mut rho = ComplexMatrix::zeros(d, d);
        rho[(k, k)] = real(1.0);
        Self { rho }
    }

    pub fn d(&self) -> usize {
        self.rho.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }

    /// Applies a superoperator and re-validates the result.
    pub fn evolve(&self, s: &Superoperator) -> Result<Self> {
        let out = s.apply(&self.rho)?;
        Self::new((&out + &out.adjoint()).scale_real(0.5))
    }
}

/// `ρ(t) = e^{tL} ρ₀`.
pub fn apply_exact(g: &GksGenerator, rho0: &QuantumState, t: f64) -> Result<QuantumState> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    if rho0.d() != g.d() {
        return Err(Error::DimensionMismatch {
            expected: g.d(),
            found: rho0.d(),
        });
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    rho0.evolve(&g.liouvillian().exp(t)?)
}
