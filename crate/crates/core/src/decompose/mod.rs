//! Reduction of a GKS matrix to conjugated members of the universal family.
//!
//! Pipeline per rank-one term `λ a a†`:
//! 1. rotate the global phase so the real and imaginary parts of `a` are
//!    orthogonal with the real part dominant (`θ ∈ [0, π/4]`);
//! 2. `U₁` diagonalises `f⁻¹(âᴿ)`;
//! 3. diagonal `U₂` removes the `σ_y^(j,d)` components of the conjugated `âᴵ`;
//! 4. read hyperspherical angles off the resulting pair.
//!
//! With `U = U₁†U₂†` the term satisfies `a a† = G₍U₎ A(θ, α⃗ᴿ, α⃗ᴵ) G₍U₎ᵀ`, and its
//! channel is `ρ ↦ U T_A(U†ρU) U†`.

mod params;

pub use params::{
    extract_params, from_universal, hyperspherical, hyperspherical_angles, to_universal,
    universal_order, UniversalParams, ZERO_PATTERN_TOL,
};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lindblad::{hamiltonian_liouvillian, rank_one_liouvillian, GksGenerator, Superoperator, RANK_CUTOFF};
use crate::numerics::{det, eigh, ComplexMatrix, C64, I};
use crate::sud::{adjoint_matrix, from_real_vector, to_real_vector, GellMannBasis};

/// Plans whose reassembly residual exceeds this are rejected.
pub const PLAN_TOL: f64 = 1e-8;
const PHASE_TOL: f64 = 1e-12;

/// `λ a a†` with `|a| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneTerm {
    pub lambda: f64,
    pub vector: Vec<C64>,
}

impl RankOneTerm {
    pub fn gks_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.vector, &self.vector).scale_real(self.lambda)
    }
}

/// `e^{iψ} a = cos θ aR + i sin θ aI` with orthonormal real `aR`, `aI`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalVector {
    pub psi: f64,
    pub theta: f64,
    pub real_part: Vec<f64>,
    pub imag_part: Vec<f64>,
}

impl CanonicalVector {
    pub fn recombine(&self) -> Vec<C64> {
        let (s, c) = self.theta.sin_cos();
        self.real_part
            .iter()
            .zip(&self.imag_part)
            .map(|(&r, &i)| C64::new(c * r, s * i))
            .collect()
    }
}

/// A rank-one term realised as a conjugated universal generator.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationPlan {
    pub lambda: f64,
    /// `U ∈ SU(d)` with `a a† = G₍U₎ A(params) G₍U₎ᵀ`.
    pub unitary: ComplexMatrix,
    pub params: UniversalParams,
}

impl ConjugationPlan {
    /// Liouvillian of the universal member, before conjugation and without `λ`.
    pub fn universal_liouvillian(&self, basis: &GellMannBasis) -> Result<Superoperator> {
        rank_one_liouvillian(&self.params.gks_vector(basis), basis)
    }

    /// `λ · (ρ ↦ U L_A(U†ρU) U†)`.
    pub fn liouvillian(&self, basis: &GellMannBasis) -> Result<Superoperator> {
        let inner = self.universal_liouvillian(basis)?;
        let u = &self.unitary;
        let s = Superoperator::conjugation(u)
            .after(&inner)
            .after(&Superoperator::conjugation(&u.adjoint()));
        Ok(s.scale(self.lambda))
    }
}

/// Hamiltonian, spectral terms and one plan per term.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub hamiltonian: ComplexMatrix,
    pub terms: Vec<RankOneTerm>,
    pub plans: Vec<ConjugationPlan>,
    pub residuals: Vec<f64>,
}

impl Decomposition {
    pub fn reassemble(&self, basis: &GellMannBasis) -> Result<Superoperator> {
        let mut s = hamiltonian_liouvillian(&self.hamiltonian);
        for plan in &self.plans {
            s += &plan.liouvillian(basis)?;
        }
        Ok(s)
    }
}

/// Eigen-split of `A`, descending, dropping eigenvalues below the rank cutoff.
pub fn spectral_split(g: &GksGenerator) -> Result<Vec<RankOneTerm>> {
    let a = g.gks_matrix();
    let e = eigh(a)?;
    let scale = a.frobenius_norm();
    let min = e.values.last().copied().unwrap_or(0.0);
    if min < -1e-10 * scale {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    let cutoff = RANK_CUTOFF * scale;
    Ok(e.values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > cutoff)
        .map(|(k, &lambda)| RankOneTerm {
            lambda,
            vector: e.vector(k),
        })
        .collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn canonical_phase(a: &[C64]) -> Result<CanonicalVector> {
    let n2: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    if (n2.sqrt() - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: n2.sqrt() });
    }
    let re: Vec<f64> = a.iter().map(|z| z.re).collect();
    let im: Vec<f64> = a.iter().map(|z| z.im).collect();
    let k1 = dot(&re, &re) - dot(&im, &im);
    let k2 = 2.0 * dot(&re, &im);
    let psi = if k1.hypot(k2) <= PHASE_TOL {
        0.0
    } else {
        (-0.5 * k2.atan2(k1)).rem_euclid(PI)
    };
    let rot = C64::from_polar(1.0, psi);
    let rotated: Vec<C64> = a.iter().map(|&z| rot * z).collect();
    let mut ar: Vec<f64> = rotated.iter().map(|z| z.re).collect();
    let mut ai: Vec<f64> = rotated.iter().map(|z| z.im).collect();

    let nr = norm(&ar);
    let theta = nr.clamp(0.0, 1.0).acos().min(PI / 4.0);
    ar.iter_mut().for_each(|x| *x /= nr);
    let overlap = dot(&ar, &ai);
    ai.iter_mut().zip(&ar).for_each(|(x, r)| *x -= overlap * r);
    let ni = norm(&ai);
    if ni < PHASE_TOL {
        return Ok(CanonicalVector {
            psi,
            theta: 0.0,
            imag_part: orthogonal_unit(&ar),
            real_part: ar,
        });
    }
    ai.iter_mut().for_each(|x| *x /= ni);
    Ok(CanonicalVector {
        psi,
        theta,
        real_part: ar,
        imag_part: ai,
    })
}

/// First standard basis vector with a large component orthogonal to `v`.
fn orthogonal_unit(v: &[f64]) -> Vec<f64> {
    for k in 0..v.len() {
        let mut e = vec![0.0; v.len()];
        e[k] = 1.0;
        let c = v[k];
        e.iter_mut().zip(v).for_each(|(x, r)| *x -= c * r);
        let n = norm(&e);
        if n > 0.5 {
            return e.into_iter().map(|x| x / n).collect();
        }
    }
    unreachable!("some basis vector is far from any unit vector")
}

/// `U₁ ∈ SU(d)` with `U₁ f⁻¹(aR) U₁†` diagonal. Eigenvalues land largest first,
/// then ascending.
pub fn diagonalizing_unitary(ar: &[f64], basis: &GellMannBasis) -> Result<ComplexMatrix> {
    let nr = norm(ar);
    if (nr - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: nr });
    }
    let m = from_real_vector(ar, basis)?.scale(-I);
    let e = eigh(&m)?;
    let d = basis.d();
    let order: Vec<usize> = std::iter::once(0).chain((1..d).rev()).collect();
    let u = ComplexMatrix::from_fn(d, d, |i, j| e.vectors[(j, order[i])].conj());
    Ok(special(u))
}

/// Divides out the principal `d`-th root of the determinant.
fn special(u: ComplexMatrix) -> ComplexMatrix {
    let d = u.rows();
    let det = det(&u).expect("square");
    let root = C64::from_polar(1.0, det.arg() / d as f64);
    u.scale(root.inv())
}

/// Diagonal phase unitary `U₂ = exp(iΣ h_l d^(l))` and its `h`.
#[derive(Debug, Clone)]
pub struct PhaseElimination {
    pub unitary: ComplexMatrix,
    pub h: Vec<f64>,
}

/// Chooses `U₂` so every `(j, d)` entry of `U₂ X U₂†` is a non-negative
/// multiple of `iσ_x^(j,d)`, eliminating the `σ_y^(j,d)` coordinates.
pub fn phase_elimination_unitary(x: &ComplexMatrix, basis: &GellMannBasis) -> Result<PhaseElimination> {
    let d = basis.d();
    let n = x.ensure_square()?;
    if n != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: n,
        });
    }
    let s2 = std::f64::consts::SQRT_2;
    let phases: Vec<f64> = (0..d - 1)
        .map(|j| {
            let a = -I * s2 * x[(j, d - 1)];
            if a.norm() < PHASE_TOL {
                0.0
            } else {
                a.arg()
            }
        })
        .collect();
    let beta_d = phases.iter().sum::<f64>() / d as f64;
    let mut beta: Vec<f64> = phases.iter().map(|p| beta_d - p).collect();
    beta.push(beta_d);
    let unitary = ComplexMatrix::from_diag(&beta.iter().map(|&b| C64::from_polar(1.0, b)).collect::<Vec<_>>());
    let diag_beta = ComplexMatrix::from_real_diag(&beta);
    let h = (0..d - 1)
        .map(|l| basis.get(l).trace_product(&diag_beta).re)
        .collect();
    Ok(PhaseElimination { unitary, h })
}

/// Intermediate objects of the per-term reduction, exposed for inspection.
#[derive(Debug, Clone)]
pub struct TermReduction {
    pub canonical: CanonicalVector,
    pub u1: ComplexMatrix,
    pub u2: PhaseElimination,
    /// `U₁ f⁻¹(âᴿ) U₁†`.
    pub real_diagonal: ComplexMatrix,
    /// `U₁ f⁻¹(âᴵ) U₁†`.
    pub imag_conjugated: ComplexMatrix,
    pub plan: ConjugationPlan,
}

pub fn reduce_term(term: &RankOneTerm, basis: &GellMannBasis) -> Result<TermReduction> {
    let d = basis.d();
    let canonical = canonical_phase(&term.vector)?;
    let u1 = diagonalizing_unitary(&canonical.real_part, basis)?;
    let conj = |u: &ComplexMatrix, x: &ComplexMatrix| &(u * x) * &u.adjoint();
    let real_diagonal = conj(&u1, &from_real_vector(&canonical.real_part, basis)?);
    let imag_conjugated = conj(&u1, &from_real_vector(&canonical.imag_part, basis)?);
    let u2 = phase_elimination_unitary(&imag_conjugated, basis)?;

    let order = universal_order(basis);
    let ar = to_universal(&to_real_vector(&real_diagonal, basis)?, &order);
    let ai = to_universal(
        &to_real_vector(&conj(&u2.unitary, &imag_conjugated), basis)?,
        &order,
    );
    let (ar, ai) = if d == 2 {
        let mut r = vec![0.0; 3];
        let mut i = vec![0.0; 3];
        r[0] = 1.0;
        i[1] = 1.0;
        (r, i)
    } else if canonical.theta == 0.0 {
        let mut i = vec![0.0; d * d - 1];
        i[d - 1] = 1.0;
        (ar, i)
    } else {
        (ar, ai)
    };
    let params = extract_params(&ar, &ai, canonical.theta, d)?;
    let unitary = &u1.adjoint() * &u2.unitary.adjoint();
    Ok(TermReduction {
        canonical,
        u1,
        u2,
        real_diagonal,
        imag_conjugated,
        plan: ConjugationPlan {
            lambda: term.lambda,
            unitary,
            params,
        },
    })
}

/// `‖a a† − G₍U₎ A(params) G₍U₎ᵀ‖_F`.
pub fn verify_plan(plan: &ConjugationPlan, term: &RankOneTerm, basis: &GellMannBasis) -> Result<f64> {
    let g = adjoint_matrix(&plan.unitary, basis)?;
    let target = ComplexMatrix::outer(&term.vector, &term.vector);
    let got = g.conjugate(&plan.params.gks_matrix(basis));
    Ok((&target - &got).frobenius_norm())
}

pub fn decompose_generator(g: &GksGenerator) -> Result<Decomposition> {
    let basis = g.basis();
    let terms = spectral_split(g)?;
    let mut plans = Vec::with_capacity(terms.len());
    let mut residuals = Vec::with_capacity(terms.len());
    for term in &terms {
        let plan = reduce_term(term, basis)?.plan;
        let residual = verify_plan(&plan, term, basis)?;
        if !(residual <= PLAN_TOL) {
            return Err(Error::Verification {
                residual,
                tolerance: PLAN_TOL,
            });
        }
        plans.push(plan);
        residuals.push(residual);
    }
    Ok(Decomposition {
        hamiltonian: g.hamiltonian().clone(),
        terms,
        plans,
        residuals,
    })
}
