//! Hyperspherical parametrisation of the universal rank-one family.
//!
//! Universal slot order is the Gell-Mann order with the `σ_y^(j,d)` slots
//! (pairs touching the last level) moved to the end. In that order `ãᴿ` is
//! supported on the first `d−1` slots and `ãᴵ` on the first `d²−d`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};
use crate::sud::GellMannBasis;

/// Off-support mass above which a vector is rejected.
pub const ZERO_PATTERN_TOL: f64 = 1e-9;

/// `order[u]` is the Gell-Mann slot stored at universal slot `u`.
pub fn universal_order(basis: &GellMannBasis) -> Vec<usize> {
    let d = basis.d();
    let last: Vec<usize> = (0..d - 1).map(|j| basis.sigma_y_index(j, d - 1)).collect();
    let mut order: Vec<usize> = (0..basis.len()).filter(|i| !last.contains(i)).collect();
    order.extend(last);
    order
}

pub fn to_universal<T: Copy>(v: &[T], order: &[usize]) -> Vec<T> {
    order.iter().map(|&i| v[i]).collect()
}

pub fn from_universal<T: Copy + Default>(v: &[T], order: &[usize]) -> Vec<T> {
    let mut out = vec![T::default(); v.len()];
    for (u, &i) in order.iter().enumerate() {
        out[i] = v[u];
    }
    out
}

/// `(θ, α⃗ᴿ, α⃗ᴵ)` of one member of the universal family.
#[derive(Debug, Clone, PartialEq)]
pub struct UniversalParams {
    pub d: usize,
    pub theta: f64,
    /// `d − 2` angles (empty for `d = 2`).
    pub alpha_r: Vec<f64>,
    /// `d² − d − 1` angles (empty for `d = 2`); the first is fixed by orthogonality.
    pub alpha_i: Vec<f64>,
}

impl UniversalParams {
    /// `(ãᴿ, ãᴵ)` in universal slot order.
    pub fn universal_vectors(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.d * self.d - 1;
        let mut ar = vec![0.0; n];
        let mut ai = vec![0.0; n];
        if self.d == 2 {
            ar[0] = 1.0;
            ai[1] = 1.0;
        } else {
            ar[..self.d - 1].copy_from_slice(&hyperspherical(&self.alpha_r));
            ai[..self.d * self.d - self.d].copy_from_slice(&hyperspherical(&self.alpha_i));
        }
        (ar, ai)
    }

    /// `(ãᴿ, ãᴵ)` in Gell-Mann slot order.
    pub fn vectors(&self, basis: &GellMannBasis) -> (Vec<f64>, Vec<f64>) {
        let order = universal_order(basis);
        let (ar, ai) = self.universal_vectors();
        (from_universal(&ar, &order), from_universal(&ai, &order))
    }

    /// `cos θ ãᴿ + i sin θ ãᴵ` in Gell-Mann slot order.
    pub fn gks_vector(&self, basis: &GellMannBasis) -> Vec<C64> {
        let (ar, ai) = self.vectors(basis);
        let (s, c) = self.theta.sin_cos();
        ar.iter()
            .zip(&ai)
            .map(|(&r, &i)| C64::new(c * r, s * i))
            .collect()
    }

    /// `A(θ, α⃗ᴿ, α⃗ᴵ) = v v†`.
    pub fn gks_matrix(&self, basis: &GellMannBasis) -> ComplexMatrix {
        let v = self.gks_vector(basis);
        ComplexMatrix::outer(&v, &v)
    }

    /// Residual of `cos αᴵ₁ = −(1/aᴿ₁) Σ_{j≥2} aᴿ_j aᴵ_j`, or `None` when `aᴿ₁ = 0` or `d = 2`.
    pub fn orthogonality_constraint_residual(&self) -> Option<f64> {
        if self.d == 2 {
            return None;
        }
        let (ar, ai) = self.universal_vectors();
        if ar[0].abs() < 1e-12 {
            return None;
        }
        let s: f64 = (1..self.d - 1).map(|j| ar[j] * ai[j]).sum();
        Some((self.alpha_i[0].cos() + s / ar[0]).abs())
    }
}

/// Unit vector with `n + 1` components from `n` hyperspherical angles.
pub fn hyperspherical(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len() + 1);
    let mut prefix = 1.0;
    for &a in angles {
        out.push(prefix * a.cos());
        prefix *= a.sin();
    }
    out.push(prefix);
    out
}

/// Inverse of [`hyperspherical`]: leading angles in `[0, π]`, last in `[0, 2π)`.
pub fn hyperspherical_angles(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    assert!(n >= 2, "need at least two components");
    let mut angles = Vec::with_capacity(n - 1);
    for i in 0..n - 2 {
        let tail = v[i..].iter().map(|x| x * x).sum::<f64>().sqrt();
        let a = if tail == 0.0 {
            0.0
        } else {
            (v[i] / tail).clamp(-1.0, 1.0).acos()
        };
        angles.push(a);
    }
    let mut last = v[n - 1].atan2(v[n - 2]);
    if last < 0.0 {
        last += TAU;
    }
    if last >= TAU {
        last -= TAU;
    }
    angles.push(last);
    angles
}

fn off_support(v: &[f64], support: usize) -> f64 {
    v[support..].iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Angles for a canonical pair given in universal slot order.
pub fn extract_params(ar: &[f64], ai: &[f64], theta: f64, d: usize) -> Result<UniversalParams> {
    let n = d * d - 1;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    for v in [ar, ai] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { norm });
        }
    }
    if !(0.0..=PI / 4.0 + 1e-12).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta {theta} outside [0, pi/4]"
        )));
    }
    let residual = off_support(ar, d - 1).max(off_support(ai, d * d - d));
    if residual > ZERO_PATTERN_TOL {
        return Err(Error::ZeroPattern { residual });
    }
    let overlap: f64 = ar.iter().zip(ai).map(|(a, b)| a * b).sum();
    if overlap.abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "real and imaginary parts not orthogonal (overlap {overlap:.3e})"
        )));
    }
    let theta = theta.min(PI / 4.0);
    if d == 2 {
        return Ok(UniversalParams {
            d,
            theta,
            alpha_r: Vec::new(),
            alpha_i: Vec::new(),
        });
    }
    Ok(UniversalParams {
        d,
        theta,
        alpha_r: hyperspherical_angles(&ar[..d - 1]),
        alpha_i: hyperspherical_angles(&ai[..d * d - d]),
    })
}
