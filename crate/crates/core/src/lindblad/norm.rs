//! Lower-bound-driven estimate of the superoperator (1→1) norm.
//!
//! The trace-norm unit ball is the convex hull of rank-one `ψφ†`, so the norm
//! is `max ‖S(ψφ†)‖₁` over unit `ψ, φ`. Writing `‖X‖₁ = max_W Re tr(W X)`
//! over contractions `W` gives a bilinear problem solved by alternating
//! exact maximisation in `W` and in `(ψ, φ)`. Each step cannot decrease the
//! objective, so every start converges to a local maximum from below.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Superoperator;
use crate::numerics::{eigh, trace_norm, ComplexMatrix, C64, ZERO};
use crate::sample::complex_unit_vector;

/// Multiplier applied to the best local maximum.
pub const SAFETY_FACTOR: f64 = 1.001;
const RANDOM_STARTS: usize = 8;
const DEFAULT_SEED: u64 = 0x5eed;
const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    /// Best value found, a certified lower bound on the norm.
    pub lower: f64,
    /// `lower · SAFETY_FACTOR`.
    pub value: f64,
}

pub fn one_one_norm(s: &Superoperator) -> f64 {
    one_one_norm_with(s, RANDOM_STARTS, DEFAULT_SEED).value
}

pub fn one_one_norm_with(s: &Superoperator, random_starts: usize, seed: u64) -> NormEstimate {
    let d = s.d();
    if s.is_zero() {
        return NormEstimate {
            lower: 0.0,
            value: 0.0,
        };
    }
    let mut best = 0.0_f64;
    for i in 0..d {
        for j in 0..d {
            let mut psi = vec![ZERO; d];
            let mut phi = vec![ZERO; d];
            psi[i] = C64::new(1.0, 0.0);
            phi[j] = C64::new(1.0, 0.0);
            best = best.max(climb(s, psi, phi));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_starts {
        let psi = complex_unit_vector(&mut rng, d);
        let phi = complex_unit_vector(&mut rng, d);
        best = best.max(climb(s, psi, phi));
    }
    NormEstimate {
        lower: best,
        value: best * SAFETY_FACTOR,
    }
}

fn image(s: &Superoperator, psi: &[C64], phi: &[C64]) -> ComplexMatrix {
    s.apply(&ComplexMatrix::outer(psi, phi)).expect("dimension")
}

fn climb(s: &Superoperator, mut psi: Vec<C64>, mut phi: Vec<C64>) -> f64 {
    let d = s.d();
    let mut value = trace_norm(&image(s, &psi, &phi)).unwrap_or(0.0);
    for _ in 0..MAX_ITERATIONS {
        let x = image(s, &psi, &phi);
        let Some(w) = polar_dual(&x) else {
            break;
        };
        // Re tr(W S(ψφ†)) = Re ψᵀ Z φ̄ with Z_ab = Σ_r vec(Wᵀ)_r S_{r, a + b d}
        let wt = w.transpose().vectorize();
        let m = s.matrix();
        let z = ComplexMatrix::from_fn(d, d, |a, b| {
            let col = a + b * d;
            wt.iter()
                .enumerate()
                .map(|(r, &wr)| wr * m[(r, col)])
                .sum()
        });
        let Some((u, v)) = top_singular_pair(&z.conj()) else {
            break;
        };
        psi = u;
        phi = v;
        let next = trace_norm(&image(s, &psi, &phi)).unwrap_or(0.0);
        if next <= value * (1.0 + 1e-14) {
            value = value.max(next);
            break;
        }
        value = next;
    }
    value
}

/// `W` with `Re tr(W X) = ‖X‖₁`: for `X = UΣV†`, `W = V U†`.
fn polar_dual(x: &ComplexMatrix) -> Option<ComplexMatrix> {
    let e = eigh(&(&x.adjoint() * x)).ok()?;
    let n = x.rows();
    let top = e.values.first().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return None;
    }
    // V Σ⁻¹ V† X† restricted to the nonzero singular values
    let mut inv = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in e.values.iter().enumerate() {
        if lambda > 1e-24 * top {
            let v = e.vector(k);
            inv += &ComplexMatrix::outer(&v, &v).scale_real(1.0 / lambda.sqrt());
        }
    }
    Some(&inv * &x.adjoint())
}

/// Unit `(u, v)` maximising `Re u† M v`.
fn top_singular_pair(m: &ComplexMatrix) -> Option<(Vec<C64>, Vec<C64>)> {
    let e = eigh(&(&m.adjoint() * m)).ok()?;
    let sigma = e.values.first().copied()?.max(0.0).sqrt();
    if sigma == 0.0 {
        return None;
    }
    let v = e.vector(0);
    let u = m.matvec(&v).into_iter().map(|z| z / sigma).collect();
    Some((u, v))
}
