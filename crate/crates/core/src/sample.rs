//! Seeded random test objects: unitaries, states, GKS matrices and generators.
//!
//! Every function takes the caller's RNG so results are reproducible from a seed.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::lindblad::GksGenerator;
use crate::numerics::{det, ComplexMatrix, C64};
use crate::sud::GellMannBasis;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Uniform point in the real ball of the given radius.
pub fn ball_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, radius: f64) -> Vec<f64> {
    let dir: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let r = radius * rng.gen::<f64>().powf(1.0 / n as f64);
    dir.into_iter().map(|x| x * r / norm).collect()
}

/// Haar-random unitary (Gram-Schmidt on a Ginibre matrix).
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        for c in &cols {
            let proj: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(c) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

pub fn special_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let u = unitary(rng, n);
    let phase = det(&u).expect("square").powf(1.0 / n as f64);
    u.scale(phase.inv())
}

/// Hermitian matrix with independent Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    (&g + &g.adjoint()).scale_real(0.5)
}

pub fn traceless_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let h = hermitian(rng, n);
    let shift = h.trace().re / n as f64;
    &h - &ComplexMatrix::identity(n).scale_real(shift)
}

/// Random full-rank density matrix `GG†/tr(GG†)`.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let v = complex_unit_vector(rng, n);
    ComplexMatrix::outer(&v, &v)
}

/// PSD matrix `Σ_k w_k v_k v_k†` of the given rank, weights uniform in (0, 1].
pub fn psd_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(n, n);
    for _ in 0..rank {
        let v = complex_unit_vector(rng, n);
        let w = 1.0 - rng.gen::<f64>();
        a += &ComplexMatrix::outer(&v, &v).scale_real(w);
    }
    a
}

/// Generator with Gaussian Hamiltonian scaled by `h_scale` and a GKS matrix of rank `rank`.
pub fn gks_generator<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    rank: usize,
    h_scale: f64,
) -> GksGenerator {
    let basis = GellMannBasis::new(d).expect("d >= 2");
    let h = traceless_hermitian(rng, d).scale_real(h_scale);
    let a = psd_matrix(rng, d * d - 1, rank);
    GksGenerator::new(h, a, basis).expect("sampled generator is valid")
}
