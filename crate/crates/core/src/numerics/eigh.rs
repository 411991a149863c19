//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Output conventions (all deterministic, no randomisation):
//! - eigenvalues are sorted descending; values within `1e-12·max|λ|` of each
//!   other form a cluster, and vectors inside a cluster are ordered by the
//!   index of their first significant component;
//! - every eigenvector has its last significant component (modulus above
//!   `1e-8` of the vector's largest modulus) made real and positive.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-12;
const SIGNIFICANT: f64 = 1e-8;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::from_real_diag(&self.values);
        &(&self.vectors * &lambda) * &self.vectors.adjoint()
    }
}

pub fn eigh(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = m.ensure_square()?;
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = m.frobenius_norm();
    let residual = m.hermitian_residual();
    if residual > HERMITIAN_TOL * norm {
        return Err(Error::NotHermitian { residual });
    }

    let mut a = (m + &m.adjoint()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    jacobi(&mut a, &mut v, norm);

    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let order = sorted_order(&raw, &v);

    let values = order.iter().map(|&k| raw[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        fix_phase(&mut col);
        for (i, z) in col.into_iter().enumerate() {
            vectors[(i, dst)] = z;
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn jacobi(a: &mut ComplexMatrix, v: &mut ComplexMatrix, scale: f64) {
    let n = a.rows();
    if n < 2 || scale == 0.0 {
        return;
    }
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-16 * scale {
            return;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(a, v, p, q);
            }
        }
    }
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows();
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 || !b.is_normal() {
        return;
    }

    // Phase step: A ← P†AP, P = diag(.., e^{-iφ} at q, ..), makes a_pq = b real.
    let phase = (apq / b).conj();
    for k in 0..n {
        a[(k, q)] *= phase;
        v[(k, q)] *= phase;
    }
    for k in 0..n {
        a[(q, k)] *= phase.conj();
    }

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // A ← RᵀAR with R_pp = R_qq = c, R_pq = s, R_qp = −s.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(app - t * b, 0.0);
    a[(q, q)] = C64::new(aqq + t * b, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
}

fn first_significant(col: &[C64]) -> usize {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    col.iter()
        .position(|z| z.norm() > SIGNIFICANT * max)
        .unwrap_or(0)
}

fn sorted_order(values: &[f64], v: &ComplexMatrix) -> Vec<usize> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));

    let scale = values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let tol = CLUSTER_TOL * scale;
    let firsts: Vec<usize> = (0..n).map(|k| first_significant(&v.column(k))).collect();

    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[idx[end - 1]] - values[idx[end]] <= tol {
            end += 1;
        }
        let mut cluster = idx[start..end].to_vec();
        cluster.sort_by_key(|&k| (firsts[k], k));
        out.extend(cluster);
        start = end;
    }
    out
}

/// Rotates `col` so that its last significant component is real positive.
pub(crate) fn fix_phase(col: &mut [C64]) {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    if let Some(k) = col.iter().rposition(|z| z.norm() > SIGNIFICANT * max) {
        let rot = (col[k] / col[k].norm()).conj();
        for z in col.iter_mut() {
            *z *= rot;
        }
        col[k] = C64::new(col[k].norm(), 0.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::real;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (&g + &g.adjoint()).scale_real(0.5)
    }

    #[test]
    fn diagonal_input_sorted_descending() {
        let e = eigh(&ComplexMatrix::from_real_diag(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x_hand_solve() {
        let sx = ComplexMatrix::from_rows(&[vec![real(0.0), real(1.0)], vec![real(1.0), real(0.0)]])
            .unwrap();
        let e = eigh(&sx).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15 && (e.values[1] + 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = e.vector(0);
        let v1 = e.vector(1);
        // (1, 1)/√2 and (−1, 1)/√2 under the last-component-positive convention
        assert!((v0[0] - real(h)).norm() < 1e-15 && (v0[1] - real(h)).norm() < 1e-15);
        assert!((v1[0] - real(-h)).norm() < 1e-15 && (v1[1] - real(h)).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(3);
        m[(0, 2)] = real(1e-3);
        assert!(matches!(eigh(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn degenerate_cluster_ordered_by_support() {
        // two orthogonal blocks sharing eigenvalue 1
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(3, 3)] = real(1.0);
        m[(1, 1)] = real(0.5);
        m[(1, 2)] = C64::new(0.0, 0.5);
        m[(2, 1)] = C64::new(0.0, -0.5);
        m[(2, 2)] = real(0.5);
        let e = eigh(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        assert_eq!(first_significant(&e.vector(0)), 1);
        assert_eq!(first_significant(&e.vector(1)), 3);
    }

    #[test]
    fn reconstruction_oracle_up_to_16() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 1..=16 {
            let m = random_hermitian(&mut rng, n);
            let e = eigh(&m).unwrap();
            let scale = m.frobenius_norm();
            assert!((&e.reconstruct() - &m).frobenius_norm() <= 1e-10 * scale, "n={n}");
            assert!(e.vectors.unitary_residual() < 1e-10, "n={n}");
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn repeated_calls_are_bit_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_hermitian(&mut rng, 8);
        let a = eigh(&m).unwrap();
        let b = eigh(&m).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn reconstruction_holds(seed in any::<u64>(), n in 1usize..=16) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_hermitian(&mut rng, n);
            let e = eigh(&m).unwrap();
            let scale = m.frobenius_norm().max(1e-300);
            prop_assert!((&e.reconstruct() - &m).frobenius_norm() <= 1e-10 * scale);
            for k in 0..n {
                let col = e.vector(k);
                let last = col.iter().rposition(|z| z.norm() > SIGNIFICANT * col.iter().map(|z| z.norm()).fold(0.0, f64::max)).unwrap();
                prop_assert!(col[last].im == 0.0 && col[last].re > 0.0);
            }
        }
    }
}
