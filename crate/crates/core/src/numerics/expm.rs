//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! of degree 3, 5, 7, 9 or 13, selected from the 1-norm (Higham 2005).

use super::lu::solve;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const THETA: [(usize, f64); 4] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_230e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
];
const THETA_13: f64 = 5.371_920_351_148_152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17_297_280.0,
    8_648_640.0,
    1_995_840.0,
    277_200.0,
    25_200.0,
    1_512.0,
    56.0,
    1.0,
];
const B9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3_960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// `e^M` for a square complex matrix.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.ensure_square()?;
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    let norm = m.one_norm();
    if norm == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }

    for &(degree, theta) in &THETA {
        if norm <= theta {
            let coeffs: &[f64] = match degree {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            return pade_low(m, coeffs);
        }
    }

    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = m.scale_real(0.5_f64.powi(s));
    let mut result = pade13(&scaled)?;
    for _ in 0..s {
        result = &result * &result;
    }
    if !result.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(result)
}

fn pade_low(a: &ComplexMatrix, b: &[f64]) -> Result<ComplexMatrix> {
    let n = a.rows();
    let ident = ComplexMatrix::identity(n);
    let a2 = a * a;
    // even powers I, A², A⁴, ...
    let mut powers = vec![ident.clone()];
    for k in 1..b.len() / 2 {
        let next = &powers[k - 1] * &a2;
        powers.push(next);
    }
    let mut u_inner = ComplexMatrix::zeros(n, n);
    let mut v = ComplexMatrix::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        u_inner += &p.scale_real(b[2 * k + 1]);
        v += &p.scale_real(b[2 * k]);
    }
    let u = a * &u_inner;
    solve(&(&v - &u), &(&v + &u))
}

fn pade13(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.rows();
    let b = &B13;
    let ident = ComplexMatrix::identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let lin = |terms: &[(&ComplexMatrix, f64)]| {
        let mut acc = ComplexMatrix::zeros(n, n);
        for (m, c) in terms {
            acc += &m.scale_real(*c);
        }
        acc
    };

    let u_hi = lin(&[(&a6, b[13]), (&a4, b[11]), (&a2, b[9])]);
    let u_lo = lin(&[(&a6, b[7]), (&a4, b[5]), (&a2, b[3]), (&ident, b[1])]);
    let u = a * &(&(&a6 * &u_hi) + &u_lo);

    let v_hi = lin(&[(&a6, b[12]), (&a4, b[10]), (&a2, b[8])]);
    let v_lo = lin(&[(&a6, b[6]), (&a4, b[4]), (&a2, b[2]), (&ident, b[0])]);
    let v = &(&a6 * &v_hi) + &v_lo;

    solve(&(&v - &u), &(&v + &u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{ComplexMatrix, C64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale
        })
    }

    /// Truncated Taylor series with repeated squaring, used as an
    /// independent oracle for small norms.
    fn taylor_exp(m: &ComplexMatrix) -> ComplexMatrix {
        let s = 8;
        let scaled = m.scale_real(0.5_f64.powi(s));
        let n = m.rows();
        let mut term = ComplexMatrix::identity(n);
        let mut sum = ComplexMatrix::identity(n);
        for k in 1..40 {
            term = (&term * &scaled).scale_real(1.0 / k as f64);
            sum += &term;
        }
        for _ in 0..s {
            sum = &sum * &sum;
        }
        sum
    }

    #[test]
    fn zero_gives_identity() {
        let e = expm(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e, ComplexMatrix::identity(3));
    }

    #[test]
    fn diagonal_exponentiates_entrywise() {
        let (a, b) = (C64::new(0.7, -1.2), C64::new(-3.5, 0.25));
        let e = expm(&ComplexMatrix::from_diag(&[a, b])).unwrap();
        assert!((e[(0, 0)] - a.exp()).norm() < 1e-14 * a.exp().norm().max(1.0));
        assert!((e[(1, 1)] - b.exp()).norm() < 1e-14);
        assert!(e[(0, 1)].norm() < 1e-15 && e[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn pauli_y_rotation() {
        // exp(iπσ_y/2) = cos(π/2) I + i sin(π/2) σ_y = [[0,1],[-1,0]]
        let half_pi = std::f64::consts::FRAC_PI_2;
        let m = ComplexMatrix::from_rows(&[
            vec![C64::new(0.0, 0.0), C64::new(half_pi, 0.0)],
            vec![C64::new(-half_pi, 0.0), C64::new(0.0, 0.0)],
        ])
        .unwrap();
        let e = expm(&m).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            vec![C64::new(-1.0, 0.0), C64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(e.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            expm(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(f64::NAN, 0.0);
        assert!(matches!(expm(&m), Err(Error::NonFinite)));
    }

    #[test]
    fn matches_taylor_oracle_across_pade_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &scale in &[1e-3, 0.05, 0.2, 0.5, 1.0, 3.0] {
            let m = random_matrix(&mut rng, 5, scale);
            let got = expm(&m).unwrap();
            let want = taylor_exp(&m);
            let rel = (&got - &want).frobenius_norm() / want.frobenius_norm();
            assert!(rel < 1e-12, "scale {scale}: rel err {rel:e}");
        }
    }

    #[test]
    fn inverse_pair_multiplies_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 4, 9] {
            let m = random_matrix(&mut rng, n, 10.0 / n as f64);
            let prod = &expm(&m).unwrap() * &expm(&m.scale_real(-1.0)).unwrap();
            assert!(prod.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
        }
    }

    #[test]
    fn anti_hermitian_input_gives_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 6, 4.0);
        let anti = &a - &a.adjoint();
        let u = expm(&anti).unwrap();
        assert!(u.unitary_residual() < 1e-10);
    }
}
