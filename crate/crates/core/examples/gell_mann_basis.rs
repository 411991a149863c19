// Generalised Gell-Mann basis of su(3), its structure constants, and the
// map between traceless Hermitian matrices and real coordinate vectors.

use lindblad_universal::numerics::C64;
use lindblad_universal::sud::{from_real_vector, structure_constants, to_real_vector, GellMannBasis};
use lindblad_universal::Result;

pub fn run_example() -> Result<()> {
    let basis = GellMannBasis::new(3)?;
    println!("d = {}, {} basis elements", basis.d(), basis.len());
    println!("sigma_x(0,2) is slot {}, sigma_y(1,2) is slot {}", basis.sigma_x_index(0, 2), basis.sigma_y_index(1, 2));

    let f = structure_constants(&basis);
    let mut nonzero = 0;
    for g in 0..8 {
        for a in 0..8 {
            for b in 0..8 {
                if f.get(g, a, b).abs() > 1e-12 {
                    nonzero += 1;
                }
            }
        }
    }
    println!("non-zero structure constants: {nonzero}");
    println!("f(sx01, sy01, d1) = {:.6}", f.get(basis.sigma_x_index(0, 1), basis.sigma_y_index(0, 1), 0));

    let x = vec![0.3, -0.1, 0.0, 0.7, 0.2, 0.0, 0.5, -0.4];
    let m = from_real_vector(&x, &basis)?;
    println!("trace of the assembled matrix: {:.2e}", m.trace().norm());
    let back = to_real_vector(&m, &basis)?;
    let err = x.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("round-trip error: {err:.2e}");

    // the real map lands on anti-Hermitian matrices i·Σ x F
    let c = basis.coefficients(&m)?;
    assert!(c.iter().all(|z: &C64| z.re.abs() < 1e-14));
    println!("anti-Hermitian residual: {:.1e}", (&m + &m.adjoint()).max_abs());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
