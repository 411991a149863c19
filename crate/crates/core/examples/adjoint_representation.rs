// The adjoint representation G(U) of a random special unitary, checked
// against its defining properties and against exp of the structure
// constant generators.

use lindblad_universal::numerics::{expm, ComplexMatrix, C64};
use lindblad_universal::sample;
use lindblad_universal::sud::{adjoint_from_generator, adjoint_matrix, structure_constants, GellMannBasis};
use lindblad_universal::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let d = 4;
    let basis = GellMannBasis::new(d)?;
    let u = sample::special_unitary(&mut rng, d);
    let v = sample::special_unitary(&mut rng, d);

    let gu = adjoint_matrix(&u, &basis)?;
    let gv = adjoint_matrix(&v, &basis)?;
    let g = gu.matrix();
    let n = basis.len();
    println!("G(U) is {n}x{n}, max imaginary part {:.1e}", g.as_slice().iter().map(|z| z.im.abs()).fold(0.0, f64::max));
    println!("|G^T G - I| = {:.2e}", (&(&g.transpose() * g) - &ComplexMatrix::identity(n)).max_abs());
    let guv = adjoint_matrix(&(&u * &v), &basis)?;
    println!("|G(UV) - G(U)G(V)| = {:.2e}", guv.matrix().max_abs_diff(&(g * gv.matrix())));

    // U = exp(i sum r F) has G(U) = exp(-i sum r G_gamma)
    let r = sample::ball_vector(&mut rng, n, 1.5);
    let h = basis.combine(&r.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())?;
    let w = expm(&h.scale(C64::new(0.0, 1.0)))?;
    let direct = adjoint_matrix(&w, &basis)?;
    let via_lie = adjoint_from_generator(&r, &structure_constants(&basis))?;
    println!("|Ad(exp) - exp(ad)| = {:.2e}", direct.matrix().max_abs_diff(&via_lie));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
