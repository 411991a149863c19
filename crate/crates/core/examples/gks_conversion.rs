// Amplitude damping with dephasing written as rates and jump operators,
// converted to GKS form and back, then evolved exactly.

use lindblad_universal::lindblad::{apply_exact, from_diagonal, to_diagonal, DiagonalGenerator, LindbladTerm, QuantumState};
use lindblad_universal::numerics::{ComplexMatrix, C64};
use lindblad_universal::Result;

pub fn run_example() -> Result<()> {
    let mut lower = ComplexMatrix::zeros(2, 2);
    lower[(0, 1)] = C64::new(1.0, 0.0);
    let z = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
    let mut h = ComplexMatrix::zeros(2, 2);
    h[(0, 1)] = C64::new(0.4, 0.0);
    h[(1, 0)] = C64::new(0.4, 0.0);

    let diag = DiagonalGenerator::new(
        h,
        vec![
            LindbladTerm { rate: 0.5, operator: lower },
            LindbladTerm { rate: 0.1, operator: z },
        ],
    )?;
    let g = from_diagonal(&diag)?;
    println!("GKS matrix:\n{:?}", g.gks_matrix());
    println!("rank {}, min eigenvalue {:.2e}", g.rank()?, g.min_gks_eigenvalue()?);

    let back = to_diagonal(&g)?;
    let gap = back.liouvillian().distance(&diag.liouvillian());
    println!("{} jump operators after diagonalising, Liouvillian gap {gap:.1e}", back.terms().len());

    let rho = QuantumState::basis_state(2, 1);
    for t in [0.0, 1.0, 5.0, 20.0] {
        let out = apply_exact(&g, &rho, t)?;
        println!("t = {t:>4}: excited population {:.6}", out.matrix()[(1, 1)].re);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
