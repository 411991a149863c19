// (1→1) norm estimates for a few simple Liouvillians.

use lindblad_universal::lindblad::{dissipator, hamiltonian_liouvillian, one_one_norm_with, Superoperator};
use lindblad_universal::numerics::{ComplexMatrix, C64};
use lindblad_universal::Result;

pub fn run_example() -> Result<()> {
    let mut lower = ComplexMatrix::zeros(2, 2);
    lower[(0, 1)] = C64::new(1.0, 0.0);
    let z = ComplexMatrix::from_real_diag(&[0.5, -0.5]);
    let cases = [
        ("identity channel", Superoperator::identity(2)),
        ("amplitude damping", dissipator(&lower)),
        ("dephasing", dissipator(&z)),
        ("Hamiltonian Z/2", hamiltonian_liouvillian(&z)),
    ];
    for (name, s) in cases {
        let est = one_one_norm_with(&s, 8, 1);
        println!("{name:>18}: lower {:.6}, reported {:.6}", est.lower, est.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
