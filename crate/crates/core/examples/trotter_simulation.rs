// Product-formula simulation of a random qubit generator at several
// accuracy targets, compared with the exact exponential.

use lindblad_universal::lindblad::{apply_exact, QuantumState};
use lindblad_universal::numerics::trace_distance;
use lindblad_universal::sample;
use lindblad_universal::trotter::simulate;
use lindblad_universal::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let g = sample::gks_generator(&mut rng, 2, 2, 1.0);
    let rho = QuantumState::new(sample::pure_state(&mut rng, 2))?;
    let t = 1.0;
    let exact = apply_exact(&g, &rho, t)?;

    println!("{:>8} {:>3} {:>7} {:>8} {:>12}", "eps", "k", "n_reps", "N_exp", "distance");
    for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
        let out = simulate(&g, &rho, t, eps)?;
        let dist = trace_distance(out.state.matrix(), exact.matrix())?;
        println!(
            "{eps:>8.0e} {:>3} {:>7} {:>8} {dist:>12.3e}",
            out.report.k, out.report.n_reps, out.report.n_exp_actual
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
