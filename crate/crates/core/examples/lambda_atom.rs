// Three-level atom in the Λ configuration: GKS entries, spectral terms,
// canonical phases and universal angles.

use lindblad_universal::decompose::{canonical_phase, reduce_term, spectral_split};
use lindblad_universal::lambda_atom::LambdaAtom;
use lindblad_universal::Result;

pub fn run_example() -> Result<()> {
    let atom = LambdaAtom::default();
    let g = atom.generator()?;
    let a = g.gks_matrix();
    for (i, j) in [(3, 3), (3, 4), (3, 7), (4, 6), (5, 5), (5, 8), (8, 8)] {
        let z = a[(i - 1, j - 1)];
        println!("a[{i},{j}] = {:+.6} {:+.6}i", z.re, z.im);
    }

    for (k, term) in spectral_split(&g)?.iter().enumerate() {
        let c = canonical_phase(&term.vector)?;
        let r = reduce_term(term, g.basis())?;
        println!(
            "term {}: lambda = {:.4}, psi = {:.6}, theta = {:.6}",
            k + 1,
            term.lambda,
            c.psi,
            c.theta
        );
        let pi = std::f64::consts::PI;
        let angles: Vec<String> = r.plan.params.alpha_i.iter().map(|x| format!("{:.4}pi", x / pi)).collect();
        println!("    alphaI = ({})", angles.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
