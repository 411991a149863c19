// Splits a random qutrit generator into rank-one terms, reduces each to a
// conjugated member of the universal family, and prints the plan document.

use lindblad_universal::decompose::decompose_generator;
use lindblad_universal::io::{plan_to_json, to_canonical_string};
use lindblad_universal::sample;
use lindblad_universal::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let g = sample::gks_generator(&mut rng, 3, 3, 0.5);
    let dec = decompose_generator(&g)?;

    for (term, (plan, res)) in dec.terms.iter().zip(dec.plans.iter().zip(&dec.residuals)) {
        println!(
            "lambda = {:.5}  theta = {:.5}  alphaR = {:.4?}  residual = {res:.1e}",
            term.lambda, plan.params.theta, plan.params.alpha_r
        );
        println!("    alphaI = {:.4?}", plan.params.alpha_i);
    }
    let gap = dec.reassemble(g.basis())?.distance(&g.liouvillian());
    println!("reassembled Liouvillian differs by {gap:.1e}");

    let text = to_canonical_string(&plan_to_json(&dec)?)?;
    println!("plan document: {} bytes", text.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
