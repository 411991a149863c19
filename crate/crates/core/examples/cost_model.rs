// Integrator order and exponential counts as the accuracy target tightens.

use lindblad_universal::trotter::{bound_res, cost_report, select_order};
use lindblad_universal::Result;

pub fn run_example() -> Result<()> {
    let (m, t, l1, l2) = (3, 1.0, 2.0, 1.0);
    println!("{:>8} {:>3} {:>10} {:>9} {:>12} {:>12}", "eps", "k", "r", "actual", "bound(res)", "closed form");
    let mut eps = 1e-1;
    while eps > 1e-9 {
        let r = cost_report(m, t, eps, l1, l2)?;
        println!(
            "{eps:>8.0e} {:>3} {:>10.3} {:>9} {:>12.1} {:>12.1}",
            r.k, r.r, r.n_exp_actual, r.n_exp_bound_res, r.n_exp_bound_closed_form
        );
        eps /= 100.0;
    }

    // the rounded order sits at the minimum of the count bound
    let s = select_order(1e-6, t, m, l1, l2)?;
    for k in s.k.saturating_sub(1).max(1)..=s.k + 1 {
        println!("k = {k}: bound {:.1}", bound_res(m, k, t, l1, s.x));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
