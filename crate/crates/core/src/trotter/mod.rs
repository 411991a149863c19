//! Suzuki-Trotter recombination of a sum of Markovian generators.
//!
//! Components are normalised by the largest `(1→1)` norm `L₁`; a plan
//! repeats one `S₂ₖ(λ)` sweep `n_reps` times with `n_reps · λ = t L₁`.

mod cost;
mod run;
mod schedule;

pub use cost::{bound_closed_form, bound_res, d_k, select_order, step_density, OrderSelection};
pub use run::{components, run_plan, simulate, Component, ComponentKind, SimulationOutcome};
pub use schedule::{factor_count, merge, s2_schedule, s2k_schedule, s2k_schedule_raw, suzuki_p, Segment};

use crate::error::{Error, Result};
use crate::lindblad::{one_one_norm, Superoperator};

#[derive(Debug, Clone, PartialEq)]
pub struct TrotterPlan {
    pub k: u32,
    pub r: f64,
    pub n_reps: usize,
    /// Normalised duration covered by one repetition.
    pub lambda: f64,
    /// One repetition of `S₂ₖ(λ)`, merged.
    pub schedule: Vec<Segment>,
    pub m: usize,
    /// Component norms, descending.
    pub norms: Vec<f64>,
    pub t: f64,
    pub epsilon: f64,
    /// Accuracy target the plan was built for.
    pub predicted_error: f64,
    /// `(2(m−1)5^{k−1} + 1) · n_reps`.
    pub n_exp: usize,
    pub x: f64,
}

impl TrotterPlan {
    pub fn l1(&self) -> f64 {
        self.norms[0]
    }

    pub fn l2(&self) -> f64 {
        self.norms.get(1).copied().unwrap_or(0.0)
    }

    /// Sum of all segment durations over every repetition.
    pub fn total_duration(&self) -> f64 {
        self.n_reps as f64 * self.schedule.iter().map(|s| s.duration).sum::<f64>() / self.m as f64
    }

    pub fn has_negative_segments(&self) -> bool {
        self.schedule.iter().any(|s| s.duration < 0.0)
    }

    /// Exponentials actually applied, merging across repetition boundaries.
    pub fn actual_exponentials(&self) -> usize {
        let per_rep = self.schedule.len();
        if self.n_reps == 0 || per_rep == 0 {
            return 0;
        }
        let wraps = self.schedule.first().map(|s| s.index) == self.schedule.last().map(|s| s.index);
        if wraps && per_rep > 1 {
            self.n_reps * (per_rep - 1) + 1
        } else if per_rep == 1 {
            1
        } else {
            self.n_reps * per_rep
        }
    }
}

/// Estimates component norms, checks their order, and plans.
pub fn build_plan(components: &[Superoperator], epsilon: f64, t: f64) -> Result<TrotterPlan> {
    let norms: Vec<f64> = components.iter().map(one_one_norm).collect();
    plan_from_norms(&norms, epsilon, t)
}

/// Plan for components with the given descending `(1→1)` norms.
pub fn plan_from_norms(norms: &[f64], epsilon: f64, t: f64) -> Result<TrotterPlan> {
    let m = norms.len();
    if m == 0 {
        return Err(Error::InvalidArgument("no components to recombine".into()));
    }
    if norms.windows(2).any(|w| w[0] < w[1]) || norms.iter().any(|&n| !(n > 0.0)) {
        return Err(Error::InvalidArgument(
            "component norms must be positive and sorted descending".into(),
        ));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    let l1 = norms[0];
    if m == 1 || t == 0.0 {
        // a single generator is exponentiated exactly
        let lambda = t * l1;
        let schedule = if m == 1 {
            vec![Segment { index: 0, duration: lambda }]
        } else {
            s2k_schedule(m, 1, lambda)?
        };
        return Ok(TrotterPlan {
            k: 1,
            r: 1.0 / l1,
            n_reps: 1,
            lambda,
            n_exp: schedule.len(),
            schedule,
            m,
            norms: norms.to_vec(),
            t,
            epsilon,
            predicted_error: if m == 1 { 0.0 } else { epsilon },
            x: 0.0,
        });
    }
    let sel = select_order(epsilon, t, m, l1, norms[1])?;
    let n_reps = (sel.r * l1).ceil().max(1.0) as usize;
    let lambda = t * l1 / n_reps as f64;
    let schedule = s2k_schedule(m, sel.k, lambda)?;
    Ok(TrotterPlan {
        k: sel.k,
        r: sel.r,
        n_reps,
        lambda,
        n_exp: factor_count(m, sel.k) * n_reps,
        schedule,
        m,
        norms: norms.to_vec(),
        t,
        epsilon,
        predicted_error: epsilon,
        x: sel.x,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostReport {
    pub k: u32,
    pub r: f64,
    pub n_reps: usize,
    pub n_exp_actual: usize,
    pub n_exp_bound_res: f64,
    pub n_exp_bound_closed_form: f64,
    pub negative_segments: bool,
}

impl CostReport {
    pub fn within_bounds(&self) -> bool {
        let n = self.n_exp_actual as f64;
        n <= self.n_exp_bound_res && n <= self.n_exp_bound_closed_form
    }
}

pub fn nexp_report(plan: &TrotterPlan) -> CostReport {
    let (res, closed) = if plan.m == 1 || plan.t == 0.0 {
        // no splitting: one exponential per component
        let n = plan.schedule.len() as f64;
        (n, n)
    } else {
        (
            bound_res(plan.m, plan.k, plan.t, plan.l1(), plan.x),
            bound_closed_form(plan.m, plan.t, plan.l1(), plan.x),
        )
    };
    CostReport {
        k: plan.k,
        r: plan.r,
        n_reps: plan.n_reps,
        n_exp_actual: plan.actual_exponentials(),
        n_exp_bound_res: res,
        n_exp_bound_closed_form: closed,
        negative_segments: plan.has_negative_segments(),
    }
}

/// Cost of a hypothetical plan from norms alone.
pub fn cost_report(m: usize, t: f64, epsilon: f64, l1: f64, l2: f64) -> Result<CostReport> {
    let mut norms = vec![l1];
    if m > 1 {
        norms.extend(std::iter::repeat_n(l2, m - 1));
    }
    Ok(nexp_report(&plan_from_norms(&norms, epsilon, t)?))
}
