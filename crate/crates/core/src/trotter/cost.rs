use std::f64::consts::E;

use crate::error::{Error, Result};

/// Integrator order and step density for a target accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderSelection {
    pub k: u32,
    /// Steps per unit time: one `S₂ₖ(t/r)` covers `t/r` of normalised time.
    pub r: f64,
    /// `4emtL₂/ε`.
    pub x: f64,
    /// `ε ≤ mtL₂`, where the rounded-optimal `k` applies.
    pub in_window: bool,
}

/// `d_k = m (4/3) k (5/3)^{k−1}`.
pub fn d_k(m: usize, k: u32) -> f64 {
    m as f64 * (4.0 / 3.0) * k as f64 * (5.0f64 / 3.0).powi(k as i32 - 1)
}

fn validate(eps: f64, t: f64, m: usize, l1: f64, l2: f64) -> Result<()> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    if m < 1 {
        return Err(Error::InvalidArgument("need at least one component".into()));
    }
    if m > 1 && !(l2 > 0.0 && l1 >= l2) {
        return Err(Error::InvalidArgument(format!(
            "component norms must satisfy L1 >= L2 > 0, got L1 = {l1}, L2 = {l2}"
        )));
    }
    Ok(())
}

/// `k = round(√(½ log_{25/3} x))`, `r = t x^{1/2k} 2e d_k / (2k+1)`.
///
/// Outside `ε ≤ mtL₂` the order is clamped to 1, and `x` below 1 is
/// replaced by 1 in `r`.
pub fn select_order(eps: f64, t: f64, m: usize, l1: f64, l2: f64) -> Result<OrderSelection> {
    validate(eps, t, m, l1, l2)?;
    let x = 4.0 * E * m as f64 * t * l2 / eps;
    let in_window = eps <= m as f64 * t * l2;
    let k = if in_window {
        let v = (0.5 * x.ln() / (25.0f64 / 3.0).ln()).sqrt().round();
        (v as u32).max(1)
    } else {
        1
    };
    let r = step_density(t, x, m, k);
    Ok(OrderSelection { k, r, x, in_window })
}

pub fn step_density(t: f64, x: f64, m: usize, k: u32) -> f64 {
    let kf = k as f64;
    t * x.max(1.0).powf(1.0 / (2.0 * kf)) * 2.0 * E * d_k(m, k) / (2.0 * kf + 1.0)
}

/// `(2m−1) 5^{k−1} [L₁ t x^{1/2k} (4me/3) (5/3)^{k−1}]`.
pub fn bound_res(m: usize, k: u32, t: f64, l1: f64, x: f64) -> f64 {
    let kf = k as f64;
    (2.0 * m as f64 - 1.0)
        * 5f64.powi(k as i32 - 1)
        * l1
        * t
        * x.max(1.0).powf(1.0 / (2.0 * kf))
        * (4.0 * m as f64 * E / 3.0)
        * (5.0f64 / 3.0).powi(k as i32 - 1)
}

/// `(8/3)(2m−1) m e t L₁ exp(2√(½ ln(25/3) ln x))`.
pub fn bound_closed_form(m: usize, t: f64, l1: f64, x: f64) -> f64 {
    let mf = m as f64;
    (8.0 / 3.0)
        * (2.0 * mf - 1.0)
        * mf
        * E
        * t
        * l1
        * (2.0 * (0.5 * (25.0f64 / 3.0).ln() * x.max(1.0).ln()).sqrt()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_term_two_gives_order_one() {
        // choose eps so that x = (25/3)^2: √(½·2) = 1
        let (m, t, l2) = (2, 1.0, 1.0);
        let x = (25.0f64 / 3.0).powi(2);
        let eps = 4.0 * E * m as f64 * t * l2 / x;
        let s = select_order(eps, t, m, 1.0, l2).unwrap();
        assert!(s.in_window);
        assert_eq!(s.k, 1);
        assert!((s.x - x).abs() < 1e-9);
    }

    #[test]
    fn frozen_reference_values() {
        // independent evaluation (m=2, t=1, L1=L2=1, eps=1e-3)
        let s = select_order(1e-3, 1.0, 2, 1.0, 1.0).unwrap();
        assert_eq!(s.k, 2);
        assert!((s.x - 21_746.254_627_672_36).abs() < 1e-8);
        assert!((s.r - 117.367_557_851_124_08).abs() < 1e-10);
        // the chosen order minimises the bound against its neighbours
        let at = |k| bound_res(2, k, 1.0, 1.0, s.x);
        assert!((at(2) - 2_200.641_709_708_577).abs() < 1e-8);
        assert!(at(2) < at(1) && at(2) < at(3));
    }

    #[test]
    fn outside_window_clamps() {
        let s = select_order(0.5, 0.1, 2, 1.0, 1.0).unwrap();
        assert!(!s.in_window);
        assert_eq!(s.k, 1);
    }

    #[test]
    fn doubling_t_never_lowers_cost() {
        for &eps in &[1e-2, 1e-3, 1e-4] {
            let mut t = 0.25;
            let mut prev = 0.0;
            for _ in 0..6 {
                let s = select_order(eps, t, 3, 2.0, 1.0).unwrap();
                let n = bound_res(3, s.k, t, 2.0, s.x);
                assert!(n >= prev);
                prev = n;
                t *= 2.0;
            }
        }
    }

    #[test]
    fn rejects_invalid() {
        assert!(select_order(0.0, 1.0, 2, 1.0, 1.0).is_err());
        assert!(select_order(1e-3, -1.0, 2, 1.0, 1.0).is_err());
        assert!(select_order(1e-3, 1.0, 2, 1.0, 2.0).is_err());
    }
}
