use crate::error::{Error, Result};

/// One factor `exp(duration · L̂_index)` of a product formula. Durations are
/// in units normalised by the largest component norm `L₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub index: usize,
    pub duration: f64,
}

/// `p_k = 1 / (4 − 4^{1/(2k−1)})`.
pub fn suzuki_p(k: u32) -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / (2.0 * k as f64 - 1.0)))
}

/// Factors in `S₂ₖ` after merging neighbours: `2(m−1)5^{k−1} + 1`.
pub fn factor_count(m: usize, k: u32) -> usize {
    2 * (m - 1) * 5usize.pow(k - 1) + 1
}

/// Symmetric second-order sweep `1..m` then `m..1`, each factor `λ/2`.
pub fn s2_schedule(m: usize, lambda: f64) -> Result<Vec<Segment>> {
    if m < 1 {
        return Err(Error::InvalidArgument("need at least one component".into()));
    }
    let half = 0.5 * lambda;
    Ok((0..m)
        .chain((0..m).rev())
        .map(|index| Segment {
            index,
            duration: half,
        })
        .collect())
}

/// `S₂ₖ` by Suzuki's recursion, without merging.
pub fn s2k_schedule_raw(m: usize, k: u32, lambda: f64) -> Result<Vec<Segment>> {
    if k < 1 {
        return Err(Error::InvalidArgument("integrator order k must be >= 1".into()));
    }
    if k == 1 {
        return s2_schedule(m, lambda);
    }
    let p = suzuki_p(k);
    let outer = s2k_schedule_raw(m, k - 1, p * lambda)?;
    let inner = s2k_schedule_raw(m, k - 1, (1.0 - 4.0 * p) * lambda)?;
    let mut out = Vec::with_capacity(5 * outer.len());
    out.extend_from_slice(&outer);
    out.extend_from_slice(&outer);
    out.extend_from_slice(&inner);
    out.extend_from_slice(&outer);
    out.extend_from_slice(&outer);
    Ok(out)
}

/// `S₂ₖ` with adjacent factors of the same component merged.
pub fn s2k_schedule(m: usize, k: u32, lambda: f64) -> Result<Vec<Segment>> {
    Ok(merge(&s2k_schedule_raw(m, k, lambda)?))
}

pub fn merge(segments: &[Segment]) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::with_capacity(segments.len());
    for s in segments {
        match out.last_mut() {
            Some(last) if last.index == s.index => last.duration += s.duration,
            _ => out.push(*s),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn indices(s: &[Segment]) -> Vec<usize> {
        s.iter().map(|x| x.index).collect()
    }

    #[test]
    fn single_component() {
        let s = s2_schedule(1, 0.8).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s.iter().map(|x| x.duration).sum::<f64>() - 0.8).abs() < 1e-15);
        assert_eq!(s2k_schedule(1, 3, 0.8).unwrap().len(), 1);
    }

    #[test]
    fn two_components_unrolled() {
        let s = s2_schedule(2, 1.0).unwrap();
        let want = [(0, 0.5), (1, 0.5), (1, 0.5), (0, 0.5)];
        assert_eq!(
            s,
            want.map(|(index, duration)| Segment { index, duration })
        );
    }

    #[test]
    fn three_components_palindrome() {
        let s = s2_schedule(3, 1.0).unwrap();
        assert_eq!(indices(&s), vec![0, 1, 2, 2, 1, 0]);
    }

    #[test]
    fn p2_value() {
        assert!((suzuki_p(2) - 0.414_490_771_794_375_7).abs() < 1e-15);
    }

    #[test]
    fn counts() {
        assert_eq!(s2k_schedule(2, 2, 1.0).unwrap().len(), factor_count(2, 2));
        assert_eq!(factor_count(2, 2), 11);
        assert_eq!(factor_count(2, 1), 3);
        assert_eq!(s2k_schedule_raw(2, 2, 1.0).unwrap().len(), 20);
    }

    #[test]
    fn rejects_invalid() {
        assert!(s2_schedule(0, 1.0).is_err());
        assert!(s2k_schedule(2, 0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn palindromic_and_total(m in 1usize..=5, k in 1u32..=3, lambda in 0.01f64..3.0) {
            let s = s2k_schedule(m, k, lambda).unwrap();
            prop_assert_eq!(s.len(), factor_count(m, k));
            let idx = indices(&s);
            let mut rev = idx.clone();
            rev.reverse();
            prop_assert_eq!(idx, rev);
            for j in 0..m {
                let total: f64 = s.iter().filter(|x| x.index == j).map(|x| x.duration).sum();
                prop_assert!((total - lambda).abs() < 1e-12 * lambda.max(1.0));
            }
            for (a, b) in s.iter().zip(s.iter().rev()) {
                prop_assert!((a.duration - b.duration).abs() < 1e-12);
            }
        }
    }
}
