use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

/// Wilson score interval for `successes` out of `trials` at quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> Interval {
    if trials == 0 {
        return Interval { lower: 0.0, upper: 1.0 };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Interval { lower: (center - half).max(0.0), upper: (center + half).min(1.0) }
}

/// Total-variation distance between empirical counts and a reference
/// distribution over the same index set.
pub fn total_variation(counts: &[u64], reference: &[f64]) -> f64 {
    assert_eq!(counts.len(), reference.len());
    let m: u64 = counts.iter().sum();
    if m == 0 {
        return reference.iter().sum::<f64>() / 2.0;
    }
    counts
        .iter()
        .zip(reference)
        .map(|(&c, &p)| (c as f64 / m as f64 - p).abs())
        .sum::<f64>()
        / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_known_values() {
        // reference values from statsmodels proportion_confint(method="wilson")
        let i = wilson_interval(180, 200, Z_95);
        assert!((i.lower - 0.850_594_187_567_282_6).abs() < 1e-12, "{i:?}");
        assert!((i.upper - 0.934_329_551_330_904_1).abs() < 1e-12, "{i:?}");
        let all = wilson_interval(10, 10, Z_95);
        assert!((all.upper - 1.0).abs() < 1e-12);
        assert!((all.lower - 0.722_467_200_137_110_6).abs() < 1e-12);
    }

    #[test]
    fn tv_of_exact_counts_is_zero() {
        assert_eq!(total_variation(&[1, 3], &[0.25, 0.75]), 0.0);
        assert!((total_variation(&[4, 0], &[0.5, 0.5]) - 0.5).abs() < 1e-15);
    }
}
