use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{invalid, Result};

/// Two-sided confidence interval for a binomial proportion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }
}

/// Wilson score interval for `successes` out of `trials` at confidence
/// `level`. The ends are exactly 0 and 1 at the extreme counts.
pub fn wilson_ci(successes: u64, trials: u64, level: f64) -> Result<Interval> {
    if trials == 0 || successes > trials {
        return Err(invalid(format!("invalid counts: {successes} of {trials}")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(invalid(format!("confidence level {level} outside (0, 1)")));
    }
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - level) / 2.0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let low = if successes == 0 { 0.0 } else { (center - half).clamp(0.0, p) };
    let high = if successes == trials { 1.0 } else { (center + half).clamp(p, 1.0) };
    Ok(Interval { low, high })
}

/// Pearson chi-square statistic and its upper-tail p-value with
/// `observed.len() - 1` degrees of freedom.
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> Result<(f64, f64)> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(invalid("chi-square needs matching tables with at least two cells"));
    }
    if expected.iter().any(|&e| e.is_nan() || e <= 0.0) {
        return Err(invalid("expected counts must be positive"));
    }
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).map_err(|e| invalid(e.to_string()))?;
    Ok((stat, dist.sf(stat)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_reference_value() {
        let ci = wilson_ci(50, 100, 0.95).unwrap();
        assert!((ci.low - 0.40383).abs() < 1e-4, "{ci:?}");
        assert!((ci.high - 0.59617).abs() < 1e-4, "{ci:?}");
    }

    #[test]
    fn wilson_extremes() {
        for n in [1, 7, 200] {
            let lo = wilson_ci(0, n, 0.95).unwrap();
            assert_eq!(lo.low, 0.0);
            assert!(lo.high > 0.0 && lo.high < 1.0);
            let hi = wilson_ci(n, n, 0.95).unwrap();
            assert_eq!(hi.high, 1.0);
            assert!(hi.low > 0.0);
        }
        assert!(wilson_ci(3, 2, 0.95).is_err());
        assert!(wilson_ci(0, 0, 0.95).is_err());
        assert!(wilson_ci(1, 2, 1.0).is_err());
    }

    #[test]
    fn wilson_contains_estimate() {
        for n in 1..60u64 {
            for s in 0..=n {
                let ci = wilson_ci(s, n, 0.95).unwrap();
                assert!(ci.contains(s as f64 / n as f64));
                assert!(0.0 <= ci.low && ci.high <= 1.0);
            }
        }
    }

    #[test]
    fn chi_square_reference() {
        // Statistic 4 with one degree of freedom: p = 0.0455.
        let (stat, p) = chi_square_p(&[60, 40], &[50.0, 50.0]).unwrap();
        assert!((stat - 4.0).abs() < 1e-12);
        assert!((p - 0.0455).abs() < 1e-3);
        let (_, p) = chi_square_p(&[50, 50], &[50.0, 50.0]).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(chi_square_p(&[1], &[1.0]).is_err());
    }
}
