//! Empirical-distribution utilities: sorted-sample containers, one- and
//! two-sample Kolmogorov-Smirnov statistics and their large-sample critical
//! values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted samples with a count of censored observations (paths that
/// produced no event by the horizon). Censored paths are carried, never
/// silently dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    pub samples: Vec<f64>,
    pub n: usize,
    pub censored: usize,
}

impl EmpiricalDistribution {
    pub fn from_samples(mut samples: Vec<f64>, censored: usize) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyRecords);
        }
        samples.sort_unstable_by(|a, b| a.partial_cmp(b).expect("NaN sample"));
        let n = samples.len();
        Ok(Self { samples, n, censored })
    }

    /// Empirical CDF at x (right-continuous).
    pub fn cdf(&self, x: f64) -> f64 {
        let idx = self.samples.partition_point(|s| *s <= x);
        idx as f64 / self.n as f64
    }

    /// One-sample Kolmogorov-Smirnov statistic against a model CDF.
    pub fn ks_statistic<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.n as f64;
        let mut d = 0.0f64;
        for (i, &x) in self.samples.iter().enumerate() {
            let f = cdf(x);
            d = d.max((f - i as f64 / n).abs());
            d = d.max(((i as f64 + 1.0) / n - f).abs());
        }
        d
    }
}

/// Mean and plug-in standard error of a scalar sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarStats {
    pub mean: f64,
    pub std_err: f64,
    pub n: usize,
}

pub fn scalar_stats(values: &[f64]) -> Result<ScalarStats> {
    if values.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(ScalarStats { mean, std_err: (var / n).sqrt(), n: values.len() })
}

/// Asymptotic one-sample KS critical value at the given significance level
/// (e.g. 0.01), with the Stephens small-sample correction.
pub fn ks_critical(n: usize, level: f64) -> f64 {
    let c = (-0.5 * (level / 2.0).ln()).sqrt();
    let sqrt_n = (n as f64).sqrt();
    c / (sqrt_n + 0.12 + 0.11 / sqrt_n)
}

/// Two-sample KS statistic.
pub fn ks_two_sample(xs: &EmpiricalDistribution, ys: &EmpiricalDistribution) -> f64 {
    let (a, b) = (&xs.samples, &ys.samples);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Critical value for the two-sample KS test at the given level.
pub fn ks_two_sample_critical(n: usize, m: usize, level: f64) -> f64 {
    let c = (-0.5 * (level / 2.0).ln()).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_rejected() {
        assert!(EmpiricalDistribution::from_samples(vec![], 0).is_err());
    }

    #[test]
    fn cdf_and_ks_basic() {
        let e = EmpiricalDistribution::from_samples(vec![3.0, 1.0, 2.0, 4.0], 0).unwrap();
        assert_eq!(e.samples, vec![1.0, 2.0, 3.0, 4.0]);
        assert_relative_eq!(e.cdf(2.5), 0.5);
        // Against the uniform on [0, 5]: worst deviation at x = 4 (cdf jump
        // to 1 vs 0.8).
        let d = e.ks_statistic(|x| (x / 5.0).clamp(0.0, 1.0));
        assert_relative_eq!(d, 0.35, max_relative = 1e-12);
    }

    #[test]
    fn uniform_synthetic_calibration() {
        // 1e5 uniforms against the uniform CDF stay below the 1% critical
        // value.
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let samples: Vec<f64> = (0..100_000).map(|_| rng.gen_range(0.0..1.0)).collect();
        let e = EmpiricalDistribution::from_samples(samples, 0).unwrap();
        let d = e.ks_statistic(|x| x.clamp(0.0, 1.0));
        assert!(d < ks_critical(100_000, 0.01), "d = {d}");
    }

    #[test]
    fn two_sample_identical_and_shifted() {
        let a = EmpiricalDistribution::from_samples(vec![1.0, 2.0, 3.0, 4.0], 0).unwrap();
        let b = EmpiricalDistribution::from_samples(vec![2.0, 1.0, 4.0, 3.0], 0).unwrap();
        assert_relative_eq!(ks_two_sample(&a, &b), 0.0);
        let c = EmpiricalDistribution::from_samples(vec![1.0, 1.0, 4.0, 4.0], 0).unwrap();
        let d = EmpiricalDistribution::from_samples(vec![1.0, 1.0, 1.0, 4.0], 0).unwrap();
        assert_relative_eq!(ks_two_sample(&c, &d), 0.25);
    }

    #[test]
    fn scalar_stats_bernoulli_form() {
        // Plug-in standard error of a 0/1 sample is sqrt(p(1-p)/n).
        let mut v = vec![1.0; 30];
        v.extend(vec![0.0; 70]);
        let s = scalar_stats(&v).unwrap();
        assert_relative_eq!(s.mean, 0.3);
        assert_relative_eq!(s.std_err, (0.3f64 * 0.7 / 100.0).sqrt(), max_relative = 1e-12);
        // Constant sample: zero standard error.
        let s = scalar_stats(&[2.0; 50]).unwrap();
        assert_eq!(s.std_err, 0.0);
    }
}
