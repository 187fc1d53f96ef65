//! Empirical distribution functions and Kolmogorov–Smirnov distances.

use crate::error::{Error, Result};

/// Sorted sample set with CDF evaluation and KS support.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    samples: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("empty sample set".into()));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite sample".into()));
        }
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(EmpiricalCdf { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// F̂(x) = #{samples ≤ x} / M
    pub fn eval(&self, x: f64) -> f64 {
        let m = self.samples.partition_point(|&s| s <= x);
        m as f64 / self.samples.len() as f64
    }

    /// Sup-distance against a reference CDF, evaluated at the sample points
    /// with both one-sided gaps.
    pub fn ks_against<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.samples.len() as f64;
        let mut d = 0.0f64;
        for (i, &x) in self.samples.iter().enumerate() {
            let f = cdf(x);
            d = d.max((f - i as f64 / n).abs());
            d = d.max((f - (i as f64 + 1.0) / n).abs());
        }
        d
    }

    /// Sup-distance between two empirical CDFs.
    pub fn ks_between(&self, other: &EmpiricalCdf) -> f64 {
        let mut d = 0.0f64;
        for &x in &self.samples {
            d = d.max((self.eval(x) - other.eval(x)).abs());
        }
        for &x in &other.samples {
            d = d.max((self.eval(x) - other.eval(x)).abs());
        }
        d
    }
}

/// Critical KS statistic at significance `level` for sample size `n`
/// (asymptotic Kolmogorov law: P(D > c/√n) ≈ 2 exp(-2c²)).
pub fn ks_critical(n: usize, level: f64) -> f64 {
    ((2.0 / level).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Piecewise-linear interpolant of a tabulated CDF, used to avoid
/// re-evaluating expensive Fredholm formulas at every sample point.
#[derive(Debug, Clone)]
pub struct TabulatedCdf {
    pub xs: Vec<f64>,
    pub fs: Vec<f64>,
}

impl TabulatedCdf {
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return self.fs[0].max(0.0);
        }
        if x >= *self.xs.last().unwrap() {
            return self.fs.last().unwrap().min(1.0);
        }
        let i = self.xs.partition_point(|&t| t <= x) - 1;
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let (f0, f1) = (self.fs[i], self.fs[i + 1]);
        let t = (x - x0) / (x1 - x0);
        (f0 + t * (f1 - f0)).clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn identical_samples_have_zero_ks() {
        let a = EmpiricalCdf::new(vec![1.0, 2.0, 3.0]).unwrap();
        let b = EmpiricalCdf::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(a.ks_between(&b), 0.0);
    }

    #[test]
    fn disjoint_supports_have_ks_one() {
        let a = EmpiricalCdf::new(vec![0.0, 1.0]).unwrap();
        let b = EmpiricalCdf::new(vec![5.0, 6.0]).unwrap();
        assert_eq!(a.ks_between(&b), 1.0);
    }

    #[test]
    fn empty_rejected() {
        assert!(EmpiricalCdf::new(vec![]).is_err());
    }

    #[test]
    fn ks_scale_for_exact_samples() {
        // M samples drawn from U(0,1) against the true CDF: at M = 1e4 the
        // KS distance is below 0.025 except with probability < 1%.
        let mut rng = crate::seeding::rng_for(2024, 0);
        let m = 10_000;
        let xs: Vec<f64> = (0..m).map(|_| rng.gen::<f64>()).collect();
        let e = EmpiricalCdf::new(xs).unwrap();
        let d = e.ks_against(|x| x.clamp(0.0, 1.0));
        assert!(d < 0.025, "KS = {d}");
        assert!(d > 1e-4);
    }

    #[test]
    fn tabulated_interpolation() {
        let t = TabulatedCdf {
            xs: vec![0.0, 1.0, 2.0],
            fs: vec![0.0, 0.5, 1.0],
        };
        assert_eq!(t.eval(-1.0), 0.0);
        assert_eq!(t.eval(0.5), 0.25);
        assert_eq!(t.eval(5.0), 1.0);
    }

    #[test]
    fn critical_value_shape() {
        let c = ks_critical(1_000_000, 1e-3);
        assert!((c - 1.9495 / 1000.0).abs() < 1e-4, "{c}");
    }
}
