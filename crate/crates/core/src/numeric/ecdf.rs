use crate::error::{Error, Result};
use crate::scalar::Real;

/// Right-continuous empirical CDF: F(x) = #{samples ≤ x} / n.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf<T> {
    sorted: Vec<T>,
}

impl<T: Real> EmpiricalCdf<T> {
    /// NaN samples are rejected along with empty input.
    pub fn new(mut samples: Vec<T>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InsufficientSamples {
                what: "empirical CDF",
                needed: 1,
                got: 0,
            });
        }
        if samples.iter().any(|s| s.is_nan()) {
            return Err(crate::error::invalid("samples", "contain NaN"));
        }
        samples.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
        Ok(Self { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted_samples(&self) -> &[T] {
        &self.sorted
    }

    /// Number of samples ≤ `x`.
    pub fn count_le(&self, x: T) -> usize {
        self.sorted.partition_point(|&s| s <= x)
    }

    pub fn eval(&self, x: T) -> T {
        T::count(self.count_le(x)) / T::count(self.sorted.len())
    }

    /// Smallest sample `s` with F(s) ≥ q, for q in (0, 1].
    pub fn quantile(&self, q: T) -> T {
        let n = self.sorted.len();
        let k = (q * T::count(n)).ceil().to_usize().unwrap_or(0).clamp(1, n);
        self.sorted[k - 1]
    }

    pub fn mean(&self) -> T {
        self.sorted.iter().copied().sum::<T>() / T::count(self.sorted.len())
    }

    /// Sup-norm distance to a continuous reference CDF.
    pub fn ks_distance(&self, reference: impl Fn(T) -> T) -> T {
        let n = T::count(self.sorted.len());
        let mut d = T::zero();
        let mut i = 0;
        while i < self.sorted.len() {
            let x = self.sorted[i];
            // Handle ties as one jump.
            let mut j = i;
            while j < self.sorted.len() && self.sorted[j] == x {
                j += 1;
            }
            let f = reference(x);
            let below = T::count(i) / n;
            let at = T::count(j) / n;
            d = d.max((f - below).abs()).max((at - f).abs());
            i = j;
        }
        d
    }
}

/// Convenience wrapper building the empirical CDF of `samples`.
pub fn empirical_cdf<T: Real>(samples: Vec<T>) -> Result<EmpiricalCdf<T>> {
    EmpiricalCdf::new(samples)
}

/// Kolmogorov–Smirnov distance between `samples` and a continuous `reference` CDF.
pub fn ks_distance<T: Real>(samples: &[T], reference: impl Fn(T) -> T) -> Result<T> {
    Ok(EmpiricalCdf::new(samples.to_vec())?.ks_distance(reference))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{CircularGaussian, RandomStream};
    use rand_distr::Distribution;

    #[test]
    fn counting() {
        let f = empirical_cdf(vec![3.0f64, 1.0, 2.0]).unwrap();
        assert!((f.eval(2.0) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(f.eval(0.5), 0.0);
        assert_eq!(f.eval(f64::INFINITY), 1.0);
        let g = empirical_cdf(vec![5.0]).unwrap();
        assert_eq!(g.eval(4.9), 0.0);
        assert_eq!(g.eval(5.0), 1.0);
    }

    #[test]
    fn empty_rejected() {
        assert!(empirical_cdf::<f64>(vec![]).is_err());
        assert!(ks_distance::<f64>(&[], |x| x).is_err());
    }

    #[test]
    fn exponential_median() {
        let mut rng = RandomStream::new(5).rng();
        let d = CircularGaussian::<f64>::standard();
        let s: Vec<f64> = (0..100_000).map(|_| d.sample(&mut rng).norm_sqr()).collect();
        let f = empirical_cdf(s).unwrap();
        assert!((f.eval(0.693) - 0.5).abs() < 0.01);
    }

    #[test]
    fn ks_point_mass_cases() {
        let exp_cdf = |x: f64| 1.0 - (-x).exp();
        assert_eq!(ks_distance(&[0.0], exp_cdf).unwrap(), 1.0);
        let median = std::f64::consts::LN_2;
        let d = ks_distance(&[median; 10], exp_cdf).unwrap();
        assert!((d - 0.5).abs() < 1e-12, "{d}");
    }

    #[test]
    fn ks_exact_draws_small() {
        let mut rng = RandomStream::new(9).rng();
        let d = CircularGaussian::<f64>::standard();
        let s: Vec<f64> = (0..100_000).map(|_| d.sample(&mut rng).norm_sqr()).collect();
        let dist = ks_distance(&s, |x| 1.0 - (-x).exp()).unwrap();
        // DKW: P(D > 0.01) <= 2 exp(-2 n 0.01^2) = 2e-9.
        assert!(dist <= 0.01, "{dist}");
    }

    #[test]
    fn quantile_inverts_eval() {
        let f = empirical_cdf(vec![4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(f.quantile(0.25), 1.0);
        assert_eq!(f.quantile(0.5), 2.0);
        assert_eq!(f.quantile(0.51), 3.0);
        assert_eq!(f.quantile(1.0), 4.0);
    }
}
