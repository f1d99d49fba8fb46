use crate::error::{invalid, Error, Result};
use crate::modem::ThresholdMethod;
use crate::numeric::{regularized_lower_incomplete_gamma, regularized_upper_incomplete_gamma};
use crate::scalar::Real;

use super::ThresholdDesign;

/// Parameters of the gamma approximation to the ON/OFF energy laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdInputs<T> {
    pub n_rx: usize,
    pub e_alice: T,
    pub alpha: T,
    pub theta: T,
    pub sigma2_eve: T,
    pub sigma2_bob: T,
}

impl<T: Real> ThresholdInputs<T> {
    /// Per-antenna ON scale S₁ = E_Alice(1 + αθ) + αθσ²_Eve + σ²_Bob.
    pub fn on_scale(&self) -> T {
        let g = self.alpha * self.theta;
        self.e_alice * (T::one() + g) + g * self.sigma2_eve + self.sigma2_bob
    }

    /// Per-antenna OFF scale S₀ = αθσ²_Eve + σ²_Bob.
    pub fn off_scale(&self) -> T {
        self.alpha * self.theta * self.sigma2_eve + self.sigma2_bob
    }

    /// Same link with the attack removed.
    pub fn without_attack(&self) -> Self {
        Self {
            alpha: T::zero(),
            ..*self
        }
    }

    fn validate(&self) -> Result<(T, T)> {
        if self.n_rx == 0 {
            return Err(invalid("N_r", "need at least one receive antenna"));
        }
        for (name, v) in [
            ("E_Alice", self.e_alice),
            ("alpha", self.alpha),
            ("theta", self.theta),
            ("sigma2_eve", self.sigma2_eve),
            ("sigma2_bob", self.sigma2_bob),
        ] {
            if !(v >= T::zero()) || !v.is_finite() {
                return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        let (s1, s0) = (self.on_scale(), self.off_scale());
        if !(s1 > s0) {
            return Err(Error::NoSolution(format!(
                "ON and OFF energy scales coincide (S1 = {s1}, S0 = {s0}); no threshold separates them"
            )));
        }
        if !(s0 > T::zero()) {
            return Err(Error::NoSolution(
                "OFF energy is identically zero; any positive threshold is optimal".into(),
            ));
        }
        Ok((s1, s0))
    }
}

/// P(N_r, t/S₁) + Q(N_r, t/S₀): miss plus false-alarm probability under the gamma laws.
pub fn gamma_objective<T: Real>(n_rx: usize, s1: T, s0: T, t: T) -> Result<T> {
    let a = T::count(n_rx);
    Ok(regularized_lower_incomplete_gamma(a, t / s1)? + regularized_upper_incomplete_gamma(a, t / s0)?)
}

/// Point where the Gamma(N_r, S₁) and Gamma(N_r, S₀) densities cross:
/// N_r·S₀S₁·ln(S₁/S₀)/(S₁ − S₀).
pub fn gamma_density_crossing<T: Real>(n_rx: usize, s1: T, s0: T) -> T {
    T::count(n_rx) * s0 * s1 * (s1 / s0).ln() / (s1 - s0)
}

/// Golden-section minimization of the gamma objective on [0, 2·N_r·S₁].
pub fn minimize_gamma_objective<T: Real>(n_rx: usize, s1: T, s0: T) -> Result<T> {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let (mut a, mut b) = (T::zero(), T::lit(2.0) * T::count(n_rx) * s1);
    let f = |t: T| gamma_objective(n_rx, s1, s0, t);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    let tol = T::epsilon().sqrt() * T::lit(1e-3);
    for _ in 0..500 {
        if (b - a) <= tol * (c.abs() + d.abs()) {
            return Ok((a + b) / T::lit(2.0));
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d)?;
        }
    }
    Ok((a + b) / T::lit(2.0))
}

/// Gamma-approximation threshold Ẽ*_th for the given attack parameters.
pub fn approximate_threshold_analytic<T: Real>(inputs: ThresholdInputs<T>) -> Result<ThresholdDesign<T>> {
    let (s1, s0) = inputs.validate()?;
    let t = gamma_density_crossing(inputs.n_rx, s1, s0);
    Ok(ThresholdDesign {
        threshold: t,
        method: ThresholdMethod::AnalyticApproximate,
        inputs: Some(inputs),
        objective: gamma_objective(inputs.n_rx, s1, s0, t)?,
    })
}

/// Threshold designed for the clean link (α = 0), used by an attack-ignorant receiver.
pub fn attack_ignorant_threshold<T: Real>(inputs: ThresholdInputs<T>) -> Result<ThresholdDesign<T>> {
    let clean = inputs.without_attack();
    let mut d = approximate_threshold_analytic(clean)?;
    d.method = ThresholdMethod::AttackIgnorant;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs(n_rx: usize, alpha: f64, theta: f64) -> ThresholdInputs<f64> {
        ThresholdInputs {
            n_rx,
            e_alice: 1.0,
            alpha,
            theta,
            sigma2_eve: 0.01,
            sigma2_bob: 1.0,
        }
    }

    #[test]
    fn worked_example() {
        let i = inputs(1, 1.0, 9.0);
        assert!((i.on_scale() - 11.09).abs() < 1e-12);
        assert!((i.off_scale() - 1.09).abs() < 1e-12);
        let t = approximate_threshold_analytic(i).unwrap().threshold;
        let want = 1.09 * 11.09 * (11.09f64 / 1.09).ln() / 10.0;
        assert!((t - want).abs() < 1e-12);
        assert!((t - 2.805).abs() < 1e-3, "{t}");
        let m = minimize_gamma_objective(1, 11.09, 1.09).unwrap();
        assert!((m / t - 1.0).abs() < 1e-6, "{m} vs {t}");
    }

    #[test]
    fn minimizer_agrees_with_crossing() {
        for n_rx in [1, 2, 4, 10] {
            for theta in [5.0, 9.0, 15.0] {
                for alpha in [0.1, 0.5, 1.0] {
                    let i = inputs(n_rx, alpha, theta);
                    let (s1, s0) = (i.on_scale(), i.off_scale());
                    let c = gamma_density_crossing(n_rx, s1, s0);
                    let m = minimize_gamma_objective(n_rx, s1, s0).unwrap();
                    assert!((m / c - 1.0).abs() < 1e-6, "N_r={n_rx} θ={theta} α={alpha}: {m} vs {c}");
                }
            }
        }
    }

    #[test]
    fn no_attack_specialization() {
        let i = inputs(2, 0.0, 9.0);
        assert_eq!(i.on_scale(), 2.0);
        assert_eq!(i.off_scale(), 1.0);
        let a = attack_ignorant_threshold(inputs(2, 1.0, 9.0)).unwrap();
        assert_eq!(a.threshold, approximate_threshold_analytic(i).unwrap().threshold);
        assert_eq!(a.method, ThresholdMethod::AttackIgnorant);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let mut i = inputs(1, 1.0, 9.0);
        i.e_alice = 0.0;
        assert!(matches!(approximate_threshold_analytic(i), Err(Error::NoSolution(_))));
        i = inputs(0, 1.0, 9.0);
        assert!(approximate_threshold_analytic(i).is_err());
    }

    #[test]
    fn increasing_in_alice_energy() {
        let mut prev = 0.0;
        for k in 1..=50 {
            let mut i = inputs(2, 0.5, 9.0);
            i.e_alice = k as f64 * 0.5;
            let t = approximate_threshold_analytic(i).unwrap().threshold;
            assert!(t > prev);
            prev = t;
        }
    }
}
