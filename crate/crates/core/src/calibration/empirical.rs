use crate::error::{invalid, Error, Result};
use crate::modem::{ReceivedSymbol, ThresholdMethod};
use crate::scalar::Real;

use super::ThresholdDesign;

/// Total received energies of ON (bit 1) and OFF (bit 0) symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDistributions<T> {
    on: Vec<T>,
    off: Vec<T>,
    attacked: bool,
}

impl<T: Real> EnergyDistributions<T> {
    /// `attacked` records whether the samples were taken under the live attack.
    pub fn new(on: Vec<T>, off: Vec<T>, attacked: bool) -> Result<Self> {
        for (name, v) in [("on", &on), ("off", &off)] {
            if v.is_empty() {
                return Err(Error::InsufficientSamples {
                    what: if name == "on" { "ON energies" } else { "OFF energies" },
                    needed: 1,
                    got: 0,
                });
            }
            if let Some(x) = v.iter().find(|x| !(**x >= T::zero())) {
                return Err(invalid(
                    "energy",
                    format!("{name} sample {x} is not a non-negative number"),
                ));
            }
        }
        Ok(Self { on, off, attacked })
    }

    pub fn on(&self) -> &[T] {
        &self.on
    }

    pub fn off(&self) -> &[T] {
        &self.off
    }

    pub fn attacked(&self) -> bool {
        self.attacked
    }
}

/// Splits pilot energies by transmitted bit.
pub fn calibrate_from_pilots<T: Real>(pilots: &[ReceivedSymbol<T>], attacked: bool) -> Result<EnergyDistributions<T>> {
    let (mut on, mut off) = (Vec::new(), Vec::new());
    for p in pilots {
        if p.bit {
            on.push(p.energy(0));
        } else {
            off.push(p.energy(0));
        }
    }
    for (what, got) in [("ON pilots", on.len()), ("OFF pilots", off.len())] {
        if got < 2 {
            return Err(Error::InsufficientSamples { what, needed: 2, got });
        }
    }
    EnergyDistributions::new(on, off, attacked)
}

/// Empirical objective: fraction of ON samples ≤ t plus fraction of OFF samples > t.
pub fn empirical_objective<T: Real>(d: &EnergyDistributions<T>, t: T) -> T {
    let miss = d.on.iter().filter(|&&e| e <= t).count();
    let false_alarm = d.off.iter().filter(|&&e| e > t).count();
    T::count(miss) / T::count(d.on.len()) + T::count(false_alarm) / T::count(d.off.len())
}

/// Minimizes the empirical objective over 0, the midpoints between consecutive distinct
/// pooled samples, and the largest sample. Ties go to the smallest threshold.
pub fn optimal_threshold_empirical<T: Real>(d: &EnergyDistributions<T>) -> Result<ThresholdDesign<T>> {
    let sort = |v: &[T]| {
        let mut v = v.to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).expect("validated"));
        v
    };
    let on = sort(&d.on);
    let off = sort(&d.off);
    let (n_on, n_off) = (T::count(on.len()), T::count(off.len()));
    let mut pooled: Vec<T> = on.iter().chain(off.iter()).copied().collect();
    pooled.sort_by(|a, b| a.partial_cmp(b).expect("validated"));
    pooled.dedup();

    let mut candidates = Vec::with_capacity(pooled.len() + 1);
    if pooled[0] > T::zero() {
        candidates.push(T::zero());
    }
    candidates.extend(pooled.windows(2).map(|w| (w[0] + w[1]) / T::lit(2.0)));
    candidates.push(*pooled.last().expect("non-empty"));

    // Candidates ascend, so the counts advance monotonically.
    let (mut i_on, mut i_off) = (0, 0);
    let mut best = (T::infinity(), T::zero());
    for &t in &candidates {
        while i_on < on.len() && on[i_on] <= t {
            i_on += 1;
        }
        while i_off < off.len() && off[i_off] <= t {
            i_off += 1;
        }
        let obj = T::count(i_on) / n_on + T::count(off.len() - i_off) / n_off;
        if obj < best.0 {
            best = (obj, t);
        }
    }
    Ok(ThresholdDesign {
        threshold: best.1,
        method: ThresholdMethod::EmpiricalOptimal,
        inputs: None,
        objective: best.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{CircularGaussian, RandomStream};
    use rand_distr::Distribution;

    #[test]
    fn separable_samples() {
        let d = EnergyDistributions::new(vec![10.0, 11.0], vec![1.0, 2.0], false).unwrap();
        let t = optimal_threshold_empirical(&d).unwrap();
        assert_eq!(t.objective, 0.0);
        assert_eq!(t.threshold, 6.0);
    }

    #[test]
    fn indistinguishable_samples() {
        let d = EnergyDistributions::new(vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0], false).unwrap();
        let t = optimal_threshold_empirical(&d).unwrap();
        assert_eq!(t.objective, 1.0);
        assert_eq!(t.threshold, 0.0);
    }

    #[test]
    fn rejects_empty_and_negative() {
        assert!(EnergyDistributions::<f64>::new(vec![], vec![1.0], false).is_err());
        assert!(EnergyDistributions::new(vec![1.0], vec![-1.0], false).is_err());
        assert!(calibrate_from_pilots::<f64>(&[], true).is_err());
    }

    #[test]
    fn pilots_split_by_bit() {
        let sym = |bit: bool, e: f64| ReceivedSymbol {
            bit,
            tones: vec![vec![num_complex::Complex::new(e.sqrt(), 0.0)]],
        };
        let p = [sym(true, 9.0), sym(false, 1.0), sym(true, 4.0), sym(false, 0.25)];
        let d = calibrate_from_pilots(&p, true).unwrap();
        assert_eq!(d.on().len(), 2);
        assert!((d.off()[1] - 0.25).abs() < 1e-12);
        assert!(d.attacked());
        assert!(calibrate_from_pilots(&p[..3], true).is_err());
    }

    proptest::proptest! {
        #[test]
        fn returned_threshold_is_optimal(
            on in proptest::collection::vec(0u32..40, 1..12),
            off in proptest::collection::vec(0u32..40, 1..12),
        ) {
            let on: Vec<f64> = on.into_iter().map(f64::from).collect();
            let off: Vec<f64> = off.into_iter().map(f64::from).collect();
            let d = EnergyDistributions::new(on, off, false).unwrap();
            let t = optimal_threshold_empirical(&d).unwrap();
            proptest::prop_assert!((empirical_objective(&d, t.threshold) - t.objective).abs() < 1e-12);
            // Exhaustive over a grid finer than the sample spacing.
            for k in 0..=820 {
                let x = k as f64 * 0.05;
                proptest::prop_assert!(t.objective <= empirical_objective(&d, x) + 1e-12);
            }
        }
    }

    #[test]
    fn gamma_samples_find_density_crossing() {
        // Sums of N_r exponentials with means S1 and S0. The argmin of an empirical error
        // count converges at rate n^(-1/3), so single runs scatter by about 1%; the median
        // of independent replications is compared against the crossing.
        let (n_r, s1, s0) = (2usize, 11.09, 1.09);
        let crossing = n_r as f64 * s0 * s1 * (s1 / s0).ln() / (s1 - s0);
        let g = CircularGaussian::<f64>::standard();
        let mut errs: Vec<f64> = (0..9u64)
            .map(|rep| {
                let mut rng = RandomStream::new(8).child(rep).rng();
                let mut draw = |s: f64| (0..n_r).map(|_| s * g.sample(&mut rng).norm_sqr()).sum::<f64>();
                let on: Vec<f64> = (0..100_000).map(|_| draw(s1)).collect();
                let off: Vec<f64> = (0..100_000).map(|_| draw(s0)).collect();
                let d = EnergyDistributions::new(on, off, true).unwrap();
                let t = optimal_threshold_empirical(&d).unwrap().threshold;
                (t / crossing - 1.0).abs()
            })
            .collect();
        errs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(errs[4] < 0.02, "{errs:?}");
    }
}
