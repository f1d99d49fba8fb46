//! OOK threshold design from measured energy distributions or from the gamma approximation.

mod analytic;
mod empirical;

pub use analytic::{
    approximate_threshold_analytic, attack_ignorant_threshold, gamma_density_crossing, gamma_objective,
    minimize_gamma_objective, ThresholdInputs,
};
pub use empirical::{calibrate_from_pilots, empirical_objective, optimal_threshold_empirical, EnergyDistributions};

use crate::modem::ThresholdMethod;

/// A detection threshold and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdDesign<T> {
    pub threshold: T,
    pub method: ThresholdMethod,
    /// Model parameters for the analytic designs.
    pub inputs: Option<ThresholdInputs<T>>,
    /// Objective value at `threshold` (empirical error fraction sum, or gamma-law error sum).
    pub objective: T,
}
