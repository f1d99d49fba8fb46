//! Monte Carlo simulation of frequency-hopping links under convolution attacks.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adversary;
pub mod analysis;
pub mod calibration;
pub mod error;
pub mod hop;
pub mod modem;
pub mod numeric;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type Link = modem::LinkConfig<f64>;
pub type Attack = adversary::AttackConfig<f64>;
pub type Experiment = analysis::ExperimentSpec<f64>;
pub type Plan = hop::FrequencyPlan<f64>;
pub type Channels = hop::ChannelSet<f64>;
pub type Band = hop::BandChannels<f64>;
pub type Symbol = modem::ReceivedSymbol<f64>;
pub type Threshold = calibration::ThresholdDesign<f64>;
pub type Timing = adversary::TimingGeometry<f64>;
