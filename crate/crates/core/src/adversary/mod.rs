//! Attacker strategies: narrowband and wideband jamming, the convolution attack and its
//! BFSK variant, and the relay timing predicate.

mod config;
mod convolution;
mod jamming;
mod timing;

pub use config::{AttackConfig, AttackKind, SpatialMode};
pub(crate) use convolution::waveform_scalars;
pub use convolution::{ca_bfsk_contribution, ca_contribution, BfskEveContribution, EveContribution};
pub use jamming::{nj_contribution, nj_hit, nj_target, wj_contribution, JamDraw};
pub use timing::{check_timing_feasibility, TimingGeometry};
