//! Experiment harness: BER curves, received-energy CDFs, law-of-large-numbers checks and
//! the BFSK transition-probability analysis.

mod ber;
mod energy;
mod spec;
mod table;
mod transition;

pub use ber::run_ber;
pub use energy::{
    cdf_received_energy, lln_check, multi_eve_product_cdf, product_channel_samples, received_energy_samples, LlnReport,
    MIN_CDF_SAMPLES,
};
pub use spec::{check_compatible, ExperimentSpec, PlanGeometry};
pub use table::{has_error_floor, proportion_stderr, ResultRow, ResultTable};
pub use transition::{
    closed_form_pcross, mutual_information_sweep, solve_alpha_half, surrogate_pcross, AlphaSolution, MiCurve,
};
