//! Random streams, complex Gaussian sampling, special functions and
//! empirical-distribution utilities.

mod ecdf;
mod gaussian;
mod special;
mod stream;

pub use ecdf::{empirical_cdf, ks_distance, EmpiricalCdf};
pub(crate) use gaussian::standard_vec;
pub use gaussian::{sample_circular_gaussian, CircularGaussian, ComplexAmplitude};
pub use special::{binary_entropy, ln_gamma, regularized_lower_incomplete_gamma, regularized_upper_incomplete_gamma};
pub use stream::{Label, RandomStream, StreamRng};
