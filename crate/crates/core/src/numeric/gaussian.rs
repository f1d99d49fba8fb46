use num_complex::Complex;
use rand::Rng;
use rand_distr::Distribution;

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Complex baseband amplitude (channel gain, noise sample, received symbol).
pub type ComplexAmplitude<T> = Complex<T>;

/// Circularly symmetric complex Gaussian 𝒞𝒩(0, σ²).
///
/// Real and imaginary parts are independent N(0, σ²/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularGaussian<T> {
    component_std: T,
}

impl<T: Real> CircularGaussian<T> {
    pub fn new(variance: T) -> Result<Self> {
        if !(variance >= T::zero()) || !variance.is_finite() {
            return Err(invalid("variance", format!("must be finite and >= 0, got {variance}")));
        }
        Ok(Self {
            component_std: (variance / T::lit(2.0)).sqrt(),
        })
    }

    /// 𝒞𝒩(0, 1).
    pub fn standard() -> Self {
        Self {
            component_std: T::FRAC_1_SQRT_2(),
        }
    }

    pub fn variance(&self) -> T {
        self.component_std * self.component_std * T::lit(2.0)
    }
}

impl<T: Real> Distribution<Complex<T>> for CircularGaussian<T> {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex<T> {
        if self.component_std == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        let re = T::standard_normal(rng);
        let im = T::standard_normal(rng);
        Complex::new(re * self.component_std, im * self.component_std)
    }
}

/// Draws one 𝒞𝒩(0, `variance`) sample.
pub fn sample_circular_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R, variance: T) -> Result<Complex<T>> {
    Ok(CircularGaussian::new(variance)?.sample(rng))
}

/// Draws `n` i.i.d. 𝒞𝒩(0, 1) samples.
pub(crate) fn standard_vec<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex<T>> {
    let d = CircularGaussian::<T>::standard();
    (0..n).map(|_| d.sample(rng)).collect()
}
