use num_complex::Complex;

use crate::adversary::{BfskEveContribution, EveContribution, JamDraw};
use crate::error::Result;
use crate::numeric::{CircularGaussian, RandomStream};
use crate::scalar::Real;
use rand_distr::Distribution;

/// Per-antenna samples on each observed tone, with the transmitted bit.
///
/// BPSK and OOK observe one tone. BFSK and EBFSK observe two: index 0 is the tone
/// that signals bit 1 and index 1 the tone that signals bit 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceivedSymbol<T> {
    pub bit: bool,
    pub tones: Vec<Vec<Complex<T>>>,
}

impl<T: Real> ReceivedSymbol<T> {
    /// Σ_j |y_j|² on observed tone `i`.
    pub fn energy(&self, i: usize) -> T {
        self.tones[i].iter().map(|y| y.norm_sqr()).sum()
    }
}

/// Interference on a single observed band.
#[derive(Debug, Clone, PartialEq)]
pub enum Interference<T> {
    None,
    Relay(EveContribution<T>),
    Jam(JamDraw<T>),
}

impl<T: Real> Interference<T> {
    pub fn at(&self, j: usize) -> Complex<T> {
        match self {
            Interference::None => Complex::new(T::zero(), T::zero()),
            Interference::Relay(c) => c.total(j),
            Interference::Jam(d) => d.noise[j],
        }
    }
}

/// Interference on the two tones a BFSK receiver observes.
#[derive(Debug, Clone, PartialEq)]
pub enum BfskInterference<T> {
    None,
    /// Convolution attack centred on the sent tone.
    Relay(BfskEveContribution<T>),
    /// Jamming noise on the sent and the complementary tone.
    Jam {
        sent: JamDraw<T>,
        complementary: JamDraw<T>,
    },
}

/// n^(B) samples for `n` antenna-tone slots.
pub(crate) fn receiver_noise<T: Real>(stream: &RandomStream, sigma2_bob: T, n: usize) -> Result<Vec<Complex<T>>> {
    let d = CircularGaussian::new(sigma2_bob)?;
    let mut rng = stream.child_rng("noise_B");
    Ok((0..n).map(|_| d.sample(&mut rng)).collect())
}
