use num_complex::Complex;

use super::config::{LinkConfig, Scheme};
use super::symbol::{receiver_noise, Interference};
use crate::error::{invalid, Result};
use crate::hop::BandChannels;
use crate::numeric::RandomStream;
use crate::scalar::Real;

/// x_k = +1 for bit 1, −1 for bit 0.
pub fn bpsk_encode<T: Real>(bit: bool) -> T {
    if bit {
        T::one()
    } else {
        -T::one()
    }
}

/// Transmits `bit` as ±√E_Alice and decodes with attack-ignorant maximum-ratio combining:
/// b̂ = 1 iff Re Σ_j h^(AB)*_j·y_j > 0.
///
/// A convolution-attack contribution must already be computed for x_k = ±1.
pub fn bpsk_coherent_link<T: Real>(
    band: &BandChannels<T>,
    interference: &Interference<T>,
    cfg: &LinkConfig<T>,
    e_alice: T,
    bit: bool,
    stream: &RandomStream,
) -> Result<bool> {
    if cfg.scheme != Scheme::BpskCoherent {
        return Err(invalid(
            "scheme",
            format!("bpsk_coherent_link called for {}", cfg.scheme),
        ));
    }
    let amp = e_alice.sqrt() * bpsk_encode::<T>(bit);
    let noise = receiver_noise(stream, cfg.sigma2_bob, band.n_rx())?;
    let mut stat = Complex::new(T::zero(), T::zero());
    for (j, &n) in noise.iter().enumerate() {
        let h = band.h_ab(j);
        let y = h * amp + interference.at(j) + n;
        stat = stat + h.conj() * y;
    }
    Ok(stat.re > T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hop::{build_frequency_plan, sample_channels, Carrier};

    #[test]
    fn noiseless_never_errs() {
        let root = RandomStream::new(1);
        let plan = build_frequency_plan(1, 1.0, 0.2, 0.5).unwrap();
        let mut c = LinkConfig::new(Scheme::BpskCoherent);
        c.sigma2_bob = 0.0;
        for t in 0..10_000u64 {
            let s = root.child(t);
            let ch = sample_channels(&s, &plan, 2, 1, t).unwrap();
            let bit = t % 2 == 0;
            assert_eq!(
                bpsk_coherent_link(ch.band(Carrier(0)), &Interference::None, &c, 1.0, bit, &s).unwrap(),
                bit
            );
        }
    }

    #[test]
    fn wrong_scheme_rejected() {
        let s = RandomStream::new(1);
        let plan = build_frequency_plan(1, 1.0, 0.2, 0.5).unwrap();
        let ch = sample_channels(&s, &plan, 1, 1, 0).unwrap();
        let c = LinkConfig::new(Scheme::Ook);
        assert!(bpsk_coherent_link(ch.band(Carrier(0)), &Interference::None, &c, 1.0, true, &s).is_err());
    }
}
