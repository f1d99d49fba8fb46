use super::config::{LinkConfig, Scheme};
use super::symbol::{receiver_noise, Interference, ReceivedSymbol};
use crate::error::{invalid, Result};
use crate::hop::BandChannels;
use crate::numeric::RandomStream;
use crate::scalar::Real;

/// x_k = 1 for bit 1, 0 for bit 0.
pub fn ook_encode<T: Real>(bit: bool) -> T {
    if bit {
        T::one()
    } else {
        T::zero()
    }
}

/// y_j = √E_Alice·h^(AB)_j·x_k + (Eve or jammer)_j + n^(B)_j.
///
/// A convolution-attack contribution must already be computed for x_k, so its signal
/// term vanishes in the OFF state.
pub fn ook_receive<T: Real>(
    band: &BandChannels<T>,
    interference: &Interference<T>,
    cfg: &LinkConfig<T>,
    e_alice: T,
    bit: bool,
    stream: &RandomStream,
) -> Result<ReceivedSymbol<T>> {
    if cfg.scheme != Scheme::Ook {
        return Err(invalid("scheme", format!("ook_receive called for {}", cfg.scheme)));
    }
    let amp = e_alice.sqrt() * ook_encode::<T>(bit);
    let noise = receiver_noise(stream, cfg.sigma2_bob, band.n_rx())?;
    let samples = (0..band.n_rx())
        .map(|j| band.h_ab(j) * amp + interference.at(j) + noise[j])
        .collect();
    Ok(ReceivedSymbol {
        bit,
        tones: vec![samples],
    })
}

/// Decides 1 iff Σ_j |y_j|² > E_th.
pub fn ook_detect<T: Real>(r: &ReceivedSymbol<T>, threshold: T) -> bool {
    r.energy(0) > threshold
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{ca_contribution, AttackConfig};
    use crate::hop::{build_frequency_plan, sample_channels, Carrier};
    use crate::numeric::ks_distance;
    use crate::numeric::regularized_lower_incomplete_gamma;
    use num_complex::Complex;

    fn cfg(n_rx: usize, sigma2: f64) -> LinkConfig<f64> {
        let mut c = LinkConfig::new(Scheme::Ook);
        c.n_rx = n_rx;
        c.sigma2_bob = sigma2;
        c
    }

    #[test]
    fn encoding() {
        assert_eq!(ook_encode::<f64>(true), 1.0);
        assert_eq!(ook_encode::<f64>(false), 0.0);
    }

    #[test]
    fn noiseless_on_symbol_is_channel() {
        let s = RandomStream::new(1);
        let plan = build_frequency_plan(1, 1.0, 0.2, 0.5).unwrap();
        let ch = sample_channels(&s, &plan, 3, 1, 0).unwrap();
        let band = ch.band(Carrier(0));
        let r = ook_receive(band, &Interference::None, &cfg(3, 0.0), 4.0, true, &s).unwrap();
        for j in 0..3 {
            assert_eq!(r.tones[0][j], band.h_ab(j) * 2.0);
        }
        let e = r.energy(0);
        assert!(ook_detect(&r, e * 0.999));
        let off = ook_receive(band, &Interference::None, &cfg(3, 0.0), 4.0, false, &s).unwrap();
        assert!(!ook_detect(&off, e * 0.001));
    }

    #[test]
    fn detection_rule() {
        let r = ReceivedSymbol {
            bit: true,
            tones: vec![vec![Complex::new(1.0, 1.0)]],
        };
        assert!(ook_detect(&r, 1.0));
        assert!(!ook_detect(&r, 2.0));
        assert!(ook_detect(&r, 0.0));
    }

    #[test]
    fn off_state_is_receiver_noise() {
        let root = RandomStream::new(2);
        let plan = build_frequency_plan(1, 1.0, 0.2, 0.5).unwrap();
        let c = cfg(1, 1.0);
        let e: Vec<f64> = (0..100_000u64)
            .map(|t| {
                let s = root.child(t);
                let ch = sample_channels(&s, &plan, 1, 1, t).unwrap();
                ook_receive(ch.band(Carrier(0)), &Interference::None, &c, 1.0, false, &s)
                    .unwrap()
                    .energy(0)
            })
            .collect();
        assert!(ks_distance(&e, |x| 1.0 - (-x).exp()).unwrap() <= 0.01);
    }

    #[test]
    fn clean_on_energy_is_gamma() {
        // N_r = 4, E = σ² = 1: Σ of 4 exponentials of mean 2.
        let root = RandomStream::new(3);
        let plan = build_frequency_plan(1, 1.0, 0.2, 0.5).unwrap();
        let c = cfg(4, 1.0);
        let e: Vec<f64> = (0..100_000u64)
            .map(|t| {
                let s = root.child(t);
                let ch = sample_channels(&s, &plan, 4, 1, t).unwrap();
                ook_receive(ch.band(Carrier(0)), &Interference::None, &c, 1.0, true, &s)
                    .unwrap()
                    .energy(0)
            })
            .collect();
        let d = ks_distance(&e, |x| regularized_lower_incomplete_gamma(4.0, x / 2.0).unwrap()).unwrap();
        assert!(d <= 0.01, "{d}");
    }

    #[test]
    fn attacked_on_energy_mean() {
        let root = RandomStream::new(4);
        let plan = build_frequency_plan(1, 1.0, 0.2, 0.5).unwrap();
        let c = cfg(2, 1.0);
        let a = AttackConfig::convolution(1.0, 9.0).unwrap();
        let n = 1_000_000u64;
        let mut acc = 0.0;
        for t in 0..n {
            let s = root.child(t);
            let ch = sample_channels(&s, &plan, 2, 1, t).unwrap();
            let eve = ca_contribution(&s, &ch, &a, Carrier(0), 1.0, 1.0, c.sigma2_eve).unwrap();
            let r = ook_receive(ch.band(Carrier(0)), &Interference::Relay(eve), &c, 1.0, true, &s).unwrap();
            acc += r.energy(0) / 2.0;
        }
        let expected = 1.0 * (1.0 + 9.0) + 9.0 * 0.01 + 1.0;
        let m = acc / n as f64;
        assert!((m / expected - 1.0).abs() < 0.01, "{m} vs {expected}");
    }
}
