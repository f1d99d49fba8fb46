use num_complex::Complex;
use rand::Rng;
use rand_distr::Distribution;

use super::config::{AttackConfig, AttackKind, SpatialMode};
use crate::error::{Error, Result};
use crate::hop::{BandChannels, Carrier, ChannelSet};
use crate::numeric::{CircularGaussian, RandomStream};
use crate::scalar::Real;

/// What Eve adds at each Bob antenna on one tone: the relayed signal and her forwarded noise.
#[derive(Debug, Clone, PartialEq)]
pub struct EveContribution<T> {
    pub signal: Vec<Complex<T>>,
    pub noise: Vec<Complex<T>>,
}

impl<T: Real> EveContribution<T> {
    pub fn zero(n_rx: usize) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self {
            signal: vec![z; n_rx],
            noise: vec![z; n_rx],
        }
    }

    pub fn n_rx(&self) -> usize {
        self.signal.len()
    }

    /// Signal plus noise at antenna `j`.
    pub fn total(&self, j: usize) -> Complex<T> {
        self.signal[j] + self.noise[j]
    }

    /// Σ_j |signal_j|².
    pub fn signal_energy(&self) -> T {
        self.signal.iter().map(|s| s.norm_sqr()).sum()
    }
}

/// Eve's contributions under the BFSK variant: the received tone f_k and the side tones f_k ± 2β.
#[derive(Debug, Clone, PartialEq)]
pub struct BfskEveContribution<T> {
    pub main: EveContribution<T>,
    pub upper: EveContribution<T>,
    pub lower: EveContribution<T>,
}

fn wrong_kind<T: Real>(cfg: &AttackConfig<T>, wanted: AttackKind) -> Error {
    Error::IncompatibleAttack {
        attack: cfg.kind.to_string(),
        scheme: format!("{wanted} contribution"),
    }
}

/// Per-antenna waveform scalars w_{k,l} for the configured spatial mode.
pub(crate) fn waveform_scalars<T: Real, R: Rng>(rng: &mut R, n_eve: usize, mode: SpatialMode) -> Vec<Complex<T>> {
    let d = CircularGaussian::<T>::standard();
    match mode {
        SpatialMode::Randomized => (0..n_eve).map(|_| d.sample(rng)).collect(),
        SpatialMode::Single | SpatialMode::Fixed => vec![d.sample(rng); n_eve],
    }
}

/// Σ_l h^(EB)_{l,j}·s_l·(√(E/N_e)·h^(AE)_l·x + √(g/N_e)·n^(E)_l) split into signal and noise.
fn relay<T: Real>(
    band: &BandChannels<T>,
    scalars: &[Complex<T>],
    eve_noise: &[Complex<T>],
    signal_amp: T,
    noise_amp: T,
) -> EveContribution<T> {
    let n_eve = T::count(band.n_eve());
    let sa = signal_amp / n_eve.sqrt();
    let na = noise_amp / n_eve.sqrt();
    let mut out = EveContribution::zero(band.n_rx());
    for l in 0..band.n_eve() {
        let fwd = scalars[l];
        let sig = band.h_ae(l) * fwd * sa;
        let noi = eve_noise[l] * fwd * na;
        for j in 0..band.n_rx() {
            let heb = band.h_eb(l, j);
            out.signal[j] = out.signal[j] + heb * sig;
            out.noise[j] = out.noise[j] + heb * noi;
        }
    }
    out
}

fn eve_noise<T: Real>(stream: &RandomStream, n_eve: usize, sigma2_eve: T) -> Result<Vec<Complex<T>>> {
    let d = CircularGaussian::new(sigma2_eve)?;
    let mut rng = stream.child_rng("noise_E");
    Ok((0..n_eve).map(|_| d.sample(&mut rng)).collect())
}

fn check_band<'a, T: Real>(
    channels: &'a ChannelSet<T>,
    cfg: &AttackConfig<T>,
    c: Carrier,
) -> Result<&'a BandChannels<T>> {
    let band = channels
        .get(c)
        .ok_or_else(|| crate::error::invalid("active_band", format!("carrier {} was not sampled", c.0)))?;
    if band.n_eve() != cfg.n_eve {
        return Err(crate::error::invalid(
            "N_e",
            format!(
                "channels have {} Eve antennas, attack expects {}",
                band.n_eve(),
                cfg.n_eve
            ),
        ));
    }
    Ok(band)
}

/// Convolution attack on the active band for transmitted amplitude `x`.
///
/// Antenna j receives Σ_l √(αθE_Alice/N_e)·h^(EB)_{l,j}·h^(AE)_l·w_{k,l}·x as signal and
/// Σ_l √(αθ/N_e)·h^(EB)_{l,j}·w_{k,l}·n^(E)_l as forwarded noise.
pub fn ca_contribution<T: Real>(
    stream: &RandomStream,
    channels: &ChannelSet<T>,
    cfg: &AttackConfig<T>,
    active: Carrier,
    x: T,
    e_alice: T,
    sigma2_eve: T,
) -> Result<EveContribution<T>> {
    if cfg.kind != AttackKind::Convolution {
        return Err(wrong_kind(cfg, AttackKind::Convolution));
    }
    let band = check_band(channels, cfg, active)?;
    let w = waveform_scalars(&mut stream.child_rng("w_k"), cfg.n_eve, cfg.spatial_mode);
    let n_e = eve_noise(stream, cfg.n_eve, sigma2_eve)?;
    let gain = cfg.alpha * cfg.theta;
    Ok(relay(band, &w, &n_e, (gain * e_alice).sqrt() * x, gain.sqrt()))
}

/// Convolution attack aimed at BFSK: αθE_Alice on the received tone and ((1−α)/2)θE_Alice on
/// each of f_k ± 2β, with independent scalars u per side tone and one shared n^(E).
/// The side tones are relayed through the received band's h^(AE) and h^(EB).
pub fn ca_bfsk_contribution<T: Real>(
    stream: &RandomStream,
    channels: &ChannelSet<T>,
    cfg: &AttackConfig<T>,
    received_band: Carrier,
    e_alice: T,
    sigma2_eve: T,
) -> Result<BfskEveContribution<T>> {
    if cfg.kind != AttackKind::ConvolutionBfsk {
        return Err(wrong_kind(cfg, AttackKind::ConvolutionBfsk));
    }
    let band = check_band(channels, cfg, received_band)?;
    let n_e = eve_noise(stream, cfg.n_eve, sigma2_eve)?;
    let main_gain = cfg.alpha * cfg.theta;
    let side_gain = (T::one() - cfg.alpha) / T::lit(2.0) * cfg.theta;
    let on = |tag: &'static str, gain: T| {
        let s = waveform_scalars(&mut stream.child_rng(tag), cfg.n_eve, cfg.spatial_mode);
        relay(band, &s, &n_e, (gain * e_alice).sqrt(), gain.sqrt())
    };
    Ok(BfskEveContribution {
        main: on("w_k", main_gain),
        upper: on("u_upper", side_gain),
        lower: on("u_lower", side_gain),
    })
}
