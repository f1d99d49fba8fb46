use super::config::{LinkConfig, Scheme};
use super::symbol::{receiver_noise, BfskInterference, ReceivedSymbol};
use crate::error::{invalid, Result};
use crate::hop::{draw_tone_pair, next_hop, ChannelSet, FrequencyPlan, HopKey, Tone, TonePair};
use crate::numeric::RandomStream;
use crate::scalar::Real;
use num_complex::Complex;

/// Traditional BFSK uses f_c ± β of the hopped carrier; enhanced BFSK draws a keyed pair from 𝓣.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BfskMode {
    Traditional,
    Enhanced,
}

impl BfskMode {
    pub fn for_scheme(s: Scheme) -> Option<Self> {
        match s {
            Scheme::Bfsk => Some(BfskMode::Traditional),
            Scheme::Ebfsk => Some(BfskMode::Enhanced),
            _ => None,
        }
    }
}

/// Shared secrets for carrier hopping and tone randomization.
#[derive(Debug, Clone)]
pub struct BfskKeys {
    pub hop: HopKey,
    pub tones: HopKey,
}

/// Tones signalling bit 1 and bit 0 in hop slot `slot`.
pub fn bfsk_tone_pair<T: Real>(
    mode: BfskMode,
    plan: &FrequencyPlan<T>,
    keys: &BfskKeys,
    slot: u64,
) -> Result<TonePair> {
    match mode {
        BfskMode::Traditional => {
            let c = next_hop(&keys.hop, slot, plan.n_carriers())?;
            Ok(TonePair {
                one: plan.tone(c, true),
                zero: plan.tone(c, false),
            })
        }
        BfskMode::Enhanced => draw_tone_pair(&keys.tones, slot, plan),
    }
}

/// (tone carrying the bit, complementary tone).
pub fn bfsk_encode<T: Real>(
    bit: bool,
    mode: BfskMode,
    plan: &FrequencyPlan<T>,
    keys: &BfskKeys,
    slot: u64,
) -> Result<(Tone, Tone)> {
    Ok(bfsk_tone_pair(mode, plan, keys, slot)?.for_bit(bit))
}

/// Samples on both tones of `pair` when Alice sends `bit`.
///
/// The sent tone carries √E_Alice·h^(AB) through its carrier's channel. The complementary
/// tone carries only noise, plus Eve's side term when it sits at f_k ± 2β.
#[allow(clippy::too_many_arguments)]
pub fn bfsk_receive<T: Real>(
    channels: &ChannelSet<T>,
    plan: &FrequencyPlan<T>,
    pair: TonePair,
    interference: &BfskInterference<T>,
    cfg: &LinkConfig<T>,
    e_alice: T,
    bit: bool,
    stream: &RandomStream,
) -> Result<ReceivedSymbol<T>> {
    if !cfg.scheme.is_fsk() {
        return Err(invalid("scheme", format!("bfsk_receive called for {}", cfg.scheme)));
    }
    let (sent, comp) = pair.for_bit(bit);
    let band = channels
        .get(sent.carrier())
        .ok_or_else(|| invalid("channels", format!("carrier {} was not sampled", sent.carrier().0)))?;
    let n_rx = band.n_rx();
    let noise = receiver_noise(stream, cfg.sigma2_bob, 2 * n_rx)?;
    let zero = Complex::new(T::zero(), T::zero());
    let amp = e_alice.sqrt();
    let (upper, lower) = plan.side_tones(sent);

    let mut main: Vec<Complex<T>> = (0..n_rx).map(|j| band.h_ab(j) * amp + noise[j]).collect();
    let mut side: Vec<Complex<T>> = noise[n_rx..].to_vec();
    match interference {
        BfskInterference::None => {}
        BfskInterference::Relay(c) => {
            let hit = if upper == Some(comp) {
                Some(&c.upper)
            } else if lower == Some(comp) {
                Some(&c.lower)
            } else {
                None
            };
            for j in 0..n_rx {
                main[j] = main[j] + c.main.total(j);
                side[j] = side[j] + hit.map_or(zero, |h| h.total(j));
            }
        }
        BfskInterference::Jam { sent, complementary } => {
            for j in 0..n_rx {
                main[j] = main[j] + sent.noise[j];
                side[j] = side[j] + complementary.noise[j];
            }
        }
    }
    let tones = if bit { vec![main, side] } else { vec![side, main] };
    Ok(ReceivedSymbol { bit, tones })
}

/// b̂ = 1 iff the bit-1 tone holds strictly more energy than the bit-0 tone.
pub fn bfsk_detect<T: Real>(r: &ReceivedSymbol<T>) -> bool {
    r.energy(0) > r.energy(1)
}
