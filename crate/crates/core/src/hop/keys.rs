//! Keyed carrier hopping and tone-pair randomization.

use rand::RngCore;

use super::plan::{Carrier, FrequencyPlan, Tone};
use crate::error::{invalid, Result};
use crate::numeric::RandomStream;
use crate::scalar::Real;

/// What a shared key is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KeyPurpose {
    CarrierHop,
    TonePair,
}

impl KeyPurpose {
    fn tag(self) -> &'static str {
        match self {
            KeyPurpose::CarrierHop => "carrier-hop",
            KeyPurpose::TonePair => "tone-pair",
        }
    }
}

/// Secret shared by Alice and Bob. Simulation-grade pseudorandomness only.
#[derive(Clone, PartialEq, Eq)]
pub struct HopKey {
    purpose: KeyPurpose,
    stream: RandomStream,
}

impl std::fmt::Debug for HopKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HopKey")
            .field("purpose", &self.purpose)
            .finish_non_exhaustive()
    }
}

impl HopKey {
    pub fn new(secret: &[u8], purpose: KeyPurpose) -> Self {
        let digest = secret.iter().fold(0xCBF2_9CE4_8422_2325u64, |h, &b| {
            (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01B3)
        });
        let stream = RandomStream::new(digest).child(secret.len()).child(purpose.tag());
        Self { purpose, stream }
    }

    /// Key derived from a simulation stream (one per experiment).
    pub fn from_stream(stream: &RandomStream, purpose: KeyPurpose) -> Self {
        Self {
            purpose,
            stream: stream.child("key").child(purpose.tag()),
        }
    }

    pub fn purpose(&self) -> KeyPurpose {
        self.purpose
    }

    fn prf(&self, slot: u64) -> impl RngCore {
        self.stream.child_rng(slot)
    }
}

/// Uniform integer in `0..n`, rejecting the top partial block of `u64` to avoid modulo bias.
fn uniform_below<R: RngCore>(rng: &mut R, n: u64) -> u64 {
    debug_assert!(n > 0);
    let zone = u64::MAX - (u64::MAX % n + 1) % n;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return x % n;
        }
    }
}

/// Carrier used in hop slot `slot`.
pub fn next_hop(key: &HopKey, slot: u64, n_carriers: usize) -> Result<Carrier> {
    if key.purpose != KeyPurpose::CarrierHop {
        return Err(invalid("key", "next_hop needs a carrier-hop key"));
    }
    if n_carriers == 0 {
        return Err(invalid("N", "need at least one carrier"));
    }
    let mut rng = key.prf(slot);
    Ok(Carrier(uniform_below(&mut rng, n_carriers as u64) as usize))
}

/// Ordered pair of distinct tones: `one` carries bit 1, `zero` carries bit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TonePair {
    pub one: Tone,
    pub zero: Tone,
}

impl TonePair {
    /// Tone Alice transmits for `bit` and the complementary tone.
    pub fn for_bit(&self, bit: bool) -> (Tone, Tone) {
        if bit {
            (self.one, self.zero)
        } else {
            (self.zero, self.one)
        }
    }
}

/// Number of ordered pairs of distinct tones for `n_tones` tones.
pub fn tone_pair_count(n_tones: usize) -> u64 {
    n_tones as u64 * (n_tones as u64).saturating_sub(1)
}

/// Bijection from `0..n(n−1)` onto ordered pairs of distinct tones.
pub fn tone_pair_from_index(index: u64, n_tones: usize) -> TonePair {
    let others = n_tones as u64 - 1;
    let one = index / others;
    let r = index % others;
    let zero = if r < one { r } else { r + 1 };
    TonePair {
        one: Tone(one as usize),
        zero: Tone(zero as usize),
    }
}

/// Keyed uniform draw over ordered pairs of distinct tones of `plan`.
pub fn draw_tone_pair<T: Real>(key: &HopKey, slot: u64, plan: &FrequencyPlan<T>) -> Result<TonePair> {
    if key.purpose != KeyPurpose::TonePair {
        return Err(invalid("key", "draw_tone_pair needs a tone-pair key"));
    }
    let n = plan.n_tones();
    if n < 2 {
        return Err(invalid("plan", "need at least two tones"));
    }
    let mut rng = key.prf(slot);
    Ok(tone_pair_from_index(uniform_below(&mut rng, tone_pair_count(n)), n))
}
