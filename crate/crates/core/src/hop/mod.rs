//! Frequency plan, keyed hopping and tone randomization, per-hop channel sampling.

mod channels;
mod keys;
mod plan;

pub use channels::{sample_channels, sample_channels_for, BandChannels, ChannelSet};
pub use keys::{draw_tone_pair, next_hop, tone_pair_count, tone_pair_from_index, HopKey, KeyPurpose, TonePair};
pub use plan::{build_frequency_plan, Carrier, FrequencyPlan, Tone};
