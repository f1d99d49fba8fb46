//! Transmit encoding and receive-side detection for coherent BPSK, OOK and (E)BFSK.

mod bfsk;
mod bpsk;
mod config;
mod ook;
mod symbol;

pub use bfsk::{bfsk_detect, bfsk_encode, bfsk_receive, bfsk_tone_pair, BfskKeys, BfskMode};
pub use bpsk::{bpsk_coherent_link, bpsk_encode};
pub use config::{to_db, EnergyNormalization, LinkConfig, Scheme, ThresholdMethod};
pub use ook::{ook_detect, ook_encode, ook_receive};
pub use symbol::{BfskInterference, Interference, ReceivedSymbol};
