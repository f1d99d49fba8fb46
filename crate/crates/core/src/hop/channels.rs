//! Per-hop Rayleigh channel realizations.

use std::collections::BTreeMap;

use num_complex::Complex;

use super::plan::{Carrier, FrequencyPlan};
use crate::error::{invalid, Result};
use crate::numeric::{standard_vec, RandomStream};
use crate::scalar::Real;

/// Channel gains of one band for one hop slot.
#[derive(Debug, Clone, PartialEq)]
pub struct BandChannels<T> {
    n_rx: usize,
    h_ab: Vec<Complex<T>>,
    h_ae: Vec<Complex<T>>,
    h_eb: Vec<Complex<T>>,
}

impl<T: Real> BandChannels<T> {
    fn sample(stream: &RandomStream, n_rx: usize, n_eve: usize) -> Self {
        Self {
            n_rx,
            h_ab: standard_vec(&mut stream.child_rng("h_AB"), n_rx),
            h_ae: standard_vec(&mut stream.child_rng("h_AE"), n_eve),
            h_eb: standard_vec(&mut stream.child_rng("h_EB"), n_eve * n_rx),
        }
    }

    /// Builds a band from explicit gains; `h_eb` is row-major over (Eve antenna, Bob antenna).
    pub fn from_parts(h_ab: Vec<Complex<T>>, h_ae: Vec<Complex<T>>, h_eb: Vec<Complex<T>>) -> Result<Self> {
        let n_rx = h_ab.len();
        if n_rx == 0 || h_ae.is_empty() {
            return Err(invalid("channels", "need at least one Bob and one Eve antenna"));
        }
        if h_eb.len() != n_rx * h_ae.len() {
            return Err(invalid(
                "h_EB",
                format!("expected {} entries, got {}", n_rx * h_ae.len(), h_eb.len()),
            ));
        }
        Ok(Self { n_rx, h_ab, h_ae, h_eb })
    }

    pub fn n_rx(&self) -> usize {
        self.n_rx
    }

    pub fn n_eve(&self) -> usize {
        self.h_ae.len()
    }

    /// Alice → Bob antenna `j`.
    pub fn h_ab(&self, j: usize) -> Complex<T> {
        self.h_ab[j]
    }

    pub fn h_ab_all(&self) -> &[Complex<T>] {
        &self.h_ab
    }

    /// Alice → Eve antenna `l`.
    pub fn h_ae(&self, l: usize) -> Complex<T> {
        self.h_ae[l]
    }

    /// Eve antenna `l` → Bob antenna `j`.
    pub fn h_eb(&self, l: usize, j: usize) -> Complex<T> {
        self.h_eb[l * self.n_rx + j]
    }
}

/// One hop slot's channel realizations, for every band or for a sampled subset.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet<T> {
    slot: u64,
    hop_length: usize,
    n_rx: usize,
    n_eve: usize,
    bands: BTreeMap<Carrier, BandChannels<T>>,
}

impl<T: Real> ChannelSet<T> {
    pub fn slot(&self) -> u64 {
        self.slot
    }

    /// Symbols per hop (m); every symbol of the slot sees these same gains.
    pub fn hop_length(&self) -> usize {
        self.hop_length
    }

    pub fn with_hop_length(mut self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m", "hop length must be >= 1"));
        }
        self.hop_length = m;
        Ok(self)
    }

    pub fn n_rx(&self) -> usize {
        self.n_rx
    }

    pub fn n_eve(&self) -> usize {
        self.n_eve
    }

    pub fn n_bands(&self) -> usize {
        self.bands.len()
    }

    /// Gains of band `c`. Panics if `c` was not sampled.
    pub fn band(&self, c: Carrier) -> &BandChannels<T> {
        self.bands
            .get(&c)
            .unwrap_or_else(|| panic!("carrier {} not sampled in slot {}", c.0, self.slot))
    }

    pub fn get(&self, c: Carrier) -> Option<&BandChannels<T>> {
        self.bands.get(&c)
    }

    pub fn bands(&self) -> impl Iterator<Item = (Carrier, &BandChannels<T>)> {
        self.bands.iter().map(|(&c, b)| (c, b))
    }

    /// Single-band set with explicit gains, for hand-built scenarios.
    pub fn single(c: Carrier, band: BandChannels<T>) -> Self {
        Self {
            slot: 0,
            hop_length: 1,
            n_rx: band.n_rx(),
            n_eve: band.n_eve(),
            bands: BTreeMap::from([(c, band)]),
        }
    }
}

fn check_antennas(n_rx: usize, n_eve: usize) -> Result<()> {
    if n_rx == 0 {
        return Err(invalid("N_r", "need at least one Bob antenna"));
    }
    if n_eve == 0 {
        return Err(invalid("N_e", "need at least one Eve antenna"));
    }
    Ok(())
}

fn band_stream(stream: &RandomStream, slot: u64, c: Carrier) -> RandomStream {
    stream.child("channels").child(slot).child(c.0)
}

/// Draws every band of `plan` for hop slot `slot`.
pub fn sample_channels<T: Real>(
    stream: &RandomStream,
    plan: &FrequencyPlan<T>,
    n_rx: usize,
    n_eve: usize,
    slot: u64,
) -> Result<ChannelSet<T>> {
    sample_channels_for(stream, plan, n_rx, n_eve, slot, plan.carriers())
}

/// Draws only the listed bands. Each band's gains equal those [`sample_channels`]
/// would produce, so sampling a subset never changes a realization.
pub fn sample_channels_for<T: Real>(
    stream: &RandomStream,
    plan: &FrequencyPlan<T>,
    n_rx: usize,
    n_eve: usize,
    slot: u64,
    carriers: impl IntoIterator<Item = Carrier>,
) -> Result<ChannelSet<T>> {
    check_antennas(n_rx, n_eve)?;
    let mut bands = BTreeMap::new();
    for c in carriers {
        if c.0 >= plan.n_carriers() {
            return Err(invalid(
                "carrier",
                format!("index {} outside plan of {} carriers", c.0, plan.n_carriers()),
            ));
        }
        bands
            .entry(c)
            .or_insert_with(|| BandChannels::sample(&band_stream(stream, slot, c), n_rx, n_eve));
    }
    Ok(ChannelSet {
        slot,
        hop_length: 1,
        n_rx,
        n_eve,
        bands,
    })
}
