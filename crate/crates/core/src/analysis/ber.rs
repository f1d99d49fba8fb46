use rand::Rng;
use rayon::prelude::*;

use super::spec::ExperimentSpec;
use super::table::{ResultRow, ResultTable};
use crate::adversary::{
    ca_bfsk_contribution, ca_contribution, nj_contribution, nj_hit, nj_target, wj_contribution, AttackConfig,
    AttackKind,
};
use crate::calibration::{
    approximate_threshold_analytic, attack_ignorant_threshold, optimal_threshold_empirical, EnergyDistributions,
    ThresholdInputs,
};
use crate::error::{Error, Result};
use crate::hop::{next_hop, sample_channels_for, Carrier, ChannelSet, FrequencyPlan, HopKey, KeyPurpose};
use crate::modem::{
    bfsk_detect, bfsk_receive, bfsk_tone_pair, bpsk_coherent_link, bpsk_encode, ook_detect, ook_encode, ook_receive,
    BfskInterference, BfskKeys, BfskMode, Interference, ReceivedSymbol, Scheme, ThresholdMethod,
};
use crate::numeric::RandomStream;
use crate::scalar::Real;

/// Pilot slots live far above any data slot so the two never share a hop.
const PILOT_SLOT_BASE: u64 = 1 << 62;

struct Simulator<'a, T: Real> {
    spec: &'a ExperimentSpec<T>,
    plan: FrequencyPlan<T>,
    keys: BfskKeys,
}

fn bit(sym: &RandomStream) -> bool {
    sym.child_rng("bit").random()
}

impl<'a, T: Real> Simulator<'a, T> {
    fn new(spec: &'a ExperimentSpec<T>) -> Result<Self> {
        spec.validate()?;
        let root = RandomStream::new(spec.seed);
        Ok(Self {
            spec,
            plan: spec.frequency_plan()?,
            keys: BfskKeys {
                hop: HopKey::from_stream(&root, KeyPurpose::CarrierHop),
                tones: HopKey::from_stream(&root, KeyPurpose::TonePair),
            },
        })
    }

    fn point_stream(&self, point: usize) -> RandomStream {
        RandomStream::new(self.spec.seed).child("ber").child(point)
    }

    /// Interference on the single hopped band for one BPSK or OOK symbol of amplitude `x`.
    fn single_band_interference(
        &self,
        attack: &AttackConfig<T>,
        ch: &ChannelSet<T>,
        carrier: Carrier,
        sym: &RandomStream,
        x: T,
        e: T,
    ) -> Result<Interference<T>> {
        let link = &self.spec.link;
        let n = link.n_carriers;
        Ok(match attack.kind {
            AttackKind::None => Interference::None,
            AttackKind::NarrowbandJamming => {
                Interference::Jam(nj_contribution(sym, n, attack.theta, e, carrier, link.n_rx)?)
            }
            AttackKind::WidebandJamming => Interference::Jam(wj_contribution(sym, n, attack.theta, e, link.n_rx)?),
            AttackKind::Convolution => {
                Interference::Relay(ca_contribution(sym, ch, attack, carrier, x, e, link.sigma2_eve)?)
            }
            AttackKind::ConvolutionBfsk => return Err(incompatible(attack, link.scheme)),
        })
    }

    fn hop(&self, attack: &AttackConfig<T>, ts: &RandomStream, slot: u64) -> Result<(Carrier, ChannelSet<T>)> {
        let link = &self.spec.link;
        let carrier = next_hop(&self.keys.hop, slot, link.n_carriers)?;
        let ch = sample_channels_for(ts, &self.plan, link.n_rx, attack.n_eve, slot, [carrier])?;
        Ok((carrier, ch))
    }

    fn ook_symbol(
        &self,
        attack: &AttackConfig<T>,
        ch: &ChannelSet<T>,
        carrier: Carrier,
        sym: &RandomStream,
        e: T,
        b: bool,
    ) -> Result<ReceivedSymbol<T>> {
        let intf = self.single_band_interference(attack, ch, carrier, sym, ook_encode(b), e)?;
        ook_receive(ch.band(carrier), &intf, &self.spec.link, e, b, sym)
    }

    fn bpsk_errors(&self, ts: &RandomStream, slot: u64, e: T) -> Result<u64> {
        let attack = &self.spec.attack;
        let (carrier, ch) = self.hop(attack, ts, slot)?;
        let mut errors = 0;
        for k in 0..self.spec.link.hop_length {
            let sym = ts.child(k);
            let b = bit(&sym);
            let intf = self.single_band_interference(attack, &ch, carrier, &sym, bpsk_encode(b), e)?;
            let decided = bpsk_coherent_link(ch.band(carrier), &intf, &self.spec.link, e, b, &sym)?;
            errors += u64::from(decided != b);
        }
        Ok(errors)
    }

    fn ook_errors(&self, ts: &RandomStream, slot: u64, e: T, threshold: T) -> Result<u64> {
        let attack = &self.spec.attack;
        let (carrier, ch) = self.hop(attack, ts, slot)?;
        let mut errors = 0;
        for k in 0..self.spec.link.hop_length {
            let sym = ts.child(k);
            let b = bit(&sym);
            let r = self.ook_symbol(attack, &ch, carrier, &sym, e, b)?;
            errors += u64::from(ook_detect(&r, threshold) != b);
        }
        Ok(errors)
    }

    fn bfsk_errors(&self, mode: BfskMode, ts: &RandomStream, slot: u64, e: T) -> Result<u64> {
        let link = &self.spec.link;
        let attack = &self.spec.attack;
        let n = link.n_carriers;
        let pair = bfsk_tone_pair(mode, &self.plan, &self.keys, slot)?;
        let ch = sample_channels_for(
            ts,
            &self.plan,
            link.n_rx,
            attack.n_eve,
            slot,
            [pair.one.carrier(), pair.zero.carrier()],
        )?;
        let mut errors = 0;
        for k in 0..link.hop_length {
            let sym = ts.child(k);
            let b = bit(&sym);
            let (sent, comp) = pair.for_bit(b);
            let other = sym.child("complementary");
            let intf = match attack.kind {
                AttackKind::None => BfskInterference::None,
                AttackKind::ConvolutionBfsk => BfskInterference::Relay(ca_bfsk_contribution(
                    &sym,
                    &ch,
                    attack,
                    sent.carrier(),
                    e,
                    link.sigma2_eve,
                )?),
                AttackKind::NarrowbandJamming => {
                    let target = nj_target(&sym, n);
                    BfskInterference::Jam {
                        sent: nj_hit(&sym, target, attack.theta, e, sent.carrier(), link.n_rx)?,
                        complementary: nj_hit(&other, target, attack.theta, e, comp.carrier(), link.n_rx)?,
                    }
                }
                AttackKind::WidebandJamming => BfskInterference::Jam {
                    sent: wj_contribution(&sym, n, attack.theta, e, link.n_rx)?,
                    complementary: wj_contribution(&other, n, attack.theta, e, link.n_rx)?,
                },
                AttackKind::Convolution => return Err(incompatible(attack, link.scheme)),
            };
            let r = bfsk_receive(&ch, &self.plan, pair, &intf, link, e, b, &sym)?;
            errors += u64::from(bfsk_detect(&r) != b);
        }
        Ok(errors)
    }

    /// Pilot energies pooled over the point, alternating bit 1 and bit 0.
    fn pilot_distributions(&self, point: &RandomStream, e: T) -> Result<EnergyDistributions<T>> {
        let link = &self.spec.link;
        let data_bits = self.spec.trials.saturating_mul(link.hop_length as u64);
        let count = (data_bits.saturating_mul(link.pilots as u64))
            .div_ceil(link.data as u64)
            .max(4);
        let attack = self.spec.attack.for_pilots();
        let ps = point.child("pilots");
        let energies: Vec<(bool, T)> = (0..count)
            .into_par_iter()
            .map(|i| {
                let ts = ps.child(i);
                let b = i % 2 == 0;
                let (carrier, ch) = self.hop(&attack, &ts, PILOT_SLOT_BASE + i)?;
                let r = self.ook_symbol(&attack, &ch, carrier, &ts, e, b)?;
                Ok((b, r.energy(0)))
            })
            .collect::<Result<_>>()?;
        let (on, off): (Vec<_>, Vec<_>) = energies.into_iter().partition(|(b, _)| *b);
        EnergyDistributions::new(
            on.into_iter().map(|(_, x)| x).collect(),
            off.into_iter().map(|(_, x)| x).collect(),
            attack.kind != AttackKind::None,
        )
    }

    fn ook_threshold(&self, point: &RandomStream, e: T) -> Result<T> {
        let link = &self.spec.link;
        let attack = &self.spec.attack;
        let inputs = |alpha: T| ThresholdInputs {
            n_rx: link.n_rx,
            e_alice: e,
            alpha,
            theta: attack.theta,
            sigma2_eve: link.sigma2_eve,
            sigma2_bob: link.sigma2_bob,
        };
        let design = match link.threshold {
            ThresholdMethod::EmpiricalOptimal => optimal_threshold_empirical(&self.pilot_distributions(point, e)?)?,
            ThresholdMethod::AnalyticApproximate => {
                let alpha = match attack.kind {
                    AttackKind::None => T::zero(),
                    AttackKind::Convolution => attack.alpha,
                    _ => {
                        return Err(Error::IncompatibleAttack {
                            attack: attack.kind.to_string(),
                            scheme: "analytic OOK threshold".into(),
                        })
                    }
                };
                approximate_threshold_analytic(inputs(alpha))?
            }
            ThresholdMethod::AttackIgnorant => attack_ignorant_threshold(inputs(T::zero()))?,
        };
        Ok(design.threshold)
    }

    fn point(&self, index: usize, ebn0_db: T) -> Result<(ResultRow, Option<T>)> {
        let spec = self.spec;
        let e = spec.link.alice_energy(ebn0_db);
        let ps = self.point_stream(index);
        let threshold = match spec.link.scheme {
            Scheme::Ook => Some(self.ook_threshold(&ps, e)?),
            _ => None,
        };
        let mode = BfskMode::for_scheme(spec.link.scheme);
        let errors = (0..spec.trials)
            .into_par_iter()
            .map(|t| {
                let ts = ps.child(t);
                match (spec.link.scheme, mode, threshold) {
                    (Scheme::BpskCoherent, _, _) => self.bpsk_errors(&ts, t, e),
                    (Scheme::Ook, _, Some(th)) => self.ook_errors(&ts, t, e, th),
                    (_, Some(m), _) => self.bfsk_errors(m, &ts, t, e),
                    _ => unreachable!("scheme dispatch"),
                }
            })
            .try_reduce(|| 0u64, |a, b| Ok(a + b))?;
        let bits = spec.trials * spec.link.hop_length as u64;
        Ok((ResultRow::proportion(ebn0_db.as_f64(), errors, bits), threshold))
    }
}

fn incompatible<T: Real>(attack: &AttackConfig<T>, scheme: Scheme) -> Error {
    Error::IncompatibleAttack {
        attack: attack.kind.to_string(),
        scheme: scheme.to_string(),
    }
}

/// BER versus E_b/N₀ for the spec's scheme and attack.
///
/// Every hop slot draws its streams from (seed, grid point, trial), so the table is
/// identical for any rayon thread count. OOK thresholds are designed once per grid point.
pub fn run_ber<T: Real>(spec: &ExperimentSpec<T>) -> Result<ResultTable> {
    let sim = Simulator::new(spec)?;
    let mut table = ResultTable::new("ber", label(spec), spec.seed);
    for (k, v) in provenance(spec) {
        table = table.with(k, v);
    }
    for (i, &x) in spec.grid_db.iter().enumerate() {
        let (row, threshold) = sim.point(i, x)?;
        if let Some(th) = threshold {
            table = table.with(format!("threshold@{}", row.x), th);
        }
        table.push(row);
    }
    Ok(table)
}

fn label<T: Real>(spec: &ExperimentSpec<T>) -> String {
    let a = &spec.attack;
    let mut s = format!("{} {}", spec.link.scheme, a.kind);
    if a.kind.is_convolution() {
        s += &format!(" alpha={}", a.alpha);
    }
    if a.kind != AttackKind::None {
        s += &format!(" theta={}", a.theta);
    }
    s + &format!(" N={} N_r={}", spec.link.n_carriers, spec.link.n_rx)
}

fn provenance<T: Real>(spec: &ExperimentSpec<T>) -> Vec<(&'static str, String)> {
    let l = &spec.link;
    let a = &spec.attack;
    vec![
        ("scheme", l.scheme.to_string()),
        ("sigma2_bob", l.sigma2_bob.to_string()),
        ("sigma2_eve", l.sigma2_eve.to_string()),
        ("N", l.n_carriers.to_string()),
        ("N_r", l.n_rx.to_string()),
        ("m", l.hop_length.to_string()),
        ("normalization", format!("{:?}", l.normalization)),
        ("threshold", l.threshold.name().to_string()),
        ("pilots", l.pilots.to_string()),
        ("data", l.data.to_string()),
        ("attack", a.kind.to_string()),
        ("alpha", a.alpha.to_string()),
        ("theta", a.theta.to_string()),
        ("N_e", a.n_eve.to_string()),
        ("spatial_mode", a.spatial_mode.name().to_string()),
        ("attacks_pilots", a.attacks_pilots.to_string()),
        ("trials", spec.trials.to_string()),
    ]
}
