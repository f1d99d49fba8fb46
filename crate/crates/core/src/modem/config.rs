use std::fmt;

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Modulation and detection scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// BPSK with coherent ML detection (maximum-ratio combining on h^(AB) only).
    BpskCoherent,
    /// On-off keying with square-law energy detection.
    Ook,
    /// BFSK on f_c ± β with keyed carrier hopping.
    Bfsk,
    /// BFSK with a keyed random pair of tones from the full tone set.
    Ebfsk,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::BpskCoherent => "bpsk",
            Scheme::Ook => "ook",
            Scheme::Bfsk => "bfsk",
            Scheme::Ebfsk => "ebfsk",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "bpsk" | "bpsk-coherent" => Scheme::BpskCoherent,
            "ook" => Scheme::Ook,
            "bfsk" => Scheme::Bfsk,
            "ebfsk" => Scheme::Ebfsk,
            _ => return None,
        })
    }

    pub fn is_fsk(self) -> bool {
        matches!(self, Scheme::Bfsk | Scheme::Ebfsk)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How E_b/N₀ maps to Alice's transmit energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergyNormalization {
    /// E_b/N₀ = E_Alice/(2σ²_Bob) for BPSK and OOK, E_Alice/σ²_Bob for (E)BFSK.
    Standard,
    /// Energy per bit E_b = σ²_Bob·E_b/N₀ for every scheme; OOK's ON symbol carries 2E_b.
    EqualEnergyPerBit,
}

/// Threshold used by the OOK energy detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdMethod {
    /// Minimizes the empirical error count over pilot energies.
    EmpiricalOptimal,
    /// Gamma-approximation threshold from the attack parameters.
    AnalyticApproximate,
    /// Gamma-approximation threshold assuming no attack.
    AttackIgnorant,
}

impl ThresholdMethod {
    pub fn name(self) -> &'static str {
        match self {
            ThresholdMethod::EmpiricalOptimal => "empirical",
            ThresholdMethod::AnalyticApproximate => "analytic",
            ThresholdMethod::AttackIgnorant => "attack-ignorant",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "empirical" | "empirical-optimal" => ThresholdMethod::EmpiricalOptimal,
            "analytic" | "analytic-approximate" => ThresholdMethod::AnalyticApproximate,
            "attack-ignorant" | "ignorant" => ThresholdMethod::AttackIgnorant,
            _ => return None,
        })
    }
}

/// Link parameters shared by transmitter, channel and receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkConfig<T> {
    pub scheme: Scheme,
    pub sigma2_bob: T,
    pub sigma2_eve: T,
    /// Number of carriers N.
    pub n_carriers: usize,
    /// Bob's receive antennas N_r.
    pub n_rx: usize,
    /// Symbols per hop m.
    pub hop_length: usize,
    pub normalization: EnergyNormalization,
    pub threshold: ThresholdMethod,
    /// OOK pilots per frame.
    pub pilots: usize,
    /// OOK data symbols per frame.
    pub data: usize,
}

impl<T: Real> LinkConfig<T> {
    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            sigma2_bob: T::one(),
            sigma2_eve: T::lit(0.01),
            n_carriers: 1024,
            n_rx: 2,
            hop_length: 1,
            normalization: EnergyNormalization::Standard,
            threshold: ThresholdMethod::EmpiricalOptimal,
            pilots: 128,
            data: 1024,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma2_bob >= T::zero()) || !self.sigma2_bob.is_finite() {
            return Err(invalid("sigma2_bob", format!("must be >= 0, got {}", self.sigma2_bob)));
        }
        if !(self.sigma2_eve >= T::zero()) || !self.sigma2_eve.is_finite() {
            return Err(invalid("sigma2_eve", format!("must be >= 0, got {}", self.sigma2_eve)));
        }
        if self.n_carriers == 0 {
            return Err(invalid("N", "need at least one carrier"));
        }
        if self.n_rx == 0 {
            return Err(invalid("N_r", "need at least one receive antenna"));
        }
        if self.hop_length == 0 {
            return Err(invalid("m", "hop length must be >= 1"));
        }
        if self.scheme == Scheme::Ook && (self.pilots < 4 || self.data == 0) {
            return Err(invalid(
                "pilots",
                "OOK needs at least 4 pilots and 1 data symbol per frame",
            ));
        }
        Ok(())
    }

    /// Transmit energy E_Alice (per ON symbol for OOK) at the given E_b/N₀ in dB.
    pub fn alice_energy(&self, ebn0_db: T) -> T {
        let rho = T::lit(10.0).powf(ebn0_db / T::lit(10.0));
        let per_bit = self.sigma2_bob * rho;
        let two = T::lit(2.0);
        match (self.normalization, self.scheme) {
            (EnergyNormalization::Standard, Scheme::BpskCoherent | Scheme::Ook) => two * per_bit,
            (EnergyNormalization::Standard, _) => per_bit,
            (EnergyNormalization::EqualEnergyPerBit, Scheme::Ook) => two * per_bit,
            (EnergyNormalization::EqualEnergyPerBit, _) => per_bit,
        }
    }
}

/// 10·log₁₀(x).
pub fn to_db<T: Real>(x: T) -> T {
    T::lit(10.0) * x.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ebn0_conventions() {
        let ook = LinkConfig::<f64>::new(Scheme::Ook);
        assert!((ook.alice_energy(10.0) - 20.0).abs() < 1e-12);
        let bpsk = LinkConfig::<f64>::new(Scheme::BpskCoherent);
        assert!((bpsk.alice_energy(0.0) - 2.0).abs() < 1e-12);
        let bfsk = LinkConfig::<f64>::new(Scheme::Bfsk);
        assert!((bfsk.alice_energy(10.0) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn equal_energy_doubles_ook_on_energy() {
        let mut ook = LinkConfig::<f64>::new(Scheme::Ook);
        let mut fsk = LinkConfig::<f64>::new(Scheme::Ebfsk);
        ook.normalization = EnergyNormalization::EqualEnergyPerBit;
        fsk.normalization = EnergyNormalization::EqualEnergyPerBit;
        // Average OOK energy per bit is half the ON energy.
        assert!((ook.alice_energy(7.0) / 2.0 - fsk.alice_energy(7.0)).abs() < 1e-12);
    }

    #[test]
    fn defaults_validate() {
        let c = LinkConfig::<f64>::new(Scheme::Ook);
        assert!(c.validate().is_ok());
        assert_eq!((c.n_carriers, c.n_rx), (1024, 2));
        let mut bad = c;
        bad.n_rx = 0;
        assert!(bad.validate().is_err());
        bad = c;
        bad.sigma2_bob = -1.0;
        assert!(bad.validate().unwrap_err().to_string().contains("sigma2_bob"));
    }
}
