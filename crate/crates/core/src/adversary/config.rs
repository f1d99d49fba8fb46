use std::fmt;

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Attacker strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackKind {
    None,
    /// Noise of energy θE_Alice on one uniformly chosen band per symbol.
    NarrowbandJamming,
    /// Noise of energy θE_Alice/N on every band.
    WidebandJamming,
    /// Convolution attack on the active band.
    Convolution,
    /// Convolution attack splitting energy between the received tone and f_k ± 2β.
    ConvolutionBfsk,
}

impl AttackKind {
    pub fn name(self) -> &'static str {
        match self {
            AttackKind::None => "none",
            AttackKind::NarrowbandJamming => "nj",
            AttackKind::WidebandJamming => "wj",
            AttackKind::Convolution => "ca",
            AttackKind::ConvolutionBfsk => "ca-bfsk",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "none" => AttackKind::None,
            "nj" => AttackKind::NarrowbandJamming,
            "wj" => AttackKind::WidebandJamming,
            "ca" => AttackKind::Convolution,
            "ca-bfsk" | "ca_bfsk" => AttackKind::ConvolutionBfsk,
            _ => return None,
        })
    }

    pub fn is_convolution(self) -> bool {
        matches!(self, AttackKind::Convolution | AttackKind::ConvolutionBfsk)
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a multi-antenna Eve chooses the per-antenna scalars w_{k,l}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpatialMode {
    /// One antenna.
    Single,
    /// Independent w_{k,l} per antenna.
    Randomized,
    /// Same w_k on every antenna.
    Fixed,
}

impl SpatialMode {
    pub fn name(self) -> &'static str {
        match self {
            SpatialMode::Single => "single",
            SpatialMode::Randomized => "randomized",
            SpatialMode::Fixed => "fixed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "single" => SpatialMode::Single,
            "randomized" | "random" => SpatialMode::Randomized,
            "fixed" => SpatialMode::Fixed,
            _ => return None,
        })
    }
}

/// Attacker parameters. E_Eve = θE_Alice; the convolution share is αθE_Alice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackConfig<T> {
    pub kind: AttackKind,
    pub alpha: T,
    pub theta: T,
    pub n_eve: usize,
    pub spatial_mode: SpatialMode,
    /// When false, pilot symbols are not attacked.
    pub attacks_pilots: bool,
}

impl<T: Real> AttackConfig<T> {
    fn base(kind: AttackKind, alpha: T, theta: T) -> Self {
        Self {
            kind,
            alpha,
            theta,
            n_eve: 1,
            spatial_mode: SpatialMode::Single,
            attacks_pilots: true,
        }
    }

    pub fn none() -> Self {
        Self::base(AttackKind::None, T::zero(), T::zero())
    }

    pub fn narrowband(theta: T) -> Result<Self> {
        Self::base(AttackKind::NarrowbandJamming, T::zero(), theta).validated()
    }

    pub fn wideband(theta: T) -> Result<Self> {
        Self::base(AttackKind::WidebandJamming, T::zero(), theta).validated()
    }

    pub fn convolution(alpha: T, theta: T) -> Result<Self> {
        Self::base(AttackKind::Convolution, alpha, theta).validated()
    }

    pub fn convolution_bfsk(alpha: T, theta: T) -> Result<Self> {
        Self::base(AttackKind::ConvolutionBfsk, alpha, theta).validated()
    }

    pub fn with_eve_antennas(mut self, n_eve: usize, mode: SpatialMode) -> Result<Self> {
        self.n_eve = n_eve;
        self.spatial_mode = mode;
        self.validated()
    }

    pub fn with_attacks_pilots(mut self, on: bool) -> Self {
        self.attacks_pilots = on;
        self
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= T::zero() && self.alpha <= T::one()) {
            return Err(invalid("alpha", format!("must lie in [0, 1], got {}", self.alpha)));
        }
        let theta_ok = if self.kind == AttackKind::None {
            self.theta >= T::zero()
        } else {
            self.theta > T::zero()
        };
        if !theta_ok || !self.theta.is_finite() {
            return Err(invalid("theta", format!("must be > 0, got {}", self.theta)));
        }
        if self.n_eve == 0 {
            return Err(invalid("N_e", "Eve needs at least one antenna"));
        }
        if self.spatial_mode == SpatialMode::Single && self.n_eve != 1 {
            return Err(invalid(
                "N_e",
                format!("spatial mode `single` needs N_e = 1, got {}", self.n_eve),
            ));
        }
        Ok(())
    }

    /// Attack as seen by a pilot symbol.
    pub fn for_pilots(&self) -> Self {
        if self.attacks_pilots {
            *self
        } else {
            Self {
                kind: AttackKind::None,
                ..*self
            }
        }
    }

    /// E_Eve = θE_Alice.
    pub fn eve_energy(&self, e_alice: T) -> T {
        self.theta * e_alice
    }

    /// E_{Eve,C} = E_{Eve,main} = αθE_Alice.
    pub fn main_energy(&self, e_alice: T) -> T {
        self.alpha * self.theta * e_alice
    }

    /// E_{Eve,side} = ((1−α)/2)θE_Alice, per side tone.
    pub fn side_energy(&self, e_alice: T) -> T {
        (T::one() - self.alpha) / T::lit(2.0) * self.theta * e_alice
    }
}
