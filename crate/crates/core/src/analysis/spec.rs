use crate::adversary::{AttackConfig, AttackKind};
use crate::error::{invalid, Error, Result};
use crate::hop::{build_frequency_plan, FrequencyPlan};
use crate::modem::{LinkConfig, Scheme};
use crate::scalar::Real;

/// Carrier spacing Δ, tone offset β and band half-width W of the frequency plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanGeometry<T> {
    pub spacing: T,
    pub tone_offset: T,
    pub bandwidth: T,
}

impl<T: Real> Default for PlanGeometry<T> {
    fn default() -> Self {
        Self {
            spacing: T::one(),
            tone_offset: T::lit(0.2),
            bandwidth: T::lit(0.5),
        }
    }
}

/// One Monte Carlo experiment: link, attacker, E_b/N₀ grid, trial budget and seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec<T> {
    pub link: LinkConfig<T>,
    pub attack: AttackConfig<T>,
    /// E_b/N₀ grid in dB.
    pub grid_db: Vec<T>,
    /// Hop slots simulated per grid point; each carries `link.hop_length` bits.
    pub trials: u64,
    pub seed: u64,
    /// Share of the average received energy contributed by Eve, in percent (CDF experiments).
    pub eta: Option<T>,
    pub plan: PlanGeometry<T>,
}

impl<T: Real> ExperimentSpec<T> {
    pub fn new(link: LinkConfig<T>, attack: AttackConfig<T>, grid_db: Vec<T>, trials: u64, seed: u64) -> Self {
        Self {
            link,
            attack,
            grid_db,
            trials,
            seed,
            eta: None,
            plan: PlanGeometry::default(),
        }
    }

    pub fn with_eta(mut self, eta: T) -> Self {
        self.eta = Some(eta);
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.link.validate()?;
        self.attack.validate()?;
        if self.trials == 0 {
            return Err(invalid("trials", "need at least one trial per point"));
        }
        if self.grid_db.is_empty() {
            return Err(invalid("grid", "E_b/N0 grid is empty"));
        }
        if let Some(x) = self.grid_db.iter().find(|x| !x.is_finite()) {
            return Err(invalid("grid", format!("non-finite E_b/N0 {x}")));
        }
        if let Some(eta) = self.eta {
            if !(eta >= T::zero() && eta <= T::lit(100.0)) {
                return Err(invalid("eta", format!("must lie in [0, 100], got {eta}")));
            }
        }
        check_compatible(self.link.scheme, self.attack.kind)
    }

    pub fn frequency_plan(&self) -> Result<FrequencyPlan<T>> {
        build_frequency_plan(
            self.link.n_carriers,
            self.plan.spacing,
            self.plan.tone_offset,
            self.plan.bandwidth,
        )
    }

    /// (E_Alice, E_{Eve,C}) = (1 − η/100, η/100) for a unit total energy.
    pub fn eta_split(&self) -> Option<(T, T)> {
        let share = self.eta? / T::lit(100.0);
        Some((T::one() - share, share))
    }
}

/// Rejects attack/scheme pairs the simulator has no model for.
pub fn check_compatible(scheme: Scheme, kind: AttackKind) -> Result<()> {
    let ok = match kind {
        AttackKind::None | AttackKind::NarrowbandJamming | AttackKind::WidebandJamming => true,
        AttackKind::Convolution => !scheme.is_fsk(),
        AttackKind::ConvolutionBfsk => scheme.is_fsk(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::IncompatibleAttack {
            attack: kind.to_string(),
            scheme: scheme.to_string(),
        })
    }
}
