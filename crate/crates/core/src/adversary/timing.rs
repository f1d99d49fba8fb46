use crate::error::{invalid, Result};
use crate::scalar::Real;

/// First-significant-path delays of the three links, Eve's processing delay and the symbol period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingGeometry<T> {
    pub tau_ab: T,
    pub tau_ae: T,
    pub tau_eb: T,
    pub processing: T,
    pub symbol_period: T,
}

impl<T: Real> TimingGeometry<T> {
    pub fn new(tau_ab: T, tau_ae: T, tau_eb: T, processing: T, symbol_period: T) -> Result<Self> {
        for (name, v) in [
            ("tau_AB", tau_ab),
            ("tau_AE", tau_ae),
            ("tau_EB", tau_eb),
            ("t_p", processing),
        ] {
            if !(v >= T::zero()) {
                return Err(invalid(name, format!("delay must be >= 0, got {v}")));
            }
        }
        if !(symbol_period > T::zero()) {
            return Err(invalid("T", format!("symbol period must be > 0, got {symbol_period}")));
        }
        Ok(Self {
            tau_ab,
            tau_ae,
            tau_eb,
            processing,
            symbol_period,
        })
    }

    /// Arrival time of Eve's forwarded signal at Bob.
    pub fn relay_delay(&self) -> T {
        self.tau_ae + self.processing + self.tau_eb
    }
}

/// True iff the relayed copy lands inside the current symbol:
/// τ_AB < τ_AE + t_p + τ_EB < τ_AB + T.
pub fn check_timing_feasibility<T: Real>(g: &TimingGeometry<T>) -> bool {
    let d = g.relay_delay();
    g.tau_ab < d && d < g.tau_ab + g.symbol_period
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inside_window() {
        let g = TimingGeometry::new(1.0, 0.5, 0.5, 0.1, 1.0).unwrap();
        assert!(check_timing_feasibility(&g));
    }

    #[test]
    fn boundaries_are_excluded() {
        let g = TimingGeometry::new(1.0, 0.5, 0.5, 0.0, 1.0).unwrap();
        assert!(!check_timing_feasibility(&g));
        let g = TimingGeometry::new(1.0, 1.0, 0.5, 0.5, 1.0).unwrap();
        assert!(!check_timing_feasibility(&g));
        let g = TimingGeometry::new(1.0, 1.0, 1.0, 0.5, 1.0).unwrap();
        assert!(!check_timing_feasibility(&g));
    }

    #[test]
    fn rejects_negative_delays() {
        assert!(TimingGeometry::new(-1.0, 0.5, 0.5, 0.1, 1.0).is_err());
        assert!(TimingGeometry::new(1.0, 0.5, 0.5, 0.1, 0.0).is_err());
    }
}
