use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Index of a carrier in 𝓕, zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Carrier(pub usize);

/// Index of a tone in 𝓣, zero-based.
///
/// Tone `2i` is `f_i − β` and tone `2i + 1` is `f_i + β`, so tone indices are
/// ordered by frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tone(pub usize);

impl Tone {
    pub fn carrier(self) -> Carrier {
        Carrier(self.0 / 2)
    }

    pub fn is_upper(self) -> bool {
        self.0 % 2 == 1
    }

    /// The other tone on the same carrier.
    pub fn partner(self) -> Tone {
        Tone(self.0 ^ 1)
    }
}

/// Carrier set 𝓕 with spacing Δ, FSK offset β and narrowband bandwidth W.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPlan<T> {
    n_carriers: usize,
    first: T,
    spacing: T,
    tone_offset: T,
    bandwidth: T,
}

impl<T: Real> FrequencyPlan<T> {
    /// Equally spaced carriers starting at zero.
    pub fn new(n_carriers: usize, spacing: T, tone_offset: T, bandwidth: T) -> Result<Self> {
        Self::with_origin(n_carriers, T::zero(), spacing, tone_offset, bandwidth)
    }

    pub fn with_origin(n_carriers: usize, first: T, spacing: T, tone_offset: T, bandwidth: T) -> Result<Self> {
        if n_carriers == 0 {
            return Err(invalid("N", "need at least one carrier"));
        }
        if !(bandwidth > T::zero()) {
            return Err(invalid("W", format!("must be > 0, got {bandwidth}")));
        }
        if !(tone_offset > T::zero()) {
            return Err(invalid("beta", format!("violates 0 < beta, got {tone_offset}")));
        }
        if !(spacing > bandwidth) {
            return Err(invalid(
                "delta",
                format!("violates delta > W (delta = {spacing}, W = {bandwidth})"),
            ));
        }
        if !(tone_offset < spacing / T::lit(2.0)) {
            return Err(invalid(
                "beta",
                format!("violates beta < delta/2 (beta = {tone_offset}, delta = {spacing})"),
            ));
        }
        Ok(Self {
            n_carriers,
            first,
            spacing,
            tone_offset,
            bandwidth,
        })
    }

    pub fn n_carriers(&self) -> usize {
        self.n_carriers
    }

    pub fn n_tones(&self) -> usize {
        2 * self.n_carriers
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn tone_offset(&self) -> T {
        self.tone_offset
    }

    pub fn bandwidth(&self) -> T {
        self.bandwidth
    }

    pub fn carrier_frequency(&self, c: Carrier) -> T {
        self.first + T::count(c.0) * self.spacing
    }

    pub fn tone_frequency(&self, t: Tone) -> T {
        let f = self.carrier_frequency(t.carrier());
        if t.is_upper() {
            f + self.tone_offset
        } else {
            f - self.tone_offset
        }
    }

    pub fn tone(&self, c: Carrier, upper: bool) -> Tone {
        Tone(2 * c.0 + usize::from(upper))
    }

    pub fn carriers(&self) -> impl Iterator<Item = Carrier> {
        (0..self.n_carriers).map(Carrier)
    }

    pub fn tones(&self) -> impl Iterator<Item = Tone> {
        (0..self.n_tones()).map(Tone)
    }

    fn same_frequency(&self, a: T, b: T) -> bool {
        (a - b).abs() <= self.spacing * T::lit(1e-9)
    }

    /// Tone of 𝓣 sitting exactly at `f`, if any.
    pub fn tone_at(&self, f: T) -> Option<Tone> {
        let (mut lo, mut hi) = (0, self.n_tones());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.tone_frequency(Tone(mid)) < f {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        [lo.checked_sub(1), Some(lo)]
            .into_iter()
            .flatten()
            .filter(|&i| i < self.n_tones())
            .map(Tone)
            .find(|&t| self.same_frequency(self.tone_frequency(t), f))
    }

    /// Tones of 𝓣 at `f_t + 2β` and `f_t − 2β`, where present.
    pub fn side_tones(&self, t: Tone) -> (Option<Tone>, Option<Tone>) {
        let f = self.tone_frequency(t);
        let two_beta = self.tone_offset * T::lit(2.0);
        (self.tone_at(f + two_beta), self.tone_at(f - two_beta))
    }

    /// True when `other` lies at `f_t ± 2β`.
    pub fn is_side_adjacent(&self, t: Tone, other: Tone) -> bool {
        let d = (self.tone_frequency(t) - self.tone_frequency(other)).abs();
        self.same_frequency(d, self.tone_offset * T::lit(2.0))
    }
}

/// Builds a plan with carriers at `0, Δ, 2Δ, …`.
pub fn build_frequency_plan<T: Real>(
    n_carriers: usize,
    spacing: T,
    tone_offset: T,
    bandwidth: T,
) -> Result<FrequencyPlan<T>> {
    FrequencyPlan::new(n_carriers, spacing, tone_offset, bandwidth)
}
