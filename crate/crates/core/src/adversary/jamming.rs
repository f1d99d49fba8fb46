use num_complex::Complex;
use rand::Rng;
use rand_distr::Distribution;

use crate::error::{invalid, Result};
use crate::hop::Carrier;
use crate::numeric::{CircularGaussian, RandomStream};
use crate::scalar::Real;

/// Jamming noise landing on one observed band, per Bob antenna.
#[derive(Debug, Clone, PartialEq)]
pub struct JamDraw<T> {
    pub hit: bool,
    pub noise: Vec<Complex<T>>,
}

impl<T: Real> JamDraw<T> {
    pub fn miss(n_rx: usize) -> Self {
        Self {
            hit: false,
            noise: vec![Complex::new(T::zero(), T::zero()); n_rx],
        }
    }

    fn draw(stream: &RandomStream, variance: T, n_rx: usize) -> Result<Self> {
        let d = CircularGaussian::new(variance)?;
        let mut rng = stream.child_rng("jam");
        Ok(Self {
            hit: true,
            noise: (0..n_rx).map(|_| d.sample(&mut rng)).collect(),
        })
    }
}

fn check<T: Real>(n_bands: usize, theta: T, e_alice: T) -> Result<()> {
    if n_bands == 0 {
        return Err(invalid("N", "need at least one band"));
    }
    if !(theta >= T::zero()) {
        return Err(invalid("theta", format!("must be >= 0, got {theta}")));
    }
    if !(e_alice >= T::zero()) {
        return Err(invalid("E_Alice", format!("must be >= 0, got {e_alice}")));
    }
    Ok(())
}

/// Band hit by the narrowband jammer for this symbol, uniform over all `n_bands`.
pub fn nj_target(stream: &RandomStream, n_bands: usize) -> Carrier {
    Carrier(stream.child_rng("nj_band").random_range(0..n_bands))
}

/// Narrowband jamming: 𝒞𝒩(0, θE_Alice) at each antenna iff the jammed band is `active`.
pub fn nj_contribution<T: Real>(
    stream: &RandomStream,
    n_bands: usize,
    theta: T,
    e_alice: T,
    active: Carrier,
    n_rx: usize,
) -> Result<JamDraw<T>> {
    check(n_bands, theta, e_alice)?;
    nj_hit(stream, nj_target(stream, n_bands), theta, e_alice, active, n_rx)
}

/// Narrowband jamming noise on band `observed` once the jammed band `target` is known.
/// Use one target per symbol and a distinct `stream` per observed tone.
pub fn nj_hit<T: Real>(
    stream: &RandomStream,
    target: Carrier,
    theta: T,
    e_alice: T,
    observed: Carrier,
    n_rx: usize,
) -> Result<JamDraw<T>> {
    check(1, theta, e_alice)?;
    if target != observed {
        return Ok(JamDraw::miss(n_rx));
    }
    JamDraw::draw(stream, theta * e_alice, n_rx)
}

/// Wideband jamming noise on one band: 𝒞𝒩(0, θE_Alice/N) at each antenna.
/// Pass a distinct `stream` per observed band so bands see independent noise.
pub fn wj_contribution<T: Real>(
    stream: &RandomStream,
    n_bands: usize,
    theta: T,
    e_alice: T,
    n_rx: usize,
) -> Result<JamDraw<T>> {
    check(n_bands, theta, e_alice)?;
    JamDraw::draw(stream, theta * e_alice / T::count(n_bands), n_rx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_band_always_hit() {
        let root = RandomStream::new(1);
        for t in 0..100u64 {
            assert!(nj_contribution(&root.child(t), 1, 9.0, 1.0, Carrier(0), 2).unwrap().hit);
        }
    }

    #[test]
    fn hit_rate_is_one_over_n() {
        let root = RandomStream::new(2);
        let n = 1_000_000u64;
        let hits = (0..n)
            .filter(|&t| nj_target(&root.child(t), 1024) == Carrier(17))
            .count() as f64;
        let p = 1.0 / 1024.0;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((hits / n as f64 - p).abs() <= 4.0 * se, "{}", hits / n as f64);
    }

    #[test]
    fn zero_theta_adds_nothing() {
        let s = RandomStream::new(3);
        let d = nj_contribution(&s, 1, 0.0, 1.0, Carrier(0), 3).unwrap();
        assert!(d.noise.iter().all(|v| v.norm_sqr() == 0.0));
        let d = wj_contribution(&s, 16, 0.0, 1.0, 3).unwrap();
        assert!(d.noise.iter().all(|v| v.norm_sqr() == 0.0));
    }

    #[test]
    fn wideband_variance() {
        let root = RandomStream::new(4);
        let n = 200_000u64;
        let m: f64 = (0..n)
            .map(|t| wj_contribution(&root.child(t), 1024, 9.0, 1.0, 1).unwrap().noise[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((m / (9.0 / 1024.0) - 1.0).abs() < 0.01, "{m}");
    }

    #[test]
    fn wideband_single_band_matches_narrowband_marginal() {
        let root = RandomStream::new(5);
        let n = 200_000u64;
        let (mut a, mut b) = (0.0f64, 0.0f64);
        for t in 0..n {
            a += nj_contribution(&root.child(t), 1, 9.0, 1.0, Carrier(0), 1)
                .unwrap()
                .noise[0]
                .norm_sqr();
            b += wj_contribution(&root.child(t).child("w"), 1, 9.0, 1.0, 1)
                .unwrap()
                .noise[0]
                .norm_sqr();
        }
        assert!((a / b - 1.0).abs() < 0.02, "{a} {b}");
    }
}
