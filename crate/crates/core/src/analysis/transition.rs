use num_complex::Complex;
use rayon::prelude::*;

use super::table::{proportion_stderr, ResultRow, ResultTable};
use crate::error::{invalid, Error, Result};
use crate::numeric::{binary_entropy, standard_vec, RandomStream};
use crate::scalar::Real;

fn check_alpha_theta<T: Real>(alpha: T, theta: T) -> Result<()> {
    if !(alpha >= T::zero() && alpha <= T::one()) {
        return Err(invalid("alpha", format!("must lie in [0, 1], got {alpha}")));
    }
    if !(theta > T::zero()) || !theta.is_finite() {
        return Err(invalid("theta", format!("must be > 0, got {theta}")));
    }
    Ok(())
}

/// Averaged transition probability under the Gaussian surrogate: (2 + 2αθ)/(2 + αθ + θ).
pub fn closed_form_pcross<T: Real>(alpha: T, theta: T) -> Result<T> {
    check_alpha_theta(alpha, theta)?;
    let two = T::lit(2.0);
    let g = alpha * theta;
    Ok((two + two * g) / (two + g + theta))
}

/// Root of p_cross(α, θ) = ½ alongside the commonly quoted (θ − 2)/(2θ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSolution<T> {
    pub theta: T,
    /// (θ − 2)/(3θ), the root of the closed form.
    pub root: T,
    /// (θ − 2)/(2θ), the quoted optimum.
    pub stated: T,
    /// Closed-form p_cross at `stated`.
    pub stated_pcross: T,
}

/// Solves (2 + 2αθ)/(2 + αθ + θ) = ½ for α. Needs θ > 2.
pub fn solve_alpha_half<T: Real>(theta: T) -> Result<AlphaSolution<T>> {
    let two = T::lit(2.0);
    if !(theta > two) || !theta.is_finite() {
        return Err(Error::NoSolution(format!(
            "p_cross = 1/2 has no root with alpha in (0, 1] for theta = {theta} (need theta > 2)"
        )));
    }
    let stated = (theta - two) / (two * theta);
    Ok(AlphaSolution {
        theta,
        root: (theta - two) / (T::lit(3.0) * theta),
        stated,
        stated_pcross: closed_form_pcross(stated, theta)?,
    })
}

/// Monte Carlo p_cross under the Gaussian surrogate:
/// E_main = |h + √(αθ)·g|², E_side = ((1−α)/2)·θ·|g'|² with h, g, g' ~ 𝒞𝒩(0, 1).
pub fn surrogate_pcross<T: Real>(alpha: T, theta: T, trials: u64, seed: u64) -> Result<ResultRow> {
    check_alpha_theta(alpha, theta)?;
    if trials == 0 {
        return Err(invalid("trials", "need at least one trial"));
    }
    let main_amp = (alpha * theta).sqrt();
    let side_gain = (T::one() - alpha) / T::lit(2.0) * theta;
    let root = RandomStream::new(seed).child("surrogate");
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let v: Vec<Complex<T>> = standard_vec(&mut root.child_rng(t), 3);
            let main = (v[0] + v[1] * main_amp).norm_sqr();
            u64::from(main > side_gain * v[2].norm_sqr())
        })
        .sum();
    Ok(ResultRow::proportion(alpha.as_f64(), hits, trials))
}

/// Full-model p_cross and mutual information against α for one θ.
#[derive(Debug, Clone, PartialEq)]
pub struct MiCurve {
    pub theta: f64,
    pub pcross: ResultTable,
    /// I(b; b̂) = 1 − H(p̂), standard error by the delta method.
    pub mutual_information: ResultTable,
}

/// p_cross and 1 − H(p_cross) over an α grid under the full product-channel model without noise:
/// E_main = |h^(AB) + √(αθ)·h^(AE)·w·h^(EB)|² and E_side = ((1−α)/2)·θ·|h^(AE)·u·h^(EB)|².
///
/// Each trial's channel draw is shared by every (θ, α) pair.
pub fn mutual_information_sweep<T: Real>(thetas: &[T], alphas: &[T], trials: u64, seed: u64) -> Result<Vec<MiCurve>> {
    if trials == 0 {
        return Err(invalid("trials", "need at least one trial"));
    }
    if alphas.is_empty() {
        return Err(invalid("alpha", "alpha grid is empty"));
    }
    for &theta in thetas {
        for &alpha in alphas {
            check_alpha_theta(alpha, theta)?;
        }
    }
    let coeffs: Vec<(T, T)> = thetas
        .iter()
        .flat_map(|&theta| {
            alphas
                .iter()
                .map(move |&alpha| ((alpha * theta).sqrt(), (T::one() - alpha) / T::lit(2.0) * theta))
        })
        .collect();
    let root = RandomStream::new(seed).child("mi");
    let zeros = || vec![0u64; coeffs.len()];
    let counts = (0..trials)
        .into_par_iter()
        .fold(zeros, |mut acc, t| {
            let v: Vec<Complex<T>> = standard_vec(&mut root.child_rng(t), 5);
            let (h_ab, h_ae, h_eb, w, u) = (v[0], v[1], v[2], v[3], v[4]);
            let relay = h_ae * w * h_eb;
            let side = (h_ae * u * h_eb).norm_sqr();
            for (c, &(main_amp, side_gain)) in acc.iter_mut().zip(&coeffs) {
                *c += u64::from((h_ab + relay * main_amp).norm_sqr() > side_gain * side);
            }
            acc
        })
        .reduce(zeros, |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });

    thetas
        .iter()
        .enumerate()
        .map(|(i, &theta)| {
            let th = theta.as_f64();
            let mut pcross = ResultTable::new("pcross", format!("theta={th}"), seed).with("theta", th);
            let mut mi = ResultTable::new("mi", format!("theta={th}"), seed).with("theta", th);
            for (k, &alpha) in alphas.iter().enumerate() {
                let row = ResultRow::proportion(alpha.as_f64(), counts[i * alphas.len() + k], trials);
                mi.push(mi_row(row)?);
                pcross.push(row);
            }
            Ok(MiCurve {
                theta: th,
                pcross,
                mutual_information: mi,
            })
        })
        .collect()
}

fn mi_row(p: ResultRow) -> Result<ResultRow> {
    let q = p.estimate;
    let slope = if q > 0.0 && q < 1.0 {
        ((1.0 - q) / q).log2().abs()
    } else {
        0.0
    };
    Ok(ResultRow {
        x: p.x,
        estimate: 1.0 - binary_entropy(q)?,
        stderr: slope * proportion_stderr(q, p.trials),
        trials: p.trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert!((closed_form_pcross(1.0f64, 9.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((closed_form_pcross(0.0f64, 9.0).unwrap() - 2.0 / 11.0).abs() < 1e-15);
        assert!((closed_form_pcross(7.0f64 / 27.0, 9.0).unwrap() - 0.5).abs() < 1e-12);
        assert!(closed_form_pcross(1.5, 9.0).is_err());
        assert!(closed_form_pcross(0.5, 0.0).is_err());
    }

    #[test]
    fn alpha_solver() {
        let s = solve_alpha_half(9.0f64).unwrap();
        assert!((s.root - 7.0 / 27.0).abs() < 1e-12);
        assert!((s.stated - 7.0 / 18.0).abs() < 1e-12);
        // (2 + 7)/(2 + 3.5 + 9) = 18/29.
        assert!((s.stated_pcross - 18.0 / 29.0).abs() < 1e-12);
        assert!(matches!(solve_alpha_half(2.0f64), Err(Error::NoSolution(_))));
    }

    #[test]
    fn surrogate_matches_closed_form() {
        let r = surrogate_pcross(0.0, 9.0, 200_000, 3).unwrap();
        assert!((r.estimate - 2.0 / 11.0).abs() < 5.0 * r.stderr);
        assert_eq!(surrogate_pcross(1.0, 9.0, 1000, 3).unwrap().estimate, 1.0);
    }

    #[test]
    fn sweep_bounds() {
        let curves = mutual_information_sweep(&[9.0], &[0.2, 1.0], 20_000, 1).unwrap();
        let mi = &curves[0].mutual_information;
        assert!(mi.rows().iter().all(|r| (0.0..=1.0).contains(&r.estimate)));
        assert_eq!(curves[0].pcross.at(1.0).unwrap().estimate, 1.0);
        assert_eq!(mi.at(1.0).unwrap().estimate, 1.0);
    }
}
