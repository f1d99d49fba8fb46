use num_complex::Complex;
use rand_distr::Distribution;
use rayon::prelude::*;

use super::spec::ExperimentSpec;
use super::table::{proportion_stderr, ResultRow, ResultTable};
use crate::adversary::{waveform_scalars, SpatialMode};
use crate::error::{invalid, Result};
use crate::numeric::{standard_vec, CircularGaussian, EmpiricalCdf, RandomStream};
use crate::scalar::Real;

/// Minimum realizations behind an energy CDF.
pub const MIN_CDF_SAMPLES: u64 = 100_000;

fn par_samples<T: Real>(n: u64, f: impl Fn(u64) -> T + Sync + Send) -> Result<EmpiricalCdf<T>> {
    EmpiricalCdf::new((0..n).into_par_iter().map(f).collect())
}

/// Noiseless average received energy (1/N_r)·Σ_j |√E_Alice·h^(AB)_j + Σ_l √(E_{Eve,C}/N_e)·h^(EB)_{l,j}·h^(AE)_l·w_l|²
/// with (E_Alice, E_{Eve,C}) set by the spec's η. Draws `max(spec.trials, 10^5)` realizations.
pub fn received_energy_samples<T: Real>(
    spec: &ExperimentSpec<T>,
    n_rx: usize,
    n_eve: usize,
    mode: SpatialMode,
) -> Result<EmpiricalCdf<T>> {
    let (e_alice, e_eve) = spec
        .eta_split()
        .ok_or_else(|| invalid("eta", "energy CDF experiments need eta"))?;
    spec.validate()?;
    if n_rx == 0 || n_eve == 0 {
        return Err(invalid("antennas", "N_r and N_e must be >= 1"));
    }
    if mode == SpatialMode::Single && n_eve != 1 {
        return Err(invalid("N_e", "spatial mode `single` needs N_e = 1"));
    }
    let root = RandomStream::new(spec.seed).child("energy_cdf");
    let a = e_alice.sqrt();
    let c = (e_eve / T::count(n_eve)).sqrt();
    let inv = T::one() / T::count(n_rx);
    par_samples(spec.trials.max(MIN_CDF_SAMPLES), |t| {
        let s = root.child(t);
        let h_ab: Vec<Complex<T>> = standard_vec(&mut s.child_rng("h_AB"), n_rx);
        let h_ae: Vec<Complex<T>> = standard_vec(&mut s.child_rng("h_AE"), n_eve);
        let h_eb: Vec<Complex<T>> = standard_vec(&mut s.child_rng("h_EB"), n_eve * n_rx);
        let w: Vec<Complex<T>> = waveform_scalars(&mut s.child_rng("w_k"), n_eve, mode);
        let total: T = (0..n_rx)
            .map(|j| {
                let relay: Complex<T> = (0..n_eve).map(|l| h_eb[l * n_rx + j] * h_ae[l] * w[l]).sum();
                (h_ab[j] * a + relay * c).norm_sqr()
            })
            .sum();
        total * inv
    })
}

/// Empirical CDF of the average received energy evaluated at `grid`.
pub fn cdf_received_energy<T: Real>(
    spec: &ExperimentSpec<T>,
    n_rx: usize,
    n_eve: usize,
    mode: SpatialMode,
    grid: &[T],
) -> Result<ResultTable> {
    let cdf = received_energy_samples(spec, n_rx, n_eve, mode)?;
    let eta = spec.eta.map_or(0.0, |e| e.as_f64());
    let table = ResultTable::new(
        "cdf",
        format!("eta={eta} N_r={n_rx} N_e={n_eve} {}", mode.name()),
        spec.seed,
    )
    .with("eta", eta)
    .with("N_r", n_rx)
    .with("N_e", n_eve)
    .with("spatial_mode", mode.name())
    .with("mean", cdf.mean());
    Ok(cdf_table(table, &cdf, grid))
}

fn cdf_table<T: Real>(mut table: ResultTable, cdf: &EmpiricalCdf<T>, grid: &[T]) -> ResultTable {
    let n = cdf.len() as u64;
    for &x in grid {
        table.push(ResultRow::proportion(x.as_f64(), cdf.count_le(x) as u64, n));
    }
    table
}

/// |Σ_l (1/√N_e)·h^(EB)_l·w_l·h^(AE)_l|² with independent unit-variance factors.
pub fn product_channel_samples<T: Real>(n_eve: usize, trials: u64, seed: u64) -> Result<EmpiricalCdf<T>> {
    if n_eve == 0 {
        return Err(invalid("N_e", "Eve needs at least one antenna"));
    }
    let root = RandomStream::new(seed).child("product").child(n_eve);
    let scale = T::one() / T::count(n_eve);
    par_samples(trials.max(1), |t| {
        let mut rng = root.child_rng(t);
        let v: Vec<Complex<T>> = standard_vec(&mut rng, 3 * n_eve);
        let sum: Complex<T> = v.chunks_exact(3).map(|f| f[0] * f[1] * f[2]).sum();
        sum.norm_sqr() * scale
    })
}

/// One CDF table per N_e, evaluated at `grid`.
pub fn multi_eve_product_cdf<T: Real>(
    n_eves: &[usize],
    trials: u64,
    seed: u64,
    grid: &[T],
) -> Result<Vec<ResultTable>> {
    n_eves
        .iter()
        .map(|&n| {
            let cdf = product_channel_samples::<T>(n, trials, seed)?;
            let t = ResultTable::new("cdf", format!("product N_e={n}"), seed)
                .with("N_e", n)
                .with("mean", cdf.mean());
            Ok(cdf_table(t, &cdf, grid))
        })
        .collect()
}

/// Monte Carlo estimates of Prob(R_Δ/N_r > −ε) per receive-antenna count.
#[derive(Debug, Clone, PartialEq)]
pub struct LlnReport {
    pub epsilon: f64,
    pub trials: u64,
    /// (N_r, estimate, standard error), in the order tested.
    pub points: Vec<(usize, f64, f64)>,
    /// Smallest tested N_r whose estimate reaches 1 − ε.
    pub implied_n_rx: Option<usize>,
}

impl LlnReport {
    /// Largest drop between consecutive estimates (zero when non-decreasing).
    pub fn max_decrease(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[0].1 - w[1].1).max(0.0))
            .fold(0.0, f64::max)
    }

    pub fn table(&self, seed: u64) -> ResultTable {
        let mut t = ResultTable::new("lln", format!("epsilon={}", self.epsilon), seed).with("epsilon", self.epsilon);
        for &(n, p, se) in &self.points {
            t.push(ResultRow {
                x: n as f64,
                estimate: p,
                stderr: se,
                trials: self.trials,
            });
        }
        t
    }
}

/// Samples R_Δ = Σ_j |√E_A·h_j + √E_C·h^(AE)·w·h^(EB)_j|² − Σ_j |√E_A·h_j|² without noise.
pub fn lln_check<T: Real>(
    n_rx_list: &[usize],
    epsilon: T,
    trials: u64,
    e_alice: T,
    e_eve_c: T,
    seed: u64,
) -> Result<LlnReport> {
    if !(epsilon > T::zero()) {
        return Err(invalid("epsilon", format!("must be > 0, got {epsilon}")));
    }
    if trials == 0 {
        return Err(invalid("trials", "need at least one trial"));
    }
    if !(e_alice >= T::zero() && e_eve_c >= T::zero()) {
        return Err(invalid("energy", "E_Alice and E_Eve,C must be >= 0"));
    }
    let a = e_alice.sqrt();
    let c = e_eve_c.sqrt();
    let mut points = Vec::with_capacity(n_rx_list.len());
    for &n in n_rx_list {
        if n == 0 {
            return Err(invalid("N_r", "need at least one receive antenna"));
        }
        let root = RandomStream::new(seed).child("lln").child(n);
        let hits: u64 = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = root.child_rng(t);
                let g: Complex<T> = standard_vec::<T, _>(&mut rng, 2).into_iter().product();
                let d = CircularGaussian::<T>::standard();
                let mut delta = T::zero();
                for _ in 0..n {
                    let h = d.sample(&mut rng);
                    let heb = d.sample(&mut rng);
                    let clean = h * a;
                    delta = delta + (clean + g * heb * c).norm_sqr() - clean.norm_sqr();
                }
                u64::from(delta / T::count(n) > -epsilon)
            })
            .sum();
        let p = hits as f64 / trials as f64;
        points.push((n, p, proportion_stderr(p, trials)));
    }
    let target = 1.0 - epsilon.as_f64();
    let implied_n_rx = points.iter().find(|p| p.1 >= target).map(|p| p.0);
    Ok(LlnReport {
        epsilon: epsilon.as_f64(),
        trials,
        points,
        implied_n_rx,
    })
}
