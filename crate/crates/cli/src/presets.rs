//! Figure presets: each writes one CSV per curve plus a JSON manifest.

use std::path::{Path, PathBuf};
use std::time::Instant;

use fhca::adversary::{check_timing_feasibility, AttackConfig, SpatialMode, TimingGeometry};
use fhca::analysis::{
    cdf_received_energy, closed_form_pcross, lln_check, multi_eve_product_cdf, mutual_information_sweep, run_ber,
    solve_alpha_half, ExperimentSpec, ResultRow, ResultTable,
};
use fhca::modem::{EnergyNormalization, LinkConfig, Scheme, ThresholdMethod};
use fhca::{Attack, Link};

use crate::config::{default_alphas, default_thetas, parse_list, Overrides, DEFAULT_THETA};
use crate::csv::emit_csv;
use crate::error::{CliError, CliResult};
use crate::manifest::{digest, version, RunManifest};

/// A named figure preset and its default trial budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub description: &'static str,
    /// Trials per point (BER) or realizations per curve (CDF, MI, LLN) before `--trials-scale`.
    pub trials: u64,
    /// Whether `attack.alpha` may be overridden.
    pub single_alpha: bool,
}

pub const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "fig2",
        description: "coherent BPSK under NJ, WJ and CA (alpha=1), N=1024, N_r in {2,10}",
        trials: 1_000_000,
        single_alpha: true,
    },
    PresetInfo {
        name: "fig3",
        description: "CDF of average received energy, eta in {10,50,90}%, N_r in {1,2,10}",
        trials: 100_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "fig4",
        description: "CDF of the normalized product channel for N_e in {1,2,4,8}",
        trials: 1_000_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "fig5",
        description: "CDF of average received energy, N_r=10, eta=90%, single/randomized/fixed Eve",
        trials: 100_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "fig6",
        description: "OOK under CA (alpha=1) with empirical and analytic thresholds, N=128",
        trials: 1_000_000,
        single_alpha: true,
    },
    PresetInfo {
        name: "fig7",
        description: "OOK under CA (alpha=1) with empirical and analytic thresholds, N=1024",
        trials: 1_000_000,
        single_alpha: true,
    },
    PresetInfo {
        name: "fig8",
        description: "mutual information and p_cross against alpha for theta in {5,9,15}",
        trials: 1_000_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "fig9",
        description: "OOK under CA with multi-antenna Eve, N=1024, N_r=2",
        trials: 1_000_000,
        single_alpha: true,
    },
    PresetInfo {
        name: "fig10",
        description: "OOK under wideband jamming, attack-ignorant and attack-aware thresholds, N in {128,1024}",
        trials: 1_000_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "fig11",
        description: "traditional BFSK under CA for several alpha, N=1024",
        trials: 1_000_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "fig12",
        description: "traditional BFSK under CA at the Gaussian-surrogate alpha values, N=1024",
        trials: 1_000_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "fig13",
        description: "EBFSK vs BFSK under CA (alpha=0.25) and EBFSK under WJ, N in {64,1024}",
        trials: 1_000_000,
        single_alpha: true,
    },
    PresetInfo {
        name: "fig14",
        description: "OOK (CA alpha=1) vs EBFSK (CA alpha=0.15) at equal energy per bit, N=1024",
        trials: 1_000_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "lln",
        description: "Prob(R_delta/N_r > -0.1) for N_r in {1,4,16,64,256}",
        trials: 10_000,
        single_alpha: false,
    },
    PresetInfo {
        name: "timing",
        description: "relay timing feasibility against Eve's processing delay",
        trials: 1,
        single_alpha: false,
    },
];

pub fn preset_info(name: &str) -> Option<&'static PresetInfo> {
    PRESETS.iter().find(|p| p.name == name)
}

/// Run-wide settings shared by presets and config runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub out_dir: PathBuf,
    pub trials_scale: f64,
    pub overrides: Overrides,
}

impl RunOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self {
            seed: 1,
            threads: 0,
            out_dir: out_dir.into(),
            trials_scale: 1.0,
            overrides: Overrides::default(),
        }
    }

    pub(crate) fn scaled(&self, base: u64) -> u64 {
        ((base as f64 * self.trials_scale).round() as u64).max(1)
    }
}

type Curves = Vec<(String, ResultTable)>;

struct Ctx<'a> {
    opts: &'a RunOptions,
    trials: u64,
}

impl Ctx<'_> {
    fn grid(&self) -> Vec<f64> {
        self.opts
            .overrides
            .grid_db
            .clone()
            .unwrap_or_else(|| parse_list("0:30:5").expect("range"))
    }

    fn theta(&self) -> f64 {
        self.opts.overrides.theta.unwrap_or(DEFAULT_THETA)
    }

    fn alpha(&self, default: f64) -> f64 {
        self.opts.overrides.alpha.unwrap_or(default)
    }

    fn link(&self, scheme: Scheme, n: usize, n_rx: usize) -> Link {
        let mut l = LinkConfig::new(scheme);
        l.n_carriers = n;
        l.n_rx = n_rx;
        if let Some(v) = self.opts.overrides.sigma2_bob {
            l.sigma2_bob = v;
        }
        if let Some(v) = self.opts.overrides.sigma2_eve {
            l.sigma2_eve = v;
        }
        l
    }

    fn ber(&self, name: String, link: Link, attack: Attack) -> CliResult<(String, ResultTable)> {
        let spec = ExperimentSpec::new(link, attack, self.grid(), self.trials, self.opts.seed);
        Ok((name, run_ber(&spec)?))
    }

    fn eta_spec(&self, eta: f64) -> fhca::Experiment {
        ExperimentSpec::new(
            LinkConfig::new(Scheme::Ook),
            AttackConfig::none(),
            vec![0.0],
            self.trials,
            self.opts.seed,
        )
        .with_eta(eta)
    }
}

fn ca(alpha: f64, theta: f64) -> CliResult<Attack> {
    Ok(AttackConfig::convolution(alpha, theta)?)
}

fn ca_bfsk(alpha: f64, theta: f64) -> CliResult<Attack> {
    Ok(AttackConfig::convolution_bfsk(alpha, theta)?)
}

fn fig2(c: &Ctx) -> CliResult<Curves> {
    let th = c.theta();
    let mut out = Vec::new();
    for nr in [2, 10] {
        let link = c.link(Scheme::BpskCoherent, 1024, nr);
        for (tag, attack) in [
            ("none", AttackConfig::none()),
            ("nj", AttackConfig::narrowband(th)?),
            ("wj", AttackConfig::wideband(th)?),
            ("ca", ca(c.alpha(1.0), th)?),
        ] {
            out.push(c.ber(format!("fig2_bpsk_{tag}_nr{nr}"), link, attack)?);
        }
    }
    Ok(out)
}

fn cdf_grid() -> Vec<f64> {
    parse_list("0:4:0.02").expect("range")
}

fn fig3(c: &Ctx) -> CliResult<Curves> {
    let mut out = Vec::new();
    for eta in [10.0, 50.0, 90.0] {
        for nr in [1, 2, 10] {
            let t = cdf_received_energy(&c.eta_spec(eta), nr, 1, SpatialMode::Single, &cdf_grid())?;
            out.push((format!("fig3_cdf_eta{eta}_nr{nr}"), t));
        }
    }
    Ok(out)
}

fn fig4(c: &Ctx) -> CliResult<Curves> {
    let grid = parse_list("0:0.1:0.002, 0.12:4:0.02").expect("range");
    let n_eves = [1, 2, 4, 8];
    let tables = multi_eve_product_cdf(&n_eves, c.trials, c.opts.seed, &grid)?;
    Ok(n_eves
        .iter()
        .zip(tables)
        .map(|(n, t)| (format!("fig4_product_ne{n}"), t))
        .collect())
}

fn fig5(c: &Ctx) -> CliResult<Curves> {
    let spec = c.eta_spec(90.0);
    let grid = parse_list("0:3:0.01").expect("range");
    let mut out = vec![(
        "fig5_cdf_single_ne1".to_string(),
        cdf_received_energy(&spec, 10, 1, SpatialMode::Single, &grid)?,
    )];
    for mode in [SpatialMode::Randomized, SpatialMode::Fixed] {
        for ne in [2, 20] {
            let t = cdf_received_energy(&spec, 10, ne, mode, &grid)?;
            out.push((format!("fig5_cdf_{}_ne{ne}", mode.name()), t));
        }
    }
    Ok(out)
}

fn ook_vs_ca(c: &Ctx, fig: &str, n: usize) -> CliResult<Curves> {
    let th = c.theta();
    let attack = ca(c.alpha(1.0), th)?;
    let mut out = Vec::new();
    for nr in [2, 10] {
        let mut ook = c.link(Scheme::Ook, n, nr);
        out.push(c.ber(format!("{fig}_ook_none_nr{nr}"), ook, AttackConfig::none())?);
        out.push(c.ber(format!("{fig}_ook_ca_empirical_nr{nr}"), ook, attack)?);
        ook.threshold = ThresholdMethod::AnalyticApproximate;
        out.push(c.ber(format!("{fig}_ook_ca_analytic_nr{nr}"), ook, attack)?);
        out.push(c.ber(
            format!("{fig}_bpsk_ca_nr{nr}"),
            c.link(Scheme::BpskCoherent, n, nr),
            attack,
        )?);
    }
    Ok(out)
}

fn fig9(c: &Ctx) -> CliResult<Curves> {
    let th = c.theta();
    let ook = c.link(Scheme::Ook, 1024, 2);
    let attack = ca(c.alpha(1.0), th)?;
    let mut out = vec![
        c.ber("fig9_ook_none".into(), ook, AttackConfig::none())?,
        c.ber("fig9_ook_ca_single_ne1".into(), ook, attack)?,
    ];
    for mode in [SpatialMode::Randomized, SpatialMode::Fixed] {
        for ne in [2, 4] {
            let a = attack.with_eve_antennas(ne, mode)?;
            out.push(c.ber(format!("fig9_ook_ca_{}_ne{ne}", mode.name()), ook, a)?);
        }
    }
    Ok(out)
}

fn fig10(c: &Ctx) -> CliResult<Curves> {
    let wj = AttackConfig::wideband(c.theta())?;
    let mut out = Vec::new();
    for n in [128, 1024] {
        let mut ook = c.link(Scheme::Ook, n, 2);
        out.push(c.ber(format!("fig10_ook_none_n{n}"), ook, AttackConfig::none())?);
        out.push(c.ber(format!("fig10_ook_wj_aware_n{n}"), ook, wj)?);
        ook.threshold = ThresholdMethod::AttackIgnorant;
        out.push(c.ber(format!("fig10_ook_wj_ignorant_n{n}"), ook, wj)?);
    }
    Ok(out)
}

fn fig11(c: &Ctx) -> CliResult<Curves> {
    let link = c.link(Scheme::Bfsk, 1024, 1);
    let mut out = vec![c.ber("fig11_bfsk_none".into(), link, AttackConfig::none())?];
    for alpha in [0.0, 0.1, 0.15, 0.25, 0.5, 1.0] {
        out.push(c.ber(format!("fig11_bfsk_ca_alpha{alpha}"), link, ca_bfsk(alpha, c.theta())?)?);
    }
    Ok(out)
}

fn fig12(c: &Ctx) -> CliResult<Curves> {
    let th = c.theta();
    let link = c.link(Scheme::Bfsk, 1024, 1);
    let s = solve_alpha_half(th)?;
    let mut closed = ResultTable::new("pcross", format!("closed form theta={th}"), c.opts.seed).with("theta", th);
    for alpha in default_alphas().into_iter().chain([s.root, s.stated]) {
        let p = closed_form_pcross(alpha, th)?;
        closed.push(ResultRow {
            x: alpha,
            estimate: p,
            stderr: 0.0,
            trials: 0,
        });
    }
    Ok(vec![
        c.ber("fig12_bfsk_none".into(), link, AttackConfig::none())?,
        c.ber("fig12_bfsk_ca_alpha_root".into(), link, ca_bfsk(s.root, th)?)?,
        c.ber("fig12_bfsk_ca_alpha_stated".into(), link, ca_bfsk(s.stated, th)?)?,
        ("fig12_pcross_closed_form".into(), closed),
    ])
}

fn fig13(c: &Ctx) -> CliResult<Curves> {
    let th = c.theta();
    let attack = ca_bfsk(c.alpha(0.25), th)?;
    let mut out = Vec::new();
    for n in [64, 1024] {
        let bfsk = c.link(Scheme::Bfsk, n, 1);
        let ebfsk = c.link(Scheme::Ebfsk, n, 1);
        out.push(c.ber(format!("fig13_bfsk_none_n{n}"), bfsk, AttackConfig::none())?);
        out.push(c.ber(format!("fig13_bfsk_ca_n{n}"), bfsk, attack)?);
        out.push(c.ber(format!("fig13_ebfsk_ca_n{n}"), ebfsk, attack)?);
        out.push(c.ber(format!("fig13_ebfsk_wj_n{n}"), ebfsk, AttackConfig::wideband(th)?)?);
    }
    Ok(out)
}

fn fig14(c: &Ctx) -> CliResult<Curves> {
    let th = c.theta();
    let mut out = Vec::new();
    for nr in [1, 2] {
        let mut ook = c.link(Scheme::Ook, 1024, nr);
        let mut ebfsk = c.link(Scheme::Ebfsk, 1024, nr);
        ook.normalization = EnergyNormalization::EqualEnergyPerBit;
        ebfsk.normalization = EnergyNormalization::EqualEnergyPerBit;
        out.push(c.ber(format!("fig14_ook_ca_nr{nr}"), ook, ca(1.0, th)?)?);
        out.push(c.ber(format!("fig14_ebfsk_ca_nr{nr}"), ebfsk, ca_bfsk(0.15, th)?)?);
    }
    Ok(out)
}

fn fig8(c: &Ctx) -> CliResult<Curves> {
    let thetas = match c.opts.overrides.theta {
        Some(t) => vec![t],
        None => default_thetas(),
    };
    let mut out = Vec::new();
    for curve in mutual_information_sweep(&thetas, &default_alphas(), c.trials, c.opts.seed)? {
        out.push((format!("fig8_mi_theta{}", curve.theta), curve.mutual_information));
        out.push((format!("fig8_pcross_theta{}", curve.theta), curve.pcross));
    }
    Ok(out)
}

fn lln(c: &Ctx) -> CliResult<Curves> {
    let r = lln_check(&[1, 4, 16, 64, 256], 0.1, c.trials, 1.0, 1.0, c.opts.seed)?;
    let mut t = r.table(c.opts.seed);
    if let Some(n) = r.implied_n_rx {
        t = t.with("implied_N_r", n);
    }
    Ok(vec![("lln_probability".into(), t)])
}

fn timing(c: &Ctx) -> CliResult<Curves> {
    let mut t = ResultTable::new("timing", "tau_AB=1 tau_AE=0.5 tau_EB=0.5 T=1", c.opts.seed);
    for tp in parse_list("0:1.5:0.05").expect("range") {
        let g = TimingGeometry::new(1.0, 0.5, 0.5, tp, 1.0)?;
        t.push(ResultRow {
            x: tp,
            estimate: if check_timing_feasibility(&g) { 1.0 } else { 0.0 },
            stderr: 0.0,
            trials: 1,
        });
    }
    Ok(vec![("timing_feasibility".into(), t)])
}

fn curves(name: &str, c: &Ctx) -> CliResult<Curves> {
    match name {
        "fig2" => fig2(c),
        "fig3" => fig3(c),
        "fig4" => fig4(c),
        "fig5" => fig5(c),
        "fig6" => ook_vs_ca(c, "fig6", 128),
        "fig7" => ook_vs_ca(c, "fig7", 1024),
        "fig8" => fig8(c),
        "fig9" => fig9(c),
        "fig10" => fig10(c),
        "fig11" => fig11(c),
        "fig12" => fig12(c),
        "fig13" => fig13(c),
        "fig14" => fig14(c),
        "lln" => lln(c),
        "timing" => timing(c),
        _ => Err(CliError::Validation(format!("unknown preset `{name}`"))),
    }
}

/// Runs `f` on a pool of `threads` workers (0: rayon's default).
pub(crate) fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> CliResult<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(pool.install(f))
}

/// Realizations behind a table: CDF rows all share one sample set.
fn table_trials(t: &ResultTable) -> u64 {
    if t.kind == "cdf" {
        t.rows().iter().map(|r| r.trials).max().unwrap_or(0)
    } else {
        t.total_trials()
    }
}

/// Writes every table as `<out_dir>/<name>.csv` and the manifest as `<out_dir>/<stem>.manifest.json`.
pub(crate) fn write_outputs(
    stem: &str,
    tables: &Curves,
    opts: &RunOptions,
    canonical: &str,
    started: Instant,
) -> CliResult<RunManifest> {
    let dir: &Path = &opts.out_dir;
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut outputs = Vec::with_capacity(tables.len());
    for (name, table) in tables {
        let path = dir.join(format!("{name}.csv"));
        emit_csv(table, &path)?;
        outputs.push(path.display().to_string());
    }
    let manifest = RunManifest {
        config_digest: digest(canonical),
        seed: opts.seed,
        version: version(),
        outputs,
        trials: tables.iter().map(|(_, t)| table_trials(t)).sum(),
        wall_seconds: started.elapsed().as_secs_f64(),
    };
    manifest.write(&dir.join(format!("{stem}.manifest.json")))?;
    Ok(manifest)
}

/// Runs a figure preset and writes its CSVs and manifest.
pub fn run_preset(name: &str, opts: &RunOptions) -> CliResult<RunManifest> {
    let info = preset_info(name).ok_or_else(|| {
        let known: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        CliError::Validation(format!("unknown preset `{name}` (known: {})", known.join(", ")))
    })?;
    if opts.overrides.alpha.is_some() && !info.single_alpha {
        return Err(CliError::Validation(format!(
            "`attack.alpha` cannot be overridden for preset `{name}`"
        )));
    }
    if !(opts.trials_scale > 0.0) || !opts.trials_scale.is_finite() {
        return Err(CliError::Validation(format!(
            "`--trials-scale`: must be > 0, got {}",
            opts.trials_scale
        )));
    }
    let started = Instant::now();
    let ctx = Ctx {
        opts,
        trials: opts.scaled(opts.overrides.trials.unwrap_or(info.trials)),
    };
    let tables = with_threads(opts.threads, || curves(name, &ctx))??;
    let canonical = format!(
        "preset={name}\nseed={}\ntrials_scale={}\n{:?}",
        opts.seed, opts.trials_scale, opts.overrides
    );
    write_outputs(name, &tables, opts, &canonical, started)
}
