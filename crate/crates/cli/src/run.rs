use std::time::Instant;

use fhca::analysis::{cdf_received_energy, lln_check, multi_eve_product_cdf, mutual_information_sweep, run_ber};

use crate::config::{build, Overrides, RawConfig, RunConfig, RunKind};
use crate::error::CliResult;
use crate::manifest::RunManifest;
use crate::presets::{run_preset, with_threads, write_outputs, RunOptions};

/// Runs a parsed configuration; outputs are named after `stem`.
pub fn run_config(cfg: &RunConfig, opts: &RunOptions, stem: &str) -> CliResult<RunManifest> {
    let started = Instant::now();
    let mut cfg = cfg.clone();
    cfg.spec.seed = opts.seed;
    cfg.spec.trials = opts.scaled(cfg.spec.trials);
    let spec = &cfg.spec;
    let tables = with_threads(opts.threads, || -> CliResult<_> {
        Ok(match cfg.kind {
            RunKind::Ber => vec![(stem.to_string(), run_ber(spec)?)],
            RunKind::Cdf => vec![(
                stem.to_string(),
                cdf_received_energy(
                    spec,
                    spec.link.n_rx,
                    spec.attack.n_eve,
                    spec.attack.spatial_mode,
                    &cfg.cdf_grid,
                )?,
            )],
            RunKind::Product => cfg
                .eve_list
                .iter()
                .zip(multi_eve_product_cdf(
                    &cfg.eve_list,
                    spec.trials,
                    spec.seed,
                    &cfg.cdf_grid,
                )?)
                .map(|(n, t)| (format!("{stem}_ne{n}"), t))
                .collect(),
            RunKind::Mi => mutual_information_sweep(&cfg.thetas, &cfg.alphas, spec.trials, spec.seed)?
                .into_iter()
                .flat_map(|c| {
                    [
                        (format!("{stem}_mi_theta{}", c.theta), c.mutual_information),
                        (format!("{stem}_pcross_theta{}", c.theta), c.pcross),
                    ]
                })
                .collect(),
            RunKind::Lln => {
                let r = lln_check(&cfg.rx_list, cfg.epsilon, spec.trials, 1.0, 1.0, spec.seed)?;
                vec![(stem.to_string(), r.table(spec.seed))]
            }
        })
    })??;
    write_outputs(stem, &tables, opts, &cfg.canonical(), started)
}

/// Runs configuration text. A `experiment.preset` key turns the remaining keys into preset overrides.
/// `seed` (from the command line) wins over `experiment.seed`.
pub fn run_config_text(text: &str, opts: &RunOptions, seed: Option<u64>, stem: &str) -> CliResult<RunManifest> {
    let raw = RawConfig::parse(text)?;
    let cfg = build(&raw)?;
    let mut opts = opts.clone();
    opts.seed = seed.unwrap_or(cfg.spec.seed);
    match &cfg.preset {
        Some(name) => {
            opts.overrides = Overrides::from_raw(&raw)?;
            run_preset(name, &opts)
        }
        None => run_config(&cfg, &opts, stem),
    }
}
