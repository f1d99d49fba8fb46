//! Line-oriented `key = value` configuration with `[section]` headers.
//!
//! ```text
//! # comments start with '#'
//! [link]
//! scheme = ook
//! carriers = 128
//! [attack]
//! kind = ca
//! alpha = 1
//! [experiment]
//! grid_db = 0:30:5
//! ```
//!
//! Lists are comma separated; an item `a:b:step` expands to a, a+step, …, b.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use fhca::adversary::{AttackConfig, AttackKind, SpatialMode};
use fhca::analysis::ExperimentSpec;
use fhca::modem::{EnergyNormalization, LinkConfig, Scheme, ThresholdMethod};
use fhca::{Attack, Experiment, Link};

use crate::error::{CliError, CliResult};

const KEYS: &[(&str, &[&str])] = &[
    (
        "link",
        &[
            "scheme",
            "sigma2_bob",
            "sigma2_eve",
            "carriers",
            "rx_antennas",
            "hop_length",
            "normalization",
            "threshold",
            "pilots",
            "data",
        ],
    ),
    (
        "attack",
        &[
            "kind",
            "alpha",
            "theta",
            "eve_antennas",
            "spatial_mode",
            "attacks_pilots",
        ],
    ),
    (
        "experiment",
        &[
            "kind", "preset", "grid_db", "trials", "seed", "eta", "cdf_grid", "epsilon", "rx_list", "eve_list",
        ],
    ),
    ("sweep", &["thetas", "alphas"]),
];

/// Raw `section.key → (value, line)` pairs, checked against the known key set.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, (String, usize)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut section: Option<&str> = None;
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim();
                section =
                    Some(
                        KEYS.iter()
                            .find(|(s, _)| *s == name)
                            .map(|(s, _)| *s)
                            .ok_or_else(|| CliError::Config {
                                line,
                                message: format!("unknown section [{name}]"),
                            })?,
                    );
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| CliError::Config {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            })?;
            let key = key.trim();
            let value = value.trim();
            let full = match (section, key.split_once('.')) {
                (_, Some((s, k))) => format!("{}.{}", s.trim(), k.trim()),
                (Some(s), None) => format!("{s}.{key}"),
                (None, None) => {
                    return Err(CliError::Config {
                        line,
                        message: format!("key `{key}` outside any section"),
                    })
                }
            };
            if !is_known(&full) {
                return Err(CliError::Config {
                    line,
                    message: format!("unknown key `{full}`"),
                });
            }
            if entries.insert(full.clone(), (value.to_string(), line)).is_some() {
                return Err(CliError::Config {
                    line,
                    message: format!("`{full}` set twice"),
                });
            }
        }
        Ok(Self { entries })
    }

    /// Entries of `other` replace those of `self`.
    pub fn merged(mut self, other: RawConfig) -> Self {
        self.entries.extend(other.entries);
        self
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    fn get<T>(&self, key: &str, parse: impl Fn(&str) -> Option<T>, expected: &str) -> CliResult<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((v, line)) => parse(v).map(Some).ok_or_else(|| CliError::Config {
                line: *line,
                message: format!("`{key}`: expected {expected}, got `{v}`"),
            }),
        }
    }

    fn num<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.get(key, |v| v.parse().ok(), "a number")
    }

    fn list(&self, key: &str) -> CliResult<Option<Vec<f64>>> {
        self.get(key, parse_list, "a comma-separated list of numbers or a:b:step ranges")
    }

    fn usize_list(&self, key: &str) -> CliResult<Option<Vec<usize>>> {
        self.get(
            key,
            |v| v.split(',').map(|s| s.trim().parse().ok()).collect(),
            "a comma-separated list of counts",
        )
    }
}

fn is_known(full: &str) -> bool {
    full.split_once('.')
        .is_some_and(|(s, k)| KEYS.iter().any(|(sec, keys)| *sec == s && keys.contains(&k)))
}

/// Parses `0, 5, 10` or `0:30:5` (inclusive) or a mix of both.
pub fn parse_list(v: &str) -> Option<Vec<f64>> {
    let mut out = Vec::new();
    for item in v.split(',').map(str::trim) {
        let parts: Vec<&str> = item.split(':').map(str::trim).collect();
        match parts.as_slice() {
            [x] => out.push(x.parse().ok()?),
            [a, b, step] => {
                let (a, b, step): (f64, f64, f64) = (a.parse().ok()?, b.parse().ok()?, step.parse().ok()?);
                if !(step > 0.0) || b < a {
                    return None;
                }
                let n = ((b - a) / step + 1e-9).floor() as usize;
                out.extend((0..=n).map(|i| round12(a + i as f64 * step)));
            }
            _ => return None,
        }
    }
    (!out.is_empty() && out.iter().all(|x| x.is_finite())).then_some(out)
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// What `fhca run` computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunKind {
    Ber,
    Cdf,
    Product,
    Mi,
    Lln,
}

impl RunKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "ber" => RunKind::Ber,
            "cdf" => RunKind::Cdf,
            "product" => RunKind::Product,
            "mi" => RunKind::Mi,
            "lln" => RunKind::Lln,
            _ => return None,
        })
    }
}

/// Validated configuration with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kind: RunKind,
    pub preset: Option<String>,
    pub spec: Experiment,
    /// Abscissae for CDF experiments.
    pub cdf_grid: Vec<f64>,
    pub epsilon: f64,
    pub rx_list: Vec<usize>,
    pub eve_list: Vec<usize>,
    pub thetas: Vec<f64>,
    pub alphas: Vec<f64>,
}

impl RunConfig {
    pub fn link(&self) -> &Link {
        &self.spec.link
    }

    pub fn attack(&self) -> &Attack {
        &self.spec.attack
    }

    /// Deterministic text covering every field; input of the config digest.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{self:?}");
        s
    }
}

pub const DEFAULT_TRIALS: u64 = 1_000_000;
pub const DEFAULT_THETA: f64 = 9.0;

pub fn default_thetas() -> Vec<f64> {
    vec![5.0, 9.0, 15.0]
}

pub fn default_alphas() -> Vec<f64> {
    parse_list("0.05:0.95:0.05").expect("valid range")
}

fn word<T>(raw: &RawConfig, key: &str, parse: impl Fn(&str) -> Option<T>, expected: &str) -> CliResult<Option<T>> {
    raw.get(key, parse, expected)
}

/// Parses and validates configuration text.
pub fn parse_config(text: &str) -> CliResult<RunConfig> {
    build(&RawConfig::parse(text)?)
}

pub fn build(raw: &RawConfig) -> CliResult<RunConfig> {
    let scheme = word(raw, "link.scheme", Scheme::parse, "bpsk, ook, bfsk or ebfsk")?.unwrap_or(Scheme::Ook);
    let mut link = LinkConfig::<f64>::new(scheme);
    if let Some(v) = raw.num("link.sigma2_bob")? {
        link.sigma2_bob = v;
    }
    if let Some(v) = raw.num("link.sigma2_eve")? {
        link.sigma2_eve = v;
    }
    if let Some(v) = raw.num("link.carriers")? {
        link.n_carriers = v;
    }
    if let Some(v) = raw.num("link.rx_antennas")? {
        link.n_rx = v;
    }
    if let Some(v) = raw.num("link.hop_length")? {
        link.hop_length = v;
    }
    if let Some(v) = word(
        raw,
        "link.normalization",
        |s| match s {
            "standard" => Some(EnergyNormalization::Standard),
            "equal-energy-per-bit" | "equal" => Some(EnergyNormalization::EqualEnergyPerBit),
            _ => None,
        },
        "standard or equal-energy-per-bit",
    )? {
        link.normalization = v;
    }
    if let Some(v) = word(
        raw,
        "link.threshold",
        ThresholdMethod::parse,
        "empirical, analytic or attack-ignorant",
    )? {
        link.threshold = v;
    }
    if let Some(v) = raw.num("link.pilots")? {
        link.pilots = v;
    }
    if let Some(v) = raw.num("link.data")? {
        link.data = v;
    }

    let kind = word(raw, "attack.kind", AttackKind::parse, "none, nj, wj, ca or ca-bfsk")?.unwrap_or(AttackKind::None);
    let n_eve: usize = raw.num("attack.eve_antennas")?.unwrap_or(1);
    let mode = word(
        raw,
        "attack.spatial_mode",
        SpatialMode::parse,
        "single, randomized or fixed",
    )?
    .unwrap_or(if n_eve == 1 {
        SpatialMode::Single
    } else {
        SpatialMode::Randomized
    });
    let attacks_pilots = word(raw, "attack.attacks_pilots", |s| s.parse().ok(), "true or false")?.unwrap_or(true);
    let attack = AttackConfig {
        kind,
        alpha: raw.num("attack.alpha")?.unwrap_or(1.0),
        theta: raw.num("attack.theta")?.unwrap_or(DEFAULT_THETA),
        n_eve,
        spatial_mode: mode,
        attacks_pilots,
    };

    let preset = raw.get("experiment.preset", |s| Some(s.to_string()), "a preset name")?;
    if let Some(p) = &preset {
        if !crate::presets::PRESETS.iter().any(|d| d.name == p) {
            return Err(CliError::Validation(format!(
                "`experiment.preset`: unknown preset `{p}`"
            )));
        }
    }
    let run_kind = word(raw, "experiment.kind", RunKind::parse, "ber, cdf, product, mi or lln")?.unwrap_or(
        if preset.as_deref() == Some("fig8") {
            RunKind::Mi
        } else {
            RunKind::Ber
        },
    );
    let grid = raw
        .list("experiment.grid_db")?
        .unwrap_or_else(|| parse_list("0:30:5").expect("range"));
    let trials = raw.num("experiment.trials")?.unwrap_or(DEFAULT_TRIALS);
    let seed = raw.num("experiment.seed")?.unwrap_or(1);
    let mut spec = ExperimentSpec::new(link, attack, grid, trials, seed);
    spec.eta = raw.num("experiment.eta")?;
    if run_kind == RunKind::Cdf && spec.eta.is_none() {
        spec.eta = Some(0.0);
    }
    spec.validate()?;

    let cfg = RunConfig {
        kind: run_kind,
        preset,
        spec,
        cdf_grid: raw
            .list("experiment.cdf_grid")?
            .unwrap_or_else(|| parse_list("0:4:0.02").expect("range")),
        epsilon: raw.num("experiment.epsilon")?.unwrap_or(0.1),
        rx_list: raw
            .usize_list("experiment.rx_list")?
            .unwrap_or_else(|| vec![1, 4, 16, 64, 256]),
        eve_list: raw
            .usize_list("experiment.eve_list")?
            .unwrap_or_else(|| vec![1, 2, 4, 8]),
        thetas: raw.list("sweep.thetas")?.unwrap_or_else(default_thetas),
        alphas: raw.list("sweep.alphas")?.unwrap_or_else(default_alphas),
    };
    if !(cfg.epsilon > 0.0) {
        return Err(CliError::Validation(format!(
            "`experiment.epsilon`: must be > 0, got {}",
            cfg.epsilon
        )));
    }
    if let Some(a) = cfg.alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(CliError::Validation(format!(
            "`sweep.alphas`: alpha must lie in [0, 1], got {a}"
        )));
    }
    if let Some(t) = cfg.thetas.iter().find(|t| !(**t > 0.0)) {
        return Err(CliError::Validation(format!(
            "`sweep.thetas`: theta must be > 0, got {t}"
        )));
    }
    Ok(cfg)
}


/// Preset parameters a user may replace with `--set section.key=value`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub trials: Option<u64>,
    pub grid_db: Option<Vec<f64>>,
    pub alpha: Option<f64>,
    pub theta: Option<f64>,
    pub sigma2_bob: Option<f64>,
    pub sigma2_eve: Option<f64>,
}

const OVERRIDABLE: &[&str] = &[
    "experiment.trials",
    "experiment.grid_db",
    "attack.alpha",
    "attack.theta",
    "link.sigma2_bob",
    "link.sigma2_eve",
];

impl Overrides {
    /// Reads the overridable keys; `experiment.preset` and `experiment.seed` are ignored here.
    pub fn from_raw(raw: &RawConfig) -> CliResult<Self> {
        if let Some(k) = raw
            .keys()
            .find(|k| !OVERRIDABLE.contains(k) && *k != "experiment.preset" && *k != "experiment.seed")
        {
            return Err(CliError::Validation(format!(
                "`{k}` cannot be overridden for presets (allowed: {})",
                OVERRIDABLE.join(", ")
            )));
        }
        let o = Self {
            trials: raw.num("experiment.trials")?,
            grid_db: raw.list("experiment.grid_db")?,
            alpha: raw.num("attack.alpha")?,
            theta: raw.num("attack.theta")?,
            sigma2_bob: raw.num("link.sigma2_bob")?,
            sigma2_eve: raw.num("link.sigma2_eve")?,
        };
        if o.trials == Some(0) {
            return Err(CliError::Validation(
                "`experiment.trials`: need at least one trial".into(),
            ));
        }
        if let Some(a) = o.alpha.filter(|a| !(0.0..=1.0).contains(a)) {
            return Err(CliError::Validation(format!(
                "`attack.alpha`: must lie in [0, 1], got {a}"
            )));
        }
        if let Some(t) = o.theta.filter(|t| !(*t > 0.0)) {
            return Err(CliError::Validation(format!("`attack.theta`: must be > 0, got {t}")));
        }
        Ok(o)
    }

    /// Parses `key=value` assignments such as `attack.alpha=0.25`.
    pub fn from_assignments<S: AsRef<str>>(items: &[S]) -> CliResult<Self> {
        let text: Vec<&str> = items.iter().map(AsRef::as_ref).collect();
        Self::from_raw(&RawConfig::parse(&text.join("\n"))?)
    }
}
