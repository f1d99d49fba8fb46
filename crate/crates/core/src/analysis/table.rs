use std::collections::BTreeMap;

/// One curve point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRow {
    /// E_b/N₀ in dB, α, or an energy abscissa, depending on the experiment.
    pub x: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl ResultRow {
    /// Proportion `count / trials` with standard error √(p̂(1−p̂)/n).
    pub fn proportion(x: f64, count: u64, trials: u64) -> Self {
        let p = if trials == 0 { 0.0 } else { count as f64 / trials as f64 };
        Self {
            x,
            estimate: p,
            stderr: proportion_stderr(p, trials),
            trials,
        }
    }
}

/// √(p(1−p)/n); zero when n = 0.
pub fn proportion_stderr(p: f64, n: u64) -> f64 {
    if n == 0 {
        0.0
    } else {
        (p * (1.0 - p) / n as f64).max(0.0).sqrt()
    }
}

/// Curve of Monte Carlo estimates with provenance.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    /// Experiment kind, e.g. `"ber"`, `"cdf"`, `"mi"`.
    pub kind: String,
    /// Curve label, e.g. `"ook ca alpha=1 N_r=2"`.
    pub label: String,
    pub seed: u64,
    /// Configuration key/value pairs the rows were produced with.
    pub provenance: BTreeMap<String, String>,
    rows: Vec<ResultRow>,
}

impl ResultTable {
    pub fn new(kind: impl Into<String>, label: impl Into<String>, seed: u64) -> Self {
        Self {
            kind: kind.into(),
            label: label.into(),
            seed,
            ..Self::default()
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.provenance.insert(key.into(), value.to_string());
        self
    }

    /// Inserts keeping rows sorted by `x` (stable for equal `x`).
    pub fn push(&mut self, row: ResultRow) {
        let at = self.rows.partition_point(|r| r.x <= row.x);
        self.rows.insert(at, row);
    }

    pub fn rows(&self) -> &[ResultRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row whose `x` is within 1e-9 of `x`.
    pub fn at(&self, x: f64) -> Option<&ResultRow> {
        self.rows.iter().find(|r| (r.x - x).abs() <= 1e-9 * x.abs().max(1.0))
    }

    pub fn total_trials(&self) -> u64 {
        self.rows.iter().map(|r| r.trials).sum()
    }

    /// Row with the smallest estimate; the first such row on ties.
    pub fn argmin(&self) -> Option<&ResultRow> {
        self.rows.iter().fold(None, |best: Option<&ResultRow>, r| match best {
            Some(b) if b.estimate <= r.estimate => Some(b),
            _ => Some(r),
        })
    }
}

/// True when the curve stops falling: estimate(hi) ≥ 0.8·estimate(lo).
pub fn has_error_floor(table: &ResultTable, lo_db: f64, hi_db: f64) -> Option<bool> {
    Some(table.at(hi_db)?.estimate >= 0.8 * table.at(lo_db)?.estimate)
}
