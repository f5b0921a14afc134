//! Monte-Carlo harnesses.
//!
//! Trial `t` of a run seeded with `s` draws from ChaCha8 stream `t` of seed
//! `s`, so a run is reproducible bit-for-bit whatever the thread count.
//! Aggregates are folded over trials in id order.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{generate_with_rng, GeneratorSpec};
use crate::disks::count_disjoint_pairs;
use crate::emst::emst_weight;
use crate::error::{Error, Result};
use crate::partition::StrategyChoice;
use crate::rng::{stream_rng, RNG_ALGORITHM};

#[derive(Clone, Debug, Serialize)]
pub struct TrialConfig {
    pub generator: GeneratorSpec,
    pub trials: usize,
    pub strategy: StrategyChoice,
    pub seed: u64,
    /// Ratios strictly above this count towards `fraction_above`.
    pub threshold: f64,
    /// Also count disjoint disk pairs in every trial.
    pub count_pairs: bool,
    /// Record wall-clock time per trial. Off by default so that output is
    /// reproducible.
    pub timing: bool,
}

impl TrialConfig {
    pub fn new(
        generator: GeneratorSpec,
        trials: usize,
        strategy: StrategyChoice,
        seed: u64,
    ) -> Self {
        TrialConfig {
            generator,
            trials,
            strategy,
            seed,
            threshold: 1.0,
            count_pairs: false,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial_id: usize,
    pub n: usize,
    pub strategy: String,
    pub ratio: Option<f64>,
    pub w_total: Option<f64>,
    pub w_red: Option<f64>,
    pub w_blue: Option<f64>,
    pub w_over_sqrt_n: Option<f64>,
    /// Ratio floor from the strategy's certificate.
    pub certificate_bound: Option<f64>,
    pub disjoint_pairs: Option<usize>,
    pub elapsed_ms: Option<f64>,
    pub error: Option<String>,
    pub counterexample: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub count: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Sample standard deviation; 0 for fewer than two values.
    pub std_dev: f64,
}

impl Stats {
    pub fn from_values(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let count = values.len();
        let mean = values.iter().sum::<f64>() / count as f64;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let std_dev = if count > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
        } else {
            0.0
        };
        Some(Stats {
            count,
            mean,
            min,
            max,
            std_dev,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialSummary {
    pub config: TrialConfig,
    pub rng: &'static str,
    pub ratio: Option<Stats>,
    pub w_over_sqrt_n: Option<Stats>,
    /// Over successful trials.
    pub fraction_above: f64,
    pub failures: usize,
    pub counterexamples: usize,
    pub min_disjoint_pairs: Option<usize>,
    pub elapsed_ms: Option<f64>,
    pub trials: Vec<TrialRecord>,
}

impl TrialSummary {
    pub fn ratios(&self) -> Vec<f64> {
        self.trials.iter().filter_map(|t| t.ratio).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per trial: `trial_id,n,strategy,ratio,w_total,w_red,w_blue,elapsed_ms`.
    /// Fields a trial does not have are left empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            trial_id: usize,
            n: usize,
            strategy: &'a str,
            ratio: Option<f64>,
            w_total: Option<f64>,
            w_red: Option<f64>,
            w_blue: Option<f64>,
            elapsed_ms: Option<f64>,
        }
        let mut w = csv::Writer::from_writer(out);
        for t in &self.trials {
            w.serialize(Row {
                trial_id: t.trial_id,
                n: t.n,
                strategy: &t.strategy,
                ratio: t.ratio,
                w_total: t.w_total,
                w_red: t.w_red,
                w_blue: t.w_blue,
                elapsed_ms: t.elapsed_ms,
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }
}

fn run_one(cfg: &TrialConfig, trial_id: usize) -> TrialRecord {
    let start = Instant::now();
    let mut rng = stream_rng(cfg.seed, trial_id as u64);
    let mut rec = TrialRecord {
        trial_id,
        n: cfg.generator.n,
        strategy: cfg.strategy.label().to_string(),
        ratio: None,
        w_total: None,
        w_red: None,
        w_blue: None,
        w_over_sqrt_n: None,
        certificate_bound: None,
        disjoint_pairs: None,
        elapsed_ms: None,
        error: None,
        counterexample: false,
    };
    let outcome = generate_with_rng(&cfg.generator, &mut rng).and_then(|set| {
        rec.n = set.len();
        if cfg.count_pairs {
            rec.disjoint_pairs = Some(count_disjoint_pairs(&set)?);
        }
        cfg.strategy.run(&set)
    });
    match outcome {
        Ok(report) => {
            rec.ratio = Some(report.ratio);
            rec.w_total = Some(report.w_total);
            rec.w_red = Some(report.w_red);
            rec.w_blue = Some(report.w_blue);
            rec.w_over_sqrt_n = Some(report.w_total / (rec.n as f64).sqrt());
            rec.certificate_bound = report.certificate.lower_bound();
        }
        Err(e) => {
            rec.counterexample = matches!(e, Error::Counterexample { .. });
            rec.error = Some(e.to_string());
        }
    }
    if cfg.timing {
        rec.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    rec
}

/// Run `cfg.trials` independent trials; per-trial failures are recorded,
/// not returned.
pub fn run_trials(cfg: &TrialConfig) -> Result<TrialSummary> {
    if cfg.trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    cfg.generator.check()?;
    let start = Instant::now();
    let trials: Vec<TrialRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_one(cfg, t))
        .collect();

    let ratios: Vec<f64> = trials.iter().filter_map(|t| t.ratio).collect();
    let scaled: Vec<f64> = trials.iter().filter_map(|t| t.w_over_sqrt_n).collect();
    let above = ratios.iter().filter(|&&r| r > cfg.threshold).count();
    Ok(TrialSummary {
        config: cfg.clone(),
        rng: RNG_ALGORITHM,
        fraction_above: if ratios.is_empty() {
            0.0
        } else {
            above as f64 / ratios.len() as f64
        },
        ratio: Stats::from_values(&ratios),
        w_over_sqrt_n: Stats::from_values(&scaled),
        failures: trials.iter().filter(|t| t.error.is_some()).count(),
        counterexamples: trials.iter().filter(|t| t.counterexample).count(),
        min_disjoint_pairs: trials.iter().filter_map(|t| t.disjoint_pairs).min(),
        elapsed_ms: cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        trials,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaRow {
    pub n: usize,
    /// Statistics of `w / sqrt(n)` over the trials.
    pub stats: Stats,
    pub max_w: f64,
    /// `sqrt(2n) + 7/4`, an upper bound on `w` for any `n` points in the unit square.
    pub few_bound: f64,
    pub within_few_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaTable {
    pub seed: u64,
    pub trials: usize,
    pub rng: &'static str,
    pub rows: Vec<BetaRow>,
    /// Largest `|m_{i+1} - m_i| / m_i` between consecutive means.
    pub max_relative_change: f64,
}

/// Mean of `w / sqrt(n)` for uniform points in the unit square, per `n`.
///
/// Row `i`, trial `t` draws from stream `(i << 32) | t`.
pub fn beta_estimate(n_values: &[usize], trials: usize, seed: u64) -> Result<BetaTable> {
    if n_values.is_empty() {
        return Err(Error::InvalidInput("no sizes given".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(n_values.len());
    for (row, &n) in n_values.iter().enumerate() {
        let spec = GeneratorSpec::uniform(n, seed);
        spec.check()?;
        let weights: Vec<f64> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = stream_rng(seed, ((row as u64) << 32) | t as u64);
                generate_with_rng(&spec, &mut rng).map(|set| emst_weight(&set))
            })
            .collect::<Result<_>>()?;
        let sqrt_n = (n as f64).sqrt();
        let scaled: Vec<f64> = weights.iter().map(|w| w / sqrt_n).collect();
        let max_w = weights.iter().copied().fold(0.0, f64::max);
        let few_bound = (2.0 * n as f64).sqrt() + 1.75;
        rows.push(BetaRow {
            n,
            stats: Stats::from_values(&scaled).expect("trials >= 1"),
            max_w,
            few_bound,
            within_few_bound: max_w <= few_bound,
        });
    }
    let max_relative_change = rows
        .windows(2)
        .filter(|w| w[0].stats.mean > 0.0)
        .map(|w| ((w[1].stats.mean - w[0].stats.mean) / w[0].stats.mean).abs())
        .fold(0.0, f64::max);
    Ok(BetaTable {
        seed,
        trials,
        rng: RNG_ALGORITHM,
        rows,
        max_relative_change,
    })
}
