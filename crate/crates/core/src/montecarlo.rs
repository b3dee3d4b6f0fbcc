//! Deterministic parallel estimation of the probability of incorrect selection.
//!
//! Replication `i` draws from its own ChaCha8 stream: the generator seeded
//! from the master seed with its stream word set to `i`. Workers take
//! contiguous index ranges and counts are summed as integers, so the result
//! does not depend on the worker count.

use crate::distributions::{DistributionSpec, SystemPair};
use crate::regimes::SamplePlan;
use crate::sequential::{run_independent, run_joint, SequentialParams};
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Procedure {
    Fixed(SamplePlan),
    Sequential { params: SequentialParams, independent: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub pair: SystemPair,
    pub procedure: Procedure,
    pub replications: u64,
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn fixed(pair: SystemPair, plan: SamplePlan, replications: u64, master_seed: u64) -> Self {
        ExperimentConfig {
            pair,
            procedure: Procedure::Fixed(plan),
            replications,
            master_seed,
        }
    }

    pub fn sequential(
        pair: SystemPair,
        params: SequentialParams,
        independent: bool,
        replications: u64,
        master_seed: u64,
    ) -> Self {
        ExperimentConfig {
            pair,
            procedure: Procedure::Sequential { params, independent },
            replications,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidParameter("replications must be at least 1".into()));
        }
        if let Procedure::Fixed(plan) = &self.procedure {
            if plan.n1 == 0 || plan.n2 == 0 {
                return Err(Error::InvalidParameter("plan sizes must be positive".into()));
            }
        }
        Ok(())
    }

    /// The generator for replication `index`.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(index);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    Correct,
    Incorrect,
}

/// One replication's outcome and the sample sizes it used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trial {
    pub outcome: TrialOutcome,
    pub n1: u64,
    pub n2: u64,
}

fn sample_mean(dist: &DistributionSpec, n: u64, rng: &mut ChaCha8Rng) -> f64 {
    match dist {
        // Keeps ties between equal constants exact.
        DistributionSpec::Constant { value } => *value,
        _ => dist.sample_sum(n, rng) / n as f64,
    }
}

/// Runs replication `index`: incorrect iff `X̄₁ < X̄₂` strictly.
pub fn run_trial(config: &ExperimentConfig, index: u64) -> Result<Trial> {
    let mut rng = config.stream(index);
    let pair = &config.pair;
    let (n1, n2, mean1, mean2) = match &config.procedure {
        Procedure::Fixed(plan) => {
            let m1 = sample_mean(pair.dist1(), plan.n1, &mut rng);
            let m2 = sample_mean(pair.dist2(), plan.n2, &mut rng);
            (plan.n1, plan.n2, m1, m2)
        }
        Procedure::Sequential { params, independent } => {
            let out = if *independent {
                run_independent(params, pair, &mut rng)?
            } else {
                run_joint(params, pair, &mut rng)?
            };
            (out.n1, out.n2, out.mean1, out.mean2)
        }
    };
    let outcome = if mean1 < mean2 {
        TrialOutcome::Incorrect
    } else {
        TrialOutcome::Correct
    };
    Ok(Trial { outcome, n1, n2 })
}

/// Sample-size statistics of a sequential experiment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StopSummary {
    pub total_n1: u64,
    pub total_n2: u64,
    /// Replication counts keyed by `(n1, n2)`.
    pub histogram: BTreeMap<(u64, u64), u64>,
}

impl StopSummary {
    fn merge(&mut self, other: StopSummary) {
        self.total_n1 += other.total_n1;
        self.total_n2 += other.total_n2;
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
    }

    pub fn mean_n1(&self, replications: u64) -> f64 {
        self.total_n1 as f64 / replications as f64
    }

    pub fn mean_n2(&self, replications: u64) -> f64 {
        self.total_n2 as f64 / replications as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub incorrect_count: u64,
    pub replications: u64,
    pub pis_estimate: f64,
    /// One standard error, `sqrt(p̂(1 − p̂)/R)`.
    pub std_error: f64,
    pub master_seed: u64,
    /// Seconds.
    pub wall_time: f64,
    /// Present for sequential procedures.
    pub stops: Option<StopSummary>,
}

impl ExperimentResult {
    fn new(incorrect_count: u64, replications: u64, master_seed: u64, wall_time: f64, stops: Option<StopSummary>) -> Self {
        let p = incorrect_count as f64 / replications as f64;
        ExperimentResult {
            incorrect_count,
            replications,
            pis_estimate: p,
            std_error: (p * (1.0 - p) / replications as f64).sqrt(),
            master_seed,
            wall_time,
            stops,
        }
    }
}

fn run_range(config: &ExperimentConfig, lo: u64, hi: u64) -> Result<(u64, Option<StopSummary>)> {
    let sequential = matches!(config.procedure, Procedure::Sequential { .. });
    let mut incorrect = 0u64;
    let mut stops = sequential.then(StopSummary::default);
    for i in lo..hi {
        let t = run_trial(config, i)?;
        incorrect += u64::from(t.outcome == TrialOutcome::Incorrect);
        if let Some(s) = stops.as_mut() {
            s.total_n1 += t.n1;
            s.total_n2 += t.n2;
            *s.histogram.entry((t.n1, t.n2)).or_default() += 1;
        }
    }
    Ok((incorrect, stops))
}

/// Estimates the PIS over `config.replications` replications on `workers` threads.
pub fn estimate_pis(config: &ExperimentConfig, workers: usize) -> Result<ExperimentResult> {
    config.validate()?;
    if workers == 0 {
        return Err(Error::InvalidParameter("worker count must be at least 1".into()));
    }
    let start = Instant::now();
    let reps = config.replications;
    let chunks = (workers as u64).min(reps);
    let bounds: Vec<(u64, u64)> = (0..chunks)
        .map(|w| (reps * w / chunks, reps * (w + 1) / chunks))
        .collect();
    let parts: Vec<Result<(u64, Option<StopSummary>)>> = if chunks == 1 {
        vec![run_range(config, 0, reps)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .iter()
                .map(|&(lo, hi)| scope.spawn(move || run_range(config, lo, hi)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("Monte Carlo worker panicked"))
                .collect()
        })
    };
    let mut incorrect = 0u64;
    let mut stops: Option<StopSummary> = None;
    for part in parts {
        let (count, s) = part?;
        incorrect += count;
        if let Some(s) = s {
            stops.get_or_insert_with(StopSummary::default).merge(s);
        }
    }
    Ok(ExperimentResult::new(
        incorrect,
        reps,
        config.master_seed,
        start.elapsed().as_secs_f64(),
        stops,
    ))
}

/// Where an estimate sits relative to the target α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageFlag {
    /// `p̂ + 3·SE < α`: more samples than needed.
    Overshoot,
    /// `p̂ − 3·SE > α`: target missed.
    Undershoot,
    Within,
}

impl CoverageFlag {
    pub fn classify(pis: f64, se: f64, alpha: f64) -> Self {
        if pis + 3.0 * se < alpha {
            CoverageFlag::Overshoot
        } else if pis - 3.0 * se > alpha {
            CoverageFlag::Undershoot
        } else {
            CoverageFlag::Within
        }
    }
}

impl fmt::Display for CoverageFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverageFlag::Overshoot => "OVERSHOOT",
            CoverageFlag::Undershoot => "UNDERSHOOT",
            CoverageFlag::Within => "within",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OvershootRow {
    pub plan: SamplePlan,
    pub result: ExperimentResult,
    pub flag: CoverageFlag,
}

/// Estimates the PIS of each plan and flags it against α.
pub fn overshoot_report(
    pair: &SystemPair,
    alpha: f64,
    plans: &[SamplePlan],
    replications: u64,
    master_seed: u64,
    workers: usize,
) -> Result<Vec<OvershootRow>> {
    plans
        .iter()
        .map(|plan| {
            let config = ExperimentConfig::fixed(pair.clone(), *plan, replications, master_seed);
            let result = estimate_pis(&config, workers)?;
            let flag = CoverageFlag::classify(result.pis_estimate, result.std_error, alpha);
            Ok(OvershootRow {
                plan: *plan,
                result,
                flag,
            })
        })
        .collect()
}
