//! Repeated-run harness: convergence milestones, best/median radii and
//! robustness counts per instance.

use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus;
use crate::model::{Hyperparameters, ProblemInstance};
use crate::solver::{convergence_milestones, solve, Milestone, MILESTONE_FRACTIONS};
use crate::{Error, Result};

/// Robustness thresholds: share of runs within 10%, 5%, 1%, 0.5% of a radius.
pub const ROBUSTNESS_FRACTIONS: [f64; 4] = [0.10, 0.05, 0.01, 0.005];

/// Optional replacements for the per-instance default hyperparameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HpOverrides {
    pub f_max: Option<f64>,
    pub v_max: Option<f64>,
    pub alpha: Option<f64>,
    pub s_max: Option<f64>,
    pub s_min: Option<f64>,
    pub c: Option<f64>,
    pub dt: Option<f64>,
    pub n_it: Option<usize>,
    pub overlap_tol: Option<f64>,
}

impl HpOverrides {
    pub fn apply(&self, mut hp: Hyperparameters) -> Hyperparameters {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { hp.$f = v; } )* };
        }
        set!(f_max, v_max, alpha, s_max, s_min, c, dt, n_it, overlap_tol);
        hp
    }
}

/// Default hyperparameters for an instance, with the suite's iteration budget.
pub fn default_hyperparameters(instance: &ProblemInstance) -> Hyperparameters {
    let hp = Hyperparameters::for_instance(instance);
    match corpus::suite_of(instance.name()) {
        Some(suite) => hp.with_iterations(suite.iterations()),
        None => hp,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub instance: String,
    pub seed: u64,
    pub feasible: bool,
    pub best_radius: Option<f64>,
    pub best_iteration: Option<usize>,
    pub milestones: Vec<Milestone>,
    /// Not serialized, so that reports stay reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobustnessCount {
    pub threshold: f64,
    /// Runs whose radius is within the threshold of the best run.
    pub within_best: usize,
    /// Runs within the threshold of the published reference radius.
    pub within_reference: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MilestoneStat {
    pub threshold: f64,
    pub best_run: usize,
    pub median: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub instance: String,
    pub circles: usize,
    pub runs: usize,
    pub feasible_runs: usize,
    pub best_radius: Option<f64>,
    pub best_seed: Option<u64>,
    pub median_radius: Option<f64>,
    pub reference_radius: Option<f64>,
    /// `best / reference - 1`.
    pub gap_to_reference: Option<f64>,
    /// Iterations for the best run to reach each milestone, plus the median over feasible runs.
    pub milestones: Vec<MilestoneStat>,
    pub robustness: Vec<RobustnessCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub selector: String,
    pub repetitions: usize,
    pub overrides: HpOverrides,
    pub instances: Vec<InstanceReport>,
    pub runs: Vec<RunSummary>,
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 { values[n / 2] } else { 0.5 * (values[n / 2 - 1] + values[n / 2]) })
}

pub fn run_once(instance: &ProblemInstance, hp: &Hyperparameters) -> Result<RunSummary> {
    let start = Instant::now();
    let result = solve(instance, hp)?;
    let milestones = match result.best_radius() {
        Some(r) => convergence_milestones(&result.history, r, &MILESTONE_FRACTIONS)?,
        None => Vec::new(),
    };
    Ok(RunSummary {
        instance: instance.name().to_string(),
        seed: hp.seed,
        feasible: result.feasible(),
        best_radius: result.best_radius(),
        best_iteration: result.best_iteration(),
        milestones,
        wall_time: start.elapsed(),
    })
}

/// Aggregates the runs of one instance.
pub fn summarize(instance: &ProblemInstance, runs: &[RunSummary]) -> InstanceReport {
    let feasible: Vec<&RunSummary> = runs.iter().filter(|r| r.feasible).collect();
    let best = feasible
        .iter()
        .min_by(|a, b| a.best_radius.unwrap().total_cmp(&b.best_radius.unwrap()).then(a.seed.cmp(&b.seed)));
    let best_radius = best.and_then(|b| b.best_radius);
    let reference = corpus::reference_radius(instance.name());
    let mut radii: Vec<f64> = feasible.iter().filter_map(|r| r.best_radius).collect();
    let median_radius = median(&mut radii);

    let milestones = match best {
        Some(b) => b
            .milestones
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mut its: Vec<f64> = feasible.iter().map(|r| r.milestones[k].iteration as f64).collect();
                MilestoneStat { threshold: m.threshold, best_run: m.iteration, median: median(&mut its).unwrap_or(0.0) }
            })
            .collect(),
        None => Vec::new(),
    };

    let count_within = |bound: f64| radii.iter().filter(|&&r| r <= bound).count();
    let robustness = ROBUSTNESS_FRACTIONS
        .iter()
        .map(|&p| RobustnessCount {
            threshold: p,
            within_best: best_radius.map_or(0, |b| count_within((1.0 + p) * b)),
            within_reference: reference.map(|r| count_within((1.0 + p) * r)),
        })
        .collect();

    InstanceReport {
        instance: instance.name().to_string(),
        circles: instance.len(),
        runs: runs.len(),
        feasible_runs: feasible.len(),
        best_radius,
        best_seed: best.map(|b| b.seed),
        median_radius,
        reference_radius: reference,
        gap_to_reference: best_radius.zip(reference).map(|(b, r)| b / r - 1.0),
        milestones,
        robustness,
    }
}

/// Runs every selected instance `repetitions` times with seeds `0..repetitions`
/// on a pool of `jobs` worker threads.
pub fn run_bench(selector: &str, repetitions: usize, overrides: &HpOverrides, jobs: usize) -> Result<BenchReport> {
    if repetitions == 0 {
        return Err(Error::InvalidInput("repetitions must be at least 1".into()));
    }
    let instances = corpus::select(selector)?;
    let tasks: Vec<(usize, u64)> = (0..instances.len())
        .flat_map(|k| (0..repetitions as u64).map(move |s| (k, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let runs: Vec<RunSummary> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(k, seed)| {
                let hp = overrides.apply(default_hyperparameters(&instances[k])).with_seed(seed);
                run_once(&instances[k], &hp)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let reports = instances
        .iter()
        .map(|inst| {
            let mine: Vec<RunSummary> = runs.iter().filter(|r| r.instance == inst.name()).cloned().collect();
            summarize(inst, &mine)
        })
        .collect();
    Ok(BenchReport {
        selector: selector.to_string(),
        repetitions,
        overrides: overrides.clone(),
        instances: reports,
        runs,
    })
}

#[derive(Serialize)]
struct RunRow<'a> {
    instance: &'a str,
    seed: u64,
    feasible: bool,
    best_radius: Option<f64>,
    best_iteration: Option<usize>,
    it_10pct: Option<usize>,
    it_5pct: Option<usize>,
    it_1pct: Option<usize>,
    it_0_5pct: Option<usize>,
    it_0_1pct: Option<usize>,
}

/// One CSV row per run.
pub fn write_runs_csv<W: Write>(runs: &[RunSummary], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in runs {
        let m = |k: usize| r.milestones.get(k).map(|m| m.iteration);
        w.serialize(RunRow {
            instance: &r.instance,
            seed: r.seed,
            feasible: r.feasible,
            best_radius: r.best_radius,
            best_iteration: r.best_iteration,
            it_10pct: m(0),
            it_5pct: m(1),
            it_1pct: m(2),
            it_0_5pct: m(3),
            it_0_1pct: m(4),
        })?;
    }
    w.flush()?;
    Ok(())
}
