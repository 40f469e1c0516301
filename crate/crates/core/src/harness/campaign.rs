//! Seeded verification campaigns.
//!
//! Trial `t` of check `c` draws from `ChaCha8Rng::seed_from_u64(seed ^ t)` on
//! stream `c.ordinal()`, so every trial is reproducible on its own and the
//! report does not depend on the worker count.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::roots;
use crate::error::{invalid, Result};
use crate::generators::{
    majorized_pair_from, no_zeros_in_disk_from, random_in_unit_disk, random_phase, random_scale,
    unrestricted_from, zeros_in_disk_from, MAX_DEGREE, PRNG_ALGORITHM,
};
use crate::poly::Complex;

use super::checks::*;
use super::{CheckId, CheckOutcome, Skipped, Tolerance, TrialReport, REPORT_SCHEMA};

/// Angles per sampled radius: `z = rho e^{2 pi i j / Z_ANGLES}`.
pub const Z_ANGLES: usize = 32;

/// Redraws allowed when a draw misses a hypothesis.
pub const MAX_REDRAWS: usize = 16;

/// Sample points for checks that sweep a set of `z` per trial.
const SWEEP_ANGLES: usize = 64;
const MAJORIZATION_RADII: [f64; 3] = [1.0, 1.5, 2.0];
const GROWTH_ANGLES: usize = 32;

/// Failing reports kept per check in the output, in trial order.
pub const MAX_LISTED_FAILURES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckId>,
    pub degrees: Vec<usize>,
    pub z_radii: Vec<f64>,
    #[serde(rename = "R_values")]
    pub r_values: Vec<f64>,
    /// Overrides the pass rule; reports are re-judged under it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Tolerance>,
    /// Also evaluate the nonvanishing-class bounds on polynomials that violate the hypothesis.
    pub exploratory: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 42,
            trials: 1000,
            checks: CheckId::ALL.to_vec(),
            degrees: (1..=12).collect(),
            z_radii: vec![1.0, 1.01, 1.5, 2.0, 5.0],
            r_values: vec![1.0, 1.001, 1.5, 2.0, 4.0],
            tolerance: None,
            exploratory: false,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Ok(());
        }
        if self.degrees.is_empty() || self.z_radii.is_empty() || self.r_values.is_empty() {
            return Err(invalid("config", "degrees, z_radii and R_values must be non-empty"));
        }
        if let Some(&d) = self.degrees.iter().find(|&&d| d == 0 || d > MAX_DEGREE) {
            return Err(invalid("degrees", format!("{d} is outside 1..={MAX_DEGREE}")));
        }
        if let Some(&r) = self.z_radii.iter().find(|r| !r.is_finite() || **r < 1.0) {
            return Err(invalid("z_radii", format!("{r} is not a radius >= 1")));
        }
        if let Some(&r) = self.r_values.iter().find(|r| !r.is_finite() || **r < 1.0) {
            return Err(invalid("R_values", format!("{r} is not a dilation >= 1")));
        }
        if let Some(t) = &self.tolerance {
            if !(t.rel.is_finite() && t.abs.is_finite()) {
                return Err(invalid("tolerance", "must be finite"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check_id: CheckId,
    pub requested: usize,
    /// Trials that found hypothesis-satisfying inputs and were evaluated.
    pub trials: usize,
    pub passes: usize,
    pub failures: usize,
    /// Draws rejected by a hypothesis gate, over all trials.
    pub redraws: usize,
    /// Trials that exhausted their redraws.
    pub unevaluated: usize,
    pub worst_margin: Option<f64>,
    pub sharpest_ratio: Option<f64>,
    pub sharpest_trial: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_form_rel_diff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub last_skip_reason: Option<String>,
    pub failing: Vec<TrialReport>,
}

/// Hypothesis-violating trials on which a bound broke.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExploratorySummary {
    pub check_id: CheckId,
    pub trials: usize,
    pub violations: usize,
    pub largest_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<TrialReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema: String,
    pub prng: String,
    pub config: CampaignConfig,
    pub checks: Vec<CheckSummary>,
    pub total_trials: usize,
    pub total_passes: usize,
    pub total_failures: usize,
    pub all_passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub exploratory: Vec<ExploratorySummary>,
}

pub fn trial_rng(seed: u64, trial: u64, check: CheckId) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
    rng.set_stream(check.ordinal());
    rng
}

fn pick<T: Copy, R: Rng>(rng: &mut R, xs: &[T]) -> T {
    xs[rng.gen_range(0..xs.len())]
}

/// Uniform in the closed disk, with one draw in eight placed on the circle.
fn disk_parameter<R: Rng>(rng: &mut R) -> Complex {
    if rng.gen_range(0..8) == 0 {
        Complex::from_polar(1.0, random_phase(rng))
    } else {
        random_in_unit_disk(rng)
    }
}

fn grid_z<R: Rng>(rng: &mut R, radii: &[f64]) -> Complex {
    let j = rng.gen_range(0..Z_ANGLES);
    Complex::from_polar(pick(rng, radii), TAU * j as f64 / Z_ANGLES as f64)
}

fn ring(radius: f64, count: usize) -> Vec<Complex> {
    (0..count)
        .map(|k| Complex::from_polar(radius, TAU * k as f64 / count as f64))
        .collect()
}

/// `alpha = t / (1 + t)` with `t` uniform in the disk of radius `rho`.
fn smirnov_alpha<R: Rng>(rng: &mut R, rho: f64) -> Option<Complex> {
    let t = random_in_unit_disk(rng) * rho;
    let denom = Complex::new(1.0, 0.0) + t;
    (denom.norm() >= 1e-6).then(|| t / denom)
}

/// Lambdas whose symbol `u` has its roots in `Re(z) <= n/4`.
fn marden_lambdas<R: Rng>(rng: &mut R, n: usize) -> [Complex; 3] {
    let nf = n as f64;
    let symbol_root = |rng: &mut R| {
        let re = nf / 4.0 - rng.gen_range(0.0..nf);
        Complex::new(re, rng.gen_range(-nf..nf))
    };
    let c = random_scale(rng);
    let zero = Complex::new(0.0, 0.0);
    if n >= 2 && rng.gen_range(0..3) != 0 {
        let (w1, w2) = (symbol_root(rng), symbol_root(rng));
        // u = c (z - w1)(z - w2) = l0 + n l1 z + n(n-1)/2 l2 z^2
        [c * w1 * w2, -c * (w1 + w2) / nf, c / (nf * (nf - 1.0) / 2.0)]
    } else if rng.gen_range(0..8) == 0 {
        [c, zero, zero]
    } else {
        let w = symbol_root(rng);
        [-c * w, c / nf, zero]
    }
}

/// One draw of inputs for `id`, evaluated.
fn draw(id: CheckId, rng: &mut ChaCha8Rng, cfg: &CampaignConfig) -> CheckOutcome {
    let n = pick(rng, &cfg.degrees);
    let lift = |e: crate::error::Error| Skipped {
        check_id: id,
        reason: e.to_string(),
    };
    match id {
        CheckId::Bernstein => check_bernstein(&unrestricted_from(rng, n), n),
        CheckId::Growth => {
            let p = unrestricted_from(rng, n);
            check_growth(&p, n, pick(rng, &cfg.r_values))
        }
        CheckId::ErdosLax => check_erdos_lax(&no_zeros_in_disk_from(rng, n), n),
        CheckId::AnkenyRivlin => {
            let p = no_zeros_in_disk_from(rng, n);
            check_ankeny_rivlin(&p, n, pick(rng, &cfg.r_values))
        }
        CheckId::AzizDawoodDeriv => check_aziz_dawood_deriv(&no_zeros_in_disk_from(rng, n), n),
        CheckId::AzizDawoodGrowth => {
            let p = no_zeros_in_disk_from(rng, n);
            check_aziz_dawood_growth(&p, n, pick(rng, &cfg.r_values))
        }
        CheckId::BernsteinMajorization => {
            let (p, big) = majorized_pair_from(rng, n).map_err(lift)?;
            let zs: Vec<Complex> = MAJORIZATION_RADII
                .iter()
                .flat_map(|&r| ring(r, SWEEP_ANGLES))
                .collect();
            check_bernstein_majorization(&p, &big, n, &zs)
        }
        CheckId::SmirnovMajorization => {
            let (p, big) = majorized_pair_from(rng, n).map_err(lift)?;
            let z = grid_z(rng, &cfg.z_radii);
            let alpha = smirnov_alpha(rng, z.norm()).ok_or_else(|| Skipped {
                check_id: id,
                reason: "alpha draw too close to the pole".into(),
            })?;
            check_smirnov_majorization(&p, &big, n, alpha, z)
        }
        CheckId::MardenMajorization => {
            let (p, big) = majorized_pair_from(rng, n).map_err(lift)?;
            let z = grid_z(rng, &cfg.z_radii);
            check_marden_majorization(&p, &big, n, marden_lambdas(rng, n), z)
        }
        CheckId::ZeroPreservation => {
            let big = zeros_in_disk_from(rng, n);
            check_zero_preservation(&big, n, Complex::from_polar(1.0, random_phase(rng)))
        }
        CheckId::DilationGrowth => {
            let p = zeros_in_disk_from(rng, n);
            let radius = pick(rng, &cfg.r_values);
            let reach = roots(&p).map_err(lift)?.max_modulus() * (1.0 + 1e-9);
            let k = if rng.gen_bool(0.5) {
                reach
            } else {
                rng.gen_range(reach..=reach.max(1.0))
            };
            let r = rng.gen_range(k * k / radius..=radius);
            check_dilation_growth(&p, n, k, r, radius, &ring(1.0, GROWTH_ANGLES))
        }
        CheckId::ModifiedSmirnovBound => {
            let p = unrestricted_from(rng, n);
            let a = disk_parameter(rng);
            check_modified_smirnov_bound(&p, n, a, grid_z(rng, &cfg.z_radii))
        }
        CheckId::ReciprocalPairBound => {
            let p = unrestricted_from(rng, n);
            let a = disk_parameter(rng);
            check_reciprocal_pair_bound(&p, n, a, grid_z(rng, &cfg.z_radii))
        }
        CheckId::CombinationMajorization => {
            let (p, big) = majorized_pair_from(rng, n).map_err(lift)?;
            let (a, beta) = (disk_parameter(rng), disk_parameter(rng));
            let radius = pick(rng, &cfg.r_values);
            check_combination_majorization(&p, &big, n, a, beta, radius, &ring(1.0, SWEEP_ANGLES))
        }
        CheckId::CombinationBound
        | CheckId::ReciprocalCombinationBound
        | CheckId::NonvanishingCombinationBound => {
            let p = if id == CheckId::NonvanishingCombinationBound {
                no_zeros_in_disk_from(rng, n)
            } else {
                unrestricted_from(rng, n)
            };
            let (a, beta) = (disk_parameter(rng), disk_parameter(rng));
            let radius = pick(rng, &cfg.r_values);
            let z = grid_z(rng, &cfg.z_radii);
            match id {
                CheckId::CombinationBound => check_combination_bound(&p, n, a, beta, radius, z),
                CheckId::ReciprocalCombinationBound => {
                    check_reciprocal_combination_bound(&p, n, a, beta, radius, z)
                }
                _ => check_nonvanishing_combination_bound(&p, n, a, beta, radius, z),
            }
        }
    }
}

struct TrialResult {
    report: Option<TrialReport>,
    redraws: usize,
    last_skip: Option<String>,
}

fn run_trial(id: CheckId, trial: u64, cfg: &CampaignConfig, tol: &Tolerance) -> TrialResult {
    let mut rng = trial_rng(cfg.seed, trial, id);
    let mut last_skip = None;
    for attempt in 0..=MAX_REDRAWS {
        match draw(id, &mut rng, cfg) {
            Ok(mut report) => {
                report.judge(tol);
                report.inputs.seed = Some(cfg.seed);
                report.inputs.trial = Some(trial);
                return TrialResult {
                    report: Some(report),
                    redraws: attempt,
                    last_skip,
                };
            }
            Err(skip) => last_skip = Some(skip.reason),
        }
    }
    TrialResult {
        report: None,
        redraws: MAX_REDRAWS + 1,
        last_skip,
    }
}

fn summarize(id: CheckId, requested: usize, results: Vec<TrialResult>) -> CheckSummary {
    let mut s = CheckSummary {
        check_id: id,
        requested,
        trials: 0,
        passes: 0,
        failures: 0,
        redraws: 0,
        unevaluated: 0,
        worst_margin: None,
        sharpest_ratio: None,
        sharpest_trial: None,
        max_form_rel_diff: None,
        last_skip_reason: None,
        failing: Vec::new(),
    };
    for (trial, r) in results.into_iter().enumerate() {
        s.redraws += r.redraws;
        if r.last_skip.is_some() {
            s.last_skip_reason = r.last_skip;
        }
        let Some(report) = r.report else {
            s.unevaluated += 1;
            continue;
        };
        s.trials += 1;
        s.worst_margin = Some(s.worst_margin.map_or(report.margin, |m: f64| m.min(report.margin)));
        let ratio = report.ratio();
        if s.sharpest_ratio.is_none_or(|best| ratio > best) {
            s.sharpest_ratio = Some(ratio);
            s.sharpest_trial = Some(trial as u64);
        }
        if let Some(form) = &report.equivalent_form {
            s.max_form_rel_diff = Some(s.max_form_rel_diff.map_or(form.rel_diff, |d: f64| d.max(form.rel_diff)));
        }
        if report.passed {
            s.passes += 1;
        } else {
            s.failures += 1;
            if s.failing.len() < MAX_LISTED_FAILURES {
                s.failing.push(report);
            }
        }
    }
    s
}

fn explore(id: CheckId, trial: u64, cfg: &CampaignConfig, tol: &Tolerance) -> Option<TrialReport> {
    let mut rng = trial_rng(cfg.seed, trial, id);
    let n = pick(&mut rng, &cfg.degrees);
    let p = zeros_in_disk_from(&mut rng, n);
    let m = unit_circle_max(&p).ok()?;
    let radius = pick(&mut rng, &cfg.r_values);
    let outcome = match id {
        CheckId::ErdosLax => erdos_lax_core(&p, n),
        CheckId::AnkenyRivlin => ankeny_rivlin_core(&p, n, radius),
        CheckId::AzizDawoodDeriv => aziz_dawood_deriv_core(&p, n),
        CheckId::AzizDawoodGrowth => aziz_dawood_growth_core(&p, n, radius),
        CheckId::NonvanishingCombinationBound => {
            let (a, beta) = (disk_parameter(&mut rng), disk_parameter(&mut rng));
            let z = grid_z(&mut rng, &cfg.z_radii);
            nonvanishing_combination_bound_core(&p, n, a, beta, radius, z, m)
        }
        _ => return None,
    };
    let mut report = outcome.ok()?;
    report.judge(tol);
    report.inputs.seed = Some(cfg.seed);
    report.inputs.trial = Some(trial);
    Some(report)
}

const EXPLORATORY_CHECKS: [CheckId; 5] = [
    CheckId::ErdosLax,
    CheckId::AnkenyRivlin,
    CheckId::AzizDawoodDeriv,
    CheckId::AzizDawoodGrowth,
    CheckId::NonvanishingCombinationBound,
];

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    run_campaign_with_threads(config, None)
}

/// Runs the campaign on a dedicated pool of `threads` workers (rayon's default when `None`).
pub fn run_campaign_with_threads(config: &CampaignConfig, threads: Option<usize>) -> Result<CampaignReport> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| invalid("threads", e.to_string()))?;
    let tol = config.tolerance.unwrap_or_default();
    let mut checks: Vec<CheckId> = Vec::new();
    for &id in &config.checks {
        if !checks.contains(&id) {
            checks.push(id);
        }
    }

    let jobs: Vec<(CheckId, u64)> = checks
        .iter()
        .flat_map(|&id| (0..config.trials as u64).map(move |t| (id, t)))
        .collect();
    let results: Vec<TrialResult> =
        pool.install(|| jobs.par_iter().map(|&(id, t)| run_trial(id, t, config, &tol)).collect());

    let mut summaries = Vec::with_capacity(checks.len());
    let mut rest = results.into_iter();
    for &id in &checks {
        let chunk: Vec<TrialResult> = rest.by_ref().take(config.trials).collect();
        summaries.push(summarize(id, config.trials, chunk));
    }

    let mut exploratory = Vec::new();
    if config.exploratory {
        for id in EXPLORATORY_CHECKS.into_iter().filter(|id| checks.contains(id)) {
            let reports: Vec<Option<TrialReport>> = pool.install(|| {
                (0..config.trials as u64)
                    .into_par_iter()
                    .map(|t| explore(id, t, config, &tol))
                    .collect()
            });
            let evaluated: Vec<TrialReport> = reports.into_iter().flatten().collect();
            let violating: Vec<&TrialReport> = evaluated.iter().filter(|r| !r.passed).collect();
            exploratory.push(ExploratorySummary {
                check_id: id,
                trials: evaluated.len(),
                violations: violating.len(),
                largest_ratio: evaluated.iter().map(TrialReport::ratio).fold(None, |m, r| {
                    Some(m.map_or(r, |x: f64| x.max(r)))
                }),
                example: violating.first().map(|r| (*r).clone()),
            });
        }
    }

    let total_trials = summaries.iter().map(|s| s.trials).sum();
    let total_passes = summaries.iter().map(|s| s.passes).sum();
    let total_failures = summaries.iter().map(|s| s.failures).sum();
    Ok(CampaignReport {
        schema: REPORT_SCHEMA.to_string(),
        prng: PRNG_ALGORITHM.to_string(),
        config: config.clone(),
        checks: summaries,
        total_trials,
        total_passes,
        total_failures,
        all_passed: total_failures == 0,
        exploratory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(checks: Vec<CheckId>, trials: usize) -> CampaignConfig {
        CampaignConfig {
            trials,
            checks,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn empty_check_list_gives_empty_report() {
        let report = run_campaign(&small(vec![], 10)).unwrap();
        assert!(report.checks.is_empty() && report.all_passed && report.total_trials == 0);
    }

    #[test]
    fn every_check_runs_and_passes() {
        let report = run_campaign(&small(CheckId::ALL.to_vec(), 20)).unwrap();
        for s in &report.checks {
            assert_eq!(s.unevaluated, 0, "{} never satisfied its hypotheses: {:?}", s.check_id, s.last_skip_reason);
            assert_eq!(s.failures, 0, "{}: {:?}", s.check_id, s.failing.first());
            assert_eq!(s.failing.len(), s.trials - s.passes);
        }
        assert!(report.all_passed);
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let cfg = small(vec![CheckId::CombinationBound, CheckId::SmirnovMajorization], 40);
        let one = run_campaign_with_threads(&cfg, Some(1)).unwrap();
        let four = run_campaign_with_threads(&cfg, Some(4)).unwrap();
        assert_eq!(crate::json::to_string(&one).unwrap(), crate::json::to_string(&four).unwrap());
    }

    #[test]
    fn corrupted_tolerance_fails() {
        let mut cfg = small(vec![CheckId::Growth], 20);
        cfg.tolerance = Some(Tolerance { rel: -0.9, abs: 0.0 });
        let report = run_campaign(&cfg).unwrap();
        assert!(!report.all_passed);
        assert_eq!(report.checks[0].failing.len(), report.checks[0].failures);
    }

    #[test]
    fn config_parsing() {
        let cfg: CampaignConfig =
            serde_json::from_str(r#"{"seed": 7, "trials": 3, "checks": ["eq15", "eq1"], "R_values": [1.0, 3.0]}"#).unwrap();
        assert_eq!(cfg.checks, vec![CheckId::CombinationBound, CheckId::Bernstein]);
        assert_eq!(cfg.degrees, CampaignConfig::default().degrees);
        assert!(serde_json::from_str::<CampaignConfig>(r#"{"sead": 1}"#).is_err());
        assert!(serde_json::from_str::<CampaignConfig>(r#"{"checks": ["eq8"]}"#).is_err());
        let bad = CampaignConfig {
            z_radii: vec![0.5],
            ..CampaignConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn exploratory_mode_finds_violations() {
        let mut cfg = small(vec![CheckId::ErdosLax], 50);
        cfg.exploratory = true;
        let report = run_campaign(&cfg).unwrap();
        assert!(report.all_passed);
        let ex = &report.exploratory[0];
        assert!(ex.violations > 0 && ex.example.is_some());
    }

    #[test]
    fn lambda_draws_are_admissible() {
        for t in 0..500 {
            let mut rng = trial_rng(1, t, CheckId::MardenMajorization);
            let n = 1 + (t as usize % 12);
            let l = marden_lambdas(&mut rng, n);
            assert!(crate::operators::marden_admissible(l, n).unwrap(), "{l:?} for n = {n}");
        }
    }
}
