//! Equality-case scans: evaluate a bound over its extremal family on a fixed
//! parameter grid and report the extreme lhs/rhs ratios.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{binomial_from, monomial_from, rng_from_seed, zeros_in_disk_from, MAX_DEGREE};
use crate::operators::omega_member;
use crate::poly::{Complex, Polynomial};

use super::checks::*;
use super::{CheckId, CheckOutcome, TrialReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanFamily {
    /// `gamma z^n`
    Monomial,
    /// `alpha z^n + beta` with `|alpha| = |beta|`
    Binomial,
    /// `p = e^{i gamma} P` with `P` having its zeros inside the disk
    RotatedPair,
}

impl ScanFamily {
    pub fn name(self) -> &'static str {
        match self {
            ScanFamily::Monomial => "monomial",
            ScanFamily::Binomial => "binomial",
            ScanFamily::RotatedPair => "rotated_pair",
        }
    }

    pub fn supports(self, id: CheckId) -> bool {
        use CheckId::*;
        match self {
            ScanFamily::Monomial => matches!(
                id,
                Bernstein
                    | Growth
                    | DilationGrowth
                    | ModifiedSmirnovBound
                    | ReciprocalPairBound
                    | CombinationBound
                    | ReciprocalCombinationBound
            ),
            ScanFamily::Binomial => matches!(
                id,
                ErdosLax | AnkenyRivlin | AzizDawoodDeriv | AzizDawoodGrowth | NonvanishingCombinationBound
            ),
            ScanFamily::RotatedPair => matches!(
                id,
                BernsteinMajorization | SmirnovMajorization | MardenMajorization | CombinationMajorization
            ),
        }
    }
}

impl fmt::Display for ScanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monomial" | "extremal_monomial" => Ok(ScanFamily::Monomial),
            "binomial" | "extremal_binomial" => Ok(ScanFamily::Binomial),
            "rotated_pair" => Ok(ScanFamily::RotatedPair),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SharpnessGrid {
    pub seed: u64,
    pub degrees: Vec<usize>,
    /// Random family members per degree.
    pub instances: usize,
    pub z_radii: Vec<f64>,
    pub z_angles: usize,
    #[serde(rename = "R_values")]
    pub r_values: Vec<f64>,
    pub a_values: Vec<Complex>,
    pub beta_values: Vec<Complex>,
    pub lambda_values: Vec<[Complex; 3]>,
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

impl Default for SharpnessGrid {
    fn default() -> Self {
        SharpnessGrid {
            seed: 42,
            degrees: (1..=12).collect(),
            instances: 3,
            z_radii: vec![1.0, 1.01, 1.5, 2.0, 5.0],
            z_angles: 8,
            r_values: vec![1.0, 1.001, 1.5, 2.0, 4.0],
            a_values: vec![c(0.0, 0.0), c(0.3, 0.4), c(-1.0, 0.0), c(0.0, 1.0), c(0.6, -0.8)],
            beta_values: vec![c(0.0, 0.0), c(-0.5, 0.0), c(0.0, 0.7), c(1.0, 0.0), c(-0.6, -0.8)],
            lambda_values: vec![
                [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
                [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
                [c(-0.5, 0.2), c(1.0, 0.3), c(0.0, 0.0)],
                [c(0.2, 0.0), c(-0.4, 0.1), c(0.05, 0.0)],
            ],
        }
    }
}

impl SharpnessGrid {
    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, why: &str| Err(crate::error::invalid(name, why));
        if self.degrees.iter().any(|&d| d == 0 || d > MAX_DEGREE) || self.degrees.is_empty() {
            return bad("degrees", "must be a non-empty subset of 1..=16");
        }
        if self.instances == 0 || self.z_angles == 0 {
            return bad("grid", "instances and z_angles must be positive");
        }
        if self.z_radii.is_empty() || self.z_radii.iter().any(|r| !r.is_finite() || *r < 1.0) {
            return bad("z_radii", "must be non-empty radii >= 1");
        }
        if self.r_values.is_empty() || self.r_values.iter().any(|r| !r.is_finite() || *r < 1.0) {
            return bad("R_values", "must be non-empty dilations >= 1");
        }
        if self.a_values.is_empty() || self.beta_values.is_empty() || self.lambda_values.is_empty() {
            return bad("grid", "parameter lists must be non-empty");
        }
        Ok(())
    }

    fn points(&self, radii: &[f64]) -> Vec<Complex> {
        radii
            .iter()
            .flat_map(|&r| {
                (0..self.z_angles).map(move |j| Complex::from_polar(r, TAU * j as f64 / self.z_angles as f64))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub check_id: CheckId,
    pub family: ScanFamily,
    pub points: usize,
    /// Grid points skipped for a failed hypothesis or a vanishing right side.
    pub skipped: usize,
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub argmax: TrialReport,
    pub argmin: TrialReport,
    pub all_passed: bool,
}

#[derive(Default)]
struct Tally {
    points: usize,
    skipped: usize,
    all_passed: bool,
    max: Option<TrialReport>,
    min: Option<TrialReport>,
}

impl Tally {
    fn add(&mut self, outcome: CheckOutcome) {
        let report = match outcome {
            Ok(r) if r.rhs > 0.0 && r.rhs.is_finite() => r,
            _ => {
                self.skipped += 1;
                return;
            }
        };
        if self.points == 0 {
            self.all_passed = true;
        }
        self.points += 1;
        self.all_passed &= report.passed;
        let ratio = report.ratio();
        if self.max.as_ref().is_none_or(|m| ratio > m.ratio()) {
            self.max = Some(report.clone());
        }
        if self.min.as_ref().is_none_or(|m| ratio < m.ratio()) {
            self.min = Some(report);
        }
    }
}

fn instance_rng(seed: u64, n: usize, i: usize) -> rand_chacha::ChaCha8Rng {
    rng_from_seed(seed ^ ((n as u64) << 32 | i as u64))
}

fn scan_monomial(id: CheckId, grid: &SharpnessGrid, p: &Polynomial, n: usize, tally: &mut Tally) {
    let m = match unit_circle_max(p) {
        Ok(m) => m,
        Err(_) => {
            tally.skipped += 1;
            return;
        }
    };
    let exterior = grid.points(&grid.z_radii);
    match id {
        CheckId::Bernstein => tally.add(check_bernstein(p, n)),
        CheckId::Growth => {
            for &radius in &grid.r_values {
                tally.add(check_growth(p, n, radius));
            }
        }
        CheckId::DilationGrowth => {
            let circle = grid.points(&[1.0]);
            for &radius in &grid.r_values {
                tally.add(check_dilation_growth(p, n, 0.0, 1.0, radius, &circle));
            }
        }
        CheckId::ModifiedSmirnovBound | CheckId::ReciprocalPairBound => {
            for &z in &exterior {
                for &a in &grid.a_values {
                    tally.add(if id == CheckId::ModifiedSmirnovBound {
                        modified_smirnov_bound_core(p, n, a, z, m)
                    } else {
                        reciprocal_pair_bound_core(p, n, a, z, m)
                    });
                }
            }
        }
        _ => {
            for &z in &exterior {
                for &a in &grid.a_values {
                    for &beta in &grid.beta_values {
                        for &radius in &grid.r_values {
                            tally.add(if id == CheckId::CombinationBound {
                                combination_bound_core(p, n, a, beta, radius, z, m)
                            } else {
                                reciprocal_combination_bound_core(p, n, a, beta, radius, z, m)
                            });
                        }
                    }
                }
            }
        }
    }
}

fn scan_binomial(id: CheckId, grid: &SharpnessGrid, p: &Polynomial, n: usize, tally: &mut Tally) {
    // the hypothesis is checked once per instance through the gated checker
    let gate = check_erdos_lax(p, n);
    let m = unit_circle_max(p);
    let (Ok(_), Ok(m)) = (gate, m) else {
        tally.skipped += 1;
        return;
    };
    match id {
        CheckId::ErdosLax => tally.add(erdos_lax_core(p, n)),
        CheckId::AzizDawoodDeriv => tally.add(aziz_dawood_deriv_core(p, n)),
        CheckId::AnkenyRivlin | CheckId::AzizDawoodGrowth => {
            for &radius in &grid.r_values {
                tally.add(if id == CheckId::AnkenyRivlin {
                    ankeny_rivlin_core(p, n, radius)
                } else {
                    aziz_dawood_growth_core(p, n, radius)
                });
            }
        }
        _ => {
            for &z in &grid.points(&grid.z_radii) {
                for &a in &grid.a_values {
                    for &beta in &grid.beta_values {
                        for &radius in &grid.r_values {
                            tally.add(nonvanishing_combination_bound_core(p, n, a, beta, radius, z, m));
                        }
                    }
                }
            }
        }
    }
}

fn scan_rotated_pair(id: CheckId, grid: &SharpnessGrid, p: &Polynomial, big: &Polynomial, n: usize, tally: &mut Tally) {
    let exterior = grid.points(&grid.z_radii);
    match id {
        CheckId::BernsteinMajorization => {
            for &z in &exterior {
                tally.add(check_bernstein_majorization(p, big, n, &[z]));
            }
        }
        CheckId::SmirnovMajorization => {
            for &z in &exterior {
                // the a grid doubles as the alpha grid; points outside the region are skipped
                for &alpha in grid.a_values.iter().filter(|&&al| omega_member(al, z.norm())) {
                    tally.add(check_smirnov_majorization(p, big, n, alpha, z));
                }
            }
        }
        CheckId::MardenMajorization => {
            for &z in &exterior {
                for &lambdas in &grid.lambda_values {
                    tally.add(check_marden_majorization(p, big, n, lambdas, z));
                }
            }
        }
        _ => {
            let circle = grid.points(&[1.0]);
            for &a in &grid.a_values {
                for &beta in &grid.beta_values {
                    for &radius in &grid.r_values {
                        for &z in &circle {
                            tally.add(check_combination_majorization(p, big, n, a, beta, radius, &[z]));
                        }
                    }
                }
            }
        }
    }
}

/// Sup and inf of lhs/rhs for `check` over `family` on `grid`.
pub fn sharpness_scan(check: CheckId, family: ScanFamily, grid: &SharpnessGrid) -> Result<SharpnessReport> {
    if !family.supports(check) {
        return Err(Error::UnsupportedScan {
            check: check.to_string(),
            family: family.to_string(),
        });
    }
    grid.validate()?;
    let mut tally = Tally::default();
    for &n in &grid.degrees {
        for i in 0..grid.instances {
            let mut rng = instance_rng(grid.seed, n, i);
            match family {
                ScanFamily::Monomial => scan_monomial(check, grid, &monomial_from(&mut rng, n), n, &mut tally),
                ScanFamily::Binomial => scan_binomial(check, grid, &binomial_from(&mut rng, n), n, &mut tally),
                ScanFamily::RotatedPair => {
                    let big = zeros_in_disk_from(&mut rng, n);
                    let gamma = crate::generators::random_phase(&mut rng);
                    let p = big.scale(Complex::from_polar(1.0, gamma));
                    scan_rotated_pair(check, grid, &p, &big, n, &mut tally);
                }
            }
        }
    }
    let (Some(argmax), Some(argmin)) = (tally.max, tally.min) else {
        return Err(crate::error::invalid("grid", "no grid point satisfied the hypotheses"));
    };
    Ok(SharpnessReport {
        check_id: check,
        family,
        points: tally.points,
        skipped: tally.skipped,
        max_ratio: argmax.ratio(),
        min_ratio: argmin.ratio(),
        argmax,
        argmin,
        all_passed: tally.all_passed,
    })
}
