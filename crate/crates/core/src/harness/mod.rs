//! Numerical checkers for the Bernstein-type inequalities, the seeded
//! campaign runner, and the equality-case (sharpness) scanner.
//!
//! A checker evaluates the two sides of one inequality on inputs that satisfy
//! its hypotheses and returns a [`TrialReport`]. Inputs that violate a
//! hypothesis produce [`Skipped`], never a failure.

pub mod campaign;
pub mod checks;
pub mod sharpness;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::{Complex, Polynomial};

pub use campaign::{run_campaign, run_campaign_with_threads, CampaignConfig, CampaignReport, CheckSummary};
pub use checks::*;
pub use sharpness::{sharpness_scan, ScanFamily, SharpnessGrid, SharpnessReport};

pub const REPORT_SCHEMA: &str = "smirnov-lab-report/1";

/// Relative tolerance used when comparing two algebraically equivalent evaluations.
pub const FORM_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-9, abs: 1e-12 }
    }
}

impl Tolerance {
    pub fn holds(&self, lhs: f64, rhs: f64) -> bool {
        lhs <= rhs * (1.0 + self.rel) + self.abs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CheckId {
    Bernstein,
    Growth,
    ErdosLax,
    AnkenyRivlin,
    AzizDawoodDeriv,
    AzizDawoodGrowth,
    BernsteinMajorization,
    SmirnovMajorization,
    MardenMajorization,
    ZeroPreservation,
    DilationGrowth,
    ModifiedSmirnovBound,
    ReciprocalPairBound,
    CombinationMajorization,
    CombinationBound,
    ReciprocalCombinationBound,
    NonvanishingCombinationBound,
}

impl CheckId {
    pub const ALL: [CheckId; 17] = [
        CheckId::Bernstein,
        CheckId::Growth,
        CheckId::ErdosLax,
        CheckId::AnkenyRivlin,
        CheckId::AzizDawoodDeriv,
        CheckId::AzizDawoodGrowth,
        CheckId::BernsteinMajorization,
        CheckId::SmirnovMajorization,
        CheckId::MardenMajorization,
        CheckId::ZeroPreservation,
        CheckId::DilationGrowth,
        CheckId::ModifiedSmirnovBound,
        CheckId::ReciprocalPairBound,
        CheckId::CombinationMajorization,
        CheckId::CombinationBound,
        CheckId::ReciprocalCombinationBound,
        CheckId::NonvanishingCombinationBound,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Bernstein => "eq1",
            CheckId::Growth => "eq2",
            CheckId::ErdosLax => "eq3",
            CheckId::AnkenyRivlin => "eq4",
            CheckId::AzizDawoodDeriv => "eq5",
            CheckId::AzizDawoodGrowth => "eq6",
            CheckId::BernsteinMajorization => "derivative_majorization",
            CheckId::SmirnovMajorization => "eq7",
            CheckId::MardenMajorization => "eq9",
            CheckId::ZeroPreservation => "zero_preservation",
            CheckId::DilationGrowth => "dilation_growth",
            CheckId::ModifiedSmirnovBound => "eq11",
            CheckId::ReciprocalPairBound => "eq12",
            CheckId::CombinationMajorization => "eq13",
            CheckId::CombinationBound => "eq14",
            CheckId::ReciprocalCombinationBound => "eq16",
            CheckId::NonvanishingCombinationBound => "eq18",
        }
    }

    /// Position in [`CheckId::ALL`]; used as the PRNG stream id.
    pub fn ordinal(self) -> u64 {
        CheckId::ALL.iter().position(|&c| c == self).expect("listed") as u64
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        // the pointwise-expanded forms are evaluated by the same checkers
        let canonical = match s {
            "eq15" => "eq14",
            "eq17" => "eq16",
            "eq19" => "eq18",
            other => other,
        };
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == canonical)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl TryFrom<String> for CheckId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<CheckId> for String {
    fn from(c: CheckId) -> String {
        c.as_str().to_string()
    }
}

/// Everything needed to replay a trial.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Polynomial>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub big_p: Option<Polynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<[Complex; 3]>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub dilation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

/// Second evaluation of the same inequality through an independent route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormComparison {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Largest relative difference between the two routes, over both sides.
    pub rel_diff: f64,
    pub agree: bool,
}

impl FormComparison {
    /// Compares `(lhs, rhs)` with `(alt_lhs, alt_rhs)`. The left sides are compared
    /// on the scale of the right side, since they may cancel to near zero.
    pub fn new(label: &'static str, lhs: f64, rhs: f64, alt_lhs: f64, alt_rhs: f64) -> Self {
        let lhs_scale = lhs.abs().max(alt_lhs.abs()).max(rhs.abs() * 1e-2);
        let rhs_scale = rhs.abs().max(alt_rhs.abs());
        let rel = |d: f64, s: f64| if s == 0.0 { if d == 0.0 { 0.0 } else { f64::INFINITY } } else { d / s };
        let rel_diff = rel((lhs - alt_lhs).abs(), lhs_scale).max(rel((rhs - alt_rhs).abs(), rhs_scale));
        FormComparison {
            label: label.to_string(),
            lhs: alt_lhs,
            rhs: alt_rhs,
            rel_diff,
            agree: rel_diff <= FORM_REL_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub check_id: CheckId,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalent_form: Option<FormComparison>,
    pub inputs: TrialInputs,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl TrialReport {
    pub fn new(check_id: CheckId, lhs: f64, rhs: f64, inputs: TrialInputs) -> Self {
        let mut report = TrialReport {
            check_id,
            lhs,
            rhs,
            margin: rhs - lhs,
            passed: false,
            equivalent_form: None,
            inputs,
            notes: String::new(),
        };
        report.judge(&Tolerance::default());
        report
    }

    pub fn with_form(mut self, form: FormComparison) -> Self {
        self.equivalent_form = Some(form);
        self.judge(&Tolerance::default());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes = note.into();
        self
    }

    /// Recomputes `passed` under `tol`; a disagreeing equivalent form also fails the trial.
    pub fn judge(&mut self, tol: &Tolerance) {
        let forms_ok = self.equivalent_form.as_ref().is_none_or(|f| f.agree);
        self.passed = self.lhs.is_finite() && self.rhs.is_finite() && tol.holds(self.lhs, self.rhs) && forms_ok;
    }

    /// `lhs / rhs`, with `0/0 = 0`.
    pub fn ratio(&self) -> f64 {
        if self.rhs > 0.0 {
            self.lhs / self.rhs
        } else if self.lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// A trial whose inputs do not satisfy the checked statement's hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub check_id: CheckId,
    pub reason: String,
}

pub type CheckOutcome = Result<TrialReport, Skipped>;
