//! Smirnov, modified Smirnov and Marden operators on complex polynomials, with
//! circle analysis, constrained random generators and a harness that checks
//! Bernstein-type inequalities numerically.
//!
//! ```
//! use smirnov_lab::{modified_smirnov, Complex, Polynomial};
//!
//! // S~_a[z^2 + 1] = (1 + a z) 2z - 2a (z^2 + 1) = 2z - 2a at a = 0.5
//! let p = Polynomial::from_real(&[1.0, 0.0, 1.0]).unwrap();
//! let image = modified_smirnov(&p, Complex::new(0.5, 0.0), 2).unwrap();
//! assert_eq!(image.coeffs(), &[Complex::new(-1.0, 0.0), Complex::new(2.0, 0.0)]);
//! ```

pub mod circle;
pub mod cli;
pub mod error;
pub mod generators;
pub mod harness;
pub mod json;
pub mod operators;
pub mod poly;

pub use circle::{circle_profile, max_ratio, roots, CircleProfile, ZeroLocation, ZeroSet};
pub use error::{Error, Result};
pub use generators::{Family, GeneratorConfig};
pub use harness::{
    run_campaign, sharpness_scan, CampaignConfig, CampaignReport, CheckId, ScanFamily, SharpnessGrid, TrialReport,
};
pub use operators::{
    dilated_modified_smirnov, marden, marden_admissible, marden_smirnov_alpha, modified_smirnov, omega_member,
    smirnov, smirnov_combination, OperatorSpec,
};
pub use poly::{Complex, Polynomial};
