//! Seeded random polynomial families.
//!
//! Every generator is a pure function of `(seed, degree, family)`. The stream
//! comes from ChaCha8 seeded with `seed_from_u64`, so a campaign can be
//! replayed from the algorithm name and the seed alone.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::circle::max_ratio;
use crate::error::{invalid, Error, Result};
use crate::poly::{Complex, Polynomial};

/// Name recorded in reports next to the seed.
pub const PRNG_ALGORITHM: &str = "ChaCha8Rng/rand_chacha-0.3/seed_from_u64";

/// Distance kept between planted roots and the unit circle in the strict families.
pub const ROOT_MARGIN: f64 = 1e-3;

/// Majorized pairs are rescaled so that `max |p/P|` equals `1 - PAIR_SLACK`.
pub const PAIR_SLACK: f64 = 1e-6;

pub const MAX_DEGREE: usize = 16;

const PAIR_RETRIES: usize = 8;

pub type TrialRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    ZerosInClosedDisk,
    NoZerosInOpenDisk,
    Unrestricted,
    MajorizedPair,
    ExtremalMonomial,
    ExtremalBinomial,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ZerosInClosedDisk => "zeros_in_closed_disk",
            Family::NoZerosInOpenDisk => "no_zeros_in_open_disk",
            Family::Unrestricted => "unrestricted",
            Family::MajorizedPair => "majorized_pair",
            Family::ExtremalMonomial => "extremal_monomial",
            Family::ExtremalBinomial => "extremal_binomial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub degree: usize,
    pub family: Family,
}

impl GeneratorConfig {
    pub fn new(seed: u64, degree: usize, family: Family) -> Result<Self> {
        let cfg = GeneratorConfig { seed, degree, family };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_DEGREE).contains(&self.degree) {
            return Err(invalid(
                "degree",
                format!("must lie in 1..={MAX_DEGREE}, got {}", self.degree),
            ));
        }
        Ok(())
    }

    fn expect(&self, family: Family) -> Result<()> {
        self.validate()?;
        if self.family != family {
            return Err(Error::FamilyMismatch {
                expected: family.name(),
                got: self.family.name().to_string(),
            });
        }
        Ok(())
    }
}

/// Uniform angle in `[0, 2 pi)`.
pub fn random_phase<R: Rng>(rng: &mut R) -> f64 {
    rng.gen::<f64>() * TAU
}

/// Uniform point of the closed unit disk (area measure).
pub fn random_in_unit_disk<R: Rng>(rng: &mut R) -> Complex {
    let r = rng.gen::<f64>().sqrt();
    Complex::from_polar(r, random_phase(rng))
}

/// Unit-modulus complex scaled by `10^u`, `u` uniform on `(-1, 1)`.
pub fn random_scale<R: Rng>(rng: &mut R) -> Complex {
    let magnitude = 10f64.powf(rng.gen_range(-1.0..1.0));
    Complex::from_polar(magnitude, random_phase(rng))
}

fn standard_complex<R: Rng>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Root strictly inside the unit disk: radius `sqrt(u) (1 - margin)`.
pub fn root_inside<R: Rng>(rng: &mut R) -> Complex {
    let radius = rng.gen::<f64>().sqrt() * (1.0 - ROOT_MARGIN);
    Complex::from_polar(radius, random_phase(rng))
}

/// Root outside the open unit disk: the reciprocal radius of [`root_inside`].
pub fn root_outside<R: Rng>(rng: &mut R) -> Complex {
    // u in (0, 1] keeps the radius finite
    let u = 1.0 - rng.gen::<f64>();
    let radius = 1.0 / (u.sqrt() * (1.0 - ROOT_MARGIN));
    Complex::from_polar(radius, random_phase(rng))
}

pub fn zeros_in_disk_from<R: Rng>(rng: &mut R, n: usize) -> Polynomial {
    let roots: Vec<Complex> = (0..n).map(|_| root_inside(rng)).collect();
    Polynomial::from_roots(&roots, random_scale(rng))
}

pub fn no_zeros_in_disk_from<R: Rng>(rng: &mut R, n: usize) -> Polynomial {
    let roots: Vec<Complex> = (0..n).map(|_| root_outside(rng)).collect();
    Polynomial::from_roots(&roots, random_scale(rng))
}

/// Independent standard complex normal coefficients, nominal degree `n`.
pub fn unrestricted_from<R: Rng>(rng: &mut R, n: usize) -> Polynomial {
    let coeffs = (0..=n).map(|_| standard_complex(rng)).collect();
    Polynomial::new(coeffs).expect("normal samples are finite")
}

pub fn monomial_from<R: Rng>(rng: &mut R, n: usize) -> Polynomial {
    Polynomial::monomial(n, random_scale(rng))
}

/// `alpha z^n + beta` with independent phases and `|alpha| = |beta|`.
pub fn binomial_from<R: Rng>(rng: &mut R, n: usize) -> Polynomial {
    let alpha = random_scale(rng);
    let beta = Complex::from_polar(alpha.norm(), random_phase(rng));
    let mut coeffs = vec![Complex::new(0.0, 0.0); n + 1];
    coeffs[0] = beta;
    coeffs[n] += alpha;
    Polynomial::new(coeffs).expect("finite coefficients")
}

/// `(p, P)` with `P` having zeros inside the disk and `max |p/P| = 1 - PAIR_SLACK` on the circle.
pub fn majorized_pair_from<R: Rng>(rng: &mut R, n: usize) -> Result<(Polynomial, Polynomial)> {
    for _ in 0..PAIR_RETRIES {
        let big = zeros_in_disk_from(rng, n);
        let small_degree = rng.gen_range(0..=n);
        let seed = unrestricted_from(rng, small_degree).with_nominal_degree(n)?;
        match max_ratio(&seed, &big, 1.0) {
            Ok(ratio) if ratio > 0.0 && ratio.is_finite() => {
                let small = seed.scale(Complex::new((1.0 - PAIR_SLACK) / ratio, 0.0));
                return Ok((small, big));
            }
            Ok(_) | Err(Error::VanishesOnCircle { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed(PAIR_RETRIES))
}

pub fn gen_zeros_in_disk(cfg: &GeneratorConfig) -> Result<Polynomial> {
    cfg.expect(Family::ZerosInClosedDisk)?;
    Ok(zeros_in_disk_from(&mut rng_from_seed(cfg.seed), cfg.degree))
}

pub fn gen_no_zeros_in_disk(cfg: &GeneratorConfig) -> Result<Polynomial> {
    cfg.expect(Family::NoZerosInOpenDisk)?;
    Ok(no_zeros_in_disk_from(&mut rng_from_seed(cfg.seed), cfg.degree))
}

pub fn gen_unrestricted(cfg: &GeneratorConfig) -> Result<Polynomial> {
    cfg.expect(Family::Unrestricted)?;
    Ok(unrestricted_from(&mut rng_from_seed(cfg.seed), cfg.degree))
}

pub fn gen_majorized_pair(cfg: &GeneratorConfig) -> Result<(Polynomial, Polynomial)> {
    cfg.expect(Family::MajorizedPair)?;
    majorized_pair_from(&mut rng_from_seed(cfg.seed), cfg.degree)
}

/// `kind` must be one of the two extremal families.
pub fn gen_extremal(cfg: &GeneratorConfig, kind: Family) -> Result<Polynomial> {
    cfg.expect(kind)?;
    let mut rng = rng_from_seed(cfg.seed);
    match kind {
        Family::ExtremalMonomial => Ok(monomial_from(&mut rng, cfg.degree)),
        Family::ExtremalBinomial => Ok(binomial_from(&mut rng, cfg.degree)),
        other => Err(Error::FamilyMismatch {
            expected: "extremal_monomial or extremal_binomial",
            got: other.name().to_string(),
        }),
    }
}
