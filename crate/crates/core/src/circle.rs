//! Extremes of `|p|` on circles and root localization.
//!
//! Extremes are found by sampling a uniform angular grid and refining the
//! best grid candidates with golden-section search inside their two
//! neighbouring sample intervals. Reported values never fall below the grid
//! maximum nor above the grid minimum.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::poly::{Complex, Polynomial};

pub const DEFAULT_SAMPLES: usize = 4096;

/// Angular bracket width at which golden-section refinement stops.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

/// Roots within this distance of the unit circle count as lying on it.
pub const BOUNDARY_BAND: f64 = 1e-8;

/// Largest accepted scaled residual `|p(r)| / sum |c_j| |r|^j` for a computed root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;

pub const ROOT_MAX_ITERATIONS: usize = 500;
pub const ROOT_STEP_TOL: f64 = 1e-13;

/// Denominators with a root this close to the circle are rejected by [`max_ratio`].
pub const VANISHING_MARGIN: f64 = 1e-6;

// grid candidates refined per extremum; caps the cost for constant-modulus inputs
const MAX_CANDIDATES: usize = 16;
// candidates must be within this relative distance of the grid extremum
const CANDIDATE_WINDOW: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleProfile {
    pub radius: f64,
    pub max_value: f64,
    pub argmax_theta: f64,
    pub min_value: f64,
    pub argmin_theta: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy)]
struct Extremes {
    max_value: f64,
    argmax: f64,
    min_value: f64,
    argmin: f64,
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Maximizes `f` on `[lo, hi]`, returning `(argmax, max)`.
fn golden_section_max<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > ANGLE_TOLERANCE {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        // the interior points collapse once the bracket hits floating-point resolution
        if x1 >= x2 {
            break;
        }
    }
    let mid = 0.5 * (lo + hi);
    [(x1, f1), (x2, f2), (mid, f(mid))]
        .into_iter()
        .fold((mid, f64::NEG_INFINITY), |best, cand| if cand.1 > best.1 { cand } else { best })
}

/// Indices of grid local maxima of `values` (cyclic) close to the global one, best first.
fn candidates(values: &[f64], best: f64, window: f64) -> Vec<usize> {
    let n = values.len();
    let mut found: Vec<usize> = (0..n)
        .filter(|&k| {
            let v = values[k];
            v >= values[(k + n - 1) % n] && v >= values[(k + 1) % n] && v >= best - window
        })
        .collect();
    found.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    found.truncate(MAX_CANDIDATES);
    found
}

fn extremes<F: Fn(f64) -> f64>(f: F, samples: usize) -> Extremes {
    let step = TAU / samples as f64;
    let values: Vec<f64> = (0..samples).map(|k| f(k as f64 * step)).collect();

    let (mut imax, mut imin) = (0, 0);
    for (k, &v) in values.iter().enumerate() {
        if v > values[imax] {
            imax = k;
        }
        if v < values[imin] {
            imin = k;
        }
    }
    let grid_max = values[imax];
    let grid_min = values[imin];
    let spread = (grid_max - grid_min).max(grid_max.abs() * f64::EPSILON);

    let mut out = Extremes {
        max_value: grid_max,
        argmax: imax as f64 * step,
        min_value: grid_min,
        argmin: imin as f64 * step,
    };

    for k in candidates(&values, grid_max, CANDIDATE_WINDOW * grid_max.abs()) {
        let centre = k as f64 * step;
        let (t, v) = golden_section_max(&f, centre - step, centre + step);
        if v > out.max_value {
            out.max_value = v;
            out.argmax = t;
        }
    }

    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    for k in candidates(&negated, -grid_min, CANDIDATE_WINDOW * spread) {
        let centre = k as f64 * step;
        let g = |t: f64| -f(t);
        let (t, v) = golden_section_max(&g, centre - step, centre + step);
        if -v < out.min_value {
            out.min_value = -v;
            out.argmin = t;
        }
    }

    out.argmax = normalize_angle(out.argmax);
    out.argmin = normalize_angle(out.argmin);
    out
}

fn check_radius(r: f64) -> Result<()> {
    if !r.is_finite() || r <= 0.0 {
        return Err(invalid("radius", format!("must be positive, got {r}")));
    }
    Ok(())
}

/// Max and min of `|p(r e^{i theta})|` with the default sample count.
pub fn circle_profile(p: &Polynomial, r: f64) -> Result<CircleProfile> {
    circle_profile_with(p, r, DEFAULT_SAMPLES)
}

pub fn circle_profile_with(p: &Polynomial, r: f64, samples: usize) -> Result<CircleProfile> {
    check_radius(r)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if samples < 3 {
        return Err(invalid("samples", "need at least 3 samples"));
    }
    let e = extremes(|t| p.eval(Complex::from_polar(r, t)).norm(), samples);
    Ok(CircleProfile {
        radius: r,
        max_value: e.max_value,
        argmax_theta: e.argmax,
        min_value: e.min_value,
        argmin_theta: e.argmin,
        samples,
    })
}

/// Supremum of `|p| / |q|` on `|z| = r`.
pub fn max_ratio(p: &Polynomial, q: &Polynomial, r: f64) -> Result<f64> {
    check_radius(r)?;
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.degree() >= 1 {
        let zs = roots(q)?;
        if zs.roots.iter().any(|z| (z.norm() - r).abs() <= VANISHING_MARGIN) {
            return Err(Error::VanishesOnCircle { radius: r });
        }
    }
    let e = extremes(
        |t| {
            let z = Complex::from_polar(r, t);
            p.eval(z).norm() / q.eval(z).norm()
        },
        DEFAULT_SAMPLES,
    );
    Ok(e.max_value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroLocation {
    AllInClosedDisk,
    NoneInOpenDisk,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub roots: Vec<Complex>,
    pub residuals: Vec<f64>,
    pub classification: ZeroLocation,
    /// Smallest `| |root| - 1 |` over all roots.
    pub min_distance_to_circle: f64,
    pub iterations: usize,
    /// All residuals within [`ROOT_RESIDUAL_TOL`].
    pub converged: bool,
}

impl ZeroSet {
    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn all_in_closed_disk(&self) -> bool {
        self.roots.iter().all(|z| z.norm() <= 1.0 + BOUNDARY_BAND)
    }

    pub fn none_in_open_disk(&self) -> bool {
        self.roots.iter().all(|z| z.norm() >= 1.0 - BOUNDARY_BAND)
    }
}

fn scaled_residual(coeffs: &[Complex], z: Complex) -> f64 {
    let r = z.norm();
    let mut value = Complex::new(0.0, 0.0);
    let mut scale = 0.0;
    for &c in coeffs.iter().rev() {
        value = value * z + c;
        scale = scale * r + c.norm();
    }
    if scale == 0.0 {
        0.0
    } else {
        value.norm() / scale
    }
}

/// All roots of `p` (to its effective degree) by Aberth iteration.
pub fn roots(p: &Polynomial) -> Result<ZeroSet> {
    let degree = p.degree();
    if p.is_zero() || degree == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: degree });
    }
    let coeffs = &p.coeffs()[..=degree];

    // exact zero roots are split off; Aberth converges slowly on multiple roots
    let zero_roots = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let lead = coeffs[degree];
    let monic: Vec<Complex> = coeffs[zero_roots..].iter().map(|&c| c / lead).collect();

    let mut found = vec![Complex::new(0.0, 0.0); zero_roots];
    let (rest, iterations) = aberth(&monic);
    found.extend(rest);

    let residuals: Vec<f64> = found.iter().map(|&z| scaled_residual(coeffs, z)).collect();
    let converged = residuals.iter().all(|&r| r <= ROOT_RESIDUAL_TOL);
    let all_in = found.iter().all(|z| z.norm() <= 1.0 + BOUNDARY_BAND);
    let none_in = found.iter().all(|z| z.norm() >= 1.0 - BOUNDARY_BAND);
    let classification = if all_in {
        ZeroLocation::AllInClosedDisk
    } else if none_in {
        ZeroLocation::NoneInOpenDisk
    } else {
        ZeroLocation::Mixed
    };
    let min_distance_to_circle = found
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(f64::INFINITY, f64::min);

    Ok(ZeroSet {
        roots: found,
        residuals,
        classification,
        min_distance_to_circle,
        iterations,
        converged,
    })
}

/// Aberth iteration on a monic polynomial (ascending coefficients, last = 1).
fn aberth(monic: &[Complex]) -> (Vec<Complex>, usize) {
    let d = monic.len() - 1;
    if d == 0 {
        return (Vec::new(), 0);
    }
    if d == 1 {
        return (vec![-monic[0]], 0);
    }
    let poly = Polynomial::new(monic.to_vec()).expect("finite coefficients");

    // Cauchy bound radius with angular jitter to break symmetry.
    let bound = 1.0
        + monic[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let radius = bound.max(1.0);
    let mut z: Vec<Complex> = (0..d)
        .map(|k| {
            let theta = TAU * k as f64 / d as f64 + 0.4 + 0.05 * (k % 3) as f64;
            Complex::from_polar(radius, theta)
        })
        .collect();

    let mut iterations = 0;
    while iterations < ROOT_MAX_ITERATIONS {
        iterations += 1;
        let mut largest_step: f64 = 0.0;
        for k in 0..d {
            let (value, slope) = poly.eval_with_derivative(z[k]);
            if value.norm() == 0.0 {
                continue;
            }
            let newton = value / slope;
            let repulsion: Complex = (0..d)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        Complex::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = newton / (Complex::new(1.0, 0.0) - newton * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[k] -= step;
            largest_step = largest_step.max(step.norm() / z[k].norm().max(1.0));
        }
        if largest_step < ROOT_STEP_TOL {
            break;
        }
    }
    (z, iterations)
}
