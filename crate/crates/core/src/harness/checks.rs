//! One checker per inequality.
//!
//! Every public checker validates the hypotheses of its statement and then
//! evaluates both sides. The `*_core` variants skip the hypothesis gate and
//! take a precomputed `max |p|` on the unit circle; the campaign's exploratory
//! mode and the sharpness scanner use them directly.

use crate::circle::{circle_profile, max_ratio, roots, ZeroSet};
use crate::error::Error;
use crate::operators::{
    is_exceptional, marden, marden_admissible, modified_smirnov, omega_member, smirnov,
    smirnov_combination,
};
use crate::poly::{Complex, Polynomial};

use super::{CheckId, CheckOutcome, FormComparison, Skipped, TrialInputs, TrialReport};

/// Zeros of `S~_a[P]` may exceed the unit circle by at most this much.
pub const ZERO_PRESERVATION_BAND: f64 = 1e-6;

/// `|z| >= 1 - EXTERIOR_SLACK` counts as lying outside the open disk.
pub const EXTERIOR_SLACK: f64 = 1e-12;

/// Majorized pairs may exceed `|p| <= |P|` on the circle by this relative amount.
pub const PAIR_RATIO_SLACK: f64 = 1e-9;

fn skip(id: CheckId, reason: impl Into<String>) -> Skipped {
    Skipped {
        check_id: id,
        reason: reason.into(),
    }
}

fn lift<T>(id: CheckId, r: Result<T, Error>) -> Result<T, Skipped> {
    r.map_err(|e| skip(id, e.to_string()))
}

fn one() -> Complex {
    Complex::new(1.0, 0.0)
}

/// `max |q|` on the unit circle, 0 for the zero polynomial.
pub fn unit_circle_max(q: &Polynomial) -> Result<f64, Error> {
    if q.is_zero() {
        return Ok(0.0);
    }
    Ok(circle_profile(q, 1.0)?.max_value)
}

fn circle_max_at(id: CheckId, q: &Polynomial, r: f64) -> Result<f64, Skipped> {
    if q.is_zero() {
        return Ok(0.0);
    }
    lift(id, circle_profile(q, r).map(|p| p.max_value))
}

fn require_poly(id: CheckId, p: &Polynomial, n: usize) -> Result<(), Skipped> {
    if n == 0 {
        return Err(skip(id, "degree n must be at least 1"));
    }
    if p.is_zero() {
        return Err(skip(id, "zero polynomial"));
    }
    if p.degree() > n {
        return Err(skip(id, format!("degree {} exceeds n = {n}", p.degree())));
    }
    Ok(())
}

fn require_exterior(id: CheckId, z: Complex) -> Result<(), Skipped> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() < 1.0 - EXTERIOR_SLACK {
        return Err(skip(id, format!("z = {z} is not outside the open unit disk")));
    }
    Ok(())
}

fn require_on_circle(id: CheckId, z: Complex) -> Result<(), Skipped> {
    if (z.norm() - 1.0).abs() > EXTERIOR_SLACK {
        return Err(skip(id, format!("z = {z} is not on the unit circle")));
    }
    Ok(())
}

fn require_dilation(id: CheckId, radius: f64) -> Result<(), Skipped> {
    if !radius.is_finite() || radius < 1.0 {
        return Err(skip(id, format!("R = {radius} must be at least 1")));
    }
    Ok(())
}

fn zeros(id: CheckId, p: &Polynomial) -> Result<ZeroSet, Skipped> {
    let zs = lift(id, roots(p))?;
    if !zs.converged {
        return Err(skip(id, "root finder did not converge; zero location unknown"));
    }
    Ok(zs)
}

fn require_no_zeros_in_disk(id: CheckId, p: &Polynomial) -> Result<(), Skipped> {
    if p.degree() == 0 {
        return Ok(());
    }
    let zs = zeros(id, p)?;
    if !zs.none_in_open_disk() {
        return Err(skip(
            id,
            format!("polynomial has a zero of modulus {:.3e} inside the unit disk", zs.min_modulus()),
        ));
    }
    Ok(())
}

/// `deg p <= deg P <= n`, zeros of `P` in the closed (or open, when `strict`) disk,
/// and `|p| <= |P|` on the unit circle.
fn require_majorized_pair(
    id: CheckId,
    p: &Polynomial,
    big: &Polynomial,
    n: usize,
    strict: bool,
) -> Result<(), Skipped> {
    require_poly(id, big, n)?;
    let d = big.degree();
    if d == 0 {
        return Err(skip(id, "majorant must have degree at least 1"));
    }
    if !p.is_zero() && p.degree() > d {
        return Err(skip(id, format!("deg p = {} exceeds deg P = {d}", p.degree())));
    }
    let zs = zeros(id, big)?;
    let inside = if strict {
        zs.max_modulus() < 1.0
    } else {
        zs.all_in_closed_disk()
    };
    if !inside {
        return Err(skip(id, format!("P has a zero of modulus {:.6} outside the disk", zs.max_modulus())));
    }
    let ratio = lift(id, max_ratio(p, big, 1.0))?;
    if ratio > 1.0 + PAIR_RATIO_SLACK {
        return Err(skip(id, format!("max |p/P| = {ratio} exceeds 1 on the circle")));
    }
    Ok(())
}

/// Picks the sample report that fails, or else has the largest lhs/rhs ratio.
fn worst(reports: impl IntoIterator<Item = TrialReport>) -> Option<TrialReport> {
    reports.into_iter().fold(None, |best: Option<TrialReport>, r| match best {
        None => Some(r),
        Some(b) => {
            let key = |t: &TrialReport| (!t.passed, t.ratio());
            let (kb, kr) = (key(&b), key(&r));
            if kr.0 && !kb.0 || (kr.0 == kb.0 && kr.1 > kb.1) {
                Some(r)
            } else {
                Some(b)
            }
        }
    })
}

// ---------------------------------------------------------------------------
// classical bounds on the unit circle

/// `max |p'| <= n max |p|`.
pub fn check_bernstein(p: &Polynomial, n: usize) -> CheckOutcome {
    let id = CheckId::Bernstein;
    require_poly(id, p, n)?;
    let m = circle_max_at(id, p, 1.0)?;
    let lhs = circle_max_at(id, &p.derivative(), 1.0)?;
    Ok(TrialReport::new(id, lhs, n as f64 * m, inputs_p(p, n)))
}

/// `max |p(Rz)| <= R^n max |p|`.
pub fn check_growth(p: &Polynomial, n: usize, radius: f64) -> CheckOutcome {
    let id = CheckId::Growth;
    require_poly(id, p, n)?;
    require_dilation(id, radius)?;
    let m = circle_max_at(id, p, 1.0)?;
    let lhs = circle_max_at(id, p, radius)?;
    let mut inputs = inputs_p(p, n);
    inputs.dilation = Some(radius);
    Ok(TrialReport::new(id, lhs, radius.powi(n as i32) * m, inputs))
}

pub fn erdos_lax_core(p: &Polynomial, n: usize) -> CheckOutcome {
    let id = CheckId::ErdosLax;
    let m = circle_max_at(id, p, 1.0)?;
    let lhs = circle_max_at(id, &p.derivative(), 1.0)?;
    Ok(TrialReport::new(id, lhs, n as f64 / 2.0 * m, inputs_p(p, n)))
}

/// `max |p'| <= (n/2) max |p|` for `p` without zeros in the open disk.
pub fn check_erdos_lax(p: &Polynomial, n: usize) -> CheckOutcome {
    let id = CheckId::ErdosLax;
    require_poly(id, p, n)?;
    require_no_zeros_in_disk(id, p)?;
    erdos_lax_core(p, n)
}

pub fn ankeny_rivlin_core(p: &Polynomial, n: usize, radius: f64) -> CheckOutcome {
    let id = CheckId::AnkenyRivlin;
    let m = circle_max_at(id, p, 1.0)?;
    let lhs = circle_max_at(id, p, radius)?;
    let rn = radius.powi(n as i32);
    let mut inputs = inputs_p(p, n);
    inputs.dilation = Some(radius);
    Ok(TrialReport::new(id, lhs, (rn + 1.0) / 2.0 * m, inputs))
}

/// `max |p(Rz)| <= (R^n + 1)/2 max |p|` for `p` without zeros in the open disk.
pub fn check_ankeny_rivlin(p: &Polynomial, n: usize, radius: f64) -> CheckOutcome {
    let id = CheckId::AnkenyRivlin;
    require_poly(id, p, n)?;
    require_dilation(id, radius)?;
    require_no_zeros_in_disk(id, p)?;
    ankeny_rivlin_core(p, n, radius)
}

pub fn aziz_dawood_deriv_core(p: &Polynomial, n: usize) -> CheckOutcome {
    let id = CheckId::AzizDawoodDeriv;
    let prof = lift(id, circle_profile(p, 1.0))?;
    let lhs = circle_max_at(id, &p.derivative(), 1.0)?;
    let rhs = n as f64 / 2.0 * (prof.max_value - prof.min_value);
    Ok(TrialReport::new(id, lhs, rhs, inputs_p(p, n)))
}

/// `max |p'| <= (n/2)(max |p| - min |p|)` for `p` without zeros in the open disk.
pub fn check_aziz_dawood_deriv(p: &Polynomial, n: usize) -> CheckOutcome {
    let id = CheckId::AzizDawoodDeriv;
    require_poly(id, p, n)?;
    require_no_zeros_in_disk(id, p)?;
    aziz_dawood_deriv_core(p, n)
}

pub fn aziz_dawood_growth_core(p: &Polynomial, n: usize, radius: f64) -> CheckOutcome {
    let id = CheckId::AzizDawoodGrowth;
    let prof = lift(id, circle_profile(p, 1.0))?;
    let lhs = circle_max_at(id, p, radius)?;
    let rn = radius.powi(n as i32);
    let rhs = (rn + 1.0) / 2.0 * prof.max_value - (rn - 1.0) / 2.0 * prof.min_value;
    let mut inputs = inputs_p(p, n);
    inputs.dilation = Some(radius);
    Ok(TrialReport::new(id, lhs, rhs, inputs))
}

/// `max |p(Rz)| <= (R^n+1)/2 max |p| - (R^n-1)/2 min |p|` for `p` without zeros in the open disk.
pub fn check_aziz_dawood_growth(p: &Polynomial, n: usize, radius: f64) -> CheckOutcome {
    let id = CheckId::AzizDawoodGrowth;
    require_poly(id, p, n)?;
    require_dilation(id, radius)?;
    require_no_zeros_in_disk(id, p)?;
    aziz_dawood_growth_core(p, n, radius)
}

// ---------------------------------------------------------------------------
// majorized pairs

/// `|p'(z)| <= |P'(z)|` at every exterior sample point; reports the worst sample.
pub fn check_bernstein_majorization(
    p: &Polynomial,
    big: &Polynomial,
    n: usize,
    z_samples: &[Complex],
) -> CheckOutcome {
    let id = CheckId::BernsteinMajorization;
    if z_samples.is_empty() {
        return Err(skip(id, "no sample points"));
    }
    for &z in z_samples {
        require_exterior(id, z)?;
    }
    require_majorized_pair(id, p, big, n, false)?;
    let (dp, dbig) = (p.derivative(), big.derivative());
    let reports = z_samples.iter().map(|&z| {
        let mut inputs = inputs_pair(p, big, n);
        inputs.z = Some(z);
        TrialReport::new(id, dp.eval(z).norm(), dbig.eval(z).norm(), inputs)
    });
    Ok(worst(reports).expect("non-empty samples"))
}

/// `|S_alpha[p](z)| <= |S_alpha[P](z)|` for `alpha` in the closed region for `|z|`.
pub fn check_smirnov_majorization(
    p: &Polynomial,
    big: &Polynomial,
    n: usize,
    alpha: Complex,
    z: Complex,
) -> CheckOutcome {
    let id = CheckId::SmirnovMajorization;
    require_exterior(id, z)?;
    if !omega_member(alpha, z.norm()) {
        return Err(skip(id, format!("alpha = {alpha} lies outside the admissible region for |z| = {}", z.norm())));
    }
    require_majorized_pair(id, p, big, n, false)?;
    let lhs = lift(id, smirnov(p, alpha, n))?.eval(z).norm();
    let rhs = lift(id, smirnov(big, alpha, n))?.eval(z).norm();
    let direct = |q: &Polynomial| {
        let (v, d) = q.eval_with_derivative(z);
        (z * d - alpha * v * n as f64).norm()
    };
    let mut inputs = inputs_pair(p, big, n);
    inputs.alpha = Some(alpha);
    inputs.z = Some(z);
    let form = FormComparison::new("pointwise", lhs, rhs, direct(p), direct(big));
    Ok(TrialReport::new(id, lhs, rhs, inputs).with_form(form))
}

/// `|B[p](z)| <= |B[P](z)|` for admissible `lambdas`.
pub fn check_marden_majorization(
    p: &Polynomial,
    big: &Polynomial,
    n: usize,
    lambdas: [Complex; 3],
    z: Complex,
) -> CheckOutcome {
    let id = CheckId::MardenMajorization;
    require_exterior(id, z)?;
    if !lift(id, marden_admissible(lambdas, n))? {
        return Err(skip(id, "lambdas violate the half-plane admissibility condition"));
    }
    require_majorized_pair(id, p, big, n, false)?;
    let lhs = lift(id, marden(p, lambdas, n))?.eval(z).norm();
    let rhs = lift(id, marden(big, lambdas, n))?.eval(z).norm();
    let w = z * (n as f64 / 2.0);
    let direct = |q: &Polynomial| {
        let d1 = q.derivative();
        let d2 = d1.derivative();
        (lambdas[0] * q.eval(z) + lambdas[1] * w * d1.eval(z) + lambdas[2] * w * w * d2.eval(z)).norm()
    };
    let mut inputs = inputs_pair(p, big, n);
    inputs.lambdas = Some(lambdas);
    inputs.z = Some(z);
    let form = FormComparison::new("pointwise", lhs, rhs, direct(p), direct(big));
    Ok(TrialReport::new(id, lhs, rhs, inputs).with_form(form))
}

pub fn zero_preservation_core(big: &Polynomial, n: usize, a: Complex) -> CheckOutcome {
    let id = CheckId::ZeroPreservation;
    let image = lift(id, modified_smirnov(big, a, n))?;
    let lhs = if image.degree() == 0 {
        0.0
    } else {
        zeros(id, &image)?.max_modulus()
    };
    let mut inputs = inputs_p(big, n);
    inputs.a = Some(a);
    Ok(TrialReport::new(id, lhs, 1.0 + ZERO_PRESERVATION_BAND, inputs)
        .with_note("lhs = largest zero modulus of the modified Smirnov image"))
}

/// Zeros of `S~_a[P]` stay in the closed disk for `|a| = 1` not exceptional and `P`
/// with all zeros in the closed disk.
pub fn check_zero_preservation(big: &Polynomial, n: usize, a: Complex) -> CheckOutcome {
    let id = CheckId::ZeroPreservation;
    require_poly(id, big, n)?;
    if big.degree() != n {
        return Err(skip(id, format!("P must have degree exactly n = {n}")));
    }
    if (a.norm() - 1.0).abs() > EXTERIOR_SLACK {
        return Err(skip(id, format!("|a| = {} is not on the unit circle", a.norm())));
    }
    if !zeros(id, big)?.all_in_closed_disk() {
        return Err(skip(id, "P has zeros outside the closed disk"));
    }
    if lift(id, is_exceptional(big, a, n))? {
        return Err(skip(id, "a is an exceptional value for P"));
    }
    zero_preservation_core(big, n, a)
}

/// `|p(Rz)| >= ((R+k)/(r+k))^n |p(rz)|` on the unit circle for zeros in `|z| <= k`,
/// `R >= r`, `rR >= k^2`; reports the worst sample with `lhs` the scaled `|p(rz)|`.
pub fn check_dilation_growth(
    p: &Polynomial,
    n: usize,
    k: f64,
    r: f64,
    radius: f64,
    z_samples: &[Complex],
) -> CheckOutcome {
    let id = CheckId::DilationGrowth;
    require_poly(id, p, n)?;
    if p.degree() != n {
        return Err(skip(id, format!("p must have degree exactly n = {n}")));
    }
    if !(k.is_finite() && r.is_finite() && radius.is_finite()) || k < 0.0 || r < 0.0 {
        return Err(skip(id, "k, r and R must be finite and non-negative"));
    }
    if radius < r {
        return Err(skip(id, format!("R = {radius} is below r = {r}")));
    }
    if r * radius < k * k * (1.0 - 1e-12) {
        return Err(skip(id, format!("rR = {} is below k^2 = {}", r * radius, k * k)));
    }
    if r + k == 0.0 {
        return Err(skip(id, "r + k must be positive"));
    }
    if z_samples.is_empty() {
        return Err(skip(id, "no sample points"));
    }
    for &z in z_samples {
        require_on_circle(id, z)?;
    }
    let zs = zeros(id, p)?;
    if zs.max_modulus() > k * (1.0 + 1e-9) + 1e-12 {
        return Err(skip(id, format!("zero of modulus {} exceeds k = {k}", zs.max_modulus())));
    }
    let factor = ((radius + k) / (r + k)).powi(n as i32);
    let reports = z_samples.iter().map(|&z| {
        let mut inputs = inputs_p(p, n);
        inputs.k = Some(k);
        inputs.r = Some(r);
        inputs.dilation = Some(radius);
        inputs.z = Some(z);
        let lhs = factor * p.eval(z * r).norm();
        let rhs = p.eval(z * radius).norm();
        TrialReport::new(id, lhs, rhs, inputs)
    });
    Ok(worst(reports).expect("non-empty samples"))
}

// ---------------------------------------------------------------------------
// modified Smirnov bounds

/// `|S~_a[E_n](z)|` through the operator itself.
fn monomial_image(id: CheckId, n: usize, a: Complex, z: Complex) -> Result<f64, Skipped> {
    let en = Polynomial::monomial(n, one());
    Ok(lift(id, modified_smirnov(&en, a, n))?.eval(z).norm())
}

/// `(1 + az)[R q'(Rz) - beta q'(z)] - n a [q(Rz) - beta q(z)]`, evaluated pointwise.
pub fn pointwise_combination(
    q: &Polynomial,
    a: Complex,
    beta: Complex,
    radius: f64,
    n: usize,
    z: Complex,
) -> Complex {
    let (v_far, d_far) = q.eval_with_derivative(z * radius);
    let (v, d) = q.eval_with_derivative(z);
    (one() + a * z) * (d_far * radius - beta * d) - a * (v_far - beta * v) * n as f64
}

fn require_disk(id: CheckId, x: Complex, name: &str) -> Result<(), Skipped> {
    if !(x.re.is_finite() && x.im.is_finite()) || x.norm() > 1.0 + 1e-12 {
        return Err(skip(id, format!("|{name}| = {} exceeds 1", x.norm())));
    }
    Ok(())
}

pub fn modified_smirnov_bound_core(p: &Polynomial, n: usize, a: Complex, z: Complex, m: f64) -> CheckOutcome {
    let id = CheckId::ModifiedSmirnovBound;
    let lhs = lift(id, modified_smirnov(p, a, n))?.eval(z).norm();
    let rhs = m * monomial_image(id, n, a, z)?;
    let alt_lhs = pointwise_combination(p, a, Complex::new(0.0, 0.0), 1.0, n, z).norm();
    let alt_rhs = m * n as f64 * z.norm().powi(n as i32 - 1);
    let mut inputs = inputs_p(p, n);
    inputs.a = Some(a);
    inputs.z = Some(z);
    let form = FormComparison::new("pointwise", lhs, rhs, alt_lhs, alt_rhs);
    Ok(TrialReport::new(id, lhs, rhs, inputs).with_form(form))
}

/// `|S~_a[p](z)| <= M |S~_a[z^n](z)|` with `M = max |p|` on the unit circle.
pub fn check_modified_smirnov_bound(p: &Polynomial, n: usize, a: Complex, z: Complex) -> CheckOutcome {
    let id = CheckId::ModifiedSmirnovBound;
    require_poly(id, p, n)?;
    require_exterior(id, z)?;
    require_disk(id, a, "a")?;
    let m = circle_max_at(id, p, 1.0)?;
    modified_smirnov_bound_core(p, n, a, z, m)
}

pub fn reciprocal_pair_bound_core(p: &Polynomial, n: usize, a: Complex, z: Complex, m: f64) -> CheckOutcome {
    let id = CheckId::ReciprocalPairBound;
    let g = lift(id, p.conjugate_reciprocal(n))?;
    let image = |q: &Polynomial| lift(id, modified_smirnov(q, a, n)).map(|s| s.eval(z).norm());
    let lhs = image(p)? + image(&g)?;
    let nf = n as f64;
    let rhs = (monomial_image(id, n, a, z)? + nf * a.norm()) * m;
    let zero = Complex::new(0.0, 0.0);
    let alt_lhs = pointwise_combination(p, a, zero, 1.0, n, z).norm()
        + pointwise_combination(&g, a, zero, 1.0, n, z).norm();
    let alt_rhs = (nf * z.norm().powi(n as i32 - 1) + nf * a.norm()) * m;
    let mut inputs = inputs_p(p, n);
    inputs.a = Some(a);
    inputs.z = Some(z);
    let form = FormComparison::new("pointwise", lhs, rhs, alt_lhs, alt_rhs);
    Ok(TrialReport::new(id, lhs, rhs, inputs).with_form(form))
}

/// `|S~_a[p](z)| + |S~_a[g](z)| <= (|S~_a[E_n](z)| + n|a|) max |p|`, `g` the conjugate reciprocal.
pub fn check_reciprocal_pair_bound(p: &Polynomial, n: usize, a: Complex, z: Complex) -> CheckOutcome {
    let id = CheckId::ReciprocalPairBound;
    require_poly(id, p, n)?;
    require_exterior(id, z)?;
    require_disk(id, a, "a")?;
    let m = circle_max_at(id, p, 1.0)?;
    reciprocal_pair_bound_core(p, n, a, z, m)
}

/// `|S~_a[p](Rz) - beta S~_a[p](z)| <= |S~_a[P](Rz) - beta S~_a[P](z)|` on the unit circle;
/// reports the worst sample.
#[allow(clippy::too_many_arguments)]
pub fn check_combination_majorization(
    p: &Polynomial,
    big: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z_samples: &[Complex],
) -> CheckOutcome {
    let id = CheckId::CombinationMajorization;
    require_disk(id, a, "a")?;
    require_disk(id, beta, "beta")?;
    require_dilation(id, radius)?;
    if z_samples.is_empty() {
        return Err(skip(id, "no sample points"));
    }
    for &z in z_samples {
        require_on_circle(id, z)?;
    }
    if big.degree() != n {
        return Err(skip(id, format!("P must have degree exactly n = {n}")));
    }
    require_majorized_pair(id, p, big, n, true)?;
    let small_op = lift(id, smirnov_combination(p, a, beta, radius, n))?;
    let big_op = lift(id, smirnov_combination(big, a, beta, radius, n))?;
    let reports = z_samples.iter().map(|&z| {
        let lhs = small_op.eval(z).norm();
        let rhs = big_op.eval(z).norm();
        let form = FormComparison::new(
            "pointwise",
            lhs,
            rhs,
            pointwise_combination(p, a, beta, radius, n, z).norm(),
            pointwise_combination(big, a, beta, radius, n, z).norm(),
        );
        let mut inputs = inputs_pair(p, big, n);
        inputs.a = Some(a);
        inputs.beta = Some(beta);
        inputs.dilation = Some(radius);
        inputs.z = Some(z);
        TrialReport::new(id, lhs, rhs, inputs).with_form(form)
    });
    Ok(worst(reports).expect("non-empty samples"))
}

fn combination_inputs(p: &Polynomial, n: usize, a: Complex, beta: Complex, radius: f64, z: Complex) -> TrialInputs {
    let mut inputs = inputs_p(p, n);
    inputs.a = Some(a);
    inputs.beta = Some(beta);
    inputs.dilation = Some(radius);
    inputs.z = Some(z);
    inputs
}

fn require_combination(
    id: CheckId,
    p: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z: Complex,
) -> Result<(), Skipped> {
    require_poly(id, p, n)?;
    require_exterior(id, z)?;
    require_disk(id, a, "a")?;
    require_disk(id, beta, "beta")?;
    require_dilation(id, radius)
}

pub fn combination_bound_core(
    p: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z: Complex,
    m: f64,
) -> CheckOutcome {
    let id = CheckId::CombinationBound;
    let lhs = lift(id, smirnov_combination(p, a, beta, radius, n))?.eval(z).norm();
    let spread = (Complex::new(radius.powi(n as i32), 0.0) - beta).norm();
    let rhs = spread * monomial_image(id, n, a, z)? * m;
    let alt_lhs = pointwise_combination(p, a, beta, radius, n, z).norm();
    let alt_rhs = n as f64 * spread * z.norm().powi(n as i32 - 1) * m;
    let form = FormComparison::new("expanded", lhs, rhs, alt_lhs, alt_rhs);
    Ok(TrialReport::new(id, lhs, rhs, combination_inputs(p, n, a, beta, radius, z)).with_form(form))
}

/// `|S~_a[p](Rz) - beta S~_a[p](z)| <= |R^n - beta| |S~_a[E_n](z)| max |p|`, cross-checked
/// against the expanded form with right side `n |R^n - beta| |z|^{n-1} max |p|`.
pub fn check_combination_bound(
    p: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z: Complex,
) -> CheckOutcome {
    let id = CheckId::CombinationBound;
    require_combination(id, p, n, a, beta, radius, z)?;
    let m = circle_max_at(id, p, 1.0)?;
    combination_bound_core(p, n, a, beta, radius, z, m)
}

/// Both evaluation routes of the reciprocal-combination bound: `(lhs, rhs, alt_lhs, alt_rhs)`.
#[allow(clippy::too_many_arguments)]
fn reciprocal_combination_sides(
    id: CheckId,
    p: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z: Complex,
    m: f64,
) -> Result<(f64, f64, f64, f64), Skipped> {
    let q = lift(id, p.conjugate_reciprocal(n))?;
    let op = |x: &Polynomial| lift(id, smirnov_combination(x, a, beta, radius, n)).map(|s| s.eval(z).norm());
    let lhs = op(p)? + op(&q)?;
    let nf = n as f64;
    let spread = (Complex::new(radius.powi(n as i32), 0.0) - beta).norm();
    let tail = nf * (one() - beta).norm() * a.norm();
    let rhs = (spread * monomial_image(id, n, a, z)? + tail) * m;
    let alt_lhs = pointwise_combination(p, a, beta, radius, n, z).norm()
        + pointwise_combination(&q, a, beta, radius, n, z).norm();
    let alt_rhs = (nf * spread * z.norm().powi(n as i32 - 1) + tail) * m;
    Ok((lhs, rhs, alt_lhs, alt_rhs))
}

#[allow(clippy::too_many_arguments)]
pub fn reciprocal_combination_bound_core(
    p: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z: Complex,
    m: f64,
) -> CheckOutcome {
    let id = CheckId::ReciprocalCombinationBound;
    let (lhs, rhs, alt_lhs, alt_rhs) = reciprocal_combination_sides(id, p, n, a, beta, radius, z, m)?;
    let form = FormComparison::new("expanded", lhs, rhs, alt_lhs, alt_rhs);
    Ok(TrialReport::new(id, lhs, rhs, combination_inputs(p, n, a, beta, radius, z)).with_form(form))
}

/// Sum of the combination moduli of `p` and its conjugate reciprocal `Q`, bounded by
/// `(|R^n - beta| |S~_a[E_n](z)| + n |1 - beta| |a|) max |p|`.
pub fn check_reciprocal_combination_bound(
    p: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z: Complex,
) -> CheckOutcome {
    let id = CheckId::ReciprocalCombinationBound;
    require_combination(id, p, n, a, beta, radius, z)?;
    let m = circle_max_at(id, p, 1.0)?;
    reciprocal_combination_bound_core(p, n, a, beta, radius, z, m)
}

#[allow(clippy::too_many_arguments)]
pub fn nonvanishing_combination_bound_core(
    p: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z: Complex,
    m: f64,
) -> CheckOutcome {
    let id = CheckId::NonvanishingCombinationBound;
    let (_, rhs, _, alt_rhs) = reciprocal_combination_sides(id, p, n, a, beta, radius, z, m)?;
    let lhs = lift(id, smirnov_combination(p, a, beta, radius, n))?.eval(z).norm();
    let alt_lhs = pointwise_combination(p, a, beta, radius, n, z).norm();
    let form = FormComparison::new("expanded", lhs, rhs / 2.0, alt_lhs, alt_rhs / 2.0);
    Ok(TrialReport::new(id, lhs, rhs / 2.0, combination_inputs(p, n, a, beta, radius, z)).with_form(form))
}

/// Half of the reciprocal-combination bound, for `p` without zeros in the open disk.
pub fn check_nonvanishing_combination_bound(
    p: &Polynomial,
    n: usize,
    a: Complex,
    beta: Complex,
    radius: f64,
    z: Complex,
) -> CheckOutcome {
    let id = CheckId::NonvanishingCombinationBound;
    require_combination(id, p, n, a, beta, radius, z)?;
    require_no_zeros_in_disk(id, p)?;
    let m = circle_max_at(id, p, 1.0)?;
    nonvanishing_combination_bound_core(p, n, a, beta, radius, z, m)
}

fn inputs_p(p: &Polynomial, n: usize) -> TrialInputs {
    TrialInputs {
        n,
        p: Some(p.clone()),
        ..TrialInputs::default()
    }
}

fn inputs_pair(p: &Polynomial, big: &Polynomial, n: usize) -> TrialInputs {
    TrialInputs {
        n,
        p: Some(p.clone()),
        big_p: Some(big.clone()),
        ..TrialInputs::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::marden_smirnov_alpha;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn real(xs: &[f64]) -> Polynomial {
        Polynomial::from_real(xs).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * y.abs().max(1.0)
    }

    fn ring(radius: f64, count: usize) -> Vec<Complex> {
        (0..count)
            .map(|k| Complex::from_polar(radius, TAU * k as f64 / count as f64))
            .collect()
    }

    fn pair() -> (Polynomial, Polynomial) {
        let big = Polynomial::from_roots(&[c(0.3, 0.2), c(-0.5, 0.1), c(0.0, -0.7)], c(1.0, 0.5));
        let seed = real(&[0.4, -1.0, 0.3, 0.8]);
        let ratio = max_ratio(&seed, &big, 1.0).unwrap();
        (seed.scale(c(0.999 / ratio, 0.0)), big)
    }

    #[test]
    fn bernstein_examples() {
        let r = check_bernstein(&Polynomial::monomial(3, one()), 3).unwrap();
        assert!(close(r.lhs, 3.0, 1e-12) && close(r.rhs, 3.0, 1e-12) && r.passed);
        let r = check_bernstein(&real(&[1.0, 0.0, 1.0]), 2).unwrap();
        assert!(close(r.lhs, 2.0, 1e-12) && close(r.rhs, 4.0, 1e-12));
        assert!(check_bernstein(&real(&[5.0]), 0).is_err());
    }

    #[test]
    fn growth_examples() {
        let r = check_growth(&Polynomial::monomial(4, c(0.0, 2.0)), 4, 1.7).unwrap();
        assert!(close(r.lhs, r.rhs, 1e-12) && r.passed);
        let p = real(&[1.0, 0.0, 1.0]);
        let r = check_growth(&p, 2, 1.0).unwrap();
        assert!(close(r.lhs, r.rhs, 1e-12));
        let r = check_growth(&p, 2, 2.0).unwrap();
        assert!(close(r.lhs, 5.0, 1e-12) && close(r.rhs, 8.0, 1e-12));
        assert!(check_growth(&p, 2, 0.5).is_err());
    }

    #[test]
    fn erdos_lax_examples() {
        let r = check_erdos_lax(&real(&[1.0, 0.0, 1.0]), 2).unwrap();
        assert!(close(r.lhs, 2.0, 1e-12) && close(r.rhs, 2.0, 1e-12) && r.passed);
        let r = check_erdos_lax(&real(&[3.0, 1.0]), 1).unwrap();
        assert!(close(r.lhs, 1.0, 1e-12) && close(r.rhs, 2.0, 1e-12));
        assert!(check_erdos_lax(&real(&[0.25, 0.0, 1.0]), 2).is_err());
    }

    #[test]
    fn ankeny_rivlin_examples() {
        let p = real(&[1.0, 0.0, 1.0]);
        let r = check_ankeny_rivlin(&p, 2, 2.0).unwrap();
        assert!(close(r.lhs, 5.0, 1e-12) && close(r.rhs, 5.0, 1e-12) && r.passed);
        let r = check_ankeny_rivlin(&p, 2, 1.0).unwrap();
        assert!(close(r.rhs, 2.0, 1e-12));
        let r = check_ankeny_rivlin(&Polynomial::from_roots(&[c(1.5, 0.5), c(-2.0, 1.0)], one()), 2, 1.5).unwrap();
        assert!(r.passed && r.lhs < r.rhs);
    }

    #[test]
    fn aziz_dawood_examples() {
        let p = real(&[1.0, 0.0, 1.0]);
        let d = check_aziz_dawood_deriv(&p, 2).unwrap();
        let e = check_erdos_lax(&p, 2).unwrap();
        assert!(close(d.rhs, e.rhs, 1e-9) && d.passed);
        let g = check_aziz_dawood_growth(&p, 2, 2.0).unwrap();
        assert!(close(g.rhs, 5.0, 1e-9) && g.passed);

        // 2z^3 + 1 vanishes inside the disk: gated out, and the ungated bound fails
        let q = real(&[1.0, 0.0, 0.0, 2.0]);
        assert!(check_aziz_dawood_deriv(&q, 3).is_err());
        let d = aziz_dawood_deriv_core(&q, 3).unwrap();
        assert!(close(d.rhs, 3.0, 1e-9) && close(d.lhs, 6.0, 1e-12) && !d.passed);

        // z^3 + 2 satisfies the hypothesis with min |p| = 1, max |p| = 3
        let q = real(&[2.0, 0.0, 0.0, 1.0]);
        let d = check_aziz_dawood_deriv(&q, 3).unwrap();
        assert!(close(d.rhs, 3.0, 1e-9) && close(d.lhs, 3.0, 1e-12) && d.passed);
    }

    #[test]
    fn majorization_examples() {
        let (p, big) = pair();
        let zs: Vec<Complex> = [1.0, 1.5, 2.0].iter().flat_map(|&r| ring(r, 64)).collect();
        let r = check_bernstein_majorization(&p, &big, 3, &zs).unwrap();
        assert!(r.passed && r.lhs <= r.rhs);
        let scaled = big.scale(c(0.0, 0.5));
        let r = check_bernstein_majorization(&scaled, &big, 3, &zs).unwrap();
        assert!(close(r.lhs, 0.5 * r.rhs, 1e-12));
        assert!(check_bernstein_majorization(&p, &big, 3, &[c(0.5, 0.0)]).is_err());
    }

    #[test]
    fn smirnov_majorization_examples() {
        let (p, big) = pair();
        let z = Complex::from_polar(1.5, 0.4);
        let r = check_smirnov_majorization(&p, &big, 3, c(0.0, 0.0), z).unwrap();
        let b = check_bernstein_majorization(&p, &big, 3, &[z]).unwrap();
        assert!(close(r.lhs / r.rhs, b.lhs / b.rhs, 1e-12));
        let r = check_smirnov_majorization(&p, &big, 3, c(0.4, -0.2), z).unwrap();
        assert!(r.passed && r.equivalent_form.unwrap().agree);
        assert!(check_smirnov_majorization(&p, &big, 3, c(5.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn marden_majorization_examples() {
        let (p, big) = pair();
        let z = Complex::from_polar(1.2, 2.0);
        let r = check_marden_majorization(&p, &big, 3, [one(), c(0.0, 0.0), c(0.0, 0.0)], z).unwrap();
        assert!(close(r.lhs, p.eval(z).norm(), 1e-12) && close(r.rhs, big.eval(z).norm(), 1e-12));

        let lambdas = [c(-0.5, 0.2), c(1.0, 0.3), c(0.0, 0.0)];
        let alpha = marden_smirnov_alpha(lambdas, 3).unwrap();
        let m = check_marden_majorization(&p, &big, 3, lambdas, z).unwrap();
        let s = check_smirnov_majorization(&p, &big, 3, alpha, z).unwrap();
        assert!(close(m.lhs / m.rhs, s.lhs / s.rhs, 1e-10));

        let bad = [c(-4.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert!(check_marden_majorization(&p, &big, 2, bad, z).is_err());
    }

    #[test]
    fn zero_preservation_examples() {
        let big = Polynomial::from_roots(&[c(0.3, 0.2), c(-0.5, 0.1), c(0.0, -0.7), c(0.9, 0.0)], one());
        let r = check_zero_preservation(&big, 4, Complex::from_polar(1.0, 0.7)).unwrap();
        assert!(r.passed && r.lhs <= 1.0);
        assert!(check_zero_preservation(&big, 4, c(0.5, 0.0)).is_err());
        // z^2 + 2z with a = 1 is exceptional
        assert!(check_zero_preservation(&real(&[0.0, 2.0, 1.0]), 2, one()).is_err());
    }

    #[test]
    fn dilation_growth_examples() {
        let zs = ring(1.0, 32);
        let r = check_dilation_growth(&Polynomial::monomial(3, one()), 3, 0.0, 1.0, 2.0, &zs).unwrap();
        assert!(close(r.lhs, r.rhs, 1e-12));
        let p = Polynomial::from_roots(&[c(0.2, 0.3), c(-0.4, 0.0), c(0.1, -0.45)], c(2.0, 0.0));
        let r = check_dilation_growth(&p, 3, 0.5, 1.0, 2.0, &zs).unwrap();
        assert!(r.passed);
        assert!(check_dilation_growth(&p, 3, 0.5, 0.1, 2.0, &zs).is_err());
    }

    #[test]
    fn modified_smirnov_bound_examples() {
        let n = 4;
        let m = 2.5;
        let p = Polynomial::monomial(n, c(m, 0.0));
        let z = Complex::from_polar(1.3, 0.9);
        let r = check_modified_smirnov_bound(&p, n, c(0.3, 0.6), z).unwrap();
        assert!(close(r.lhs, r.rhs, 1e-12) && r.passed);
        let q = real(&[1.0, -0.5, 0.25, 2.0, 0.1]);
        let r = check_modified_smirnov_bound(&q, n, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(r.lhs, q.derivative().eval(c(1.0, 0.0)).norm(), 1e-12));
        let r = check_modified_smirnov_bound(&q, n, c(-0.2, 0.7), Complex::from_polar(2.0, 1.0)).unwrap();
        assert!(r.passed && r.equivalent_form.unwrap().agree);
    }

    #[test]
    fn reciprocal_pair_examples() {
        let n = 3;
        let a = c(0.4, -0.5);
        let z = Complex::from_polar(1.8, -0.3);
        let r = check_reciprocal_pair_bound(&Polynomial::monomial(n, one()), n, a, z).unwrap();
        assert!(close(r.lhs, r.rhs, 1e-12));
        let q = real(&[1.0, 2.0, -0.5, 0.3]);
        let r = check_reciprocal_pair_bound(&q, n, a, Complex::from_polar(1.0, 0.2)).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn combination_majorization_examples() {
        let (p, big) = pair();
        let zs = ring(1.0, 64);
        let r = check_combination_majorization(&p, &big, 3, c(0.2, 0.1), c(0.0, 0.7), 1.5, &zs).unwrap();
        assert!(r.passed);
        let scaled = big.scale(Complex::from_polar(0.5, 1.0));
        let r = check_combination_majorization(&scaled, &big, 3, c(0.2, 0.1), c(0.0, 0.7), 1.5, &zs).unwrap();
        assert!(close(r.lhs, 0.5 * r.rhs, 1e-10));
    }

    #[test]
    fn combination_bound_examples() {
        let n = 5;
        let gamma = c(0.3, -1.1);
        let (a, beta, radius) = (c(0.3, 0.4), c(-0.5, 0.0), 2.0);
        let z = Complex::from_polar(1.5, 0.8);
        let r = check_combination_bound(&Polynomial::monomial(n, gamma), n, a, beta, radius, z).unwrap();
        assert!(close(r.lhs, r.rhs, 1e-12) && r.passed);
        let expected = gamma.norm() * n as f64 * (32.0f64 + 0.5) * 1.5f64.powi(4);
        assert!(close(r.lhs, expected, 1e-12));

        let p = real(&[0.5, -1.0, 0.2, 0.0, 0.7, 1.0]);
        let r = check_combination_bound(&p, n, a, beta, radius, z).unwrap();
        assert!(r.passed && r.equivalent_form.unwrap().agree);

        // specialization to the Bernstein inequality at the argmax of |p'|
        let prof = circle_profile(&p.derivative(), 1.0).unwrap();
        let zmax = Complex::from_polar(1.0, prof.argmax_theta);
        let t = check_combination_bound(&p, n, c(0.0, 0.0), c(0.0, 0.0), 1.0, zmax).unwrap();
        let b = check_bernstein(&p, n).unwrap();
        assert!(close(t.lhs / t.rhs, b.lhs / b.rhs, 1e-10));
    }

    #[test]
    fn reciprocal_combination_examples() {
        let n = 4;
        let (a, beta, radius) = (c(-0.6, 0.3), c(0.2, 0.5), 1.5);
        let z = Complex::from_polar(2.0, 2.2);
        let r = check_reciprocal_combination_bound(&Polynomial::monomial(n, one()), n, a, beta, radius, z).unwrap();
        assert!(close(r.lhs, r.rhs, 1e-12));

        // beta = 0, R = 1 reduces to the reciprocal pair bound
        let p = real(&[1.0, 0.5, -2.0, 0.0, 0.3]);
        let x = check_reciprocal_combination_bound(&p, n, a, c(0.0, 0.0), 1.0, z).unwrap();
        let y = check_reciprocal_pair_bound(&p, n, a, z).unwrap();
        assert!(close(x.lhs, y.lhs, 1e-12) && close(x.rhs, y.rhs, 1e-12));
    }

    #[test]
    fn nonvanishing_combination_examples() {
        let p = Polynomial::from_roots(&[c(1.5, 0.5), c(-2.0, 1.0), c(0.0, -1.2)], c(0.7, 0.0));
        let (a, beta, radius) = (c(0.1, -0.3), c(0.5, 0.5), 2.0);
        let z = Complex::from_polar(1.01, 0.5);
        let half = check_nonvanishing_combination_bound(&p, 3, a, beta, radius, z).unwrap();
        let full = check_reciprocal_combination_bound(&p, 3, a, beta, radius, z).unwrap();
        assert_eq!(half.rhs, full.rhs / 2.0);
        assert!(half.passed);

        // beta = 0, a = 0, R = 1 at the argmax of |p'| gives the Erdos-Lax ratio
        let prof = circle_profile(&p.derivative(), 1.0).unwrap();
        let zmax = Complex::from_polar(1.0, prof.argmax_theta);
        let t = check_nonvanishing_combination_bound(&p, 3, c(0.0, 0.0), c(0.0, 0.0), 1.0, zmax).unwrap();
        let e = check_erdos_lax(&p, 3).unwrap();
        assert!(close(t.lhs / t.rhs, e.lhs / e.rhs, 1e-10));

        assert!(check_nonvanishing_combination_bound(&real(&[0.1, 1.0]), 1, a, beta, radius, z).is_err());
    }

    #[test]
    fn scaling_leaves_ratios_unchanged() {
        let p = real(&[0.5, -1.0, 0.2, 0.7]);
        let s = c(-3.0, 4.0);
        let z = Complex::from_polar(1.5, 0.3);
        let (a, beta) = (c(0.2, 0.2), c(-0.3, 0.1));
        let pairs = [
            (check_bernstein(&p, 3), check_bernstein(&p.scale(s), 3)),
            (check_growth(&p, 3, 1.5), check_growth(&p.scale(s), 3, 1.5)),
            (
                check_combination_bound(&p, 3, a, beta, 2.0, z),
                check_combination_bound(&p.scale(s), 3, a, beta, 2.0, z),
            ),
            (
                check_reciprocal_combination_bound(&p, 3, a, beta, 2.0, z),
                check_reciprocal_combination_bound(&p.scale(s), 3, a, beta, 2.0, z),
            ),
        ];
        for (x, y) in pairs {
            let (x, y) = (x.unwrap(), y.unwrap());
            assert!(close(x.ratio(), y.ratio(), 1e-10));
        }
    }
}
