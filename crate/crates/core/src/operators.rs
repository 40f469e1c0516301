//! Smirnov, modified Smirnov and second-order Marden operators.
//!
//! All operators act on a polynomial viewed as an element of the space of
//! polynomials of degree at most `n`; `n` is passed explicitly because the
//! operators depend on it and not on the effective degree of the input.
//!
//! The "dilated" modified Smirnov operator applies the operator to
//! `z -> p(Rz)`. It is *not* the modified Smirnov image evaluated at `Rz`:
//!
//! ```text
//! (1 + a z) R p'(R z) - n a p(R z)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::poly::{check_finite, Complex, Polynomial, DEGREE_EPSILON};

/// Slack allowed on the closed unit disk constraint `|a| <= 1`, `|beta| <= 1`.
pub const DISK_TOLERANCE: f64 = 1e-12;

/// Slack on the closed half-plane `Re(z) <= n/4` in the Marden admissibility test.
pub const HALF_PLANE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    Smirnov { alpha: Complex, n: usize },
    ModifiedSmirnov { a: Complex, n: usize },
    Marden { lambdas: [Complex; 3], n: usize },
}

impl OperatorSpec {
    pub fn degree(&self) -> usize {
        match *self {
            OperatorSpec::Smirnov { n, .. }
            | OperatorSpec::ModifiedSmirnov { n, .. }
            | OperatorSpec::Marden { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_degree(self.degree())?;
        match self {
            OperatorSpec::Smirnov { alpha, .. } => check_finite(*alpha, "alpha"),
            OperatorSpec::ModifiedSmirnov { a, .. } => check_unit_disk(*a, "a"),
            OperatorSpec::Marden { lambdas, .. } => {
                for l in lambdas {
                    check_finite(*l, "lambda")?;
                }
                Ok(())
            }
        }
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.validate()?;
        match *self {
            OperatorSpec::Smirnov { alpha, n } => smirnov(p, alpha, n),
            OperatorSpec::ModifiedSmirnov { a, n } => modified_smirnov(p, a, n),
            OperatorSpec::Marden { lambdas, n } => marden(p, lambdas, n),
        }
    }
}

fn require_degree(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::DegreeTooSmall { min: 1, got: 0 })
    } else {
        Ok(())
    }
}

pub(crate) fn check_unit_disk(x: Complex, name: &'static str) -> Result<()> {
    check_finite(x, name)?;
    if x.norm() > 1.0 + DISK_TOLERANCE {
        return Err(invalid(name, format!("|{name}| = {} exceeds 1", x.norm())));
    }
    Ok(())
}

fn check_dilation(radius: f64) -> Result<()> {
    if !radius.is_finite() || radius < 1.0 {
        return Err(invalid("R", format!("expected R >= 1, got {radius}")));
    }
    Ok(())
}

/// `z p'(z) - n alpha p(z)`, nominal degree `n`.
pub fn smirnov(p: &Polynomial, alpha: Complex, n: usize) -> Result<Polynomial> {
    require_degree(n)?;
    check_finite(alpha, "alpha")?;
    let p = p.with_nominal_degree(n)?;
    let nf = n as f64;
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| c * k as f64 - c * alpha * nf)
        .collect();
    Polynomial::new(coeffs)
}

/// `(1 + a z) p'(z) - n a p(z)`, nominal degree `n - 1`.
///
/// The `z^n` terms cancel identically, so they are never formed.
pub fn modified_smirnov(p: &Polynomial, a: Complex, n: usize) -> Result<Polynomial> {
    require_degree(n)?;
    check_unit_disk(a, "a")?;
    let p = p.with_nominal_degree(n)?;
    let c = p.coeffs();
    let nf = n as f64;
    // coefficient of z^k: (k+1) c_{k+1} + a (k - n) c_k
    let coeffs = (0..n)
        .map(|k| c[k + 1] * (k + 1) as f64 + a * c[k] * (k as f64 - nf))
        .collect();
    Polynomial::new(coeffs)
}

/// `(1 + a z) R p'(R z) - n a p(R z)` as a polynomial in `z`.
pub fn dilated_modified_smirnov(
    p: &Polynomial,
    a: Complex,
    n: usize,
    radius: f64,
) -> Result<Polynomial> {
    check_dilation(radius)?;
    if radius == 1.0 {
        return modified_smirnov(p, a, n);
    }
    modified_smirnov(&p.dilate(radius)?, a, n)
}

/// `S~_a[p](Rz) - beta S~_a[p](z)` in the dilated reading.
pub fn smirnov_combination(
    p: &Polynomial,
    a: Complex,
    beta: Complex,
    radius: f64,
    n: usize,
) -> Result<Polynomial> {
    check_unit_disk(beta, "beta")?;
    let dilated = dilated_modified_smirnov(p, a, n, radius)?;
    let plain = modified_smirnov(p, a, n)?;
    Ok(dilated.sub(&plain.scale(beta)))
}

/// `l0 p + l1 (n z / 2) p' + l2 (n z / 2)^2 p''`.
pub fn marden(p: &Polynomial, lambdas: [Complex; 3], n: usize) -> Result<Polynomial> {
    require_degree(n)?;
    for l in &lambdas {
        check_finite(*l, "lambda")?;
    }
    let p = p.with_nominal_degree(n)?;
    let [l0, l1, l2] = lambdas;
    let half_n = n as f64 / 2.0;
    // z^k p^{(k)} maps c_j z^j to j(j-1)...(j-k+1) c_j z^j
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let j = j as f64;
            c * (l0 + l1 * (half_n * j) + l2 * (half_n * half_n * j * (j - 1.0)))
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Roots of `u(z) = l0 + n l1 z + (n(n-1)/2) l2 z^2`, with degenerate leading terms dropped.
pub fn marden_symbol_roots(lambdas: [Complex; 3], n: usize) -> Result<Vec<Complex>> {
    for l in &lambdas {
        check_finite(*l, "lambda")?;
    }
    if lambdas.iter().all(|l| l.norm() == 0.0) {
        return Err(invalid("lambdas", "all three lambdas are zero"));
    }
    let nf = n as f64;
    let c0 = lambdas[0];
    let c1 = lambdas[1] * nf;
    let c2 = lambdas[2] * (nf * (nf - 1.0) / 2.0);
    let scale = c0.norm().max(c1.norm()).max(c2.norm());
    let negligible = |c: Complex| c.norm() <= DEGREE_EPSILON * scale;

    if !negligible(c2) {
        Ok(quadratic_roots(c2, c1, c0).to_vec())
    } else if !negligible(c1) {
        Ok(vec![-c0 / c1])
    } else {
        Ok(Vec::new())
    }
}

/// Roots of `a z^2 + b z + c` without cancellation in the larger-magnitude root.
fn quadratic_roots(a: Complex, b: Complex, c: Complex) -> [Complex; 2] {
    let disc = (b * b - a * c * 4.0).sqrt();
    let plus = b + disc;
    let minus = b - disc;
    let q = if plus.norm() >= minus.norm() { plus } else { minus } * -0.5;
    if q.norm() == 0.0 {
        // b = 0 and c = 0: double root at zero
        return [Complex::new(0.0, 0.0); 2];
    }
    [q / a, c / q]
}

/// Whether the Marden symbol `u` has every root in the closed half-plane `Re(z) <= n/4`.
pub fn marden_admissible(lambdas: [Complex; 3], n: usize) -> Result<bool> {
    let bound = n as f64 / 4.0;
    let slack = HALF_PLANE_TOLERANCE * bound.max(1.0);
    Ok(marden_symbol_roots(lambdas, n)?
        .iter()
        .all(|r| r.re <= bound + slack))
}

/// The `alpha` with `B[p] = l1 (n/2) S_alpha[p]` when `l2 = 0`.
pub fn marden_smirnov_alpha(lambdas: [Complex; 3], n: usize) -> Result<Complex> {
    require_degree(n)?;
    let [l0, l1, l2] = lambdas;
    if l2.norm() != 0.0 {
        return Err(invalid("lambdas", "second-order coefficient must be zero"));
    }
    if l1.norm() == 0.0 {
        return Err(invalid("lambdas", "first-order coefficient must be nonzero"));
    }
    let nf = n as f64;
    Ok(-(l0 * 2.0) / (l1 * (nf * nf)))
}

/// Membership of `alpha` in the closure of the image of `|t| < r` under `t / (1 + t)`.
///
/// The preimage is `t = alpha / (1 - alpha)`; `alpha = 1` is the pole and never a member.
pub fn omega_member(alpha: Complex, r: f64) -> bool {
    let gap = Complex::new(1.0, 0.0) - alpha;
    if gap.norm() == 0.0 || !r.is_finite() || r < 0.0 {
        return false;
    }
    alpha.norm() <= r * gap.norm()
}

/// Degree drop of `S~_a[p]` below `n - 1`, i.e. `n c_n - a c_{n-1} = 0`.
pub fn is_exceptional(p: &Polynomial, a: Complex, n: usize) -> Result<bool> {
    require_degree(n)?;
    let d = p.degree();
    if d != n || p.is_zero() {
        return Err(Error::DegreeTooSmall { min: n, got: d });
    }
    let image = modified_smirnov(p, a, n)?;
    let top = image.coeff(n - 1);
    let scale = (p.coeff(n) * n as f64)
        .norm()
        .max((a * p.coeff(n - 1)).norm())
        .max(image.max_coeff_modulus());
    Ok(top.norm() <= DEGREE_EPSILON * scale)
}
