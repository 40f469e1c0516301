//! Dense complex polynomials.
//!
//! A [`Polynomial`] stores its coefficients in ascending powers, so index `j`
//! holds the coefficient of `z^j`. The length of the coefficient vector fixes
//! the *nominal* degree; the *effective* degree ignores trailing coefficients
//! that are negligible relative to the largest one (see [`DEGREE_EPSILON`]).
//!
//! Every operator in this crate is linear in the coefficients, which is why the
//! representation is dense rather than root-based.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Complex = Complex64;

/// Relative threshold below which a coefficient does not count towards the effective degree.
pub const DEGREE_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "PolyFile", try_from = "PolyFile")]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

/// On-disk JSON layout: `{"degree": n, "coeffs": [[re0, im0], ..., [ren, imn]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyFile {
    pub degree: usize,
    pub coeffs: Vec<Complex>,
}

impl From<Polynomial> for PolyFile {
    fn from(p: Polynomial) -> Self {
        PolyFile {
            degree: p.nominal_degree(),
            coeffs: p.coeffs,
        }
    }
}

impl TryFrom<PolyFile> for Polynomial {
    type Error = Error;

    fn try_from(file: PolyFile) -> Result<Self> {
        if file.coeffs.len() != file.degree + 1 {
            return Err(invalid(
                "coeffs",
                format!(
                    "degree {} needs {} coefficients, found {}",
                    file.degree,
                    file.degree + 1,
                    file.coeffs.len()
                ),
            ));
        }
        Polynomial::new(file.coeffs)
    }
}

pub(crate) fn check_finite(z: Complex, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients. The zero polynomial is allowed.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        for c in &coeffs {
            check_finite(*c, "polynomial coefficient")?;
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// The zero polynomial with nominal degree `n`.
    pub fn zero(n: usize) -> Self {
        Polynomial {
            coeffs: vec![Complex::new(0.0, 0.0); n + 1],
        }
    }

    /// `c * z^n`.
    pub fn monomial(n: usize, c: Complex) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[n] = c;
        p
    }

    /// `lead * prod (z - r)` over the given roots, expanded into coefficients.
    pub fn from_roots(roots: &[Complex], lead: Complex) -> Self {
        let mut coeffs = vec![lead];
        for &r in roots {
            let mut next = vec![Complex::new(0.0, 0.0); coeffs.len() + 1];
            for (j, &c) in coeffs.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * r;
            }
            coeffs = next;
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True when every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest `j` with `|c_j| > DEGREE_EPSILON * max |c|`; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        let scale = self.max_coeff_modulus();
        if scale == 0.0 {
            return 0;
        }
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > DEGREE_EPSILON * scale)
            .unwrap_or(0)
    }

    /// Re-expresses the polynomial with nominal degree `n`, padding with zeros or
    /// dropping negligible high-order coefficients.
    pub fn with_nominal_degree(&self, n: usize) -> Result<Self> {
        let d = self.degree();
        if d > n {
            return Err(Error::DegreeOverflow { degree: d, limit: n });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, Complex::new(0.0, 0.0));
        Ok(Polynomial { coeffs })
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex) -> (Complex, Complex) {
        let mut value = Complex::new(0.0, 0.0);
        let mut slope = Complex::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            slope = slope * z + value;
            value = value * z + c;
        }
        (value, slope)
    }

    /// `p'`, with nominal degree one less (a constant maps to the constant 0).
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * j as f64)
            .collect();
        Polynomial { coeffs }
    }

    /// `z -> p(R z)`.
    pub fn dilate(&self, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(invalid("R", format!("dilation factor must be positive, got {radius}")));
        }
        let mut power = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * power;
                power *= radius;
                out
            })
            .collect();
        Ok(Polynomial { coeffs })
    }

    /// `z^n * conj(p(1 / conj(z)))`: coefficients reversed and conjugated as a degree-`n` list.
    pub fn conjugate_reciprocal(&self, n: usize) -> Result<Self> {
        let padded = self.with_nominal_degree(n)?;
        let coeffs = padded.coeffs.iter().rev().map(|c| c.conj()).collect();
        Ok(Polynomial { coeffs })
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) + other.coeff(j)).collect();
        Polynomial { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) - other.coeff(j)).collect();
        Polynomial { coeffs }
    }

    pub fn scale(&self, c: Complex) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Multiplies by `z^shift`.
    pub fn shift_up(&self, shift: usize) -> Self {
        let mut coeffs = vec![Complex::new(0.0, 0.0); shift];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// Leading coefficient at the effective degree.
    pub fn leading(&self) -> Complex {
        self.coeff(self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]).unwrap();
        assert!(p.eval(c(0.0, 1.0)).norm() < 1e-15);
        let cube = Polynomial::monomial(3, c(1.0, 0.0));
        assert_eq!(cube.eval(c(2.0, 0.0)), c(8.0, 0.0));

        // 2z^2 + iz + 3 at 1+i, summed term by term.
        let p = Polynomial::new(vec![c(3.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)]).unwrap();
        let z = c(1.0, 1.0);
        let naive = c(3.0, 0.0) + c(0.0, 1.0) * z + c(2.0, 0.0) * z * z;
        assert!((p.eval(z) - naive).norm() < 1e-14);
        assert!((p.eval(z) - c(2.0, 5.0)).norm() < 1e-14);
    }

    #[test]
    fn eval_with_derivative_matches_derivative() {
        let p = Polynomial::new(vec![c(1.0, -2.0), c(0.5, 0.0), c(0.0, 3.0), c(-1.0, 1.0)]).unwrap();
        let z = c(0.3, -1.2);
        let (v, d) = p.eval_with_derivative(z);
        assert!((v - p.eval(z)).norm() < 1e-13);
        assert!((d - p.derivative().eval(z)).norm() < 1e-13);
    }

    #[test]
    fn derivative_examples() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.derivative().coeffs(), &[c(0.0, 0.0), c(2.0, 0.0)]);

        let five = Polynomial::from_real(&[5.0]).unwrap();
        let d = five.derivative();
        assert!(d.is_zero());
        assert_eq!(d.nominal_degree(), 0);

        // 3z^3 - iz -> 9z^2 - i
        let p = Polynomial::new(vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert_eq!(
            p.derivative().coeffs(),
            &[c(0.0, -1.0), c(0.0, 0.0), c(9.0, 0.0)]
        );
    }

    #[test]
    fn dilate_examples() {
        let p = Polynomial::monomial(5, c(1.0, 0.0));
        assert_eq!(p.dilate(2.0).unwrap(), Polynomial::monomial(5, c(32.0, 0.0)));
        let q = Polynomial::new(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 4.0)]).unwrap();
        assert_eq!(q.dilate(1.0).unwrap(), q);
        assert!(q.dilate(0.0).is_err());
        assert!(q.dilate(-1.0).is_err());
        assert!(q.dilate(f64::NAN).is_err());
    }

    #[test]
    fn dilate_eval_identity() {
        let p = Polynomial::from_real(&[1.0, 1.0, 1.0]).unwrap();
        let d = p.dilate(1.5).unwrap();
        for k in 0..10 {
            let t = k as f64 * 0.7;
            let z = c(t.cos() * (0.2 + 0.3 * k as f64), t.sin());
            let lhs = d.eval(z);
            let rhs = p.eval(z * 1.5);
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn conjugate_reciprocal_examples() {
        // 2z^2 + iz + 3, n = 2 -> 3z^2 - iz + 2
        let p = Polynomial::new(vec![c(3.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)]).unwrap();
        let q = p.conjugate_reciprocal(2).unwrap();
        assert_eq!(q.coeffs(), &[c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.0)]);

        let zn = Polynomial::monomial(4, c(1.0, 0.0));
        let q = zn.conjugate_reciprocal(4).unwrap();
        assert_eq!(q.degree(), 0);
        assert_eq!(q.coeff(0), c(1.0, 0.0));

        assert!(matches!(
            p.conjugate_reciprocal(1),
            Err(Error::DegreeOverflow { degree: 2, limit: 1 })
        ));
        // padding: p of degree 2 viewed as degree 4
        let q = p.conjugate_reciprocal(4).unwrap();
        assert_eq!(q.coeff(4), c(3.0, 0.0));
        assert_eq!(q.coeff(0), c(0.0, 0.0));
    }

    #[test]
    fn conjugate_reciprocal_preserves_modulus_on_circle() {
        let p = Polynomial::new(vec![
            c(0.3, -1.1),
            c(2.0, 0.4),
            c(-0.7, 0.2),
            c(0.0, 1.5),
            c(1.2, -0.3),
        ])
        .unwrap();
        let q = p.conjugate_reciprocal(4).unwrap();
        for k in 0..64 {
            let z = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
            assert!((q.eval(z).norm() - p.eval(z).norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_plumbing() {
        let z2 = Polynomial::monomial(2, c(1.0, 0.0));
        let one = Polynomial::from_real(&[1.0]).unwrap();
        assert_eq!(z2.add(&one).coeffs(), &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let zp1 = Polynomial::from_real(&[1.0, 1.0]).unwrap();
        assert!(zp1.scale(c(0.0, 0.0)).is_zero());
        assert!(zp1.sub(&zp1).is_zero());
    }

    #[test]
    fn effective_degree_threshold() {
        let mut coeffs = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1e-20, 0.0)];
        let p = Polynomial::new(coeffs.clone()).unwrap();
        assert_eq!(p.nominal_degree(), 5);
        assert_eq!(p.degree(), 3);
        coeffs[5] = c(1e-6, 0.0);
        assert_eq!(Polynomial::new(coeffs).unwrap().degree(), 5);
        assert_eq!(Polynomial::zero(3).degree(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Polynomial::new(vec![]), Err(Error::EmptyPolynomial)));
        assert!(matches!(
            Polynomial::new(vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(_))
        ));
        assert!(Polynomial::new(vec![c(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn from_roots_expands() {
        let p = Polynomial::from_roots(&[c(2.0, 0.0), c(3.0, 0.0)], c(1.0, 0.0));
        assert_eq!(p.coeffs(), &[c(6.0, 0.0), c(-5.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn json_format() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(0.0, -2.5)]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"degree":1,"coeffs":[[1.0,0.0],[0.0,-2.5]]}"#);
        let back: Polynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Polynomial>(r#"{"degree":2,"coeffs":[[1,0]]}"#).is_err());
    }

    fn arb_complex() -> impl Strategy<Value = Complex> {
        (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(re, im)| Complex::new(re, im))
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(arb_complex(), 1..=max_deg + 1)
            .prop_map(|coeffs| Polynomial::new(coeffs).unwrap())
    }

    proptest! {
        #[test]
        fn horner_matches_power_sum(p in arb_poly(16), z in arb_complex()) {
            let z = z / 8.0;
            let mut naive = Complex::new(0.0, 0.0);
            let mut scale = 0.0;
            for (j, &a) in p.coeffs().iter().enumerate() {
                let term = a * z.powu(j as u32);
                naive += term;
                scale += term.norm();
            }
            let h = p.eval(z);
            prop_assert!((h - naive).norm() <= 1e-12 * scale.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn derivative_is_linear(p in arb_poly(12), q in arb_poly(12)) {
            let lhs = p.add(&q).derivative();
            let rhs = p.derivative().add(&q.derivative());
            for (x, y) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((x - y).norm() <= 1e-12 * x.norm().max(1.0));
            }
            prop_assert_eq!(lhs.coeffs().len(), rhs.coeffs().len());
        }

        #[test]
        fn conjugate_reciprocal_involution(mut coeffs in prop::collection::vec(arb_complex(), 2..=13)) {
            let n = coeffs.len() - 1;
            coeffs[n] += Complex::new(20.0, 0.0);
            let p = Polynomial::new(coeffs).unwrap();
            let back = p.conjugate_reciprocal(n).unwrap().conjugate_reciprocal(n).unwrap();
            prop_assert_eq!(back.coeffs(), p.coeffs());
        }

        #[test]
        fn dilation_composes(p in arb_poly(12), r in 0.1f64..3.0, s in 0.1f64..3.0) {
            let twice = p.dilate(r).unwrap().dilate(s).unwrap();
            let once = p.dilate(r * s).unwrap();
            for (a, b) in twice.coeffs().iter().zip(once.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(f64::MIN_POSITIVE) + 1e-300);
            }
        }
    }
}
