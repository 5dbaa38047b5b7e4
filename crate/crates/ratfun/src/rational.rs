//! Interface shared by all rational-function representations, plus the
//! contour-integral residue that works for any of them.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A pole together with its residue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoleResidue {
    pub pole: Complex64,
    pub residue: Complex64,
    /// Set when the residue could not be trusted (e.g. a near-double pole).
    pub flagged: bool,
}

/// Common interface for rational functions.
pub trait RationalFunction {
    /// Evaluates the function at `z`.
    fn eval(&self, z: Complex64) -> Complex64;

    /// Degrees of the numerator and denominator.
    fn degrees(&self) -> (usize, usize);

    /// Degree of the denominator.
    fn degree(&self) -> usize {
        self.degrees().1
    }

    fn is_empty(&self) -> bool;

    /// Poles of the rational function.
    fn poles(&self) -> Result<Vec<Complex64>>;

    /// Poles and residues.
    fn residues(&self) -> Result<Vec<PoleResidue>>;

    /// Roots of the rational function.
    fn roots(&self) -> Result<Vec<Complex64>>;
}

/// Rational functions that interpolate stored node/value pairs.
pub trait RationalInterpolant: RationalFunction {
    fn nodes(&self) -> &[Complex64];
    fn values(&self) -> &[Complex64];
}

/// Residue of `r` at `s` by the trapezoidal rule on a circle of the given
/// radius: `(1/2*pi*i) * contour integral of r`.
///
/// The point count doubles from 16 until successive estimates agree to
/// `1e-10` relative, or 1024 points are reached; persistent disagreement is
/// an error that carries the last estimate.
pub fn trapezoid_residue<F>(r: F, s: Complex64, radius: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    assert!(radius > 0.0, "residue contour radius must be positive");
    // returns the estimate plus the sampled magnitude scale, which sets the
    // rounding floor used to accept a residue that is exactly zero
    let estimate = |n: usize| -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale: f64 = 0.0;
        for k in 0..n {
            let w = Complex64::from_polar(1.0, TAU * k as f64 / n as f64);
            let v = r(s + radius * w);
            scale = scale.max(v.norm());
            acc += v * w;
        }
        (acc * radius / n as f64, radius * scale)
    };
    let (mut prev, mut scale) = estimate(16);
    let mut n = 32;
    while n <= 1024 {
        let (next, next_scale) = estimate(n);
        scale = scale.max(next_scale);
        let floor = 64.0 * f64::EPSILON * scale;
        if (next - prev).norm() <= 1e-10 * next.norm().max(prev.norm()) + floor {
            return Ok(next);
        }
        prev = next;
        n *= 2;
    }
    Err(Error::ResidueNonConvergence { estimate: prev })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cauchy_integral_of_simple_pole() {
        let r = |z: Complex64| 1.0 / z;
        let res = trapezoid_residue(r, c(0.0, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(res.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(res.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn double_pole_has_zero_residue() {
        let r = |z: Complex64| 1.0 / (z * z);
        let res = trapezoid_residue(r, c(0.0, 0.0), 0.5).unwrap();
        assert!(res.norm() <= 1e-12);
    }

    #[test]
    fn partial_fractions_residue() {
        let r = |z: Complex64| 5.0 / (z - 1.0) + 1.0 / (z + 1.0);
        let res = trapezoid_residue(r, c(1.0, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(res.re, 5.0, epsilon = 1e-10);
        assert_abs_diff_eq!(res.im, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn branch_cut_through_contour_fails() {
        // sqrt is not meromorphic at 0; estimates never settle.
        let err = trapezoid_residue(|z| z.sqrt() / z, c(0.0, 0.0), 0.5);
        assert!(matches!(err, Err(Error::ResidueNonConvergence { .. })));
    }
}
