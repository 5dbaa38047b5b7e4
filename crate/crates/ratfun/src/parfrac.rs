//! Arnoldi-orthogonalized polynomial basis and least-squares rational
//! approximation with prescribed poles: `r(z) = p(z) + sum_j c_j/(z - zeta_j)`.
//!
//! The basis orthogonalizes the monomials evaluated at the sample points
//! under the scaled inner product `<a, b> = a* b / m`; the Hessenberg matrix
//! recorded along the way is all that is needed to evaluate the polynomial
//! anywhere else.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{PoleResidue, RationalFunction};

#[derive(Clone, Debug)]
pub struct ArnoldiBasis {
    points: Vec<Complex64>,
    /// Upper Hessenberg, `(N+1) x N`, positive real subdiagonal.
    h: DMatrix<Complex64>,
    /// Orthonormal basis vectors, `m x (N+1)`; droppable after fitting.
    q: Option<DMatrix<Complex64>>,
    degree: usize,
}

impl ArnoldiBasis {
    /// Orthogonalizes `{1, t, ..., t^N}` on the given points.
    ///
    /// Numerical rank deficiency (a vanishing subdiagonal) is reported with
    /// the offending degree.
    pub fn new(points: &[Complex64], degree: usize) -> Result<Self> {
        let m = points.len();
        if m < degree + 1 {
            return Err(Error::TooFewTestPoints { tests: m, nodes: degree + 1 });
        }
        let scale = points.iter().map(|t| t.norm()).fold(1.0, f64::max);
        let sqrt_m = (m as f64).sqrt();
        let mut q = DMatrix::<Complex64>::zeros(m, degree + 1);
        for i in 0..m {
            q[(i, 0)] = Complex64::new(1.0, 0.0);
        }
        let mut h = DMatrix::<Complex64>::zeros(degree + 1, degree.max(1));
        h = h.resize(degree + 1, degree, Complex64::new(0.0, 0.0));
        for j in 0..degree {
            let mut v: Vec<Complex64> = (0..m).map(|i| points[i] * q[(i, j)]).collect();
            for k in 0..=j {
                let proj: Complex64 =
                    (0..m).map(|i| q[(i, k)].conj() * v[i]).sum::<Complex64>() / m as f64;
                h[(k, j)] = proj;
                for i in 0..m {
                    v[i] -= proj * q[(i, k)];
                }
            }
            let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() / sqrt_m;
            if norm <= 1e-14 * scale {
                return Err(Error::RankDeficient(j + 1));
            }
            h[(j + 1, j)] = Complex64::new(norm, 0.0);
            for i in 0..m {
                q[(i, j + 1)] = v[i] / norm;
            }
        }
        Ok(ArnoldiBasis { points: points.to_vec(), h, q: Some(q), degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn hessenberg(&self) -> &DMatrix<Complex64> {
        &self.h
    }

    pub fn basis_matrix(&self) -> Option<&DMatrix<Complex64>> {
        self.q.as_ref()
    }

    /// Frees the stored basis vectors; `H` is enough for evaluation.
    pub fn drop_basis_matrix(&mut self) {
        self.q = None;
    }

    /// Least-squares polynomial fit of the given sample values (the
    /// backslash operation): since the columns of `Q` are orthonormal under
    /// the scaled inner product, the coefficients are `Q* f / m`.
    pub fn fit(&self, values: &[Complex64]) -> Result<ArnoldiPolynomial> {
        let m = self.points.len();
        if values.len() != m {
            return Err(Error::LengthMismatch(values.len(), m));
        }
        let q = self.q.as_ref().expect("basis matrix required for fitting");
        let coeffs: Vec<Complex64> = (0..=self.degree)
            .map(|k| (0..m).map(|i| q[(i, k)].conj() * values[i]).sum::<Complex64>() / m as f64)
            .collect();
        Ok(ArnoldiPolynomial { basis: self.clone(), coeffs })
    }

    fn reconstruct_from(points: Vec<Complex64>, h: DMatrix<Complex64>, degree: usize) -> Self {
        ArnoldiBasis { points, h, q: None, degree }
    }
}

/// A polynomial expressed in an Arnoldi basis.
#[derive(Clone, Debug)]
pub struct ArnoldiPolynomial {
    basis: ArnoldiBasis,
    coeffs: Vec<Complex64>,
}

impl ArnoldiPolynomial {
    pub fn new(basis: ArnoldiBasis, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != basis.degree + 1 {
            return Err(Error::LengthMismatch(coeffs.len(), basis.degree + 1));
        }
        Ok(ArnoldiPolynomial { basis, coeffs })
    }

    /// Rebuilds an evaluable polynomial from serialized `H` and coefficients.
    pub fn from_parts(h: DMatrix<Complex64>, coeffs: Vec<Complex64>) -> Result<Self> {
        if h.nrows() != h.ncols() + 1 || coeffs.len() != h.nrows() {
            return Err(Error::LengthMismatch(coeffs.len(), h.nrows()));
        }
        let degree = h.ncols();
        Ok(ArnoldiPolynomial {
            basis: ArnoldiBasis::reconstruct_from(Vec::new(), h, degree),
            coeffs,
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn basis(&self) -> &ArnoldiBasis {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    /// Evaluates by replaying the Arnoldi recurrence at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let h = &self.basis.h;
        let n = self.basis.degree;
        let mut q = Vec::with_capacity(n + 1);
        q.push(Complex64::new(1.0, 0.0));
        let mut y = self.coeffs[0];
        for j in 0..n {
            let mut v = z * q[j];
            for k in 0..=j {
                v -= h[(k, j)] * q[k];
            }
            let qn = v / h[(j + 1, j)];
            q.push(qn);
            y += self.coeffs[j + 1] * qn;
        }
        y
    }

    /// Value and derivative at `z` (the recurrence differentiated in place).
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let h = &self.basis.h;
        let n = self.basis.degree;
        let mut q = Vec::with_capacity(n + 1);
        let mut dq = Vec::with_capacity(n + 1);
        q.push(Complex64::new(1.0, 0.0));
        dq.push(Complex64::new(0.0, 0.0));
        let mut y = self.coeffs[0];
        let mut dy = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let mut v = z * q[j];
            let mut dv = q[j] + z * dq[j];
            for k in 0..=j {
                v -= h[(k, j)] * q[k];
                dv -= h[(k, j)] * dq[k];
            }
            let qn = v / h[(j + 1, j)];
            let dqn = dv / h[(j + 1, j)];
            q.push(qn);
            dq.push(dqn);
            y += self.coeffs[j + 1] * qn;
            dy += self.coeffs[j + 1] * dqn;
        }
        (y, dy)
    }
}

/// Rational function with prescribed poles: Arnoldi polynomial part plus
/// pole/residue pairs.
#[derive(Clone, Debug)]
pub struct PartialFractions {
    poly: ArnoldiPolynomial,
    poles: Vec<Complex64>,
    residues: Vec<Complex64>,
    condition: f64,
}

impl PartialFractions {
    pub fn from_parts(
        poly: ArnoldiPolynomial,
        poles: Vec<Complex64>,
        residues: Vec<Complex64>,
    ) -> Result<Self> {
        if poles.len() != residues.len() {
            return Err(Error::LengthMismatch(poles.len(), residues.len()));
        }
        for i in 0..poles.len() {
            for j in i + 1..poles.len() {
                if poles[i] == poles[j] {
                    return Err(Error::DuplicatePoint(poles[i]));
                }
            }
        }
        Ok(PartialFractions { poly, poles, residues, condition: 1.0 })
    }

    pub fn polynomial(&self) -> &ArnoldiPolynomial {
        &self.poly
    }

    pub fn pole_count(&self) -> usize {
        self.poles.len()
    }

    pub fn residue_values(&self) -> &[Complex64] {
        &self.residues
    }

    /// Condition estimate of the least-squares matrix from the fit.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// Set when the fit matrix looked numerically rank deficient.
    pub fn condition_warning(&self) -> Option<String> {
        (self.condition > 1e14)
            .then(|| format!("least-squares matrix condition {:.3e} exceeds 1e14", self.condition))
    }

    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let (mut y, mut dy) = self.poly.eval_with_derivative(z);
        for (&zeta, &c) in self.poles.iter().zip(&self.residues) {
            let d = z - zeta;
            y += c / d;
            dy -= c / (d * d);
        }
        (y, dy)
    }
}

/// Solves the overdetermined system `[Q | C] [a; c] ~= f` for the polynomial
/// coefficients and residues, where `C[i][j] = 1/(t_i - zeta_j)`.
///
/// Uses a column-pivoted orthogonal factorization; a condition estimate
/// beyond `1e14` is attached to the result as a warning.
pub fn fit_least_squares(
    points: &[Complex64],
    values: &[Complex64],
    poles: &[Complex64],
    degree: usize,
) -> Result<PartialFractions> {
    let m = points.len();
    let nu = poles.len();
    if values.len() != m {
        return Err(Error::LengthMismatch(values.len(), m));
    }
    if m < degree + 1 + nu {
        return Err(Error::TooFewTestPoints { tests: m, nodes: degree + 1 + nu });
    }
    let scale = points.iter().map(|t| t.norm()).fold(1.0, f64::max);
    for &zeta in poles {
        for &t in points {
            if (t - zeta).norm() <= 1e-13 * scale {
                return Err(Error::DuplicatePoint(zeta));
            }
        }
    }

    let basis = ArnoldiBasis::new(points, degree)?;
    let q = basis.q.as_ref().unwrap();
    let cols = degree + 1 + nu;
    let a = DMatrix::from_fn(m, cols, |i, j| {
        if j <= degree {
            q[(i, j)]
        } else {
            1.0 / (points[i] - poles[j - degree - 1])
        }
    });
    let (x, condition) = linalg::lstsq_colpiv(&a, values)?;
    let coeffs = x[..=degree].to_vec();
    let residues = x[degree + 1..].to_vec();
    Ok(PartialFractions {
        poly: ArnoldiPolynomial { basis, coeffs },
        poles: poles.to_vec(),
        residues,
        condition,
    })
}

impl RationalFunction for PartialFractions {
    /// Polynomial part plus the Cauchy sum; hitting a pole exactly yields an
    /// infinite value.
    fn eval(&self, z: Complex64) -> Complex64 {
        if self.poles.contains(&z) {
            return Complex64::new(f64::INFINITY, f64::INFINITY);
        }
        let mut y = self.poly.eval(z);
        for (&zeta, &c) in self.poles.iter().zip(&self.residues) {
            y += c / (z - zeta);
        }
        y
    }

    fn degrees(&self) -> (usize, usize) {
        (self.poly.degree() + self.poles.len(), self.poles.len())
    }

    fn is_empty(&self) -> bool {
        false
    }

    fn poles(&self) -> Result<Vec<Complex64>> {
        Ok(self.poles.clone())
    }

    fn residues(&self) -> Result<Vec<PoleResidue>> {
        Ok(self
            .poles
            .iter()
            .zip(&self.residues)
            .map(|(&pole, &residue)| PoleResidue { pole, residue, flagged: false })
            .collect())
    }

    /// Roots by Newton iteration from `4 (N + nu)` circle-sample starting
    /// guesses; non-converging candidates are dropped, converged ones are
    /// verified against `|r(root)| <= 1e-8 * scale` and deduplicated.
    fn roots(&self) -> Result<Vec<Complex64>> {
        let (num_deg, _) = self.degrees();
        if num_deg == 0 {
            return Ok(Vec::new());
        }
        let anchors: Vec<Complex64> = if self.poly.basis.points.is_empty() {
            self.poles.clone()
        } else {
            self.poly.basis.points.clone()
        };
        if anchors.is_empty() {
            return Ok(Vec::new());
        }
        let center = anchors.iter().sum::<Complex64>() / anchors.len() as f64;
        let spread = anchors
            .iter()
            .chain(self.poles.iter())
            .map(|z| (z - center).norm())
            .fold(0.0, f64::max)
            .max(1e-3);

        let scale = if self.poly.basis.points.is_empty() {
            1.0
        } else {
            self.poly
                .basis
                .points
                .iter()
                .map(|&t| self.eval(t).norm())
                .filter(|v| v.is_finite())
                .fold(1e-300, f64::max)
        };

        let guesses = 4 * num_deg;
        let mut out: Vec<Complex64> = Vec::new();
        for g in 0..guesses {
            let angle = std::f64::consts::TAU * g as f64 / guesses as f64 + 0.23;
            let mut z = center + Complex64::from_polar(1.2 * spread, angle);
            let mut converged = false;
            for _ in 0..40 {
                let (y, dy) = self.eval_with_derivative(z);
                if dy.norm() == 0.0 {
                    break;
                }
                let step = y / dy;
                z -= step;
                if !z.re.is_finite() || !z.im.is_finite() {
                    break;
                }
                if step.norm() <= 1e-14 * (1.0 + z.norm()) {
                    converged = true;
                    break;
                }
            }
            if !converged || self.eval(z).norm() > 1e-8 * scale {
                continue;
            }
            if !out.iter().any(|r| (r - z).norm() <= 1e-8 * (1.0 + z.norm())) {
                out.push(z);
            }
        }
        out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle_points(n: usize) -> Vec<Complex64> {
        (0..n).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).collect()
    }

    #[test]
    fn degree_zero_basis_is_ones() {
        let pts = [c(0.1, 0.0), c(0.5, 0.3), c(-0.7, 0.1)];
        let b = ArnoldiBasis::new(&pts, 0).unwrap();
        let q = b.basis_matrix().unwrap();
        assert_eq!(q.shape(), (3, 1));
        assert!(q.iter().all(|&e| e == c(1.0, 0.0)));
        assert_eq!(b.hessenberg().shape(), (1, 0));
    }

    #[test]
    fn roots_of_unity_make_h_the_shift() {
        // monomials are already orthonormal on the circle, so H must be the
        // down-shift with unit subdiagonal
        let pts = circle_points(64);
        let b = ArnoldiBasis::new(&pts, 8).unwrap();
        let h = b.hessenberg();
        for j in 0..8 {
            for k in 0..=8 {
                let want = if k == j + 1 { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(h[(k, j)].norm(), want, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn orthonormality_under_scaled_inner_product() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let m = rng.gen_range(40..200);
            let n = rng.gen_range(1..16);
            let pts: Vec<Complex64> =
                (0..m).map(|_| c(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 2.0 - 1.0)).collect();
            let b = ArnoldiBasis::new(&pts, n).unwrap();
            let q = b.basis_matrix().unwrap();
            let gram = q.adjoint() * q / Complex64::new(m as f64, 0.0);
            for i in 0..=n {
                for j in 0..=n {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (gram[(i, j)] - c(want, 0.0)).norm() <= 1e-10,
                        "gram[{i}][{j}] = {}",
                        gram[(i, j)]
                    );
                }
            }
        }
    }

    #[test]
    fn monomials_reconstruct_from_basis() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let pts: Vec<Complex64> =
            (0..50).map(|_| c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() - 0.5)).collect();
        let b = ArnoldiBasis::new(&pts, 3).unwrap();
        for k in 0..=3usize {
            let target: Vec<Complex64> = pts.iter().map(|t| t.powu(k as u32)).collect();
            let p = b.fit(&target).unwrap();
            let scale = target.iter().map(|v| v.norm()).fold(1.0, f64::max);
            for (i, &t) in pts.iter().enumerate() {
                assert!((p.eval(t) - target[i]).norm() <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn constant_coefficient_vector() {
        let pts = circle_points(20);
        let b = ArnoldiBasis::new(&pts, 4).unwrap();
        let mut coeffs = vec![c(0.0, 0.0); 5];
        coeffs[0] = c(1.0, 0.0);
        let p = ArnoldiPolynomial::new(b, coeffs).unwrap();
        for z in [c(0.0, 0.0), c(2.0, -1.0), c(0.3, 0.4)] {
            assert_eq!(p.eval(z), c(1.0, 0.0));
        }
    }

    #[test]
    fn evaluation_matches_basis_matrix() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let pts: Vec<Complex64> =
            (0..40).map(|_| c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() - 0.5)).collect();
        let b = ArnoldiBasis::new(&pts, 7).unwrap();
        let coeffs: Vec<Complex64> = (0..8).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
        let q = b.basis_matrix().unwrap().clone();
        let p = ArnoldiPolynomial::new(b, coeffs.clone()).unwrap();
        for (i, &t) in pts.iter().enumerate() {
            let via_q: Complex64 = (0..8).map(|k| q[(i, k)] * coeffs[k]).sum();
            assert!((p.eval(t) - via_q).norm() <= 1e-12 * via_q.norm().max(1.0));
        }
    }

    #[test]
    fn rank_deficiency_is_detected() {
        // two distinct points cannot support a quadratic
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let err = ArnoldiBasis::new(&pts, 3).unwrap_err();
        assert!(matches!(err, Error::RankDeficient(_)));
    }

    #[test]
    fn cosine_fit_error_matches_reported_value() {
        // ten basis functions on 800 circle points leave an error near
        // 2.78e-7 (dominated by the first dropped Taylor term)
        let pts: Vec<Complex64> = (0..800)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / 799.0))
            .collect();
        let b = ArnoldiBasis::new(&pts, 9).unwrap();
        let values: Vec<Complex64> = pts.iter().map(|z| z.cos()).collect();
        let p = b.fit(&values).unwrap();
        let max_err = pts
            .iter()
            .zip(&values)
            .map(|(&t, &v)| (p.eval(t) - v).norm())
            .fold(0.0, f64::max);
        assert!(
            max_err >= 2.78e-8 && max_err <= 2.78e-6,
            "max sample error {max_err:.3e} outside the accepted band"
        );
    }

    #[test]
    fn exact_partial_fraction_recovery() {
        let pts: Vec<Complex64> = (0..100).map(|k| c(-1.0 + 2.0 * k as f64 / 99.0, 0.0)).collect();
        let values: Vec<Complex64> = pts.iter().map(|&z| 1.0 / (z - 2.0)).collect();
        let pf = fit_least_squares(&pts, &values, &[c(2.0, 0.0)], 0).unwrap();
        assert!((pf.residue_values()[0] - c(1.0, 0.0)).norm() <= 1e-10);
        assert!(pf.poly.coeffs()[0].norm() <= 1e-10);
        assert!(pf.condition_warning().is_none());
        assert_eq!(pf.degrees(), (1, 1));
    }

    #[test]
    fn exact_polynomial_recovery() {
        let pts: Vec<Complex64> = (0..60).map(|k| c(-1.0 + 2.0 * k as f64 / 59.0, 0.0)).collect();
        let f = |z: Complex64| z * z * z - 2.0 * z + c(0.5, 1.0);
        let values: Vec<Complex64> = pts.iter().map(|&z| f(z)).collect();
        let pf = fit_least_squares(&pts, &values, &[], 3).unwrap();
        let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for (&t, &v) in pts.iter().zip(&values) {
            assert!((pf.eval(t) - v).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn model_form_reproduced_to_spec_tolerance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let pts: Vec<Complex64> = (0..150).map(|k| c(-1.0 + 2.0 * k as f64 / 149.0, 0.0)).collect();
        let poles = [c(1.7, 0.4), c(-0.3, -1.2), c(0.0, 2.0)];
        let res: Vec<Complex64> = (0..3).map(|_| c(rng.gen::<f64>() + 0.5, rng.gen::<f64>())).collect();
        let f = |z: Complex64| {
            let mut y = c(0.3, -0.2) + c(1.1, 0.0) * z + c(0.0, 0.4) * z * z;
            for (zeta, r) in poles.iter().zip(&res) {
                y += r / (z - zeta);
            }
            y
        };
        let values: Vec<Complex64> = pts.iter().map(|&z| f(z)).collect();
        let pf = fit_least_squares(&pts, &values, &poles, 2).unwrap();
        let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for (&t, &v) in pts.iter().zip(&values) {
            assert!((pf.eval(t) - v).norm() <= 1e-11 * scale);
        }
    }

    #[test]
    fn residual_is_orthogonal_to_column_space() {
        let pts: Vec<Complex64> = (0..80).map(|k| c(-1.0 + 2.0 * k as f64 / 79.0, 0.0)).collect();
        let values: Vec<Complex64> = pts.iter().map(|&z| (3.0 * z).exp()).collect();
        let poles = [c(1.5, 0.5)];
        let degree = 6;
        let pf = fit_least_squares(&pts, &values, &poles, degree).unwrap();
        let q = pf.poly.basis.basis_matrix().unwrap();
        let m = pts.len();
        let a = DMatrix::from_fn(m, degree + 2, |i, j| {
            if j <= degree { q[(i, j)] } else { 1.0 / (pts[i] - poles[j - degree - 1]) }
        });
        let resid = nalgebra::DVector::from_fn(m, |i, _| pf.eval(pts[i]) - values[i]);
        let fnorm = values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        assert!((a.adjoint() * resid).norm() <= 1e-10 * fnorm * m as f64);
    }

    #[test]
    fn eval_reduces_to_polynomial_without_poles() {
        let pts = circle_points(30);
        let b = ArnoldiBasis::new(&pts, 3).unwrap();
        let values: Vec<Complex64> = pts.iter().map(|&z| z * z).collect();
        let p = b.fit(&values).unwrap();
        let pf = PartialFractions::from_parts(p.clone(), vec![], vec![]).unwrap();
        for z in [c(0.3, 0.2), c(-1.5, 0.7)] {
            assert_eq!(pf.eval(z), p.eval(z));
        }
    }

    #[test]
    fn pure_pole_evaluation_and_pole_hit() {
        let pts = circle_points(10);
        let b = ArnoldiBasis::new(&pts, 0).unwrap();
        let p = ArnoldiPolynomial::new(b, vec![c(0.0, 0.0)]).unwrap();
        let pf = PartialFractions::from_parts(p, vec![c(0.0, 0.0)], vec![c(1.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(pf.eval(c(2.0, 0.0)).re, 0.5, epsilon = 1e-15);
        assert!(!pf.eval(c(0.0, 0.0)).re.is_finite());
    }

    #[test]
    fn roots_of_one_plus_inverse() {
        // r(z) = 1 + 1/z = (z + 1)/z has the single root -1
        let pts = circle_points(10);
        let b = ArnoldiBasis::new(&pts, 0).unwrap();
        let p = ArnoldiPolynomial::new(b, vec![c(1.0, 0.0)]).unwrap();
        let pf = PartialFractions::from_parts(p, vec![c(0.0, 0.0)], vec![c(1.0, 0.0)]).unwrap();
        let roots = pf.roots().unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - c(-1.0, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn pure_pole_has_no_roots() {
        let pts = circle_points(10);
        let b = ArnoldiBasis::new(&pts, 0).unwrap();
        let p = ArnoldiPolynomial::new(b, vec![c(0.0, 0.0)]).unwrap();
        let pf = PartialFractions::from_parts(p, vec![c(2.0, 0.0)], vec![c(1.0, 0.0)]).unwrap();
        assert!(pf.roots().unwrap().is_empty());
    }

    #[test]
    fn stored_poles_round_trip() {
        let pts = circle_points(12);
        let b = ArnoldiBasis::new(&pts, 1).unwrap();
        let p = ArnoldiPolynomial::new(b, vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let poles = vec![c(2.0, 1.0), c(-1.0, 0.5)];
        let res = vec![c(1.0, 0.0), c(0.0, 3.0)];
        let pf = PartialFractions::from_parts(p, poles.clone(), res.clone()).unwrap();
        assert_eq!(pf.poles().unwrap(), poles);
        let rr = pf.residues().unwrap();
        assert_eq!(rr.iter().map(|r| r.residue).collect::<Vec<_>>(), res);
        assert_eq!(pf.degrees(), (3, 2));
    }
}
