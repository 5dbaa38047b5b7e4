//! Barycentric rational interpolation: evaluation, the Loewner least-squares
//! weight solve, incremental test-point bookkeeping, and pole, root, and
//! residue extraction.
//!
//! An interpolant with nodes `z_j`, values `y_j`, and weights `w_j` evaluates
//! as the ratio of the weighted Cauchy sums
//! `sum_j y_j w_j / (z - z_j)` over `sum_j w_j / (z - z_j)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{PoleResidue, RationalFunction, RationalInterpolant};

#[derive(Clone, Debug, Default)]
pub struct BarycentricInterpolant {
    nodes: Vec<Complex64>,
    values: Vec<Complex64>,
    weights: Vec<Complex64>,
}

impl BarycentricInterpolant {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds an interpolant from explicit data. Nodes must be pairwise
    /// distinct and at least one weight must be nonzero.
    pub fn new(nodes: Vec<Complex64>, values: Vec<Complex64>, weights: Vec<Complex64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::LengthMismatch(nodes.len(), values.len()));
        }
        if nodes.len() != weights.len() {
            return Err(Error::LengthMismatch(nodes.len(), weights.len()));
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(Error::DuplicatePoint(nodes[i]));
                }
            }
        }
        if !nodes.is_empty() && weights.iter().all(|w| w.norm() == 0.0) {
            return Err(Error::NonFiniteInput);
        }
        Ok(BarycentricInterpolant { nodes, values, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Appends nodes and values, and extends the workspace's cached Cauchy
    /// differences for every stored test point. Weights become invalid until
    /// the next `update_test_values` call.
    pub fn add_nodes(
        &mut self,
        ws: &mut LoewnerWorkspace,
        new_nodes: &[Complex64],
        new_values: &[Complex64],
    ) -> Result<()> {
        if new_nodes.len() != new_values.len() {
            return Err(Error::LengthMismatch(new_nodes.len(), new_values.len()));
        }
        for (k, &z) in new_nodes.iter().enumerate() {
            if self.nodes.contains(&z) || new_nodes[..k].contains(&z) {
                return Err(Error::DuplicatePoint(z));
            }
            if ws.tests.contains(&z) {
                return Err(Error::DuplicatePoint(z));
            }
        }
        for (i, &t) in ws.tests.iter().enumerate() {
            for &z in new_nodes {
                let diff = Complex64::new(1.0, 0.0) / (t - z);
                ws.cauchy[i].push(diff);
            }
        }
        self.nodes.extend_from_slice(new_nodes);
        self.values.extend_from_slice(new_values);
        self.weights.resize(self.nodes.len(), Complex64::new(0.0, 0.0));
        Ok(())
    }

    /// Registers new test points, re-solves the weights from the Loewner
    /// least-squares problem, and returns the interpolant's value at every
    /// stored test point.
    pub fn update_test_values(
        &mut self,
        ws: &mut LoewnerWorkspace,
        new_points: &[Complex64],
        new_values: &[Complex64],
    ) -> Result<Vec<Complex64>> {
        if self.nodes.is_empty() {
            return Err(Error::EmptyInterpolant);
        }
        if new_points.len() != new_values.len() {
            return Err(Error::LengthMismatch(new_points.len(), new_values.len()));
        }
        for (k, &t) in new_points.iter().enumerate() {
            if self.nodes.contains(&t) || ws.tests.contains(&t) || new_points[..k].contains(&t) {
                return Err(Error::DuplicatePoint(t));
            }
        }
        for (&t, &f) in new_points.iter().zip(new_values) {
            let row = self.nodes.iter().map(|&z| Complex64::new(1.0, 0.0) / (t - z)).collect();
            ws.tests.push(t);
            ws.fvals.push(f);
            ws.cauchy.push(row);
        }

        let (m, n) = (ws.tests.len(), self.nodes.len());
        if m < n {
            return Err(Error::TooFewTestPoints { tests: m, nodes: n });
        }
        let l = ws.loewner_matrix(self);
        self.weights = solve_weights(&l)?;
        Ok(self.predict(ws))
    }

    /// Values of the interpolant at all cached test points.
    fn predict(&self, ws: &LoewnerWorkspace) -> Vec<Complex64> {
        (0..ws.tests.len())
            .map(|i| {
                let mut num = Complex64::new(0.0, 0.0);
                let mut den = Complex64::new(0.0, 0.0);
                for j in 0..self.nodes.len() {
                    let c = ws.cauchy[i][j];
                    num += self.values[j] * self.weights[j] * c;
                    den += self.weights[j] * c;
                }
                num / den
            })
            .collect()
    }
}

impl RationalFunction for BarycentricInterpolant {
    /// Evaluates via the barycentric formula; exact node hits return the
    /// stored value.
    fn eval(&self, z: Complex64) -> Complex64 {
        assert!(!self.nodes.is_empty(), "cannot evaluate an empty interpolant");
        if let Some(j) = self.nodes.iter().position(|&zj| zj == z) {
            return self.values[j];
        }
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for j in 0..self.nodes.len() {
            let c = Complex64::new(1.0, 0.0) / (z - self.nodes[j]);
            num += self.values[j] * self.weights[j] * c;
            den += self.weights[j] * c;
        }
        num / den
    }

    fn degrees(&self) -> (usize, usize) {
        let d = self.nodes.len().saturating_sub(1);
        (d, d)
    }

    fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Roots of the denominator Cauchy sum `sum_j w_j / (z - z_j)`, found as
    /// eigenvalues of the deflated arrowhead pencil, polished by one Newton
    /// step, with spurious and infinite eigenvalues filtered out.
    fn poles(&self) -> Result<Vec<Complex64>> {
        cauchy_sum_roots(&self.nodes, &self.weights)
    }

    fn residues(&self) -> Result<Vec<PoleResidue>> {
        let poles = self.poles()?;
        let wsum: f64 = self.weights.iter().map(|w| w.norm()).sum();
        Ok(poles
            .into_iter()
            .map(|s| {
                let mut num = Complex64::new(0.0, 0.0);
                let mut dprime = Complex64::new(0.0, 0.0);
                let mut gap = f64::INFINITY;
                for j in 0..self.nodes.len() {
                    let d = s - self.nodes[j];
                    gap = gap.min(d.norm());
                    num += self.values[j] * self.weights[j] / d;
                    dprime -= self.weights[j] / (d * d);
                }
                let flagged = dprime.norm() <= 1e-12 * wsum / (gap * gap);
                PoleResidue { pole: s, residue: num / dprime, flagged }
            })
            .collect())
    }

    /// Roots of the numerator Cauchy sum, excluding candidates that are also
    /// (numerically) poles. Nodes interpolating an exact zero are roots.
    fn roots(&self) -> Result<Vec<Complex64>> {
        if self.nodes.len() < 2 {
            return Ok(Vec::new());
        }
        let coeffs: Vec<Complex64> =
            self.weights.iter().zip(&self.values).map(|(w, y)| w * y).collect();
        let mut out: Vec<Complex64> = self
            .nodes
            .iter()
            .zip(&self.values)
            .filter(|(_, y)| y.norm() == 0.0)
            .map(|(&z, _)| z)
            .collect();
        let wmax = self.weights.iter().map(|w| w.norm()).fold(0.0, f64::max);
        for s in cauchy_sum_roots(&self.nodes, &coeffs)? {
            let mut den = Complex64::new(0.0, 0.0);
            let mut gap = f64::INFINITY;
            for j in 0..self.nodes.len() {
                let d = s - self.nodes[j];
                gap = gap.min(d.norm());
                den += self.weights[j] / d;
            }
            // a root of the numerator where the denominator also vanishes is
            // a common factor, not a root of r
            if den.norm() > 1e-6 * wmax / gap {
                out.push(s);
            }
        }
        out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        Ok(out)
    }
}

impl RationalInterpolant for BarycentricInterpolant {
    fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Cached test-point data for the Loewner least-squares problem.
///
/// Row `i` stores `1 / (t_i - z_j)` for every node `z_j`; the Loewner entry
/// is `L[i][j] = -(f(t_i) - y_j) / (t_i - z_j)`.
#[derive(Clone, Debug, Default)]
pub struct LoewnerWorkspace {
    tests: Vec<Complex64>,
    fvals: Vec<Complex64>,
    cauchy: Vec<Vec<Complex64>>,
}

impl LoewnerWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    pub fn tests(&self) -> &[Complex64] {
        &self.tests
    }

    pub fn fvals(&self) -> &[Complex64] {
        &self.fvals
    }

    /// Removes test point `i`, returning its location and function value.
    pub fn remove_test(&mut self, i: usize) -> (Complex64, Complex64) {
        self.cauchy.remove(i);
        (self.tests.remove(i), self.fvals.remove(i))
    }

    /// Assembles the Loewner matrix from the cached differences.
    pub fn loewner_matrix(&self, r: &BarycentricInterpolant) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.tests.len(), r.nodes.len(), |i, j| {
            (r.values[j] - self.fvals[i]) * self.cauchy[i][j]
        })
    }

    /// Recomputes one Loewner entry from scratch (consistency oracle).
    pub fn loewner_entry_direct(&self, r: &BarycentricInterpolant, i: usize, j: usize) -> Complex64 {
        -(self.fvals[i] - r.values[j]) / (self.tests[i] - r.nodes[j])
    }
}

/// Barycentric weights as the right singular vector of the smallest
/// singular value of the Loewner matrix, normalized to unit 2-norm.
pub fn solve_weights(l: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    linalg::min_right_singular_vector(l)
}

/// The linearized residual `L w`, elementwise equal to
/// `sum_j y_j w_j/(t_i - z_j) - f(t_i) sum_j w_j/(t_i - z_j)`.
pub fn linearized_residual(
    ws: &LoewnerWorkspace,
    r: &BarycentricInterpolant,
    w: &[Complex64],
) -> Vec<Complex64> {
    (0..ws.tests.len())
        .map(|i| {
            (0..r.nodes.len())
                .map(|j| (r.values[j] - ws.fvals[i]) * ws.cauchy[i][j] * w[j])
                .sum()
        })
        .collect()
}

/// Finite roots of `g(z) = sum_j coeffs_j / (z - z_j)`.
///
/// The arrowhead pencil is deflated to a standard `(n-1)` eigenproblem
/// behind a Householder reflection. When the coefficient sum is nearly zero
/// (the pencil then carries an extra infinite eigenvalue and direct deflation
/// breaks down), the problem is first moved through a Moebius map
/// `z = c + 1/mu` with `c` chosen to restore a well-separated sum.
/// Candidates get a short Newton polish and must pass the residual bound
/// `|g(s)| <= 1e-8 * max|coeffs| / gap`.
pub(crate) fn cauchy_sum_roots(nodes: &[Complex64], coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let active: Vec<(Complex64, Complex64)> = nodes
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(&z, &c)| (z, c))
        .collect();
    let n = active.len();
    if n < 2 {
        return Ok(Vec::new());
    }
    let zs: Vec<Complex64> = active.iter().map(|p| p.0).collect();
    let cs: Vec<Complex64> = active.iter().map(|p| p.1).collect();
    let centroid = zs.iter().sum::<Complex64>() / n as f64;
    let spread = zs.iter().map(|z| (z - centroid).norm()).fold(0.0, f64::max).max(1e-300);

    let g = |z: Complex64| -> Complex64 {
        zs.iter().zip(&cs).map(|(&zj, &cj)| cj / (z - zj)).sum()
    };
    let gprime = |z: Complex64| -> Complex64 {
        -zs.iter().zip(&cs).map(|(&zj, &cj)| cj / ((z - zj) * (z - zj))).sum::<Complex64>()
    };

    let sum_quality = {
        let total: Complex64 = cs.iter().sum();
        let mass: f64 = cs.iter().map(|c| c.norm()).sum();
        if mass > 0.0 {
            total.norm() / mass
        } else {
            0.0
        }
    };

    // eigenvalue candidates, either direct or through the Moebius map
    let candidates: Vec<Complex64> = if sum_quality > 1e-3 {
        deflated_eigenvalues(&zs, &cs)?
    } else {
        // pick the center with the least cancellation in sum(c_j/(c-z_j))
        let mut center = centroid + Complex64::new(1.37 * spread, 0.0);
        let mut best_quality = -1.0;
        for (mult, count) in [(1.37, 12), (2.63, 6)] {
            for k in 0..count {
                let angle = std::f64::consts::TAU * k as f64 / count as f64 + 0.31;
                let cand = centroid + Complex64::from_polar(mult * spread, angle);
                let terms: Vec<Complex64> =
                    zs.iter().zip(&cs).map(|(&zj, &cj)| cj / (cand - zj)).collect();
                let total: Complex64 = terms.iter().sum();
                let mass: f64 = terms.iter().map(|t| t.norm()).sum();
                let quality = if mass > 0.0 { total.norm() / mass } else { 0.0 };
                if quality > best_quality {
                    best_quality = quality;
                    center = cand;
                }
            }
        }
        // g(c + 1/mu) = mu * sum v_j/(mu - xi_j)
        let xi: Vec<Complex64> = zs.iter().map(|&zj| 1.0 / (zj - center)).collect();
        let v: Vec<Complex64> = zs.iter().zip(&cs).map(|(&zj, &cj)| cj / (center - zj)).collect();
        let far = 1e12 * (spread + (center - centroid).norm() + 1.0);
        deflated_eigenvalues(&xi, &v)?
            .into_iter()
            .filter(|mu| mu.norm() > 0.0)
            .map(|mu| center + 1.0 / mu)
            .filter(|s| s.re.is_finite() && s.im.is_finite() && (s - centroid).norm() <= far)
            .collect()
    };

    let cmax = cs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let far = 1e12 * (spread + 1.0);
    let mut out = Vec::new();
    for mut s in candidates {
        if !s.re.is_finite() || !s.im.is_finite() || (s - centroid).norm() > far {
            continue;
        }
        // Newton polish; clustered roots need a couple of steps to settle
        let mut best = s;
        let mut best_res = g(s).norm();
        for _ in 0..3 {
            let gp = gprime(s);
            if gp.norm() == 0.0 {
                break;
            }
            let next = s - g(s) / gp;
            if !next.re.is_finite() || !next.im.is_finite() {
                break;
            }
            s = next;
            let res = g(s).norm();
            if res < best_res {
                best_res = res;
                best = s;
            } else {
                break;
            }
        }
        let s = best;
        let gap = zs.iter().map(|&zj| (s - zj).norm()).fold(f64::INFINITY, f64::min);
        if gap <= 1e-13 * 2.0 * spread {
            continue;
        }
        if best_res <= 1e-8 * cmax / gap {
            out.push(s);
        }
    }
    out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(out)
}

/// Eigenvalue deflation of the arrowhead pencil for `sum v_j/(z - xi_j)`:
/// a Householder reflection moves the constraint `sum v_j x_j = 0` onto the
/// first coordinate, leaving a dense standard eigenproblem of size `n - 1`.
fn deflated_eigenvalues(xi: &[Complex64], v: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = xi.len();
    let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if vnorm == 0.0 {
        return Err(Error::EigenFailure);
    }
    let x: Vec<Complex64> = v.iter().map(|c| c.conj() / vnorm).collect();

    // H x = alpha e0 with H Hermitian and unitary
    let alpha = -Complex64::from_polar(1.0, x[0].arg());
    let mut u: Vec<Complex64> = x.clone();
    u[0] -= alpha;
    let unorm2: f64 = u.iter().map(|c| c.norm_sqr()).sum();
    let h = if unorm2 <= 1e-300 {
        DMatrix::<Complex64>::identity(n, n)
    } else {
        DMatrix::from_fn(n, n, |i, j| {
            let id = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            id - 2.0 / unorm2 * u[i] * u[j].conj()
        })
    };
    let xi_h = DMatrix::from_fn(n, n, |i, j| xi[i] * h[(i, j)]);
    let m = &h * xi_h;
    let ones = nalgebra::DVector::from_element(n, Complex64::new(1.0, 0.0));
    let b = &h * ones;
    let b1 = b[0];
    if b1.norm() == 0.0 {
        return Err(Error::EigenFailure);
    }
    let mut a = m.view((1, 1), (n - 1, n - 1)).clone_owned();
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            a[(i, j)] -= b[i + 1] / b1 * m[(0, j + 1)];
        }
    }
    linalg::eigenvalues(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_complex(rng: &mut impl Rng) -> Complex64 {
        c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
    }

    /// Least-squares barycentric fit of `f` with the given nodes and tests;
    /// exact rationals of matching type are reproduced exactly.
    fn fit(nodes: &[Complex64], tests: &[Complex64], f: impl Fn(Complex64) -> Complex64)
        -> (BarycentricInterpolant, LoewnerWorkspace)
    {
        let mut r = BarycentricInterpolant::empty();
        let mut ws = LoewnerWorkspace::new();
        let values: Vec<Complex64> = nodes.iter().map(|&z| f(z)).collect();
        r.add_nodes(&mut ws, nodes, &values).unwrap();
        let fvals: Vec<Complex64> = tests.iter().map(|&t| f(t)).collect();
        r.update_test_values(&mut ws, tests, &fvals).unwrap();
        (r, ws)
    }

    #[test]
    fn constant_interpolant() {
        let r = BarycentricInterpolant::new(vec![c(0.0, 0.0)], vec![c(5.0, 0.0)], vec![c(1.0, 0.0)]).unwrap();
        for z in [c(0.3, 0.1), c(-2.0, 5.0), c(100.0, -3.0)] {
            assert!((r.eval(z) - c(5.0, 0.0)).norm() <= 1e-14 * 5.0);
        }
        assert_eq!(r.degrees(), (0, 0));
    }

    #[test]
    fn hand_evaluated_two_node_case() {
        let r = BarycentricInterpolant::new(
            vec![c(-1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(3.0, 0.0)],
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
        )
        .unwrap();
        assert_abs_diff_eq!(r.eval(c(0.0, 0.0)).re, 2.0, epsilon = 1e-15);
        assert_eq!(r.eval(c(1.0, 0.0)), c(3.0, 0.0)); // node hit is exact
        assert_eq!(r.degrees(), (1, 1));
    }

    #[test]
    fn weights_for_single_column() {
        let l = DMatrix::from_fn(5, 1, |i, _| c(i as f64 + 1.0, -0.5));
        let w = solve_weights(&l).unwrap();
        assert_eq!(w.len(), 1);
        assert_abs_diff_eq!(w[0].norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn linearized_residual_matches_direct_sum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let nodes = [c(0.1, 0.2), c(-0.4, 0.9)];
        let tests = [c(0.5, 0.0), c(-0.9, 0.1), c(0.0, -0.8), c(0.77, 0.33)];
        let f = |z: Complex64| (z * c(0.3, 1.1)).exp();
        let (r, ws) = fit(&nodes, &tests, f);
        let w: Vec<Complex64> = (0..2).map(|_| random_complex(&mut rng)).collect();
        let got = linearized_residual(&ws, &r, &w);
        for (i, &t) in tests.iter().enumerate() {
            let direct: Complex64 = (0..2)
                .map(|j| r.values()[j] * w[j] / (t - nodes[j]) - f(t) * w[j] / (t - nodes[j]))
                .sum();
            assert!((got[i] - direct).norm() <= 1e-14 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn residual_vanishes_for_null_weights() {
        let nodes = [c(0.5, 0.0), c(-0.5, 0.0)];
        let tests = [c(0.2, 0.0), c(-0.3, 0.0), c(0.8, 0.0), c(-0.9, 0.0)];
        let f = |z: Complex64| 1.0 / (z - 2.0);
        let (r, ws) = fit(&nodes, &tests, f);
        let l = ws.loewner_matrix(&r);
        let delta = linearized_residual(&ws, &r, r.weights());
        let lnorm = l.norm();
        for d in delta {
            assert!(d.norm() <= 1e-12 * lnorm);
        }
    }

    #[test]
    fn constant_single_node_residual_is_zero() {
        let nodes = [c(0.3, 0.0)];
        let tests = [c(0.1, 0.0), c(0.9, 0.0)];
        let (r, ws) = fit(&nodes, &tests, |_| c(4.0, -2.0));
        let delta = linearized_residual(&ws, &r, r.weights());
        for d in delta {
            assert!(d.norm() <= 1e-14);
        }
    }

    #[test]
    fn update_with_no_new_points_is_idempotent() {
        let nodes = [c(0.5, 0.0), c(-0.5, 0.0)];
        let tests = [c(0.2, 0.0), c(-0.3, 0.0), c(0.8, 0.0)];
        let (mut r, mut ws) = fit(&nodes, &tests, |z| z.exp());
        let w1 = r.weights().to_vec();
        r.update_test_values(&mut ws, &[], &[]).unwrap();
        assert_eq!(w1, r.weights());
    }

    #[test]
    fn incremental_matches_rebuild() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let f = |z: Complex64| (z + c(0.2, 0.4)).sin() / (z - c(2.0, 1.0));

        // incremental: add nodes and tests in two batches
        let nodes: Vec<Complex64> = (0..20).map(|_| random_complex(&mut rng)).collect();
        let tests: Vec<Complex64> = (0..45).map(|_| random_complex(&mut rng) * 3.0).collect();
        let values: Vec<Complex64> = nodes.iter().map(|&z| f(z)).collect();
        let fvals: Vec<Complex64> = tests.iter().map(|&t| f(t)).collect();

        let mut r1 = BarycentricInterpolant::empty();
        let mut ws1 = LoewnerWorkspace::new();
        r1.add_nodes(&mut ws1, &nodes[..12], &values[..12]).unwrap();
        r1.update_test_values(&mut ws1, &tests[..30], &fvals[..30]).unwrap();
        r1.add_nodes(&mut ws1, &nodes[12..], &values[12..]).unwrap();
        let p1 = r1.update_test_values(&mut ws1, &tests[30..], &fvals[30..]).unwrap();

        // from-scratch rebuild
        let mut r2 = BarycentricInterpolant::empty();
        let mut ws2 = LoewnerWorkspace::new();
        r2.add_nodes(&mut ws2, &nodes, &values).unwrap();
        let p2 = r2.update_test_values(&mut ws2, &tests, &fvals).unwrap();

        for (a, b) in p1.iter().zip(&p2) {
            assert!((a - b).norm() <= 1e-13 * b.norm().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn add_nodes_extends_loewner_columns_only() {
        let nodes = [c(0.5, 0.0), c(-0.5, 0.0)];
        let tests = [c(0.2, 0.0), c(-0.3, 0.0), c(0.8, 0.0)];
        let (mut r, mut ws) = fit(&nodes, &tests, |z| z.exp());
        let before = ws.loewner_matrix(&r);
        r.add_nodes(&mut ws, &[c(0.9, 0.0)], &[c(0.9, 0.0).exp()]).unwrap();
        let after = ws.loewner_matrix(&r);
        assert_eq!(after.ncols(), before.ncols() + 1);
        assert_eq!(after.nrows(), before.nrows());
        for i in 0..before.nrows() {
            for j in 0..before.ncols() {
                assert_eq!(before[(i, j)], after[(i, j)]);
            }
        }
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let nodes = [c(0.5, 0.0), c(-0.5, 0.0)];
        let tests = [c(0.2, 0.0), c(-0.3, 0.0), c(0.8, 0.0)];
        let (mut r, mut ws) = fit(&nodes, &tests, |z| z.exp());
        let err = r.add_nodes(&mut ws, &[c(0.5, 0.0)], &[c(0.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint(_)));
        let err = r.update_test_values(&mut ws, &[c(0.2, 0.0)], &[c(0.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint(_)));
    }

    #[test]
    fn loewner_cache_matches_direct_recomputation() {
        let nodes = [c(0.3, 0.1), c(-0.6, 0.0), c(0.0, 0.77)];
        let tests = [c(0.2, -0.4), c(-0.3, 0.5), c(0.8, 0.1), c(0.1, 0.9)];
        let (r, ws) = fit(&nodes, &tests, |z| (3.0 * z).cos());
        let l = ws.loewner_matrix(&r);
        for i in 0..tests.len() {
            for j in 0..nodes.len() {
                let direct = ws.loewner_entry_direct(&r, i, j);
                assert!((l[(i, j)] - direct).norm() <= 1e-15 * direct.norm());
            }
        }
    }

    #[test]
    fn pole_of_symmetric_two_node_sum() {
        // D(z) = 1/(z+1) + 1/(z-1) = 2z/(z^2-1) vanishes at z = 0
        let roots = cauchy_sum_roots(&[c(-1.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].norm() <= 1e-12);
    }

    #[test]
    fn exact_rational_pole_and_residue() {
        // enough data determines 1/(z-2) exactly: type (1,1) from 2 nodes
        let nodes = [c(0.5, 0.0), c(-0.5, 0.0)];
        let tests = [c(0.2, 0.0), c(-0.3, 0.0), c(0.8, 0.0), c(-0.9, 0.0)];
        let (r, _) = fit(&nodes, &tests, |z| 1.0 / (z - 2.0));
        let poles = r.poles().unwrap();
        assert_eq!(poles.len(), 1);
        assert!((poles[0] - c(2.0, 0.0)).norm() <= 1e-10, "pole {}", poles[0]);
        let res = r.residues().unwrap();
        assert!((res[0].residue - c(1.0, 0.0)).norm() <= 1e-8);
        assert!(!res[0].flagged);
    }

    #[test]
    fn two_pole_residues() {
        // type (1, 2), exactly representable with three nodes
        let f = |z: Complex64| 1.0 / (z - 2.0) + 2.0 / (z + 2.0);
        let nodes = [c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.5)];
        let tests: Vec<Complex64> = (0..12)
            .map(|k| Complex64::from_polar(0.7, 0.37 + k as f64 * 0.511))
            .collect();
        let (r, _) = fit(&nodes, &tests, f);
        let mut res = r.residues().unwrap();
        res.sort_by(|a, b| a.pole.re.total_cmp(&b.pole.re));
        assert_eq!(res.len(), 2);
        assert!((res[0].pole - c(-2.0, 0.0)).norm() <= 1e-8);
        assert!((res[0].residue - c(2.0, 0.0)).norm() <= 1e-7);
        assert!((res[1].pole - c(2.0, 0.0)).norm() <= 1e-8);
        assert!((res[1].residue - c(1.0, 0.0)).norm() <= 1e-7);
    }

    #[test]
    fn sum_scaled_weights_degeneracy() {
        // weights summing to zero leave only n-2 finite poles; the Moebius
        // guard must not hallucinate an extra one
        let nodes = [c(-1.0, 0.0), c(1.0, 0.0)];
        let weights = [c(1.0, 0.0), c(-1.0, 0.0)];
        // D(z) = 1/(z+1) - 1/(z-1) = -2/(z^2-1): no finite roots
        let roots = cauchy_sum_roots(&nodes, &weights).unwrap();
        assert!(roots.is_empty(), "got {roots:?}");
    }

    #[test]
    fn roots_of_exact_linear_function() {
        let nodes = [c(0.7, 0.0), c(-0.4, 0.0)];
        let tests = [c(0.2, 0.0), c(-0.8, 0.0), c(0.5, 0.0), c(0.95, 0.0)];
        let (r, _) = fit(&nodes, &tests, |z| z - 0.3);
        let roots = r.roots().unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - c(0.3, 0.0)).norm() <= 1e-12, "{}", roots[0]);
    }

    #[test]
    fn constant_function_has_no_roots() {
        let nodes = [c(0.7, 0.0), c(-0.4, 0.0), c(0.1, 0.0)];
        let tests = [c(0.2, 0.0), c(-0.8, 0.0), c(0.5, 0.0), c(0.95, 0.0), c(-0.1, 0.0), c(0.33, 0.0)];
        let (r, _) = fit(&nodes, &tests, |_| c(3.0, 0.0));
        assert!(r.roots().unwrap().is_empty());
    }

    #[test]
    fn root_at_node_with_zero_value() {
        let r = BarycentricInterpolant::new(
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
        )
        .unwrap();
        let roots = r.roots().unwrap();
        assert!(roots.iter().any(|s| s.norm() <= 1e-12), "{roots:?}");
    }

    #[test]
    fn pole_residue_reconstruction() {
        // with simple poles and a constant polynomial part, subtracting the
        // partial fractions leaves a constant
        let f = |z: Complex64| c(0.7, -0.3) + 1.0 / (z - 2.0) + c(0.0, 2.0) / (z + c(1.5, 1.0));
        let nodes = [c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.5)];
        let tests: Vec<Complex64> = (0..14)
            .map(|k| Complex64::from_polar(0.8, 0.21 + k as f64 * 0.447))
            .collect();
        let (r, _) = fit(&nodes, &tests, f);
        let res = r.residues().unwrap();
        assert_eq!(res.len(), 2);
        let mut samples = Vec::new();
        for k in 0..50 {
            let z = Complex64::from_polar(0.9, 0.1 + k as f64 * 0.125);
            let mut v = r.eval(z);
            for pr in &res {
                v -= pr.residue / (z - pr.pole);
            }
            samples.push(v);
        }
        let mean = samples.iter().sum::<Complex64>() / samples.len() as f64;
        for v in samples {
            assert!((v - mean).norm() <= 1e-8 * mean.norm().max(1.0), "{v} vs {mean}");
        }
    }

    #[test]
    fn degrees_of_thirteen_nodes() {
        let nodes: Vec<Complex64> = (0..13).map(|k| c(k as f64 * 0.1, 0.0)).collect();
        let values = vec![c(1.0, 0.0); 13];
        let weights: Vec<Complex64> = (0..13).map(|k| c(1.0 + k as f64, -0.5)).collect();
        let r = BarycentricInterpolant::new(nodes, values, weights).unwrap();
        assert_eq!(r.degrees(), (12, 12));
    }

    #[test]
    fn interpolation_property_random_cases() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..8);
            let mut nodes = Vec::new();
            while nodes.len() < n {
                let z = random_complex(&mut rng);
                if !nodes.contains(&z) {
                    nodes.push(z);
                }
            }
            let values: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
            let weights: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng) + c(0.1, 0.1)).collect();
            let r = BarycentricInterpolant::new(nodes.clone(), values.clone(), weights).unwrap();
            for j in 0..n {
                assert_eq!(r.eval(nodes[j]), values[j]);
            }
        }
    }
}
