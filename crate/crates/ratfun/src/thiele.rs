//! Thiele continued-fraction interpolation with O(n) greedy node insertion
//! via inverse differences.
//!
//! The interpolant is `d_1 + (z - z_1)/(d_2 + (z - z_2)/(d_3 + ...))`; the
//! weight for a new node comes from the inverse-difference recurrence
//! `u_1 = f(z_n)`, `u_{k+1} = (z_n - z_k)/(u_k - d_k)`.

use num_complex::Complex64;

use crate::bary::BarycentricInterpolant;
use crate::error::{Error, Result};
use crate::rational::{PoleResidue, RationalFunction, RationalInterpolant};

#[derive(Clone, Debug, Default)]
pub struct ThieleInterpolant {
    nodes: Vec<Complex64>,
    values: Vec<Complex64>,
    weights: Vec<Complex64>,
}

impl ThieleInterpolant {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Rebuilds an interpolant from stored data (deserialization path).
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
        Ok(ThieleInterpolant { nodes, values, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Continued-fraction weight that appending `(z_new, f_new)` would get.
    ///
    /// Runs the inverse-difference recurrence in O(n). An exact breakdown
    /// (`u_k = d_k`) means the node cannot be reached from the current
    /// weights and is reported as an error.
    pub fn next_weight(&self, z_new: Complex64, f_new: Complex64) -> Result<Complex64> {
        let mut u = f_new;
        for k in 0..self.nodes.len() {
            let denom = u - self.weights[k];
            if denom == Complex64::new(0.0, 0.0) {
                return Err(Error::UnreachableNode);
            }
            u = (z_new - self.nodes[k]) / denom;
            if !u.re.is_finite() || !u.im.is_finite() {
                return Err(Error::UnreachableNode);
            }
        }
        Ok(u)
    }

    /// Appends a node, its value, and the weight from `next_weight`.
    /// Existing weights are unchanged.
    pub fn add_nodes(&mut self, z_new: Complex64, f_new: Complex64) -> Result<()> {
        if self.nodes.contains(&z_new) {
            return Err(Error::DuplicatePoint(z_new));
        }
        let d = self.next_weight(z_new, f_new)?;
        self.nodes.push(z_new);
        self.values.push(f_new);
        self.weights.push(d);
        Ok(())
    }

    /// Registers new test points and returns the interpolant's value at every
    /// cached test point, advancing the per-point convergent recurrences by
    /// the nodes added since the last call.
    pub fn update_test_values(
        &self,
        cache: &mut ThieleTestCache,
        new_points: &[Complex64],
        new_values: &[Complex64],
    ) -> Result<Vec<Complex64>> {
        if new_points.len() != new_values.len() {
            return Err(Error::LengthMismatch(new_points.len(), new_values.len()));
        }
        for (k, &t) in new_points.iter().enumerate() {
            if self.nodes.contains(&t) || cache.tests.contains(&t) || new_points[..k].contains(&t) {
                return Err(Error::DuplicatePoint(t));
            }
        }
        let n = self.nodes.len();
        for frame in &mut cache.frames {
            for j in cache.incorporated..n {
                frame.step(self, j);
            }
        }
        for (&t, &f) in new_points.iter().zip(new_values) {
            let mut frame = Frame::start(t, self.weights[0]);
            for j in 1..n {
                frame.step(self, j);
            }
            cache.tests.push(t);
            cache.fvals.push(f);
            cache.frames.push(frame);
        }
        cache.incorporated = n;
        Ok(cache.frames.iter().map(Frame::value).collect())
    }
}

impl RationalFunction for ThieleInterpolant {
    /// Bottom-up evaluation of the continued fraction. A zero intermediate
    /// denominator evaluates through infinity (`d + x/inf = d`) instead of
    /// crashing; exact node hits return the stored value.
    fn eval(&self, z: Complex64) -> Complex64 {
        assert!(!self.nodes.is_empty(), "cannot evaluate an empty interpolant");
        if let Some(j) = self.nodes.iter().position(|&zj| zj == z) {
            return self.values[j];
        }
        let n = self.nodes.len();
        let mut acc = self.weights[n - 1];
        let mut infinite = false;
        for k in (0..n - 1).rev() {
            if infinite {
                acc = self.weights[k];
                infinite = false;
            } else if acc == Complex64::new(0.0, 0.0) {
                infinite = true;
            } else {
                acc = self.weights[k] + (z - self.nodes[k]) / acc;
            }
        }
        if infinite {
            Complex64::new(f64::INFINITY, f64::INFINITY)
        } else {
            acc
        }
    }

    /// Type `(m, m)` for `n = 2m - 1` nodes and `(m + 1, m)` for `n = 2m`.
    fn degrees(&self) -> (usize, usize) {
        let n = self.nodes.len();
        if n == 0 {
            (0, 0)
        } else if n % 2 == 1 {
            let m = (n + 1) / 2;
            (m, m)
        } else {
            let m = n / 2;
            (m + 1, m)
        }
    }

    fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn poles(&self) -> Result<Vec<Complex64>> {
        Ok(self.poles_with_diagnostics()?.0)
    }

    /// Residues by trapezoidal contour integration around each pole, with
    /// the radius set to half the distance to the nearest other pole or
    /// node, capped at a tenth of the node-set diameter.
    fn residues(&self) -> Result<Vec<PoleResidue>> {
        let poles = self.poles()?;
        let diam = self.node_diameter();
        Ok(poles
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let mut nearest = f64::INFINITY;
                for (j, &other) in poles.iter().enumerate() {
                    if j != k {
                        nearest = nearest.min((s - other).norm());
                    }
                }
                for &z in &self.nodes {
                    nearest = nearest.min((s - z).norm());
                }
                let radius = (0.5 * nearest).min(0.1 * diam);
                if !(radius > 0.0) {
                    return PoleResidue { pole: s, residue: Complex64::new(f64::NAN, f64::NAN), flagged: true };
                }
                match crate::rational::trapezoid_residue(|z| self.eval(z), s, radius) {
                    Ok(residue) => PoleResidue { pole: s, residue, flagged: false },
                    Err(Error::ResidueNonConvergence { estimate }) => {
                        PoleResidue { pole: s, residue: estimate, flagged: true }
                    }
                    Err(_) => PoleResidue { pole: s, residue: Complex64::new(f64::NAN, f64::NAN), flagged: true },
                }
            })
            .collect())
    }

    fn roots(&self) -> Result<Vec<Complex64>> {
        if self.nodes.len() < 2 {
            return Ok(Vec::new());
        }
        self.to_barycentric().and_then(|(b, _)| b.roots())
    }
}

impl RationalInterpolant for ThieleInterpolant {
    fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    fn values(&self) -> &[Complex64] {
        &self.values
    }
}

impl ThieleInterpolant {
    /// Poles by resampling to an equivalent barycentric interpolant; the
    /// second element carries a warning when the conversion looked
    /// ill-conditioned.
    pub fn poles_with_diagnostics(&self) -> Result<(Vec<Complex64>, Option<String>)> {
        if self.nodes.len() < 2 {
            return Ok((Vec::new(), None));
        }
        let (b, fit_err) = self.to_barycentric()?;
        let scale = self.values.iter().map(|v| v.norm()).fold(1e-300, f64::max);
        let warning = (fit_err > 1e-8 * scale)
            .then(|| format!("barycentric resampling error {fit_err:.3e} exceeds 1e-8 * scale"));
        Ok((b.poles()?, warning))
    }

    fn node_diameter(&self) -> f64 {
        let mut diam: f64 = 0.0;
        for i in 0..self.nodes.len() {
            for j in i + 1..self.nodes.len() {
                diam = diam.max((self.nodes[i] - self.nodes[j]).norm());
            }
        }
        diam
    }

    /// Samples the interpolant at `2n + 1` circle points off the nodes and
    /// fits a barycentric interpolant of the same type to them.
    fn to_barycentric(&self) -> Result<(BarycentricInterpolant, f64)> {
        let n = self.nodes.len();
        let m = 2 * n + 1;
        let center = self.nodes.iter().sum::<Complex64>() / n as f64;
        let spread = self
            .nodes
            .iter()
            .map(|z| (z - center).norm())
            .fold(0.0, f64::max)
            .max(1e-3);
        let mut last_err = Error::NoUsableTestPoints;
        for attempt in 0..8 {
            let radius = 1.5 * spread * 1.07f64.powi(attempt);
            let phase = 0.17 + 0.05 * attempt as f64;
            let samples: Vec<Complex64> = (0..m)
                .map(|k| {
                    center
                        + Complex64::from_polar(
                            radius,
                            std::f64::consts::TAU * k as f64 / m as f64 + phase,
                        )
                })
                .collect();
            if samples.iter().any(|s| self.nodes.contains(s)) {
                continue;
            }
            let values: Vec<Complex64> = samples.iter().map(|&s| self.eval(s)).collect();
            if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                continue;
            }
            let cfg = crate::engine::EngineConfig {
                method: crate::engine::Method::Barycentric,
                tol: 1e-13,
                max_iter: n + 3,
                allowed: crate::engine::PoleRule::AllowAll,
                ..Default::default()
            };
            match crate::engine::approximate_values(&values, &samples, &cfg) {
                Ok(crate::engine::Interpolant::Barycentric(b)) => {
                    let err = samples
                        .iter()
                        .zip(&values)
                        .map(|(&s, &v)| (b.eval(s) - v).norm())
                        .fold(0.0, f64::max);
                    return Ok((b, err));
                }
                Ok(_) => unreachable!("barycentric method requested"),
                Err(e) => last_err = e,
            }
        }
        Err(last_err)
    }
}

/// Per-test-point forward convergent state, advanced in O(1) per new node.
#[derive(Clone, Debug, Default)]
pub struct ThieleTestCache {
    tests: Vec<Complex64>,
    fvals: Vec<Complex64>,
    frames: Vec<Frame>,
    incorporated: usize,
}

impl ThieleTestCache {
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

    pub fn remove_test(&mut self, i: usize) -> (Complex64, Complex64) {
        self.frames.remove(i);
        (self.tests.remove(i), self.fvals.remove(i))
    }
}

/// Numerator/denominator convergent pair for one test point.
#[derive(Clone, Debug)]
struct Frame {
    t: Complex64,
    a_prev: Complex64,
    b_prev: Complex64,
    a_curr: Complex64,
    b_curr: Complex64,
}

impl Frame {
    fn start(t: Complex64, d1: Complex64) -> Self {
        Frame {
            t,
            a_prev: Complex64::new(1.0, 0.0),
            b_prev: Complex64::new(0.0, 0.0),
            a_curr: d1,
            b_curr: Complex64::new(1.0, 0.0),
        }
    }

    /// Folds node `j` (0-based, `j >= 1`) into the convergents.
    fn step(&mut self, r: &ThieleInterpolant, j: usize) {
        let b = r.weights[j];
        let a = self.t - r.nodes[j - 1];
        let a_next = b * self.a_curr + a * self.a_prev;
        let b_next = b * self.b_curr + a * self.b_prev;
        self.a_prev = self.a_curr;
        self.b_prev = self.b_curr;
        self.a_curr = a_next;
        self.b_curr = b_next;
        let mag = self.a_curr.norm().max(self.b_curr.norm());
        if mag > 1e140 || (mag < 1e-140 && mag > 0.0) {
            let s = 1.0 / mag;
            self.a_prev *= s;
            self.b_prev *= s;
            self.a_curr *= s;
            self.b_curr *= s;
        }
    }

    fn value(&self) -> Complex64 {
        if self.b_curr == Complex64::new(0.0, 0.0) {
            Complex64::new(f64::INFINITY, f64::INFINITY)
        } else {
            self.a_curr / self.b_curr
        }
    }
}
