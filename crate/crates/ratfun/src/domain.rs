//! Complex-plane geometry: curves, paths, regions, and the adaptive boundary
//! discretization that feeds nodes and test points to the greedy engines.
//!
//! Every curve and path is parameterized over `t in [0, 1]`; paths distribute
//! the parameter across their pieces proportionally to arc length.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default number of equispaced initial nodes for an open curve.
pub const DEFAULT_INIT_OPEN: usize = 17;
/// Default number of equispaced initial nodes for a closed curve.
pub const DEFAULT_INIT_CLOSED: usize = 16;
/// Default number of test points inserted on each side of a new node.
pub const DEFAULT_REFINEMENT: usize = 3;
/// Safety limit on the total number of stored discretization points.
pub const DEFAULT_CAPACITY: usize = 1 << 20;

/// A single parameterized curve in the complex plane.
#[derive(Clone)]
pub enum Curve {
    Segment {
        a: Complex64,
        b: Complex64,
    },
    Circle {
        center: Complex64,
        radius: f64,
        clockwise: bool,
    },
    /// Circular arc from `angle0` to `angle1` (radians, traversed linearly).
    Arc {
        center: Complex64,
        radius: f64,
        angle0: f64,
        angle1: f64,
    },
    Parametric {
        point: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
        closed: bool,
    },
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Segment { a, b } => write!(f, "Segment({a}, {b})"),
            Curve::Circle { center, radius, clockwise } => {
                write!(f, "Circle({center}, r={radius}, cw={clockwise})")
            }
            Curve::Arc { center, radius, angle0, angle1 } => {
                write!(f, "Arc({center}, r={radius}, {angle0}..{angle1})")
            }
            Curve::Parametric { closed, .. } => write!(f, "Parametric(closed={closed})"),
        }
    }
}

impl Curve {
    pub fn segment(a: impl Into<Complex64>, b: impl Into<Complex64>) -> Self {
        Curve::Segment { a: a.into(), b: b.into() }
    }

    pub fn circle(center: impl Into<Complex64>, radius: f64) -> Self {
        Curve::Circle { center: center.into(), radius, clockwise: false }
    }

    pub fn arc(center: impl Into<Complex64>, radius: f64, angle0: f64, angle1: f64) -> Self {
        Curve::Arc { center: center.into(), radius, angle0, angle1 }
    }

    pub fn parametric<F>(point: F, closed: bool) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Curve::Parametric { point: Arc::new(point), closed }
    }

    /// Boundary point at parameter `t`.
    ///
    /// Panics if `t` lies outside `[0, 1]`.
    pub fn point(&self, t: f64) -> Complex64 {
        assert!((0.0..=1.0).contains(&t), "curve parameter {t} outside [0, 1]");
        match self {
            Curve::Segment { a, b } => a + (b - a) * t,
            Curve::Circle { center, radius, clockwise } => {
                let sign = if *clockwise { -1.0 } else { 1.0 };
                center + Complex64::from_polar(*radius, sign * TAU * t)
            }
            Curve::Arc { center, radius, angle0, angle1 } => {
                center + Complex64::from_polar(*radius, angle0 + (angle1 - angle0) * t)
            }
            Curve::Parametric { point, .. } => point(t),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Curve::Segment { .. } => false,
            Curve::Circle { .. } => true,
            Curve::Arc { center: _, radius, angle0, angle1 } => {
                ((angle1 - angle0).abs() - TAU).abs() * radius < 1e-12
            }
            Curve::Parametric { closed, .. } => *closed,
        }
    }

    /// Minimum distance from `z` to the curve (closed forms for segments,
    /// circles, and arcs; sampled with local refinement otherwise).
    pub fn dist(&self, z: Complex64) -> f64 {
        match self {
            Curve::Segment { a, b } => dist_to_segment(*a, *b, z),
            Curve::Circle { center, radius, .. } => ((z - center).norm() - radius).abs(),
            Curve::Arc { center, radius, angle0, angle1 } => {
                let (lo, hi) = (angle0.min(*angle1), angle0.max(*angle1));
                let theta = (z - center).arg();
                // shift theta by whole turns into the best position
                let mut best = f64::INFINITY;
                let mut k = ((lo - theta) / TAU).floor();
                while theta + k * TAU <= hi + TAU {
                    let th = theta + k * TAU;
                    if th >= lo && th <= hi {
                        best = best.min(((z - center).norm() - radius).abs());
                    }
                    k += 1.0;
                }
                let ends = [self.point(0.0), self.point(1.0)];
                for e in ends {
                    best = best.min((z - e).norm());
                }
                best
            }
            Curve::Parametric { .. } => sampled_dist(|t| self.point(t), z),
        }
    }

    fn polyline_length(&self, samples: usize) -> f64 {
        let mut len = 0.0;
        let mut prev = self.point(0.0);
        for k in 1..=samples {
            let p = self.point(k as f64 / samples as f64);
            len += (p - prev).norm();
            prev = p;
        }
        len
    }
}

fn dist_to_segment(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let ab = b - a;
    let denom = ab.norm_sqr();
    if denom == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a) * ab.conj()).re / denom;
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Distance by sampling at 256 points followed by golden-section refinement
/// around the best sample.
fn sampled_dist<F: Fn(f64) -> Complex64>(point: F, z: Complex64) -> f64 {
    const SAMPLES: usize = 256;
    let mut best_t = 0.0;
    let mut best = f64::INFINITY;
    for k in 0..=SAMPLES {
        let t = k as f64 / SAMPLES as f64;
        let d = (point(t) - z).norm();
        if d < best {
            best = d;
            best_t = t;
        }
    }
    let mut lo = (best_t - 1.0 / SAMPLES as f64).max(0.0);
    let mut hi = (best_t + 1.0 / SAMPLES as f64).min(1.0);
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = (point(x1) - z).norm();
    let mut f2 = (point(x2) - z).norm();
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = (point(x1) - z).norm();
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = (point(x2) - z).norm();
        }
    }
    best.min(f1).min(f2)
}

/// An ordered chain of curves with matching endpoints.
#[derive(Clone, Debug)]
pub struct Path {
    pieces: Vec<Curve>,
    closed: bool,
    /// Normalized cumulative arc length; `cum[0] = 0`, `cum[len] = 1`.
    cum: Vec<f64>,
    diameter: f64,
}

impl From<Curve> for Path {
    fn from(c: Curve) -> Self {
        Path::new(vec![c]).expect("single curve is always a valid path")
    }
}

impl Path {
    /// Builds a path; consecutive pieces must share endpoints to a relative
    /// tolerance of `1e-12`.
    pub fn new(pieces: Vec<Curve>) -> Result<Self> {
        assert!(!pieces.is_empty(), "a path needs at least one piece");
        let scale = pieces
            .iter()
            .flat_map(|p| [p.point(0.0).norm(), p.point(1.0).norm()])
            .fold(1.0, f64::max);
        for k in 0..pieces.len().saturating_sub(1) {
            let gap = (pieces[k].point(1.0) - pieces[k + 1].point(0.0)).norm();
            if gap > 1e-12 * scale {
                return Err(Error::DisconnectedPath(k, k + 1));
            }
        }
        let closed = if pieces.len() == 1 {
            pieces[0].is_closed()
        } else {
            let gap = (pieces.last().unwrap().point(1.0) - pieces[0].point(0.0)).norm();
            gap <= 1e-12 * scale
        };

        let lengths: Vec<f64> = pieces.iter().map(|p| p.polyline_length(512)).collect();
        let total: f64 = lengths.iter().sum();
        let mut cum = Vec::with_capacity(pieces.len() + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for len in &lengths {
            acc += len / total;
            cum.push(acc);
        }
        *cum.last_mut().unwrap() = 1.0;

        let mut path = Path { pieces, closed, cum, diameter: 0.0 };
        path.diameter = path.estimate_diameter();
        Ok(path)
    }

    /// Closed polygon through the given vertices.
    pub fn polygon(vertices: &[Complex64]) -> Result<Self> {
        assert!(vertices.len() >= 3, "a polygon needs at least 3 vertices");
        let mut pieces = Vec::with_capacity(vertices.len());
        for k in 0..vertices.len() {
            let a = vertices[k];
            let b = vertices[(k + 1) % vertices.len()];
            pieces.push(Curve::segment(a, b));
        }
        Path::new(pieces)
    }

    pub fn pieces(&self) -> &[Curve] {
        &self.pieces
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Largest pairwise distance over a boundary sampling.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    fn estimate_diameter(&self) -> f64 {
        let pts: Vec<Complex64> = (0..=256).map(|k| self.point(k as f64 / 256.0)).collect();
        let mut best: f64 = 0.0;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.max((pts[i] - pts[j]).norm());
            }
        }
        best
    }

    /// Boundary point at parameter `t`, arc-length-proportional across pieces.
    ///
    /// Panics if `t` lies outside `[0, 1]`.
    pub fn point(&self, t: f64) -> Complex64 {
        assert!((0.0..=1.0).contains(&t), "path parameter {t} outside [0, 1]");
        let k = match self.cum.binary_search_by(|c| c.total_cmp(&t)) {
            Ok(i) => i.min(self.pieces.len() - 1),
            Err(i) => i - 1,
        };
        let span = self.cum[k + 1] - self.cum[k];
        let local = if span > 0.0 { ((t - self.cum[k]) / span).clamp(0.0, 1.0) } else { 0.0 };
        self.pieces[k].point(local)
    }

    /// Minimum distance from `z` to the path.
    pub fn dist_to_boundary(&self, z: Complex64) -> f64 {
        self.pieces.iter().map(|p| p.dist(z)).fold(f64::INFINITY, f64::min)
    }

    /// Winding number of the path about `z`, by adaptively refined chords.
    fn winding_number(&self, z: Complex64) -> f64 {
        const BASE: usize = 64;
        let mut total = 0.0;
        for k in 0..BASE {
            let t0 = k as f64 / BASE as f64;
            let t1 = (k + 1) as f64 / BASE as f64;
            total += self.winding_piece(z, t0, t1, self.point(t0), self.point(t1), 0);
        }
        total / TAU
    }

    fn winding_piece(&self, z: Complex64, t0: f64, t1: f64, p0: Complex64, p1: Complex64, depth: usize) -> f64 {
        let chord = (p1 - p0).norm();
        let d = (p0 - z).norm().min((p1 - z).norm());
        if depth >= 40 || chord <= 0.5 * d || chord == 0.0 {
            return ((p1 - z) / (p0 - z)).arg();
        }
        let tm = 0.5 * (t0 + t1);
        let pm = self.point(tm);
        self.winding_piece(z, t0, tm, p0, pm, depth + 1) + self.winding_piece(z, tm, t1, pm, p1, depth + 1)
    }
}

/// Which side of a closed boundary a region occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// A simply connected region bounded by a closed path.
#[derive(Clone, Debug)]
pub struct Region {
    boundary: Path,
    side: Side,
}

impl Region {
    pub fn new(boundary: impl Into<Path>, side: Side) -> Result<Self> {
        let boundary = boundary.into();
        if !boundary.is_closed() {
            return Err(Error::OpenBoundary);
        }
        Ok(Region { boundary, side })
    }

    pub fn interior(boundary: impl Into<Path>) -> Result<Self> {
        Region::new(boundary, Side::Interior)
    }

    pub fn exterior(boundary: impl Into<Path>) -> Result<Self> {
        Region::new(boundary, Side::Exterior)
    }

    pub fn boundary(&self) -> &Path {
        &self.boundary
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Winding-number membership test. Points within `1e-13` (relative) of
    /// the boundary count as contained for either side.
    pub fn contains(&self, z: Complex64) -> bool {
        let scale = self.boundary.diameter().max(z.norm());
        if self.boundary.dist_to_boundary(z) <= 1e-13 * scale {
            return true;
        }
        let inside = self.boundary.winding_number(z).abs().round() >= 1.0;
        match self.side {
            Side::Interior => inside,
            Side::Exterior => !inside,
        }
    }
}

/// The segment from -1 to 1.
pub fn unit_interval() -> Curve {
    Curve::segment(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0))
}

/// The unit circle, traversed counterclockwise.
pub fn unit_circle() -> Curve {
    Curve::circle(Complex64::new(0.0, 0.0), 1.0)
}

/// Selects what `DiscretizedPath::collect` returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Nodes,
    Test,
    All,
}

/// Result of promoting a test point to a node.
#[derive(Clone, Debug)]
pub struct Promotion {
    pub node_param: f64,
    pub node_point: Complex64,
    /// Fresh test points created beside the new node, in parameter order.
    pub new_tests: Vec<(f64, Complex64)>,
}

/// Node row: the node parameter plus the test parameters lying strictly
/// between this node and the next one.
#[derive(Clone, Debug)]
struct Row {
    node: f64,
    tests: Vec<f64>,
}

/// Adaptive node/test-point bookkeeping along a curve or path.
///
/// Nodes partition the parameter interval; each inter-node interval carries
/// its own test parameters. Promoting a test point turns it into a node and
/// inserts fresh test points on both sides of it.
#[derive(Clone, Debug)]
pub struct DiscretizedPath {
    path: Path,
    rows: Vec<Row>,
    refinement: usize,
    capacity: usize,
}

impl DiscretizedPath {
    /// Equispaced initial discretization with `refinement` test parameters
    /// per inter-node interval.
    pub fn new(path: impl Into<Path>, initial_nodes: usize, refinement: usize) -> Result<Self> {
        let path = path.into();
        let min = if path.is_closed() { 3 } else { 2 };
        if initial_nodes < min {
            return Err(Error::TooFewNodes { min, got: initial_nodes });
        }
        if refinement < 1 {
            return Err(Error::BadRefinement);
        }
        let closed = path.is_closed();
        let n = initial_nodes;
        let mut rows = Vec::with_capacity(n);
        if closed {
            for k in 0..n {
                let a = k as f64 / n as f64;
                let b = (k + 1) as f64 / n as f64;
                rows.push(Row { node: a, tests: interior_params(a, b, refinement) });
            }
        } else {
            for k in 0..n {
                let a = k as f64 / (n - 1) as f64;
                let tests = if k + 1 < n {
                    let b = (k + 1) as f64 / (n - 1) as f64;
                    interior_params(a, b, refinement)
                } else {
                    Vec::new()
                };
                rows.push(Row { node: a, tests });
            }
        }
        Ok(DiscretizedPath { path, rows, refinement, capacity: DEFAULT_CAPACITY })
    }

    pub fn with_capacity(mut self, capacity: usize) -> Self {
        self.capacity = capacity;
        self
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn refinement(&self) -> usize {
        self.refinement
    }

    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn test_count(&self) -> usize {
        self.rows.iter().map(|r| r.tests.len()).sum()
    }

    /// Upper end of the interval owned by row `k`.
    fn next_param(&self, k: usize) -> f64 {
        if k + 1 < self.rows.len() {
            self.rows[k + 1].node
        } else {
            1.0
        }
    }

    /// Parameters of the requested points, in parameter order.
    pub fn params(&self, which: Which) -> Vec<f64> {
        let mut out = Vec::new();
        for row in &self.rows {
            if which != Which::Test {
                out.push(row.node);
            }
            if which != Which::Nodes {
                out.extend_from_slice(&row.tests);
            }
        }
        out
    }

    /// Evaluated points of the requested kind, in parameter order.
    pub fn collect(&self, which: Which) -> Vec<Complex64> {
        self.params(which).iter().map(|&t| self.path.point(t)).collect()
    }

    /// Flat index of the test point with parameter `param`, if present.
    pub fn test_index_of(&self, param: f64) -> Option<usize> {
        let mut base = 0;
        for row in &self.rows {
            if let Some(slot) = row.tests.iter().position(|&t| t == param) {
                return Some(base + slot);
            }
            base += row.tests.len();
        }
        None
    }

    /// Promotes the `which`-th test point (parameter order) to a node.
    ///
    /// The two gaps adjacent to the new node each receive `refinement` fresh
    /// equally spaced test parameters. A promotion that would bring two
    /// points closer than `1e-14` times the domain diameter is rejected.
    pub fn add_node(&mut self, which: usize) -> Result<Promotion> {
        let (k, slot) = self.locate_test(which)?;
        if self.node_count() + self.test_count() + 2 * self.refinement > self.capacity {
            return Err(Error::CapacityExceeded(self.capacity));
        }
        let p = self.rows[k].tests[slot];
        let left = if slot > 0 { self.rows[k].tests[slot - 1] } else { self.rows[k].node };
        let right = if slot + 1 < self.rows[k].tests.len() {
            self.rows[k].tests[slot + 1]
        } else {
            self.next_param(k)
        };
        let fresh_left = interior_params(left, p, self.refinement);
        let fresh_right = interior_params(p, right, self.refinement);

        // All new gaps sit between consecutive members of this chain.
        let mut chain = vec![left];
        chain.extend_from_slice(&fresh_left);
        chain.push(p);
        chain.extend_from_slice(&fresh_right);
        chain.push(right.min(1.0));
        let limit = 1e-14 * self.path.diameter();
        let pts: Vec<Complex64> = chain.iter().map(|&t| self.path.point(t)).collect();
        for pair in pts.windows(2) {
            if (pair[1] - pair[0]).norm() <= limit {
                return Err(Error::PointsTooClose { limit });
            }
        }

        let old_tests = std::mem::take(&mut self.rows[k].tests);
        let (before, after) = old_tests.split_at(slot);
        let mut left_tests = before.to_vec();
        left_tests.extend_from_slice(&fresh_left);
        let mut right_tests = fresh_right.clone();
        right_tests.extend_from_slice(&after[1..]);
        self.rows[k].tests = left_tests;
        self.rows.insert(k + 1, Row { node: p, tests: right_tests });

        let node_point = self.path.point(p);
        let new_tests = fresh_left
            .into_iter()
            .chain(fresh_right)
            .map(|t| (t, self.path.point(t)))
            .collect();
        Ok(Promotion { node_param: p, node_point, new_tests })
    }

    fn locate_test(&self, which: usize) -> Result<(usize, usize)> {
        let mut base = 0;
        for (k, row) in self.rows.iter().enumerate() {
            if which < base + row.tests.len() {
                return Ok((k, which - base));
            }
            base += row.tests.len();
        }
        Err(Error::BadTestIndex(which))
    }

    #[cfg(test)]
    fn check_invariants(&self) {
        let mut prev = -f64::INFINITY;
        for (k, row) in self.rows.iter().enumerate() {
            assert!(row.node > prev, "node parameters must increase");
            prev = row.node;
            let hi = self.next_param(k);
            for pair in row.tests.windows(2) {
                assert!(pair[0] < pair[1], "test parameters must increase");
            }
            for &t in &row.tests {
                assert!(t > row.node && t < hi, "test {t} outside ({}, {hi})", row.node);
            }
        }
    }
}

/// `count` equally spaced parameters strictly inside `(a, b)`.
fn interior_params(a: f64, b: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|j| a + (b - a) * j as f64 / (count + 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn segment_points() {
        let s = unit_interval();
        assert_abs_diff_eq!(s.point(0.5).re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.point(0.75).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.point(0.5).im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn circle_quarter_turn() {
        let circ = unit_circle();
        let p = circ.point(0.25);
        assert_abs_diff_eq!(p.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    #[should_panic(expected = "outside [0, 1]")]
    fn point_rejects_out_of_range() {
        unit_interval().point(1.5);
    }

    #[test]
    fn discretize_two_nodes() {
        let d = DiscretizedPath::new(unit_interval(), 2, 1).unwrap();
        let nodes = d.collect(Which::Nodes);
        let tests = d.collect(Which::Test);
        assert_eq!(nodes, vec![c(-1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(tests, vec![c(0.0, 0.0)]);
        assert_eq!(d.collect(Which::All), vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn discretize_three_nodes_two_tests() {
        let d = DiscretizedPath::new(unit_interval(), 3, 2).unwrap();
        assert_eq!(d.node_count(), 3);
        let params = d.params(Which::Test);
        let want = [1.0 / 6.0, 2.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0];
        assert_eq!(params.len(), want.len());
        for (got, want) in params.iter().zip(want) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn discretize_circle_counts() {
        let d = DiscretizedPath::new(unit_circle(), 4, 3).unwrap();
        assert_eq!(d.node_count(), 4);
        assert_eq!(d.test_count(), 12);
        for z in d.collect(Which::All) {
            assert_abs_diff_eq!(z.norm(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn promote_midpoint() {
        let mut d = DiscretizedPath::new(unit_interval(), 2, 1).unwrap();
        let idx = d.test_index_of(0.5).unwrap();
        let promo = d.add_node(idx).unwrap();
        assert_eq!(promo.node_point, c(0.0, 0.0));
        assert_eq!(d.collect(Which::Nodes), vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(d.collect(Which::Test), vec![c(-0.5, 0.0), c(0.5, 0.0)]);
        d.check_invariants();
    }

    /// Promotes index `which`, falling back to the next index when the
    /// duplicate-point guard rejects a promotion (the engine does the same).
    fn promote_with_fallback(d: &mut DiscretizedPath, which: usize) {
        let tests = d.test_count();
        for shift in 0..tests {
            match d.add_node((which + shift) % tests) {
                Ok(_) => return,
                Err(Error::PointsTooClose { .. }) => continue,
                Err(e) => panic!("unexpected promotion error {e}"),
            }
        }
        panic!("no promotable test point");
    }

    #[test]
    fn promotion_bookkeeping() {
        // Node count +1 and test count +(2 * refinement - 1) per promotion.
        for refinement in 1..=4 {
            let mut d = DiscretizedPath::new(unit_interval(), 3, refinement).unwrap();
            for step in 0..20 {
                let nodes = d.node_count();
                let tests = d.test_count();
                promote_with_fallback(&mut d, (step * 7) % tests);
                assert_eq!(d.node_count(), nodes + 1);
                assert_eq!(d.test_count(), tests + 2 * refinement - 1);
                d.check_invariants();
            }
        }
    }

    #[test]
    fn promotion_never_duplicates_parameters() {
        let mut d = DiscretizedPath::new(unit_circle(), 3, 2).unwrap();
        for step in 0..60 {
            let which = (step * 13 + 5) % d.test_count();
            promote_with_fallback(&mut d, which);
            let mut all = d.params(Which::All);
            let len = all.len();
            all.dedup();
            assert_eq!(all.len(), len);
            assert_eq!(len, d.node_count() + d.test_count());
            d.check_invariants();
        }
    }

    #[test]
    fn deep_drilling_hits_duplicate_guard() {
        // always promoting the first test point drills one gap down to the
        // 1e-14 * diameter floor, which must be rejected rather than stored
        let mut d = DiscretizedPath::new(unit_interval(), 2, 1).unwrap();
        let mut rejected = false;
        for _ in 0..60 {
            match d.add_node(0) {
                Ok(_) => d.check_invariants(),
                Err(Error::PointsTooClose { .. }) => {
                    rejected = true;
                    break;
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(rejected);
    }

    #[test]
    fn dist_to_boundary_closed_forms() {
        let seg: Path = unit_interval().into();
        assert_abs_diff_eq!(seg.dist_to_boundary(c(0.0, 1.0)), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(seg.dist_to_boundary(c(2.0, 0.0)), 1.0, epsilon = 1e-12);
        let circ: Path = unit_circle().into();
        assert_abs_diff_eq!(circ.dist_to_boundary(c(0.0, 0.0)), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sampled_dist_matches_closed_form() {
        let para = Curve::parametric(|t| Complex64::from_polar(2.0, TAU * t), true);
        for z in [c(0.5, 0.3), c(3.0, -1.0), c(0.0, 0.0)] {
            let exact = ((z).norm() - 2.0).abs();
            assert_abs_diff_eq!(para.dist(z), exact, epsilon = 1e-8 * (1.0 + exact));
        }
    }

    #[test]
    fn region_membership() {
        let inner = Region::interior(unit_circle()).unwrap();
        let outer = Region::exterior(unit_circle()).unwrap();
        assert!(inner.contains(c(0.0, 0.0)));
        assert!(!inner.contains(c(2.0, 0.0)));
        assert!(outer.contains(c(2.0, 0.0)));
        for z in [c(0.3, 0.4), c(-1.7, 0.2), c(0.0, 0.99), c(0.0, 1.01), c(5.0, 5.0)] {
            assert!(inner.contains(z) ^ outer.contains(z), "xor failed at {z}");
        }
    }

    #[test]
    fn polygon_membership_and_connectivity() {
        let square = Path::polygon(&[c(-1.0, -1.0), c(1.0, -1.0), c(1.0, 1.0), c(-1.0, 1.0)]).unwrap();
        assert!(square.is_closed());
        let inner = Region::interior(square.clone()).unwrap();
        assert!(inner.contains(c(0.2, -0.3)));
        assert!(!inner.contains(c(1.5, 0.0)));

        let bad = Path::new(vec![
            Curve::segment(c(0.0, 0.0), c(1.0, 0.0)),
            Curve::segment(c(2.0, 0.0), c(3.0, 0.0)),
        ]);
        assert!(matches!(bad, Err(Error::DisconnectedPath(0, 1))));
    }

    #[test]
    fn path_parameter_is_piecewise_smooth() {
        let square = Path::polygon(&[c(-1.0, -1.0), c(1.0, -1.0), c(1.0, 1.0), c(-1.0, 1.0)]).unwrap();
        let n = 1000;
        let h = 1.0 / n as f64;
        let mut max_fd: f64 = 0.0;
        for k in 0..n {
            let fd = (square.point((k + 1) as f64 * h) - square.point(k as f64 * h)).norm() / h;
            max_fd = max_fd.max(fd);
        }
        // arc-length parameterization keeps |dz/dt| near the total length (8)
        assert!(max_fd.is_finite() && max_fd < 3.0 * 8.0, "max fd {max_fd}");
    }

    #[test]
    fn capacity_is_enforced() {
        let mut d = DiscretizedPath::new(unit_interval(), 2, 1).unwrap().with_capacity(6);
        assert!(d.add_node(0).is_ok());
        let err = d.add_node(0).unwrap_err();
        assert!(matches!(err, Error::CapacityExceeded(6)));
    }
}
