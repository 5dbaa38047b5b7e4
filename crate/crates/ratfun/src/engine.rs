//! Greedy approximation drivers for the barycentric and Thiele
//! representations, the prescribed-pole driver, stagnation and convergence
//! control, pole admissibility, Lawson minimax refinement, and the iteration
//! history attached to every result.

use std::sync::Arc;

use num_complex::Complex64;

use crate::bary::{solve_weights, BarycentricInterpolant, LoewnerWorkspace};
use crate::domain::{Curve, DiscretizedPath, Path, Region, Which, DEFAULT_INIT_CLOSED, DEFAULT_INIT_OPEN, DEFAULT_REFINEMENT};
use crate::error::{Error, Result};
use crate::parfrac::{fit_least_squares, PartialFractions};
use crate::rational::{PoleResidue, RationalFunction, RationalInterpolant};
use crate::thiele::{ThieleInterpolant, ThieleTestCache};

/// Interpolation representation driven by the greedy loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Barycentric,
    Thiele,
}

/// Which poles an iterate may keep and still be returned.
#[derive(Clone, Default)]
pub enum PoleRule {
    /// Curves and paths forbid poles on the boundary; regions forbid poles
    /// inside; discrete point sets allow everything.
    #[default]
    DomainDefault,
    AllowAll,
    Predicate(Arc<dyn Fn(Complex64) -> bool + Send + Sync>),
}

impl std::fmt::Debug for PoleRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PoleRule::DomainDefault => write!(f, "DomainDefault"),
            PoleRule::AllowAll => write!(f, "AllowAll"),
            PoleRule::Predicate(_) => write!(f, "Predicate(..)"),
        }
    }
}

/// Controls for the greedy engines.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub method: Method,
    /// Convergence target, relative to `max |f|` over the current test set.
    pub tol: f64,
    /// Maximum number of node additions.
    pub max_iter: usize,
    /// Sliding-window length for the stagnation rule.
    pub stagnation: usize,
    pub allowed: PoleRule,
    /// Initial node count for continuum discretizations (defaults to 17 for
    /// open and 16 for closed boundaries).
    pub initial_nodes: Option<usize>,
    /// Test points added on each side of a promoted node.
    pub refinement: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            method: Method::Barycentric,
            tol: 1e-13,
            max_iter: 150,
            stagnation: 10,
            allowed: PoleRule::DomainDefault,
            initial_nodes: None,
            refinement: DEFAULT_REFINEMENT,
        }
    }
}

impl EngineConfig {
    pub fn with_method(method: Method) -> Self {
        EngineConfig { method, ..Default::default() }
    }
}

/// A continuum domain: a curve, a path, or a region bounded by one.
#[derive(Clone, Debug)]
pub enum ContinuumDomain {
    Curve(Curve),
    Path(Path),
    Region(Region),
}

impl From<Curve> for ContinuumDomain {
    fn from(c: Curve) -> Self {
        ContinuumDomain::Curve(c)
    }
}

impl From<Path> for ContinuumDomain {
    fn from(p: Path) -> Self {
        ContinuumDomain::Path(p)
    }
}

impl From<Region> for ContinuumDomain {
    fn from(r: Region) -> Self {
        ContinuumDomain::Region(r)
    }
}

impl ContinuumDomain {
    pub fn boundary(&self) -> Path {
        match self {
            ContinuumDomain::Curve(c) => c.clone().into(),
            ContinuumDomain::Path(p) => p.clone(),
            ContinuumDomain::Region(r) => r.boundary().clone(),
        }
    }
}

/// Default pole admissibility for a domain: off the boundary for curves and
/// paths, outside the region for regions.
pub fn allowed_default(domain: &ContinuumDomain) -> impl Fn(Complex64) -> bool + Send + Sync {
    enum Rule {
        OffBoundary(Path, f64),
        OutsideRegion(Region),
    }
    let rule = match domain {
        ContinuumDomain::Curve(_) | ContinuumDomain::Path(_) => {
            let path = domain.boundary();
            let diam = path.diameter();
            Rule::OffBoundary(path, diam)
        }
        ContinuumDomain::Region(r) => Rule::OutsideRegion(r.clone()),
    };
    move |z: Complex64| match &rule {
        Rule::OffBoundary(path, diam) => path.dist_to_boundary(z) > 1e-12 * diam,
        Rule::OutsideRegion(region) => !region.contains(z),
    }
}

/// Tube of admissibility radius around a closed-form boundary, used to
/// verify "no poles on the domain" by the argument principle instead of
/// trusting computed pole locations near tight clusters.
#[derive(Clone, Debug)]
enum TubeSpec {
    SegmentRect { a: Complex64, b: Complex64, delta: f64 },
    CircleAnnulus { center: Complex64, radius: f64, delta: f64 },
}

fn tube_spec(domain: &ContinuumDomain) -> Option<TubeSpec> {
    let curve = match domain {
        ContinuumDomain::Curve(c) => c,
        ContinuumDomain::Path(p) if p.pieces().len() == 1 => &p.pieces()[0],
        _ => return None,
    };
    let delta = 1e-12 * domain.boundary().diameter();
    match curve {
        Curve::Segment { a, b } => Some(TubeSpec::SegmentRect { a: *a, b: *b, delta }),
        Curve::Circle { center, radius, .. } => {
            Some(TubeSpec::CircleAnnulus { center: *center, radius: *radius, delta })
        }
        _ => None,
    }
}

impl TubeSpec {
    /// Number of zeros of the denominator sum inside the tube, or None when
    /// the winding sum is numerically ambiguous. `n_nodes` nodes lie on the
    /// boundary, hence inside the tube, and are the only poles of the sum.
    ///
    /// Pole/zero clusters self-cancel in the far field, so uniform sampling
    /// alone can skip whole turns; the sampling is therefore seeded at the
    /// projection of every node onto the contour, padded at tube scale.
    fn denominator_zeros_inside(
        &self,
        nodes: &[Complex64],
        weights: &[Complex64],
        n_nodes: usize,
    ) -> Option<i64> {
        let d = |z: Complex64| -> Complex64 {
            nodes.iter().zip(weights).map(|(&zj, &wj)| wj / (z - zj)).sum()
        };
        let winding = match self {
            TubeSpec::SegmentRect { a, b, delta } => {
                let dir = (b - a) / (b - a).norm();
                let nrm = Complex64::i() * dir;
                let corners = [
                    a - delta * dir - delta * nrm,
                    b + delta * dir - delta * nrm,
                    b + delta * dir + delta * nrm,
                    a - delta * dir + delta * nrm,
                ];
                let mut total = 0.0;
                let mut budget = 2_000_000i64;
                for k in 0..4 {
                    let (p0, p1) = (corners[k], corners[(k + 1) % 4]);
                    let len2 = (p1 - p0).norm_sqr();
                    let mut seeds = Vec::with_capacity(9 * nodes.len());
                    for &z in nodes {
                        let t = ((z - p0) * (p1 - p0).conj()).re / len2;
                        for pad in [0.0, 1.0, 4.0, 16.0, 64.0] {
                            let off = pad * delta / len2.sqrt();
                            seeds.push(t - off);
                            seeds.push(t + off);
                        }
                    }
                    total += winding_along(&d, p0, p1, &seeds, &mut budget)?;
                }
                total
            }
            TubeSpec::CircleAnnulus { center, radius, delta } => {
                let mut budget = 2_000_000i64;
                let seeds: Vec<f64> = nodes
                    .iter()
                    .flat_map(|&z| {
                        let t = (z - center).arg() / std::f64::consts::TAU;
                        let t = if t < 0.0 { t + 1.0 } else { t };
                        [0.0, 1.0, 4.0, 16.0, 64.0]
                            .into_iter()
                            .flat_map(move |pad| {
                                let off = pad * delta / (std::f64::consts::TAU * radius);
                                [t - off, t + off]
                            })
                    })
                    .collect();
                let outer = winding_circle(&d, *center, radius + delta, &seeds, &mut budget)?;
                let inner = winding_circle(&d, *center, radius - delta, &seeds, &mut budget)?;
                outer - inner
            }
        };
        let turns = winding / std::f64::consts::TAU;
        let snapped = turns.round();
        if (turns - snapped).abs() > 0.25 {
            return None;
        }
        Some(snapped as i64 + n_nodes as i64)
    }
}

/// Builds the initial sample parameters: a uniform base grid plus the given
/// seeds, sorted and deduplicated, all within `[0, 1]`.
fn seeded_params(base: usize, seeds: &[f64]) -> Vec<f64> {
    let mut params: Vec<f64> = (0..=base).map(|k| k as f64 / base as f64).collect();
    params.extend(seeds.iter().copied().filter(|t| (0.0..=1.0).contains(t)));
    params.sort_by(f64::total_cmp);
    params.dedup();
    params
}

/// Accumulated change of `arg(d)` along a parameterized contour piece, by
/// adaptive phase continuation over the given initial parameters. Returns
/// None when samples are non-finite or the evaluation budget runs out.
fn winding_piecewise(
    d: &dyn Fn(Complex64) -> Complex64,
    point: &dyn Fn(f64) -> Complex64,
    params: Vec<f64>,
    budget: &mut i64,
) -> Option<f64> {
    let mut stack: Vec<(f64, Complex64)> = Vec::with_capacity(params.len());
    for &t in params.iter().rev() {
        let v = d(point(t));
        if !v.re.is_finite() || !v.im.is_finite() || v.norm() == 0.0 {
            return None;
        }
        stack.push((t, v));
    }
    let mut total = 0.0;
    while stack.len() >= 2 {
        let (t0, d0) = stack[stack.len() - 1];
        let (t1, d1) = stack[stack.len() - 2];
        let ratio = d1 / d0;
        let turn = ratio.arg().abs();
        let mag = (d1.norm() / d0.norm()).ln().abs();
        if (turn < 0.5 && mag < 0.7) || t1 - t0 < 1e-15 {
            total += ratio.arg();
            stack.pop();
        } else {
            *budget -= 1;
            if *budget <= 0 {
                return None;
            }
            let tm = 0.5 * (t0 + t1);
            let vm = d(point(tm));
            if !vm.re.is_finite() || !vm.im.is_finite() || vm.norm() == 0.0 {
                return None;
            }
            let pos = stack.len() - 1;
            stack.insert(pos, (tm, vm));
        }
    }
    Some(total)
}

fn winding_along(
    d: &dyn Fn(Complex64) -> Complex64,
    a: Complex64,
    b: Complex64,
    seeds: &[f64],
    budget: &mut i64,
) -> Option<f64> {
    let params = seeded_params(4096, seeds);
    winding_piecewise(d, &|t| a + (b - a) * t, params, budget)
}

fn winding_circle(
    d: &dyn Fn(Complex64) -> Complex64,
    center: Complex64,
    radius: f64,
    seeds: &[f64],
    budget: &mut i64,
) -> Option<f64> {
    let params = seeded_params(4096, seeds);
    winding_piecewise(
        d,
        &|t| center + Complex64::from_polar(radius, std::f64::consts::TAU * t),
        params,
        budget,
    )
}

/// A fitted rational interpolant (no attached function or domain).
#[derive(Clone, Debug)]
pub enum Interpolant {
    Barycentric(BarycentricInterpolant),
    Thiele(ThieleInterpolant),
}

impl RationalFunction for Interpolant {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Interpolant::Barycentric(r) => r.eval(z),
            Interpolant::Thiele(r) => r.eval(z),
        }
    }

    fn degrees(&self) -> (usize, usize) {
        match self {
            Interpolant::Barycentric(r) => r.degrees(),
            Interpolant::Thiele(r) => r.degrees(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Interpolant::Barycentric(r) => r.is_empty(),
            Interpolant::Thiele(r) => r.is_empty(),
        }
    }

    fn poles(&self) -> Result<Vec<Complex64>> {
        match self {
            Interpolant::Barycentric(r) => r.poles(),
            Interpolant::Thiele(r) => r.poles(),
        }
    }

    fn residues(&self) -> Result<Vec<PoleResidue>> {
        match self {
            Interpolant::Barycentric(r) => r.residues(),
            Interpolant::Thiele(r) => r.residues(),
        }
    }

    fn roots(&self) -> Result<Vec<Complex64>> {
        match self {
            Interpolant::Barycentric(r) => r.roots(),
            Interpolant::Thiele(r) => r.roots(),
        }
    }
}

impl RationalInterpolant for Interpolant {
    fn nodes(&self) -> &[Complex64] {
        match self {
            Interpolant::Barycentric(r) => r.nodes(),
            Interpolant::Thiele(r) => r.nodes(),
        }
    }

    fn values(&self) -> &[Complex64] {
        match self {
            Interpolant::Barycentric(r) => r.values(),
            Interpolant::Thiele(r) => r.values(),
        }
    }
}

/// Any fitted rational representation.
#[derive(Clone, Debug)]
pub enum Fit {
    Barycentric(BarycentricInterpolant),
    Thiele(ThieleInterpolant),
    PartialFractions(PartialFractions),
}

impl From<Interpolant> for Fit {
    fn from(i: Interpolant) -> Self {
        match i {
            Interpolant::Barycentric(r) => Fit::Barycentric(r),
            Interpolant::Thiele(r) => Fit::Thiele(r),
        }
    }
}

impl Fit {
    pub fn as_barycentric(&self) -> Option<&BarycentricInterpolant> {
        match self {
            Fit::Barycentric(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_thiele(&self) -> Option<&ThieleInterpolant> {
        match self {
            Fit::Thiele(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_partial_fractions(&self) -> Option<&PartialFractions> {
        match self {
            Fit::PartialFractions(r) => Some(r),
            _ => None,
        }
    }
}

impl RationalFunction for Fit {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Fit::Barycentric(r) => r.eval(z),
            Fit::Thiele(r) => r.eval(z),
            Fit::PartialFractions(r) => r.eval(z),
        }
    }

    fn degrees(&self) -> (usize, usize) {
        match self {
            Fit::Barycentric(r) => r.degrees(),
            Fit::Thiele(r) => r.degrees(),
            Fit::PartialFractions(r) => r.degrees(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Fit::Barycentric(r) => r.is_empty(),
            Fit::Thiele(r) => r.is_empty(),
            Fit::PartialFractions(r) => r.is_empty(),
        }
    }

    fn poles(&self) -> Result<Vec<Complex64>> {
        match self {
            Fit::Barycentric(r) => r.poles(),
            Fit::Thiele(r) => r.poles(),
            Fit::PartialFractions(r) => r.poles(),
        }
    }

    fn residues(&self) -> Result<Vec<PoleResidue>> {
        match self {
            Fit::Barycentric(r) => r.residues(),
            Fit::Thiele(r) => r.residues(),
            Fit::PartialFractions(r) => r.residues(),
        }
    }

    fn roots(&self) -> Result<Vec<Complex64>> {
        match self {
            Fit::Barycentric(r) => r.roots(),
            Fit::Thiele(r) => r.roots(),
            Fit::PartialFractions(r) => r.roots(),
        }
    }
}

/// One greedy iteration: node count, worst absolute test error, and whether
/// all poles passed the admissibility predicate (None when not evaluated).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationRecord {
    pub nodes: usize,
    pub max_err: f64,
    pub allowed: Option<bool>,
}

/// Per-iteration records plus the index of the returned iterate.
#[derive(Clone, Debug, Default)]
pub struct ConvergenceHistory {
    pub records: Vec<IterationRecord>,
    pub chosen: usize,
}

/// Where an approximation lives.
#[derive(Clone, Debug)]
pub enum ApproxDomain {
    Continuum(ContinuumDomain),
    Discrete(Vec<Complex64>),
}

/// A fitted approximation: the function, its domain, the rational fit, the
/// iteration history, and the test points in use when the fit was accepted.
#[derive(Clone)]
pub struct Approximation {
    f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    domain: ApproxDomain,
    fit: Fit,
    history: ConvergenceHistory,
    test_points: Vec<Complex64>,
    test_values: Vec<Complex64>,
    warnings: Vec<String>,
}

impl std::fmt::Debug for Approximation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Approximation")
            .field("domain", &self.domain)
            .field("fit", &self.fit)
            .field("history", &self.history)
            .field("test_points", &self.test_points.len())
            .field("warnings", &self.warnings)
            .finish()
    }
}

/// Dense-grid error report from [`Approximation::check`].
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub points: Vec<Complex64>,
    pub errors: Vec<f64>,
    pub max_err: f64,
}

impl Approximation {
    pub fn fit(&self) -> &Fit {
        &self.fit
    }

    pub fn domain(&self) -> &ApproxDomain {
        &self.domain
    }

    pub fn history(&self) -> &ConvergenceHistory {
        &self.history
    }

    pub fn test_points(&self) -> &[Complex64] {
        &self.test_points
    }

    pub fn test_values(&self) -> &[Complex64] {
        &self.test_values
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.fit.eval(z)
    }

    pub fn eval_f(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }

    /// Absolute error of the fit on the stored test points.
    pub fn max_test_error(&self) -> f64 {
        self.test_points
            .iter()
            .zip(&self.test_values)
            .map(|(&t, &v)| (self.fit.eval(t) - v).norm())
            .fold(0.0, f64::max)
    }

    /// Evaluates `f - r` on a dense check grid: ten times the final test
    /// density for continuum domains, the full point set for discrete ones.
    /// Points where `f` is not finite are skipped.
    pub fn check(&self) -> CheckReport {
        let points: Vec<Complex64> = match &self.domain {
            ApproxDomain::Continuum(d) => {
                let path = d.boundary();
                let m = 10 * self.test_points.len().max(20);
                (0..=m).map(|k| path.point(k as f64 / m as f64)).collect()
            }
            ApproxDomain::Discrete(zs) => zs.clone(),
        };
        let mut kept = Vec::with_capacity(points.len());
        let mut errors = Vec::with_capacity(points.len());
        let mut max_err: f64 = 0.0;
        for z in points {
            let fz = (self.f)(z);
            if !fz.re.is_finite() || !fz.im.is_finite() {
                continue;
            }
            let e = (fz - self.fit.eval(z)).norm();
            max_err = max_err.max(e);
            kept.push(z);
            errors.push(e);
        }
        CheckReport { points: kept, errors, max_err }
    }
}

/// Stagnation rule: stop when the best error over the last `window`
/// iterations is at least 95% of the best over the window before it, and
/// some fit already reached `1e-2` of the function scale.
pub fn stagnation_check(errors: &[f64], window: usize, f_scale: f64) -> bool {
    let window = window.max(1);
    let k = errors.len();
    if k < 2 * window {
        return false;
    }
    let min_of = |s: &[f64]| s.iter().cloned().fold(f64::INFINITY, f64::min);
    let recent = min_of(&errors[k - window..]);
    let previous = min_of(&errors[k - 2 * window..k - window]);
    let best = min_of(errors);
    recent >= 0.95 * previous && best <= 1e-2 * f_scale
}

// ---------------------------------------------------------------------------
// greedy driver
// ---------------------------------------------------------------------------

/// Representation-specific hooks used by the greedy loop.
trait GreedyRep {
    fn node_count(&self) -> usize;
    /// Non-destructive feasibility check for a node candidate.
    fn try_node(&self, z: Complex64, fz: Complex64) -> Result<()>;
    fn add_node(&mut self, z: Complex64, fz: Complex64) -> Result<()>;
    fn remove_test(&mut self, idx: usize);
    fn update(&mut self, new_pts: &[Complex64], new_vals: &[Complex64]) -> Result<Vec<Complex64>>;
    fn snapshot(&self) -> Interpolant;
    fn poles(&self) -> Result<Vec<Complex64>>;
    /// Whether admissibility is evaluated every iteration (barycentric) or
    /// only on improving iterates (Thiele, where poles are expensive).
    fn poles_each_iteration(&self) -> bool;
    /// Test points the representation needs once it holds `nodes` nodes.
    fn min_tests_after(&self, nodes: usize) -> usize;
    /// Node/weight data of the barycentric denominator, when available, for
    /// the argument-principle admissibility verification.
    fn denominator(&self) -> Option<(&[Complex64], &[Complex64])> {
        None
    }
}

struct BaryRep {
    r: BarycentricInterpolant,
    ws: LoewnerWorkspace,
}

impl GreedyRep for BaryRep {
    fn node_count(&self) -> usize {
        self.r.len()
    }

    fn try_node(&self, z: Complex64, _fz: Complex64) -> Result<()> {
        if self.r.nodes().contains(&z) {
            return Err(Error::DuplicatePoint(z));
        }
        Ok(())
    }

    fn add_node(&mut self, z: Complex64, fz: Complex64) -> Result<()> {
        self.r.add_nodes(&mut self.ws, &[z], &[fz])
    }

    fn remove_test(&mut self, idx: usize) {
        self.ws.remove_test(idx);
    }

    fn update(&mut self, new_pts: &[Complex64], new_vals: &[Complex64]) -> Result<Vec<Complex64>> {
        self.r.update_test_values(&mut self.ws, new_pts, new_vals)
    }

    fn snapshot(&self) -> Interpolant {
        Interpolant::Barycentric(self.r.clone())
    }

    fn poles(&self) -> Result<Vec<Complex64>> {
        self.r.poles()
    }

    fn poles_each_iteration(&self) -> bool {
        true
    }

    fn min_tests_after(&self, nodes: usize) -> usize {
        nodes
    }

    fn denominator(&self) -> Option<(&[Complex64], &[Complex64])> {
        Some((self.r.nodes(), self.r.weights()))
    }
}

struct ThieleRep {
    r: ThieleInterpolant,
    cache: ThieleTestCache,
}

impl GreedyRep for ThieleRep {
    fn node_count(&self) -> usize {
        self.r.len()
    }

    fn try_node(&self, z: Complex64, fz: Complex64) -> Result<()> {
        self.r.next_weight(z, fz).map(drop)
    }

    fn add_node(&mut self, z: Complex64, fz: Complex64) -> Result<()> {
        self.r.add_nodes(z, fz)
    }

    fn remove_test(&mut self, idx: usize) {
        self.cache.remove_test(idx);
    }

    fn update(&mut self, new_pts: &[Complex64], new_vals: &[Complex64]) -> Result<Vec<Complex64>> {
        self.r.update_test_values(&mut self.cache, new_pts, new_vals)
    }

    fn snapshot(&self) -> Interpolant {
        Interpolant::Thiele(self.r.clone())
    }

    fn poles(&self) -> Result<Vec<Complex64>> {
        self.r.poles()
    }

    fn poles_each_iteration(&self) -> bool {
        false
    }

    fn min_tests_after(&self, _nodes: usize) -> usize {
        1
    }
}

/// Supplies fresh test points when a node is promoted.
enum Supply {
    Continuum { grid: DiscretizedPath, f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> },
    Discrete,
}

struct Driver<R: GreedyRep> {
    rep: R,
    supply: Supply,
    params: Vec<f64>,
    tests: Vec<Complex64>,
    fvals: Vec<Complex64>,
    /// Tests below this index are already registered with the representation.
    flushed: usize,
    initial_total: usize,
    allowed: Option<Arc<dyn Fn(Complex64) -> bool + Send + Sync>>,
    tube: Option<TubeSpec>,
    cfg: EngineConfig,
    warnings: Vec<String>,
}

struct GreedyOutcome {
    history: ConvergenceHistory,
    fit: Interpolant,
    test_points: Vec<Complex64>,
    test_values: Vec<Complex64>,
    warnings: Vec<String>,
}

impl<R: GreedyRep> Driver<R> {
    /// Promotes test point `idx` to an interpolation node. Fails without
    /// side effects if the representation or the discretization rejects it.
    fn promote(&mut self, idx: usize) -> Result<()> {
        let z = self.tests[idx];
        let fz = self.fvals[idx];
        self.rep.try_node(z, fz)?;
        let mut fresh: Vec<(f64, Complex64, Complex64)> = Vec::new();
        if let Supply::Continuum { grid, f } = &mut self.supply {
            let which = grid
                .test_index_of(self.params[idx])
                .ok_or(Error::BadTestIndex(idx))?;
            let promo = grid.add_node(which)?;
            for (param, pt) in promo.new_tests {
                let v = f(pt);
                if v.re.is_finite() && v.im.is_finite() {
                    fresh.push((param, pt, v));
                }
            }
        }
        if idx < self.flushed {
            self.rep.remove_test(idx);
            self.flushed -= 1;
        }
        self.params.remove(idx);
        self.tests.remove(idx);
        self.fvals.remove(idx);
        for (param, pt, v) in fresh {
            self.params.push(param);
            self.tests.push(pt);
            self.fvals.push(v);
        }
        self.rep
            .add_node(z, fz)
            .expect("node candidate validated before promotion");
        Ok(())
    }

    /// Promotes the candidate with the largest error, falling back to the
    /// next-worst test point when a promotion is rejected.
    fn promote_worst(&mut self, errs: &[f64]) -> bool {
        let mut order: Vec<usize> = (0..errs.len()).collect();
        order.sort_by(|&a, &b| errs[b].total_cmp(&errs[a]).then(a.cmp(&b)));
        for idx in order {
            match self.promote(idx) {
                Ok(()) => return true,
                Err(Error::UnreachableNode) | Err(Error::PointsTooClose { .. }) => continue,
                Err(Error::CapacityExceeded(_)) => {
                    self.warnings.push("discretization capacity exhausted".into());
                    return false;
                }
                Err(e) => {
                    self.warnings.push(format!("promotion stopped: {e}"));
                    return false;
                }
            }
        }
        self.warnings.push("no promotable test point remains".into());
        false
    }

    fn headroom_for_promotion(&self) -> bool {
        let gain = match self.supply {
            Supply::Continuum { .. } => 1,
            Supply::Discrete => 0,
        };
        self.tests.len() - 1 + gain >= self.rep.min_tests_after(self.rep.node_count() + 1)
    }

    fn run(mut self) -> Result<GreedyOutcome> {
        // seed at the test point with the largest |f|; ties take the lowest index
        let mut seed = 0;
        let mut seed_norm = -1.0;
        for (i, v) in self.fvals.iter().enumerate() {
            let n = v.norm();
            if n > seed_norm {
                seed_norm = n;
                seed = i;
            }
        }
        if self.fvals.is_empty() {
            return Err(Error::NoUsableTestPoints);
        }
        self.promote(seed)?;

        let mut history = ConvergenceHistory::default();
        let mut errors: Vec<f64> = Vec::new();
        let mut best: Option<(f64, Interpolant, usize)> = None;
        let mut best_err_seen = f64::INFINITY;

        loop {
            let new_pts = self.tests[self.flushed..].to_vec();
            let new_vals = self.fvals[self.flushed..].to_vec();
            let preds = self.rep.update(&new_pts, &new_vals)?;
            self.flushed = self.tests.len();

            let errs: Vec<f64> = preds
                .iter()
                .zip(&self.fvals)
                .map(|(p, f)| {
                    let e = (p - f).norm();
                    if e.is_finite() {
                        e
                    } else {
                        f64::INFINITY
                    }
                })
                .collect();
            let max_err = errs.iter().cloned().fold(0.0, f64::max);
            let f_scale = self.fvals.iter().map(|v| v.norm()).fold(0.0, f64::max);

            let improving = max_err < best_err_seen;
            let allowed = self.evaluate_allowed(improving);
            history.records.push(IterationRecord {
                nodes: self.rep.node_count(),
                max_err,
                allowed,
            });
            errors.push(max_err);

            if improving {
                best_err_seen = max_err;
            }
            if allowed == Some(true) && best.as_ref().map_or(true, |(e, _, _)| max_err < *e) {
                best = Some((max_err, self.rep.snapshot(), history.records.len() - 1));
            }

            if max_err <= self.cfg.tol * f_scale && allowed == Some(true) {
                break;
            }
            if stagnation_check(&errors, self.cfg.stagnation, f_scale) {
                break;
            }
            if self.rep.node_count() >= self.cfg.max_iter {
                break;
            }

            if !self.headroom_for_promotion() {
                if !self.finale_promote_all(&mut history, &mut best) {
                    self.warnings.push("test set exhausted before convergence".into());
                }
                break;
            }
            if !self.promote_worst(&errs) {
                break;
            }
        }

        let (_, fit, chosen) = best.ok_or(Error::NoAllowedIterate {
            iterations: history.records.len(),
        })?;
        history.chosen = chosen;
        Ok(GreedyOutcome {
            history,
            fit,
            test_points: self.tests,
            test_values: self.fvals,
            warnings: self.warnings,
        })
    }

    fn evaluate_allowed(&self, improving: bool) -> Option<bool> {
        let Some(pred) = &self.allowed else {
            return Some(true);
        };
        if !self.rep.poles_each_iteration() && !improving {
            return None;
        }
        let per_pole = match self.rep.poles() {
            Ok(poles) => poles.iter().all(|&p| pred(p)),
            Err(_) => false,
        };
        if !per_pole {
            return Some(false);
        }
        // computed pole locations can smear inside tight clusters; for
        // closed-form boundaries, verify "no pole in the tube" exactly
        if let (Some(tube), Some((nodes, weights))) = (&self.tube, self.rep.denominator()) {
            if let Some(zeros) = tube.denominator_zeros_inside(nodes, weights, nodes.len()) {
                return Some(zeros == 0);
            }
        }
        Some(true)
    }

    /// Completes a small discrete point set by promoting everything that is
    /// left; the barycentric fit falls back to the interpolating polynomial.
    fn finale_promote_all(
        &mut self,
        history: &mut ConvergenceHistory,
        best: &mut Option<(f64, Interpolant, usize)>,
    ) -> bool {
        if !matches!(self.supply, Supply::Discrete) || self.initial_total > 24 {
            return false;
        }
        while !self.tests.is_empty() {
            if self.promote(0).is_err() {
                return false;
            }
        }
        let snapshot = match self.rep.snapshot() {
            Interpolant::Barycentric(b) => {
                let weights = lagrange_weights(b.nodes());
                match BarycentricInterpolant::new(b.nodes().to_vec(), b.values().to_vec(), weights) {
                    Ok(poly) => Interpolant::Barycentric(poly),
                    Err(_) => return false,
                }
            }
            other => other,
        };
        self.warnings.push("all points promoted without convergence".into());
        history.records.push(IterationRecord {
            nodes: self.rep.node_count(),
            max_err: 0.0,
            allowed: Some(true),
        });
        *best = Some((0.0, snapshot, history.records.len() - 1));
        true
    }
}

/// Weights of the interpolating polynomial through the given nodes,
/// normalized to unit maximum.
fn lagrange_weights(nodes: &[Complex64]) -> Vec<Complex64> {
    let mut w: Vec<Complex64> = nodes
        .iter()
        .enumerate()
        .map(|(j, &zj)| {
            let mut prod = Complex64::new(1.0, 0.0);
            for (k, &zk) in nodes.iter().enumerate() {
                if k != j {
                    prod *= zj - zk;
                }
            }
            1.0 / prod
        })
        .collect();
    let scale = w.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        for c in &mut w {
            *c /= scale;
        }
    }
    w
}

fn resolve_allowed(
    rule: &PoleRule,
    domain: Option<&ContinuumDomain>,
) -> Option<Arc<dyn Fn(Complex64) -> bool + Send + Sync>> {
    match rule {
        PoleRule::AllowAll => None,
        PoleRule::Predicate(p) => Some(p.clone()),
        PoleRule::DomainDefault => domain.map(|d| {
            let pred = allowed_default(d);
            Arc::new(pred) as Arc<dyn Fn(Complex64) -> bool + Send + Sync>
        }),
    }
}

fn run_with_method(
    method: Method,
    supply: Supply,
    params: Vec<f64>,
    tests: Vec<Complex64>,
    fvals: Vec<Complex64>,
    allowed: Option<Arc<dyn Fn(Complex64) -> bool + Send + Sync>>,
    tube: Option<TubeSpec>,
    cfg: &EngineConfig,
) -> Result<GreedyOutcome> {
    let initial_total = tests.len();
    match method {
        Method::Barycentric => Driver {
            rep: BaryRep { r: BarycentricInterpolant::empty(), ws: LoewnerWorkspace::new() },
            supply,
            params,
            tests,
            fvals,
            flushed: 0,
            initial_total,
            allowed,
            tube,
            cfg: cfg.clone(),
            warnings: Vec::new(),
        }
        .run(),
        Method::Thiele => Driver {
            rep: ThieleRep { r: ThieleInterpolant::empty(), cache: ThieleTestCache::new() },
            supply,
            params,
            tests,
            fvals,
            flushed: 0,
            initial_total,
            allowed,
            tube,
            cfg: cfg.clone(),
            warnings: Vec::new(),
        }
        .run(),
    }
}

/// Greedy rational approximation of `f` on a continuum domain. The boundary
/// is discretized adaptively; at each step the worst test point becomes a
/// node and fresh test points are inserted beside it. Returns the best
/// iterate whose poles all pass the admissibility rule.
pub fn approximate_continuum<F>(
    f: F,
    domain: impl Into<ContinuumDomain>,
    cfg: &EngineConfig,
) -> Result<Approximation>
where
    F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
{
    let domain = domain.into();
    let boundary = domain.boundary();
    let init = cfg.initial_nodes.unwrap_or(if boundary.is_closed() {
        DEFAULT_INIT_CLOSED
    } else {
        DEFAULT_INIT_OPEN
    });
    let grid = DiscretizedPath::new(boundary, init, cfg.refinement)?;
    let f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(f);

    let all_params = grid.params(Which::Test);
    let mut params = Vec::with_capacity(all_params.len());
    let mut tests = Vec::with_capacity(all_params.len());
    let mut fvals = Vec::with_capacity(all_params.len());
    for t in all_params {
        let z = grid.path().point(t);
        let v = f(z);
        if v.re.is_finite() && v.im.is_finite() {
            params.push(t);
            tests.push(z);
            fvals.push(v);
        }
    }
    if tests.is_empty() {
        return Err(Error::NoUsableTestPoints);
    }

    let allowed = resolve_allowed(&cfg.allowed, Some(&domain));
    let tube = if matches!(cfg.allowed, PoleRule::DomainDefault) {
        tube_spec(&domain)
    } else {
        None
    };
    let supply = Supply::Continuum { grid, f: f.clone() };
    let outcome = run_with_method(cfg.method, supply, params, tests, fvals, allowed, tube, cfg)?;
    Ok(Approximation {
        f,
        domain: ApproxDomain::Continuum(domain),
        fit: outcome.fit.into(),
        history: outcome.history,
        test_points: outcome.test_points,
        test_values: outcome.test_values,
        warnings: outcome.warnings,
    })
}

/// Greedy rational approximation over a fixed point set, which serves as
/// both the test points and the candidate nodes. All poles are allowed
/// unless the config installs a predicate.
pub fn approximate_discrete<F>(
    f: F,
    points: &[Complex64],
    cfg: &EngineConfig,
) -> Result<Approximation>
where
    F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
{
    let f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(f);
    let mut tests = Vec::with_capacity(points.len());
    let mut fvals = Vec::with_capacity(points.len());
    for (k, &z) in points.iter().enumerate() {
        if points[..k].contains(&z) {
            return Err(Error::DuplicatePoint(z));
        }
        let v = f(z);
        if v.re.is_finite() && v.im.is_finite() {
            tests.push(z);
            fvals.push(v);
        }
    }
    if tests.len() < 2 {
        return Err(Error::NoUsableTestPoints);
    }
    let params = vec![f64::NAN; tests.len()];
    let allowed = resolve_allowed(&cfg.allowed, None);
    let outcome = run_with_method(cfg.method, Supply::Discrete, params, tests, fvals, allowed, None, cfg)?;
    Ok(Approximation {
        f,
        domain: ApproxDomain::Discrete(points.to_vec()),
        fit: outcome.fit.into(),
        history: outcome.history,
        test_points: outcome.test_points,
        test_values: outcome.test_values,
        warnings: outcome.warnings,
    })
}

/// Greedy interpolation of tabulated values `y` at points `z`. Returns the
/// bare interpolant, since no originating function is available.
pub fn approximate_values(
    y: &[Complex64],
    z: &[Complex64],
    cfg: &EngineConfig,
) -> Result<Interpolant> {
    if y.len() != z.len() {
        return Err(Error::LengthMismatch(y.len(), z.len()));
    }
    if y.iter().chain(z.iter()).any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    for (k, &p) in z.iter().enumerate() {
        if z[..k].contains(&p) {
            return Err(Error::DuplicatePoint(p));
        }
    }
    if z.len() < 2 {
        return Err(Error::NoUsableTestPoints);
    }
    let params = vec![f64::NAN; z.len()];
    let allowed = resolve_allowed(&cfg.allowed, None);
    let outcome = run_with_method(
        cfg.method,
        Supply::Discrete,
        params,
        z.to_vec(),
        y.to_vec(),
        allowed,
        None,
        cfg,
    )?;
    Ok(outcome.fit)
}

/// Target for the prescribed-pole least-squares driver.
pub enum PrescribedTarget {
    Continuum(ContinuumDomain),
    Points(Vec<Complex64>),
}

impl From<Curve> for PrescribedTarget {
    fn from(c: Curve) -> Self {
        PrescribedTarget::Continuum(c.into())
    }
}

impl From<Path> for PrescribedTarget {
    fn from(p: Path) -> Self {
        PrescribedTarget::Continuum(p.into())
    }
}

impl From<Region> for PrescribedTarget {
    fn from(r: Region) -> Self {
        PrescribedTarget::Continuum(r.into())
    }
}

impl From<Vec<Complex64>> for PrescribedTarget {
    fn from(pts: Vec<Complex64>) -> Self {
        PrescribedTarget::Points(pts)
    }
}

/// Default number of equispaced samples for the prescribed-pole driver.
pub const DEFAULT_PRESCRIBED_INIT: usize = 400;

/// Least-squares approximation with prescribed poles `zeta` and a polynomial
/// part of the given degree.
///
/// For continuum targets, the boundary sampling starts from `init` equally
/// spaced points and midpoints are inserted until the distance between
/// adjacent samples is at most half the distance to the nearest pole.
pub fn approximate_prescribed<F>(
    f: F,
    target: impl Into<PrescribedTarget>,
    zeta: &[Complex64],
    degree: usize,
    init: Option<usize>,
) -> Result<Approximation>
where
    F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
{
    let f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(f);
    let target = target.into();
    let (points, domain) = match target {
        PrescribedTarget::Points(pts) => {
            let domain = ApproxDomain::Discrete(pts.clone());
            (pts, domain)
        }
        PrescribedTarget::Continuum(d) => {
            let boundary = d.boundary();
            let init = init.unwrap_or(DEFAULT_PRESCRIBED_INIT).max(degree + zeta.len() + 2);
            let pts = prescribed_boundary_samples(&boundary, zeta, init);
            (pts, ApproxDomain::Continuum(d))
        }
    };

    let mut sample_pts = Vec::with_capacity(points.len());
    let mut sample_vals = Vec::with_capacity(points.len());
    for &z in &points {
        let v = f(z);
        if v.re.is_finite() && v.im.is_finite() {
            sample_pts.push(z);
            sample_vals.push(v);
        }
    }
    if sample_pts.is_empty() {
        return Err(Error::NoUsableTestPoints);
    }

    let pf = fit_least_squares(&sample_pts, &sample_vals, zeta, degree)?;
    let mut warnings = Vec::new();
    if let Some(w) = pf.condition_warning() {
        warnings.push(w);
    }
    let max_err = sample_pts
        .iter()
        .zip(&sample_vals)
        .map(|(&t, &v)| (pf.eval(t) - v).norm())
        .fold(0.0, f64::max);
    let history = ConvergenceHistory {
        records: vec![IterationRecord {
            nodes: degree + zeta.len() + 1,
            max_err,
            allowed: Some(true),
        }],
        chosen: 0,
    };
    Ok(Approximation {
        f,
        domain,
        fit: Fit::PartialFractions(pf),
        history,
        test_points: sample_pts,
        test_values: sample_vals,
        warnings,
    })
}

/// Equispaced boundary parameters refined by midpoint insertion until each
/// adjacent gap is no longer than half the distance to the nearest pole.
fn prescribed_boundary_samples(boundary: &Path, zeta: &[Complex64], init: usize) -> Vec<Complex64> {
    const CAP: usize = 1 << 18;
    let closed = boundary.is_closed();
    let mut params: Vec<f64> = if closed {
        (0..init).map(|k| k as f64 / init as f64).collect()
    } else {
        (0..init).map(|k| k as f64 / (init - 1) as f64).collect()
    };
    if !zeta.is_empty() {
        loop {
            let mut inserts = Vec::new();
            let count = if closed { params.len() } else { params.len() - 1 };
            for k in 0..count {
                let t0 = params[k];
                let t1 = if k + 1 < params.len() { params[k + 1] } else { 1.0 };
                let p0 = boundary.point(t0);
                let p1 = boundary.point(t1);
                let gap = (p1 - p0).norm();
                let tm = 0.5 * (t0 + t1);
                let mid = boundary.point(tm);
                let near = zeta.iter().map(|&s| (mid - s).norm()).fold(f64::INFINITY, f64::min);
                if gap > 0.5 * near && gap > 0.0 {
                    inserts.push(tm);
                }
            }
            if inserts.is_empty() || params.len() + inserts.len() > CAP {
                break;
            }
            params.extend(inserts);
            params.sort_by(f64::total_cmp);
            params.dedup();
        }
    }
    params.iter().map(|&t| boundary.point(t)).collect()
}

/// Lawson-style minimax refinement of a barycentric approximation.
///
/// Keeps the node set frozen and re-solves the Loewner problem with
/// iteratively reweighted rows (`lambda_i` scaled by the residual each
/// step); returns the iterate with the smallest max/median error ratio.
pub fn minimax(a: &Approximation, iterations: usize) -> Result<Approximation> {
    let Some(b0) = a.fit.as_barycentric() else {
        return Err(Error::MinimaxNeedsBarycentric);
    };
    if a.test_points.is_empty() {
        return Ok(a.clone());
    }
    let fit = lawson(b0, &a.test_points, &a.test_values, iterations)?;
    Ok(Approximation {
        f: a.f.clone(),
        domain: a.domain.clone(),
        fit: Fit::Barycentric(fit),
        history: a.history.clone(),
        test_points: a.test_points.clone(),
        test_values: a.test_values.clone(),
        warnings: a.warnings.clone(),
    })
}

/// The Lawson iteration itself, on an explicit test set: starts from the
/// given fit's weights, reweights rows by the running residuals, and returns
/// the interpolant whose error envelope has the smallest max/median ratio.
pub fn lawson(
    b0: &BarycentricInterpolant,
    tests: &[Complex64],
    fvals: &[Complex64],
    iterations: usize,
) -> Result<BarycentricInterpolant> {
    if tests.len() != fvals.len() {
        return Err(Error::LengthMismatch(tests.len(), fvals.len()));
    }
    let nodes = b0.nodes().to_vec();
    let values = b0.values().to_vec();
    let m = tests.len();
    if m == 0 {
        return Ok(b0.clone());
    }
    let n = nodes.len();
    let cauchy: Vec<Vec<Complex64>> = tests
        .iter()
        .map(|&t| nodes.iter().map(|&z| Complex64::new(1.0, 0.0) / (t - z)).collect())
        .collect();
    let eval_with = |w: &[Complex64]| -> Vec<Complex64> {
        (0..m)
            .map(|i| {
                let mut num = Complex64::new(0.0, 0.0);
                let mut den = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    num += values[j] * w[j] * cauchy[i][j];
                    den += w[j] * cauchy[i][j];
                }
                num / den
            })
            .collect()
    };
    let ratio_of = |errs: &[f64]| -> f64 {
        let max = errs.iter().cloned().fold(0.0, f64::max);
        let mut sorted = errs.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = if m % 2 == 1 {
            sorted[m / 2]
        } else {
            0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
        };
        if median > 0.0 {
            max / median
        } else if max > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    };

    let input_errs: Vec<f64> =
        eval_with(b0.weights()).iter().zip(fvals).map(|(p, f)| (p - f).norm()).collect();
    if input_errs.iter().all(|&e| e == 0.0) {
        return Ok(b0.clone());
    }
    let mut best_w = b0.weights().to_vec();
    let mut best_ratio = ratio_of(&input_errs);

    let mut lambda = vec![1.0 / m as f64; m];
    for _ in 0..iterations {
        let l = nalgebra::DMatrix::from_fn(m, n, |i, j| {
            lambda[i].sqrt() * (values[j] - fvals[i]) * cauchy[i][j]
        });
        let w = solve_weights(&l)?;
        let errs: Vec<f64> =
            eval_with(&w).iter().zip(fvals).map(|(p, f)| (p - f).norm()).collect();
        let ratio = ratio_of(&errs);
        if ratio < best_ratio {
            best_ratio = ratio;
            best_w = w;
        }
        let mut total = 0.0;
        for (lam, e) in lambda.iter_mut().zip(&errs) {
            *lam *= e;
            total += *lam;
        }
        if total <= 0.0 {
            break;
        }
        for lam in &mut lambda {
            *lam /= total;
        }
    }

    BarycentricInterpolant::new(nodes, values, best_w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::unit_interval;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_function_converges_immediately() {
        let a = approximate_continuum(|_| c(7.0, 0.0), unit_interval(), &EngineConfig::default())
            .unwrap();
        assert_eq!(a.history().records.len(), 1);
        assert_eq!(a.fit().degrees(), (0, 0));
        assert!((a.eval(c(0.123, 0.0)) - c(7.0, 0.0)).norm() <= 1e-13);
    }

    #[test]
    fn two_point_linear_fit_is_exact() {
        let pts = [c(-1.0, 0.0), c(1.0, 0.0)];
        let a = approximate_discrete(|z| 2.0 * z + 1.0, &pts, &EngineConfig::default()).unwrap();
        for z in [c(-1.0, 0.0), c(1.0, 0.0), c(0.25, 0.0)] {
            assert!((a.eval(z) - (2.0 * z + 1.0)).norm() <= 1e-12);
        }
        assert!(!a.warnings().is_empty());
    }

    #[test]
    fn tabulated_constants_fit_exactly() {
        let z: Vec<Complex64> = (0..10).map(|k| c(k as f64 / 10.0, 0.0)).collect();
        let y = vec![c(3.0, 0.0); 10];
        let r = approximate_values(&y, &z, &EngineConfig::default()).unwrap();
        assert!((r.eval(c(0.55, 0.0)) - c(3.0, 0.0)).norm() <= 1e-13);
    }

    #[test]
    fn exact_type_three_three_recovery() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let poles = [c(2.0, 0.5), c(-1.5, 1.0), c(0.3, -1.2)];
        let res = [c(1.0, 0.2), c(-0.7, 0.4), c(0.5, 0.9)];
        let f = move |z: Complex64| {
            c(0.4, -0.1)
                + poles.iter().zip(&res).map(|(&p, &r)| r / (z - p)).sum::<Complex64>()
        };
        let pts: Vec<Complex64> = (0..200).map(|_| c(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let a = approximate_discrete(f, &pts, &EngineConfig::default()).unwrap();
        let scale = pts.iter().map(|&z| f(z).norm()).fold(0.0, f64::max);
        let err = pts.iter().map(|&z| (f(z) - a.eval(z)).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-12 * scale, "error {err:.3e} at scale {scale:.3e}");
        assert!(a.fit().degrees().1 <= 4, "degrees {:?}", a.fit().degrees());
    }

    #[test]
    fn tabulated_rational_recovers_pole() {
        let z: Vec<Complex64> = (0..50).map(|k| c(-1.0 + 2.0 * k as f64 / 49.0, 0.0)).collect();
        let y: Vec<Complex64> = z.iter().map(|&z| 1.0 / (z - 2.0)).collect();
        let r = approximate_values(&y, &z, &EngineConfig::default()).unwrap();
        let poles = r.poles().unwrap();
        assert!(poles.iter().any(|p| (p - c(2.0, 0.0)).norm() <= 1e-8), "{poles:?}");
    }

    #[test]
    fn nan_values_are_rejected() {
        let z = [c(0.0, 0.0), c(1.0, 0.0)];
        let y = [c(0.0, 0.0), c(f64::NAN, 0.0)];
        assert!(matches!(
            approximate_values(&y, &z, &EngineConfig::default()),
            Err(Error::NonFiniteInput)
        ));
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let z = [c(0.0, 0.0), c(1.0, 0.0)];
        let y = [c(0.0, 0.0)];
        assert!(matches!(
            approximate_values(&y, &z, &EngineConfig::default()),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn stagnation_rule() {
        // strictly halving errors never stop
        let halving: Vec<f64> = (0..40).map(|k| 1.0 / f64::powi(2.0, k)).collect();
        for k in 1..=40 {
            assert!(!stagnation_check(&halving[..k], 10, 1.0));
        }
        // a flat plateau at 1e-9 stops as soon as two windows exist
        let flat = vec![1e-9; 20];
        assert!(stagnation_check(&flat, 10, 1.0));
        assert!(!stagnation_check(&flat[..19], 10, 1.0));
        // a plateau above 1e-2 * scale does not count as stagnation
        let high = vec![0.5; 20];
        assert!(!stagnation_check(&high, 10, 1.0));
    }

    #[test]
    fn allowed_default_rules() {
        let seg: ContinuumDomain = unit_interval().into();
        let pred = allowed_default(&seg);
        assert!(!pred(c(0.5, 0.0)));
        assert!(pred(c(2.0, 0.0)));
        assert!(pred(c(0.5, 0.3)));

        let disk: ContinuumDomain =
            Region::interior(crate::domain::unit_circle()).unwrap().into();
        let pred = allowed_default(&disk);
        assert!(!pred(c(0.3, 0.0)));
        assert!(pred(c(1.5, 0.0)));
    }

    #[test]
    fn histories_scale_with_the_function() {
        // scaling by a power of two is exact in floating point, so the node
        // sequence must be identical and every error scales by the factor
        let a = approximate_continuum(|z| (3.0 * z).sin() + 2.0, unit_interval(), &EngineConfig::default()).unwrap();
        let b = approximate_continuum(|z| 128.0 * ((3.0 * z).sin() + 2.0), unit_interval(), &EngineConfig::default()).unwrap();
        assert_eq!(a.history().records.len(), b.history().records.len());
        for (ra, rb) in a.history().records.iter().zip(&b.history().records) {
            assert_eq!(ra.nodes, rb.nodes);
            assert!(
                (rb.max_err - 128.0 * ra.max_err).abs() <= 1e-9 * rb.max_err.max(1e-300),
                "{} vs {}",
                rb.max_err,
                128.0 * ra.max_err
            );
        }
        let (Fit::Barycentric(fa), Fit::Barycentric(fb)) = (a.fit(), b.fit()) else {
            panic!("expected barycentric fits");
        };
        assert_eq!(fa.nodes(), fb.nodes());
    }

    #[test]
    fn monotone_error_envelope() {
        let a = approximate_continuum(|z| (z + 1.5).sqrt(), unit_interval(), &EngineConfig::default()).unwrap();
        let mut best = f64::INFINITY;
        let mut envelope = Vec::new();
        for r in &a.history().records {
            best = best.min(r.max_err);
            envelope.push(best);
        }
        for w in envelope.windows(2) {
            assert!(w[1] <= w[0]);
        }
        let chosen = &a.history().records[a.history().chosen];
        for r in &a.history().records {
            if r.allowed == Some(true) {
                assert!(chosen.max_err <= r.max_err);
            }
        }
    }

    #[test]
    fn minimax_uniform_errors_are_a_fixed_point() {
        // symmetric even function sampled symmetrically: one Lawson step with
        // uniform weights reproduces the same least-squares solve
        let pts: Vec<Complex64> = (0..40).map(|k| c(-1.0 + 2.0 * k as f64 / 39.0, 0.0)).collect();
        let a = approximate_discrete(
            |z| (z * z).exp(),
            &pts,
            &EngineConfig { max_iter: 4, ..Default::default() },
        )
        .unwrap();
        let refined = minimax(&a, 1).unwrap();
        // weights may be rescaled; compare normalized ratios of evaluations
        for z in [c(0.11, 0.0), c(-0.73, 0.0)] {
            assert!((refined.eval(z) - a.eval(z)).norm() <= 1e-9 * a.eval(z).norm().max(1.0));
        }
    }

    #[test]
    fn minimax_of_exact_fit_is_unchanged() {
        let pts: Vec<Complex64> = (0..30).map(|k| c(-1.0 + 2.0 * k as f64 / 29.0, 0.0)).collect();
        let a = approximate_discrete(|z| 1.0 / (z - 3.0), &pts, &EngineConfig::default()).unwrap();
        let refined = minimax(&a, 5).unwrap();
        let b_in = a.fit().as_barycentric().unwrap();
        let b_out = refined.fit().as_barycentric().unwrap();
        assert_eq!(b_in.nodes(), b_out.nodes());
        for z in [c(0.4, 0.0), c(-0.9, 0.0)] {
            assert!((refined.eval(z) - a.eval(z)).norm() <= 1e-11);
        }
    }

    #[test]
    fn minimax_requires_barycentric() {
        let pts: Vec<Complex64> = (0..30).map(|k| c(-1.0 + 2.0 * k as f64 / 29.0, 0.0)).collect();
        let a = approximate_discrete(
            |z| (2.0 * z).cos(),
            &pts,
            &EngineConfig { method: Method::Thiele, max_iter: 8, ..Default::default() },
        )
        .unwrap();
        assert!(matches!(minimax(&a, 3), Err(Error::MinimaxNeedsBarycentric)));
    }

    #[test]
    fn prescribed_poles_exact_cases() {
        // f = z^3 with no poles at degree 5 is exact
        let a = approximate_prescribed(|z| z * z * z, unit_interval(), &[], 5, None).unwrap();
        assert!(a.history().records[0].max_err <= 1e-12);
        // f = 1/(z-2) with the exact pole
        let b = approximate_prescribed(|z| 1.0 / (z - 2.0), unit_interval(), &[c(2.0, 0.0)], 0, None).unwrap();
        let pf = b.fit().as_partial_fractions().unwrap();
        assert!((pf.residue_values()[0] - c(1.0, 0.0)).norm() <= 1e-9);
    }

    #[test]
    fn prescribed_sampling_respects_pole_distance() {
        // pole very close to the boundary forces local refinement
        let zeta = [c(0.3, 0.01)];
        let a = approximate_prescribed(
            |z| 1.0 / (z - c(0.3, 0.01)),
            unit_interval(),
            &zeta,
            2,
            Some(16),
        )
        .unwrap();
        let pts = a.test_points();
        assert!(pts.len() > 16, "refinement must add points, got {}", pts.len());
        let mut sorted: Vec<f64> = pts.iter().map(|p| p.re).collect();
        sorted.sort_by(f64::total_cmp);
        for w in sorted.windows(2) {
            let mid = c(0.5 * (w[0] + w[1]), 0.0);
            let gap = w[1] - w[0];
            let near = (mid - zeta[0]).norm();
            assert!(gap <= 0.5 * near + 1e-12, "gap {gap} vs pole distance {near}");
        }
    }
}
