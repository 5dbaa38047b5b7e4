//! Command implementations shared by the binary and the integration tests.

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use ratfun::prelude::*;
use std::result::Result;
use ratfun::rational::{RationalFunction, RationalInterpolant};

use crate::expr::Expr;
use crate::io;
use crate::schema::{from_pairs, to_pair, to_pairs, DomainDoc, FitDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Expr(#[from] crate::expr::ParseError),
    #[error("{0}")]
    Engine(#[from] ratfun::Error),
    #[error("{0}")]
    Io(#[from] crate::io::IoError),
    #[error("{0}")]
    Schema(#[from] crate::schema::SchemaError),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

fn read_doc(path: &Path) -> Result<FitDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::File { path: path.display().to_string(), source: e })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Json { path: path.display().to_string(), source: e })
}

fn write_doc(path: &Path, doc: &FitDocument) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc).expect("document serializes");
    std::fs::write(path, text)
        .map_err(|e| CliError::File { path: path.display().to_string(), source: e })
}

/// Resolved domain input.
#[derive(Debug, Clone)]
pub enum DomainChoice {
    Interval(f64, f64),
    Circle { cx: f64, cy: f64, r: f64, exterior: bool },
    Polygon { vertices: Vec<Complex64>, exterior: bool },
    Points(Vec<Complex64>),
}

impl DomainChoice {
    fn to_doc(&self) -> DomainDoc {
        match self {
            DomainChoice::Interval(a, b) => DomainDoc::Interval { a: *a, b: *b },
            DomainChoice::Circle { cx, cy, r, exterior } => {
                DomainDoc::Circle { cx: *cx, cy: *cy, r: *r, exterior: *exterior }
            }
            DomainChoice::Polygon { vertices, exterior } => {
                DomainDoc::Polygon { vertices: to_pairs(vertices), exterior: *exterior }
            }
            DomainChoice::Points(points) => DomainDoc::Points { points: to_pairs(points) },
        }
    }

    fn from_doc(doc: &DomainDoc) -> Self {
        match doc {
            DomainDoc::Interval { a, b } => DomainChoice::Interval(*a, *b),
            DomainDoc::Circle { cx, cy, r, exterior } => {
                DomainChoice::Circle { cx: *cx, cy: *cy, r: *r, exterior: *exterior }
            }
            DomainDoc::Polygon { vertices, exterior } => {
                DomainChoice::Polygon { vertices: from_pairs(vertices), exterior: *exterior }
            }
            DomainDoc::Points { points } => DomainChoice::Points(from_pairs(points)),
        }
    }

    fn continuum(&self) -> Result<Option<ContinuumDomain>, CliError> {
        Ok(Some(match self {
            DomainChoice::Interval(a, b) => {
                Curve::segment(Complex64::new(*a, 0.0), Complex64::new(*b, 0.0)).into()
            }
            DomainChoice::Circle { cx, cy, r, exterior } => {
                let circle = Curve::circle(Complex64::new(*cx, *cy), *r);
                if *exterior {
                    Region::exterior(circle)?.into()
                } else {
                    circle.into()
                }
            }
            DomainChoice::Polygon { vertices, exterior } => {
                let path = Path2::polygon(vertices)?;
                if *exterior {
                    Region::exterior(path)?.into()
                } else {
                    path.into()
                }
            }
            DomainChoice::Points(_) => return Ok(None),
        }))
    }
}

// the CLI passes std::path::Path around as well; alias the geometry type
use ratfun::prelude::Path as Path2;

/// Settings for the `approx` subcommand.
#[derive(Debug, Clone)]
pub struct ApproxRequest {
    pub fun: String,
    pub domain: DomainChoice,
    pub method: Method,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub stagnation: Option<usize>,
    pub poles_file: Option<PathBuf>,
    pub degree: Option<usize>,
    pub emit: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

pub fn run_approx(req: &ApproxRequest) -> Result<FitDocument, CliError> {
    let expr = Expr::parse(&req.fun)?;
    let f = {
        let expr = expr.clone();
        move |z: Complex64| expr.eval(z)
    };
    let mut cfg = EngineConfig { method: req.method, ..Default::default() };
    if let Some(tol) = req.tol {
        cfg.tol = tol;
    }
    if let Some(max_iter) = req.max_iter {
        cfg.max_iter = max_iter;
    }
    if let Some(stagnation) = req.stagnation {
        cfg.stagnation = stagnation;
    }

    let prescribed: Option<(Vec<Complex64>, usize)> = if req.poles_file.is_some() || req.degree.is_some() {
        let zeta = match &req.poles_file {
            Some(path) => io::read_points_csv(path)?,
            None => Vec::new(),
        };
        Some((zeta, req.degree.unwrap_or(0)))
    } else {
        None
    };

    let approximation = match (req.domain.continuum()?, prescribed) {
        (Some(domain), None) => approximate_continuum(f, domain, &cfg)?,
        (Some(domain), Some((zeta, degree))) => {
            approximate_prescribed(f, PrescribedTarget::Continuum(domain), &zeta, degree, None)?
        }
        (None, None) => {
            let DomainChoice::Points(pts) = &req.domain else { unreachable!() };
            approximate_discrete(f, pts, &cfg)?
        }
        (None, Some((zeta, degree))) => {
            let DomainChoice::Points(pts) = &req.domain else { unreachable!() };
            approximate_prescribed(f, PrescribedTarget::Points(pts.clone()), &zeta, degree, None)?
        }
    };

    for w in approximation.warnings() {
        eprintln!("warning: {w}");
    }
    let report = approximation.check();
    let doc = FitDocument::from_fit(
        approximation.fit(),
        approximation.history(),
        report.max_err,
        Some(req.fun.clone()),
        Some(req.domain.to_doc()),
    );
    println!(
        "degrees ({}, {}); max check error {:.3e} over {} points",
        doc.degrees[0],
        doc.degrees[1],
        report.max_err,
        report.points.len()
    );

    if let Some(path) = &req.json {
        write_doc(path, &doc)?;
    }
    if let Some(path) = &req.emit {
        io::write_poles_csv(path, &from_pairs(&doc.poles))?;
        io::write_history_csv(&io::history_sibling(path), &doc.history)?;
    }
    Ok(doc)
}

/// Dense check grid for a saved fit.
fn check_grid(doc: &FitDocument) -> Result<Vec<Complex64>, CliError> {
    let domain = doc.domain.as_ref().ok_or_else(|| {
        CliError::Invalid("document has no domain; cannot re-evaluate".into())
    })?;
    let choice = DomainChoice::from_doc(domain);
    Ok(match choice.continuum()? {
        Some(domain) => {
            let boundary = domain.boundary();
            let m = 10 * (doc.nodes.len().max(doc.degrees[0] + 1)).max(100);
            (0..=m).map(|k| boundary.point(k as f64 / m as f64)).collect()
        }
        None => {
            let DomainChoice::Points(pts) = choice else { unreachable!() };
            pts
        }
    })
}

/// Re-evaluates a saved fit against its stored expression.
pub fn run_check(json: &Path, emit: Option<&Path>) -> Result<f64, CliError> {
    let doc = read_doc(json)?;
    let fit = doc.to_fit()?;
    let fun = doc.fun.as_ref().ok_or_else(|| {
        CliError::Invalid("document has no stored expression; cannot re-evaluate".into())
    })?;
    let expr = Expr::parse(fun)?;
    let grid = check_grid(&doc)?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut max_err: f64 = 0.0;
    for z in grid {
        let fz = expr.eval(z);
        if !fz.re.is_finite() || !fz.im.is_finite() {
            continue;
        }
        let e = (fz - fit.eval(z)).norm();
        max_err = max_err.max(e);
        rows.push((z, e));
    }
    println!("max check error {:.3e} over {} points", max_err, rows.len());
    if let Some(path) = emit {
        io::write_errors_csv(path, &rows)?;
    }
    Ok(max_err)
}

/// Prints the pole/residue table of a saved fit.
pub fn run_poles(json: &Path, emit: Option<&Path>) -> Result<usize, CliError> {
    let doc = read_doc(json)?;
    let fit = doc.to_fit()?;
    let residues = fit.residues()?;
    println!("{:>24} {:>24}", "pole (re, im)", "residue (re, im)");
    for pr in &residues {
        println!(
            "{:>24} {:>24}{}",
            format!("({:.6e}, {:.6e})", pr.pole.re, pr.pole.im),
            format!("({:.6e}, {:.6e})", pr.residue.re, pr.residue.im),
            if pr.flagged { "  (flagged)" } else { "" }
        );
    }
    if let Some(path) = emit {
        let rows: Vec<(Complex64, Complex64)> =
            residues.iter().map(|pr| (pr.pole, pr.residue)).collect();
        io::write_pole_residue_csv(path, &rows)?;
    }
    Ok(residues.len())
}

/// Lawson refinement of a saved barycentric fit; rewrites the document.
pub fn run_minimax(json: &Path, iterations: usize) -> Result<(), CliError> {
    let doc = read_doc(json)?;
    let fit = doc.to_fit()?;
    let Fit::Barycentric(b0) = &fit else {
        return Err(CliError::Engine(ratfun::Error::MinimaxNeedsBarycentric));
    };
    let fun = doc.fun.as_ref().ok_or_else(|| {
        CliError::Invalid("document has no stored expression; cannot refine".into())
    })?;
    let expr = Expr::parse(fun)?;
    let grid = check_grid(&doc)?;
    let mut tests = Vec::with_capacity(grid.len());
    let mut fvals = Vec::with_capacity(grid.len());
    for z in grid {
        if b0.nodes().contains(&z) {
            continue;
        }
        let fz = expr.eval(z);
        if fz.re.is_finite() && fz.im.is_finite() {
            tests.push(z);
            fvals.push(fz);
        }
    }
    let refined = lawson(b0, &tests, &fvals, iterations)?;
    let max_err = tests
        .iter()
        .zip(&fvals)
        .map(|(&t, &v)| (refined.eval(t) - v).norm())
        .fold(0.0, f64::max);
    let mut out = doc.clone();
    out.weights = refined.weights().iter().map(|&w| to_pair(w)).collect();
    out.max_check_err = max_err;
    let refit = Fit::Barycentric(refined);
    match refit.residues() {
        Ok(prs) => {
            out.poles = prs.iter().map(|pr| to_pair(pr.pole)).collect();
            out.residues = prs.iter().map(|pr| to_pair(pr.residue)).collect();
        }
        Err(e) => eprintln!("warning: pole extraction failed after refinement: {e}"),
    }
    write_doc(json, &out)?;
    println!(
        "minimax({iterations}): max error {:.3e} over {} points; updated {}",
        max_err,
        tests.len(),
        json.display()
    );
    Ok(())
}
