//! The JSON fit document and its conversions to and from the library types.
//!
//! Complex numbers are always `[re, im]` pairs. The Hessenberg matrix of a
//! partial-fraction fit is stored row-major with its polynomial degree.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use ratfun::prelude::*;
use std::result::Result;
use ratfun::rational::RationalFunction;

pub type Pair = [f64; 2];

pub fn to_pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

pub fn from_pair(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn to_pairs(zs: &[Complex64]) -> Vec<Pair> {
    zs.iter().copied().map(to_pair).collect()
}

pub fn from_pairs(ps: &[Pair]) -> Vec<Complex64> {
    ps.iter().copied().map(from_pair).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub n: usize,
    pub max_err: f64,
    pub allowed: Option<bool>,
}

/// Where the approximation lives; enough to rebuild the domain for checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainDoc {
    Interval { a: f64, b: f64 },
    Circle { cx: f64, cy: f64, r: f64, exterior: bool },
    Polygon { vertices: Vec<Pair>, exterior: bool },
    Points { points: Vec<Pair> },
}

/// A saved fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitDocument {
    pub method: String,
    pub degrees: [usize; 2],
    pub nodes: Vec<Pair>,
    pub values: Vec<Pair>,
    pub weights: Vec<Pair>,
    pub poles: Vec<Pair>,
    pub residues: Vec<Pair>,
    pub history: Vec<HistoryEntry>,
    pub max_check_err: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fun: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainDoc>,
    /// Partial-fraction fits only: row-major `(degree+1) x degree` Hessenberg.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hessenberg: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Pair>>,
}

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
    #[error("document is missing field `{0}`")]
    MissingField(&'static str),
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Core(#[from] ratfun::Error),
}

impl FitDocument {
    /// Builds the document for a finished approximation.
    pub fn from_fit(
        fit: &Fit,
        history: &ratfun::engine::ConvergenceHistory,
        max_check_err: f64,
        fun: Option<String>,
        domain: Option<DomainDoc>,
    ) -> Self {
        let (nodes, values, weights) = match fit {
            Fit::Barycentric(b) => (
                to_pairs(ratfun::rational::RationalInterpolant::nodes(b)),
                to_pairs(ratfun::rational::RationalInterpolant::values(b)),
                to_pairs(b.weights()),
            ),
            Fit::Thiele(t) => (
                to_pairs(ratfun::rational::RationalInterpolant::nodes(t)),
                to_pairs(ratfun::rational::RationalInterpolant::values(t)),
                to_pairs(t.weights()),
            ),
            Fit::PartialFractions(_) => (Vec::new(), Vec::new(), Vec::new()),
        };
        let method = match fit {
            Fit::Barycentric(_) => "aaa",
            Fit::Thiele(_) => "thiele",
            Fit::PartialFractions(_) => "parfrac",
        };
        let (poles, residues) = match fit.residues() {
            Ok(prs) => (
                prs.iter().map(|pr| to_pair(pr.pole)).collect(),
                prs.iter().map(|pr| to_pair(pr.residue)).collect(),
            ),
            Err(_) => (Vec::new(), Vec::new()),
        };
        let (hessenberg, degree, coefficients) = match fit {
            Fit::PartialFractions(pf) => {
                let h = pf.polynomial().basis().hessenberg();
                let mut flat = Vec::with_capacity(h.nrows() * h.ncols());
                for i in 0..h.nrows() {
                    for j in 0..h.ncols() {
                        flat.push(to_pair(h[(i, j)]));
                    }
                }
                (Some(flat), Some(pf.polynomial().degree()), Some(to_pairs(pf.polynomial().coeffs())))
            }
            _ => (None, None, None),
        };
        FitDocument {
            method: method.to_string(),
            degrees: {
                let (p, q) = fit.degrees();
                [p, q]
            },
            nodes,
            values,
            weights,
            poles,
            residues,
            history: history
                .records
                .iter()
                .map(|r| HistoryEntry { n: r.nodes, max_err: r.max_err, allowed: r.allowed })
                .collect(),
            max_check_err,
            fun,
            domain,
            hessenberg,
            degree,
            coefficients,
        }
    }

    /// Rebuilds an evaluable fit from the document.
    pub fn to_fit(&self) -> Result<Fit, SchemaError> {
        match self.method.as_str() {
            "aaa" => Ok(Fit::Barycentric(BarycentricInterpolant::new(
                from_pairs(&self.nodes),
                from_pairs(&self.values),
                from_pairs(&self.weights),
            )?)),
            "thiele" => Ok(Fit::Thiele(ThieleInterpolant::new(
                from_pairs(&self.nodes),
                from_pairs(&self.values),
                from_pairs(&self.weights),
            )?)),
            "parfrac" => {
                let degree = self.degree.ok_or(SchemaError::MissingField("degree"))?;
                let flat = self.hessenberg.as_ref().ok_or(SchemaError::MissingField("hessenberg"))?;
                let coeffs = self.coefficients.as_ref().ok_or(SchemaError::MissingField("coefficients"))?;
                if flat.len() != (degree + 1) * degree {
                    return Err(SchemaError::Inconsistent(format!(
                        "hessenberg has {} entries, expected {}",
                        flat.len(),
                        (degree + 1) * degree
                    )));
                }
                let h = DMatrix::from_fn(degree + 1, degree, |i, j| from_pair(flat[i * degree + j]));
                let poly = ArnoldiPolynomial::from_parts(h, from_pairs(coeffs))?;
                let pf = PartialFractions::from_parts(
                    poly,
                    from_pairs(&self.poles),
                    from_pairs(&self.residues),
                )?;
                Ok(Fit::PartialFractions(pf))
            }
            other => Err(SchemaError::UnknownMethod(other.to_string())),
        }
    }
}
