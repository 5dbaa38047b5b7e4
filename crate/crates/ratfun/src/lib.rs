//! Rational approximation of complex-valued functions on discrete point sets
//! and on continuous domains (intervals, circles, paths, and interior or
//! exterior regions).
//!
//! Three representations are provided:
//!
//! * the barycentric form driven by the greedy AAA iteration, where a Loewner
//!   least-squares problem picks the weights and the worst test point becomes
//!   the next interpolation node;
//! * the Thiele continued fraction with O(n) greedy node insertion via
//!   inverse differences;
//! * partial fractions with prescribed poles over an Arnoldi-orthogonalized
//!   polynomial basis, fit by linear least squares.
//!
//! ```
//! use ratfun::prelude::*;
//!
//! let approx = approximate_continuum(
//!     |z| (1.0 + Complex64::i() + 5.0 * Complex64::i() * z).ln(),
//!     unit_interval(),
//!     &EngineConfig::default(),
//! )
//! .unwrap();
//! assert!(approx.check().max_err < 1e-11);
//! ```

pub mod bary;
pub mod domain;
pub mod engine;
mod error;
pub mod linalg;
pub mod parfrac;
pub mod rational;
pub mod thiele;

pub use error::{Error, Result};

pub mod prelude {
    pub use num_complex::Complex64;

    pub use crate::bary::{BarycentricInterpolant, LoewnerWorkspace};
    pub use crate::domain::{
        unit_circle, unit_interval, Curve, DiscretizedPath, Path, Region, Side, Which,
    };
    pub use crate::engine::{
        allowed_default, approximate_continuum, approximate_discrete, approximate_prescribed,
        approximate_values, lawson, minimax, stagnation_check, Approximation, ContinuumDomain,
        EngineConfig, Fit, Interpolant, Method, PoleRule, PrescribedTarget,
    };
    pub use crate::error::{Error, Result};
    pub use crate::parfrac::{fit_least_squares, ArnoldiBasis, ArnoldiPolynomial, PartialFractions};
    pub use crate::rational::{trapezoid_residue, PoleResidue, RationalFunction, RationalInterpolant};
    pub use crate::thiele::{ThieleInterpolant, ThieleTestCache};
}
