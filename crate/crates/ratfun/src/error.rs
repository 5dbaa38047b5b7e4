use num_complex::Complex64;

/// Errors produced while building domains, interpolants, and approximations.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("path pieces {0} and {1} do not share an endpoint")]
    DisconnectedPath(usize, usize),
    #[error("a closed boundary is required here")]
    OpenBoundary,
    #[error("discretization needs at least {min} initial nodes, got {got}")]
    TooFewNodes { min: usize, got: usize },
    #[error("refinement must be at least 1")]
    BadRefinement,
    #[error("test point index {0} is out of range")]
    BadTestIndex(usize),
    #[error("promotion rejected: would create points closer than {limit:.3e}")]
    PointsTooClose { limit: f64 },
    #[error("discretization capacity of {0} points exceeded")]
    CapacityExceeded(usize),

    #[error("interpolant is empty")]
    EmptyInterpolant,
    #[error("duplicate point {0}")]
    DuplicatePoint(Complex64),
    #[error("input lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("non-finite value in input data")]
    NonFiniteInput,
    #[error("need at least as many test points as nodes ({tests} tests, {nodes} nodes)")]
    TooFewTestPoints { tests: usize, nodes: usize },

    #[error("SVD failed to converge")]
    SvdFailure,
    #[error("eigenvalue computation failed to converge")]
    EigenFailure,
    #[error("rank deficiency detected while orthogonalizing degree {0}")]
    RankDeficient(usize),

    #[error("inverse-difference breakdown: node unreachable from current weights")]
    UnreachableNode,

    #[error("contour residue did not converge; last estimate {estimate}")]
    ResidueNonConvergence { estimate: Complex64 },

    #[error("no iterate with allowed poles was produced in {iterations} iterations")]
    NoAllowedIterate { iterations: usize },
    #[error("minimax refinement requires a barycentric fit")]
    MinimaxNeedsBarycentric,
    #[error("no usable test points on the domain (f non-finite everywhere?)")]
    NoUsableTestPoints,
}

pub type Result<T> = std::result::Result<T, Error>;
