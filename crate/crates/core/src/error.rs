use thiserror::Error;

/// Errors raised by the geometry, coordinate and volume routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("argument is a null vector (self inner product vanishes)")]
    NullArgument,
    #[error("point is not in hyperbolic space (not a positive point)")]
    NotHyperbolicPoint,
    #[error("point is not a polar point of a plane (not a negative point)")]
    NotPolarPoint,
    #[error("point does not lie on the plane of its polar point")]
    PointOffPlane,
    #[error("point lies on the plane; half-space is undefined")]
    PointOnPlane,
    #[error("value {value} outside the domain of {what}")]
    DomainError { what: &'static str, value: f64 },
    #[error("wedge product of grades {0} and {1} exceeds the top grade 4")]
    GradeOverflow(usize, usize),
    #[error("inner product of multivectors of grades {0} and {1}")]
    GradeMismatch(usize, usize),
    #[error("invalid grade {0}")]
    InvalidGrade(usize),
    #[error("vectors do not span a 3-dimensional subspace")]
    DegenerateSpan,
    #[error("vertex {0} is not an ideal (null) point")]
    NotIdeal(usize),
    #[error("vertices {0} and {1} coincide")]
    CoincidentVertices(usize, usize),
    #[error("Gram entry g{0}{1} is not positive; normalize signs first")]
    NonPositiveGram(usize, usize),
    #[error("no sign choice makes every off-diagonal Gram entry positive")]
    SignObstruction,
    #[error("inadmissible tetrahedron: {0}")]
    Inadmissible(&'static str),
    #[error("coordinates are a vertex of the moduli triangle")]
    DeltaVertex,
    #[error("coordinate is zero; vertex synthesis is undefined")]
    ZeroCoordinate,
    #[error("coordinates outside their domain: {0}")]
    OutOfChart(&'static str),
    #[error("(alpha, omega) = ({alpha}, {omega}) lies outside the region S")]
    OutsideRegion { alpha: f64, omega: f64 },
    #[error("derivative formulas are singular on the boundary of S")]
    BoundaryPoint,
    #[error("cubic has complex roots (discriminant {0})")]
    ComplexRoots(f64),
    #[error("quadrature did not reach tolerance {0}")]
    ToleranceUnreachable(f64),
    #[error("line {axis} = {value} does not meet the region S")]
    EmptyIntersection { axis: &'static str, value: f64 },
    #[error("invalid vertex permutation {0:?}")]
    InvalidPermutation([usize; 4]),
}

impl Error {
    /// True for errors caused by the caller's input rather than a numerical
    /// breakdown inside a routine.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::SignObstruction | Error::ComplexRoots(_) | Error::ToleranceUnreachable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
