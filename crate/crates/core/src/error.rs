use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("cyclotomic order must be positive")]
    InvalidOrder,
    #[error("cannot combine elements of Q(zeta_{left}) and Q(zeta_{right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("malformed document: {0}")]
    Document(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("operands come from different coordinate domains")]
    DomainMismatch,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("affine map is singular")]
    SingularMap,
    #[error("empty input")]
    Empty,
    #[error("need at least {needed} items, got {got}")]
    TooFew { needed: usize, got: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl GeometryError {
    /// Degenerate inputs (as opposed to malformed ones) map to a distinct
    /// CLI exit status.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            GeometryError::Empty
                | GeometryError::TooFew { .. }
                | GeometryError::DuplicatePoint(..)
                | GeometryError::DuplicateLine(..)
                | GeometryError::ZeroDirection
                | GeometryError::SingularMap
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("a regular polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("chord class {residue} is not a residue mod {n}")]
    InvalidResidue { residue: usize, n: usize },
    #[error("no closed form for an odd polygon with its center")]
    NoClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CounterexampleError {
    #[error("the construction needs n >= 7, got {0}")]
    TooSmall(usize),
    #[error("no center variant exists for n = {0}")]
    VariantUnavailable(usize),
    #[error("center variant for n = {n} has stab counts {hit:?} in the forbidden set")]
    VariantHitsForbidden { n: usize, hit: Vec<usize> },
    #[error("malformed bundle: {0}")]
    Malformed(String),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
