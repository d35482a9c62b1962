use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported body: {0}")]
    UnsupportedBody(String),
    #[error("unsupported metric: {0}")]
    UnsupportedMetric(String),
    #[error("outer normal is ambiguous at ({0:.6}, {1:.6})")]
    AmbiguousNormal(f64, f64),
    #[error("support point is not unique (body is not strictly convex)")]
    NonUniqueSupport,
    #[error("point ({0:.6}, {1:.6}) lies inside the caustic")]
    PointInsideCaustic(f64, f64),
    #[error("ray leaves the body immediately")]
    NoImpact,
    #[error("line is tangent to the boundary (s = {0})")]
    TangentLine(f64),
    #[error("string length must exceed caustic perimeter (length {length}, perimeter {perimeter})")]
    InvalidStringLength { length: f64, perimeter: f64 },
    #[error("not a caustic: string length varies by {0:e}")]
    NotACaustic(f64),
    #[error("caustic is not contained in the interior of the table")]
    CausticOutsideTable,
    #[error("confocal parameter {0} outside (0, b^2)")]
    InvalidConfocalParameter(f64),
    #[error("unsupported caustic: {0}")]
    UnsupportedCaustic(String),
    #[error("e and b switch simultaneously at ({q1:.9}, {q2:.9}); try string length {suggested_length}")]
    DegenerateJunction { q1: f64, q2: f64, suggested_length: f64 },
    #[error("invalid exponent {0} (need p >= 1)")]
    InvalidExponent(f64),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag used in CLI error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::UnsupportedBody(_) => "unsupported-body",
            Error::UnsupportedMetric(_) => "unsupported-metric",
            Error::AmbiguousNormal(..) => "ambiguous-normal",
            Error::NonUniqueSupport => "non-unique-support",
            Error::PointInsideCaustic(..) => "point-inside-caustic",
            Error::NoImpact => "no-impact",
            Error::TangentLine(_) => "tangent-line",
            Error::InvalidStringLength { .. } => "invalid-string-length",
            Error::NotACaustic(_) => "not-a-caustic",
            Error::CausticOutsideTable => "caustic-outside-table",
            Error::InvalidConfocalParameter(_) => "invalid-confocal-parameter",
            Error::UnsupportedCaustic(_) => "unsupported-caustic",
            Error::DegenerateJunction { .. } => "degenerate-junction",
            Error::InvalidExponent(_) => "invalid-exponent",
            Error::Numerical(_) => "numerical",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
        }
    }
}
