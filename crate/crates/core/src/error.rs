use core::fmt;

/// Error type shared by the whole crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument fell outside its documented domain.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// An index pair (k, m) with |m| > k, or a band index past the stored bandwidth.
    Index {
        what: &'static str,
        index: i64,
        limit: i64,
    },
    /// Two objects that must agree in size don't.
    Shape {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// A quadrature rule is too coarse for the requested bandwidth.
    QuadratureDegree {
        needed: usize,
        got: usize,
    },
    /// A rule built for one space was handed to an operation on another.
    WrongSpace {
        expected: &'static str,
        got: &'static str,
    },
    /// The two sphere points are antipodal (or within tolerance of it), so the
    /// fiber of rotations joining them is not numerically resolvable.
    AntipodalPair {
        dot: f64,
    },
    /// A matrix failed an orthogonality / determinant check.
    NotARotation {
        defect: f64,
    },
    /// A quaternion failed the strict unit-norm check.
    NotUnit {
        norm: f64,
    },
    /// Quaternion constructor got a (numerically) zero input.
    ZeroNorm,
    /// Lattice certification failed: either points are too close or the probe
    /// estimate of the covering radius exceeds the bound.
    CertificationFailed {
        separation: f64,
        covering: f64,
        bound: f64,
    },
    /// No positive cubature weights reproduce the requested moments on this
    /// lattice; `residual` is the best moment defect achieved.
    Infeasible {
        residual: f64,
    },
    /// A cubature rule of moment degree `got` was asked to resolve products
    /// needing degree `needed`.
    DegreeDeficiency {
        needed: usize,
        got: usize,
    },
    /// Linear solve broke down (singular normal matrix).
    Singular,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::Index { what, index, limit } => {
                write!(f, "{what} index {index} out of range (limit {limit})")
            }
            Error::Shape { what, expected, got } => {
                write!(f, "{what}: expected length {expected}, got {got}")
            }
            Error::QuadratureDegree { needed, got } => {
                write!(f, "quadrature exact to degree {got}, need {needed}")
            }
            Error::WrongSpace { expected, got } => {
                write!(f, "rule built for {got}, operation needs {expected}")
            }
            Error::AntipodalPair { dot } => {
                write!(f, "antipodal sphere points (dot = {dot}); fiber ill-defined")
            }
            Error::NotARotation { defect } => {
                write!(f, "matrix is not a rotation (defect {defect:.3e})")
            }
            Error::NotUnit { norm } => write!(f, "quaternion norm {norm} not within 1e-12 of 1"),
            Error::ZeroNorm => write!(f, "cannot normalize a zero quaternion"),
            Error::CertificationFailed { separation, covering, bound } => write!(
                f,
                "lattice certification failed: separation {separation:.6}, covering {covering:.6}, bound {bound:.6}"
            ),
            Error::Infeasible { residual } => {
                write!(f, "no positive weights match the moments (residual {residual:.3e})")
            }
            Error::DegreeDeficiency { needed, got } => {
                write!(f, "cubature degree {got} too low, need {needed}")
            }
            Error::Singular => write!(f, "singular linear system"),
        }
    }
}

impl core::error::Error for Error {}
