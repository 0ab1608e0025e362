use thiserror::Error;

/// Which of the two deformation angles a check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleKind {
    /// Angle from `L_{i-1}` to the base normal `M_i`.
    Eta,
    /// Angle from the base normal `M_i` to `L_i`.
    Theta,
}

/// Constraint that ends the admissible deformation interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Blocking {
    /// A profile strip becomes parallel to the profile planes (an angle reaches +-pi/2).
    ProfileFlattening {
        strip: usize,
        angle: AngleKind,
    },
    /// Two consecutive trajectory planes coincide.
    TrajectoryFlattening {
        strip: usize,
    },
    Unbounded,
}

impl std::fmt::Display for Blocking {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Blocking::ProfileFlattening { strip, angle } => {
                write!(f, "ProfileFlattening(strip {strip}, {angle:?})")
            }
            Blocking::TrajectoryFlattening { strip } => {
                write!(f, "TrajectoryFlattening(strip {strip})")
            }
            Blocking::Unbounded => f.write_str("Unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("array `{field}` has length {actual}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("{field}[{index}] is not a finite number")]
    NotFinite { field: &'static str, index: usize },
    #[error("|{angle:?}_{index}| = {value} is not below pi/2")]
    AngleOutOfRange {
        index: usize,
        angle: AngleKind,
        value: f64,
    },
    #[error("g0[{index}] must be nonzero")]
    ZeroLength { index: usize },
    #[error("z[0] must be 0, got {value}")]
    BaseHeight { value: f64 },
    #[error("consecutive heights z[{index}] and z[{}] coincide", index - 1)]
    DegenerateHeights { index: usize },
    #[error("signed lengths g along profile strip {strip} change sign at column {column}")]
    SignConsistency { strip: usize, column: usize },
    #[error("{which} polygon is contained in a line")]
    CollinearPolygon { which: &'static str },
    #[error("profile polygon {index} is contained in a line")]
    CollinearProfile { index: usize },
    #[error("point ({i}, {j}) deviates from its profile line by {deviation}")]
    OffLine { i: usize, j: usize, deviation: f64 },
    #[error("profile lines {index} and {} coincide", index - 1)]
    CoincidentLines { index: usize },
    #[error("quad ({i}, {j}) of the net is not a trapezoid (bases off by {angle} rad)")]
    NotTrapezoid { i: usize, j: usize, angle: f64 },
    #[error("trajectory row {column} is not horizontal (z spread {spread})")]
    NonHorizontalRows { column: usize, spread: f64 },
    #[error("profile planes {index} and {} coincide", index - 1)]
    CoincidentPlanes { index: usize },
    #[error("edge {row_edge} of the trajectory generator is parallel to edge {col_edge} of the profile generator")]
    ParallelGenerators { row_edge: usize, col_edge: usize },
    #[error("strip {index} is not isosceles: theta - eta = {residual}")]
    NotMolding { index: usize, residual: f64 },
    #[error("distance from the axis to the first vertex must be nonzero")]
    AxisDegenerate,
    #[error("radius F[{index}] must be nonzero")]
    ZeroRadius { index: usize },
    #[error("not a T-hedron: {reason}")]
    NotATHedron { reason: String },
    #[error("t = {t} is outside the admissible range [{t_min}, {t_max}], blocked by {blocking}")]
    OutOfRange {
        t: f64,
        t_min: f64,
        t_max: f64,
        blocking: Blocking,
    },
    #[error("profile planes {index} and {} are parallel", index - 1)]
    ConsecutiveParallelPlanes { index: usize },
    #[error("grid shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("face ({i}, {j}) has zero area")]
    DegenerateFace { i: usize, j: usize },
    #[error("parameter {value} outside the domain [{lo}, {hi}]")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },
    #[error("radicand of `{what}` is negative ({value}) at {at}")]
    RadicandNegative {
        what: &'static str,
        at: f64,
        value: f64,
    },
    #[error("{function} changes sign at {at}; only sign-definite inputs are deformed")]
    SignChange { function: &'static str, at: f64 },
    #[error("compatibility residual {residual} exceeds the limit")]
    CompatibilityDrift { residual: f64 },
    #[error("partner data is not parallel to the input ({angle} rad at {at})")]
    NonParallelInput { angle: f64, at: f64 },
    #[error("smooth data violates condition {condition}: {detail}")]
    InvalidSmooth { condition: u8, detail: String },
    #[error("surface is not {class}: {detail}")]
    NotInClass { class: &'static str, detail: String },
    #[error("invalid function: {0}")]
    InvalidFunction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
