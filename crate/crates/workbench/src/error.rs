use serde::Serialize;
use thiserror::Error;

use crate::frames::{BlockingDoc, RangeReport};

/// One rejected field of a document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// Dotted path into the document, e.g. `payload.z[2]`.
    pub path: String,
    /// Machine-readable kind, e.g. `DegenerateHeights`.
    pub code: String,
    pub message: String,
}

impl Violation {
    pub fn new(
        path: impl Into<String>,
        code: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Self {
            path: path.into(),
            code: code.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema violation at {}: {}", .0.path, .0.message)]
    SchemaViolation(Violation),
    #[error("invariant violation: {}", summary(.0))]
    InvariantViolation(Vec<Violation>),
    #[error("t = {t} is outside [{}, {}], blocked by {}", fmt_end(range.t_min), fmt_end(range.t_max), blocking.kind)]
    OutOfRange {
        t: f64,
        range: Box<RangeReport>,
        blocking: Box<BlockingDoc>,
    },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("design `{0}` not found")]
    NotFound(String),
    #[error(transparent)]
    Core(#[from] thedra::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

fn summary(v: &[Violation]) -> String {
    v.iter()
        .map(|v| format!("{}: {}", v.path, v.message))
        .collect::<Vec<_>>()
        .join("; ")
}

fn fmt_end(v: Option<f64>) -> String {
    v.map_or_else(|| "unbounded".to_string(), |v| v.to_string())
}

/// Variant name of a core error, used as a violation code.
pub(crate) fn code_of(e: &thedra::Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}
