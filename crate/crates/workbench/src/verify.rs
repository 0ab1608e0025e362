//! Metrology run over a stored design, as used by `thedra verify`.

use serde::Serialize;
use thedra::{build_thedron, check_isometric, deform, planarity, Surface};

use crate::document::{Model, SmoothModel};
use crate::error::Result;
use crate::frames::{deform_smooth, range_of};

/// Relative tolerance of edge, diagonal and planarity checks on discrete frames.
pub const ISOMETRY_TOL: f64 = 1e-9;
/// Identity at `t = 0`, relative to the bounding-box diagonal.
pub const IDENTITY_TOL: f64 = 1e-12;
/// First fundamental form drift relative to `max(E, G)`.
pub const METRIC_TOL: f64 = 1e-8;
/// Grid of parameter points at which smooth metrics are compared.
pub const METRIC_GRID: usize = 20;

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Explicit parameters; empty means `samples` evenly spaced values.
    pub parameters: Vec<f64>,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub pass: bool,
}

fn check(name: &str, t: Option<f64>, value: f64, tolerance: f64) -> Check {
    Check {
        name: name.into(),
        t,
        value,
        tolerance,
        pass: value <= tolerance,
    }
}

/// Parameters strictly inside `[lo, hi]` (cell midpoints), unbounded ends replaced by `+-1`.
fn interior(lo: Option<f64>, hi: Option<f64>, count: usize) -> Vec<f64> {
    let (lo, hi) = (lo.unwrap_or(-1.0), hi.unwrap_or(1.0));
    (0..count)
        .map(|k| lo + (hi - lo) * (k as f64 + 0.5) / count as f64)
        .collect()
}

pub fn verify_model(model: &Model, options: &VerifyOptions) -> Result<VerifyReport> {
    let range = range_of(model)?;
    let ts = if options.parameters.is_empty() {
        match model {
            // Discrete ranges are closed: include both ends.
            Model::Discrete(_) if options.samples >= 2 => {
                let (lo, hi) = (range.lower(), range.t_max.unwrap_or(1.0));
                let k = options.samples - 1;
                (0..=k)
                    .map(|i| lo + (hi - lo) * i as f64 / k as f64)
                    .collect()
            }
            _ => interior(range.t_min, range.t_max, options.samples.max(1)),
        }
    } else {
        options.parameters.clone()
    };
    let mut checks = Vec::new();
    match model {
        Model::Discrete(d) => {
            let built = build_thedron(d)?;
            let base = deform(d, 0.0)?;
            let identity = built.max_deviation(&base)? / built.bbox_diagonal();
            checks.push(check("identity", Some(0.0), identity, IDENTITY_TOL));
            for t in ts {
                let s = crate::frames::surface_at(model, t, 0)?;
                let report = check_isometric(&base, &s, ISOMETRY_TOL)?;
                checks.push(check(
                    "isometry",
                    Some(t),
                    report.max_residual(),
                    ISOMETRY_TOL,
                ));
                checks.push(check("planarity", Some(t), planarity(&s), ISOMETRY_TOL));
            }
        }
        Model::Smooth(s) => {
            for t in ts {
                let deformed = deform_smooth(s, t)?;
                let drift = metric_drift(input_surface(s), deformed.as_ref())?;
                checks.push(check("metric", Some(t), drift, METRIC_TOL));
            }
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { checks, pass })
}

pub fn input_surface(model: &SmoothModel) -> &dyn Surface<f64> {
    match model {
        SmoothModel::General(s) | SmoothModel::Molding(s) => s,
        SmoothModel::Axial(s) | SmoothModel::Revolution(s) => s,
        SmoothModel::Translational(s) => s,
    }
}

/// Largest `|I^t - I| / max(E, G)` over cell midpoints of a `METRIC_GRID` square grid.
pub fn metric_drift(a: &dyn Surface<f64>, b: &dyn Surface<f64>) -> Result<f64> {
    let (ud, vd) = (a.u_domain(), a.v_domain());
    let k = METRIC_GRID as f64;
    let mut worst = 0.0f64;
    for i in 0..METRIC_GRID {
        for j in 0..METRIC_GRID {
            let u = ud.lo + ud.length() * (i as f64 + 0.5) / k;
            let v = vd.lo + vd.length() * (j as f64 + 0.5) / k;
            let fa = a.first_fundamental_form(u, v)?;
            let fb = b.first_fundamental_form(u, v)?;
            worst = worst.max(fa.max_difference(&fb) / fa.scale());
        }
    }
    Ok(worst)
}
