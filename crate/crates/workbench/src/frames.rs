//! Ranges and deformed frames of a validated model, in the shapes served as JSON.

use serde::{Deserialize, Serialize};
use thedra::smooth::{
    axial_surface_range, deform_axial_surface, deform_general_surface, deform_molding_surface,
    deform_revolution_surface, deform_translational_surface, general_surface_range,
    molding_surface_range, sample_to_grid, translational_surface_range, SmoothRange,
};
use thedra::{
    additive_to_exponential, build_thedron, check_isometric, classify, deform, dihedral_angles,
    parameter_range, planarity, AngleKind, Blocking, ParameterRange, Surface, THedron,
};

use crate::document::{Model, SmoothModel};
use crate::error::{Error, Result};

/// Default samples per parameter direction when a smooth surface is meshed.
pub const DEFAULT_RESOLUTION: usize = 16;
/// Angle and residual tolerance of [`classify_model`].
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Why a range ends, in JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockingDoc {
    /// `ProfileFlattening`, `TrajectoryFlattening`, `RadicandVanishes`, `Degenerate` or
    /// `Unbounded`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strip: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<String>,
    /// Curve parameter where a smooth radicand vanishes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<f64>,
}

impl From<Blocking> for BlockingDoc {
    fn from(b: Blocking) -> Self {
        let (kind, strip, angle) = match b {
            Blocking::ProfileFlattening { strip, angle } => (
                "ProfileFlattening",
                Some(strip),
                Some(match angle {
                    AngleKind::Eta => "eta",
                    AngleKind::Theta => "theta",
                }),
            ),
            Blocking::TrajectoryFlattening { strip } => ("TrajectoryFlattening", Some(strip), None),
            Blocking::Unbounded => ("Unbounded", None, None),
        };
        Self {
            kind: kind.into(),
            strip,
            angle: angle.map(Into::into),
            at: None,
        }
    }
}

impl BlockingDoc {
    fn smooth(bound: f64, at: Option<f64>, open: bool) -> Self {
        let kind = if !bound.is_finite() {
            "Unbounded"
        } else if open {
            "Degenerate"
        } else {
            "RadicandVanishes"
        };
        Self {
            kind: kind.into(),
            strip: None,
            angle: None,
            at,
        }
    }
}

/// An admissible parameter interval. Unbounded ends are `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeReport {
    /// `additive` (`t`) or `exponential` (`s`).
    pub parameter: String,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub min_open: bool,
    pub min_blocking: BlockingDoc,
    pub max_blocking: BlockingDoc,
    /// The same interval in the exponential parameter `s` with `e^{2s} = 1 + t` (discrete
    /// designs only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponential: Option<[Option<f64>; 2]>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl RangeReport {
    fn discrete(r: &ParameterRange<f64>) -> Self {
        Self {
            parameter: "additive".into(),
            t_min: finite(r.t_min),
            t_max: finite(r.t_max),
            min_open: false,
            min_blocking: r.min_blocking.into(),
            max_blocking: r.max_blocking.into(),
            exponential: Some([
                finite(additive_to_exponential(r.t_min)),
                finite(additive_to_exponential(r.t_max)),
            ]),
        }
    }

    fn smooth(r: &SmoothRange<f64>, parameter: &str) -> Self {
        Self {
            parameter: parameter.into(),
            t_min: finite(r.t_min),
            t_max: finite(r.t_max),
            min_open: r.min_open,
            min_blocking: BlockingDoc::smooth(r.t_min, r.t_min_at, r.min_open),
            max_blocking: BlockingDoc::smooth(r.t_max, r.t_max_at, false),
            exponential: None,
        }
    }

    pub fn lower(&self) -> f64 {
        self.t_min.unwrap_or(f64::NEG_INFINITY)
    }

    pub fn upper(&self) -> f64 {
        self.t_max.unwrap_or(f64::INFINITY)
    }
}

/// Parameter range of a model: additive `t` for discrete, axial, revolution and general
/// data; exponential `s` for translational and molding surfaces.
pub fn range_of(model: &Model) -> Result<RangeReport> {
    match model {
        Model::Discrete(d) => Ok(RangeReport::discrete(&parameter_range(d)?)),
        Model::Smooth(s) => Ok(smooth_range(s)?.1),
    }
}

fn smooth_range(model: &SmoothModel) -> Result<(SmoothRange<f64>, RangeReport)> {
    let (range, parameter) = match model {
        SmoothModel::General(spec) => (general_surface_range(spec), "additive"),
        SmoothModel::Molding(spec) => (molding_surface_range(spec)?, "exponential"),
        SmoothModel::Axial(spec) | SmoothModel::Revolution(spec) => {
            (axial_surface_range(spec), "additive")
        }
        SmoothModel::Translational(spec) => (translational_surface_range(spec), "exponential"),
    };
    Ok((range, RangeReport::smooth(&range, parameter)))
}

/// Surface of a smooth model deformed by its class's own deformation.
pub fn deform_smooth(model: &SmoothModel, t: f64) -> Result<Box<dyn Surface<f64>>> {
    let (range, report) = smooth_range(model)?;
    if !range.contains(t) {
        return Err(out_of_range(t, report));
    }
    Ok(match model {
        SmoothModel::General(spec) => Box::new(deform_general_surface(spec, t)?.surface),
        SmoothModel::Molding(spec) => Box::new(deform_molding_surface(spec, t)?.surface),
        SmoothModel::Axial(spec) => Box::new(deform_axial_surface(spec, t)?.surface),
        SmoothModel::Revolution(spec) => {
            Box::new(deform_revolution_surface(spec.f(), spec.phi(), spec.z(), t)?.surface)
        }
        SmoothModel::Translational(spec) => {
            Box::new(deform_translational_surface(spec, t)?.surface)
        }
    })
}

pub(crate) fn out_of_range(t: f64, range: RangeReport) -> Error {
    let below = t < range.lower() || (range.min_open && Some(t) == range.t_min);
    let blocking = if below {
        range.min_blocking.clone()
    } else {
        range.max_blocking.clone()
    };
    Error::OutOfRange {
        t,
        range: Box::new(range),
        blocking: Box::new(blocking),
    }
}

/// The deformed surface at `t`. Discrete designs go through `deform` itself; smooth models
/// are sampled on a `resolution x resolution` grid.
pub fn surface_at(model: &Model, t: f64, resolution: usize) -> Result<THedron<f64>> {
    match model {
        Model::Discrete(d) => match deform(d, t) {
            Ok(s) => Ok(s),
            Err(thedra::Error::OutOfRange { .. }) => Err(out_of_range(t, range_of(model)?)),
            Err(e) => Err(e.into()),
        },
        Model::Smooth(s) => {
            let surface = deform_smooth(s, t)?;
            let r = resolution.max(1);
            Ok(sample_to_grid(surface.as_ref(), r, r)?.surface)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsometryDoc {
    pub max_edge_residual: f64,
    pub max_diagonal_residual: f64,
    pub worst_face: [usize; 2],
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DihedralStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Largest change against the `t = 0` frame.
    pub max_change: f64,
}

/// A frame as served to clients. Quads index `vertices` from 0; vertex `(i, j)` is at
/// `i (n + 1) + j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshFrame {
    pub t: f64,
    pub m: usize,
    pub n: usize,
    pub vertices: Vec<[f64; 3]>,
    pub quads: Vec<[usize; 4]>,
    /// Face congruence against the `t = 0` frame at tolerance `1e-9`.
    pub isometry: IsometryDoc,
    pub planarity: f64,
    /// Absent when a face is degenerate.
    pub dihedral: Option<DihedralStats>,
}

/// Tolerance of the per-frame isometry flag.
pub const FRAME_TOL: f64 = 1e-9;

pub fn quads(m: usize, n: usize) -> Vec<[usize; 4]> {
    let at = |i: usize, j: usize| i * (n + 1) + j;
    (1..=m)
        .flat_map(|i| {
            (1..=n).map(move |j| [at(i - 1, j - 1), at(i - 1, j), at(i, j), at(i, j - 1)])
        })
        .collect()
}

pub fn mesh_frame(model: &Model, t: f64, resolution: usize) -> Result<MeshFrame> {
    let surface = surface_at(model, t, resolution)?;
    let reference = surface_at(model, 0.0, resolution)?;
    let report = check_isometric(&reference, &surface, FRAME_TOL)?;
    let dihedral = match (dihedral_angles(&surface), dihedral_angles(&reference)) {
        (Ok(a), Ok(b)) if !a.is_empty() => {
            let (mut lo, mut hi, mut sum, mut count) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0);
            for v in a.iter() {
                lo = lo.min(*v);
                hi = hi.max(*v);
                sum += v;
                count += 1;
            }
            Some(DihedralStats {
                min: lo,
                max: hi,
                mean: sum / count as f64,
                max_change: a.max_difference(&b),
            })
        }
        _ => None,
    };
    let (m, n) = (surface.m(), surface.n());
    Ok(MeshFrame {
        t,
        m,
        n,
        vertices: surface.points().iter().map(|p| [p.x, p.y, p.z]).collect(),
        quads: quads(m, n),
        isometry: IsometryDoc {
            max_edge_residual: report.max_edge_residual,
            max_diagonal_residual: report.max_diagonal_residual,
            worst_face: [report.worst_face.0, report.worst_face.1],
            pass: report.pass,
        },
        planarity: planarity(&surface),
        dihedral,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub kind: String,
    pub class: String,
}

/// Class of the built surface (discrete) or the declared smooth class.
pub fn classify_model(model: &Model) -> Result<ClassReport> {
    Ok(match model {
        Model::Discrete(d) => ClassReport {
            kind: "discrete".into(),
            class: classify(&build_thedron(d)?, CLASSIFY_TOL)?.to_string(),
        },
        Model::Smooth(s) => ClassReport {
            kind: "smooth".into(),
            class: s.class_name().into(),
        },
    })
}
