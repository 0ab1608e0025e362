//! Frame sequences over the deformation parameter.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thedra::{check_isometric, planarity, THedron};

use crate::document::Model;
use crate::error::Result;
use crate::frames::{range_of, surface_at, RangeReport, FRAME_TOL};
use crate::obj::to_obj;

/// Which parameters to visit.
#[derive(Debug, Clone, PartialEq)]
pub enum Samples {
    /// `count` evenly spaced values over the range; `1` gives the `t = 0` frame. Unbounded
    /// ends are replaced by `+-fallback`; an open lower end is approached to within
    /// `1e-6` of the range width.
    Count { count: usize, fallback: f64 },
    /// Explicit values, each of which must lie in the range.
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameRecord {
    pub index: usize,
    pub t: f64,
    pub file: String,
    /// Largest relative edge or diagonal change against the `t = 0` frame.
    pub isometry_residual: f64,
    pub isometry_pass: bool,
    pub planarity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub range: RangeReport,
    pub frames: Vec<FrameRecord>,
}

pub struct Frame {
    pub t: f64,
    pub surface: THedron<f64>,
}

pub fn sample_parameters(range: &RangeReport, samples: &Samples) -> Result<Vec<f64>> {
    match samples {
        Samples::Explicit(ts) => {
            for &t in ts {
                let inside = t >= range.lower() && t <= range.upper() && t.is_finite();
                if !inside || (range.min_open && Some(t) == range.t_min) {
                    return Err(crate::frames::out_of_range(t, range.clone()));
                }
            }
            Ok(ts.clone())
        }
        Samples::Count { count: 0, .. } => Ok(Vec::new()),
        Samples::Count { count: 1, .. } => Ok(vec![0.0]),
        Samples::Count { count, fallback } => {
            let hi = range.t_max.unwrap_or(*fallback);
            let mut lo = range.t_min.unwrap_or(-*fallback);
            if range.min_open {
                lo += 1e-6 * (hi - lo);
            }
            let k = *count - 1;
            Ok((0..=k)
                .map(|i| {
                    if i == k {
                        hi
                    } else {
                        lo + (hi - lo) * i as f64 / k as f64
                    }
                })
                .collect())
        }
    }
}

/// Evaluates every frame. Frames are independent and computed in parallel.
pub fn sweep(
    model: &Model,
    samples: &Samples,
    resolution: usize,
) -> Result<(RangeReport, Vec<Frame>)> {
    let range = range_of(model)?;
    let ts = sample_parameters(&range, samples)?;
    let workers = std::thread::available_parallelism().map_or(1, |k| k.get());
    let chunk = ts.len().div_ceil(workers).max(1);
    let frames = std::thread::scope(|scope| {
        let handles: Vec<_> = ts
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&t| {
                            surface_at(model, t, resolution).map(|surface| Frame { t, surface })
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("frame worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok((range, frames))
}

/// Writes `frame_000.obj`, ... and `manifest.json` into `dir`.
pub fn write_sweep(
    model: &Model,
    name: &str,
    samples: &Samples,
    resolution: usize,
    dir: impl AsRef<Path>,
) -> Result<Manifest> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let (range, frames) = sweep(model, samples, resolution)?;
    let reference = surface_at(model, 0.0, resolution)?;
    let mut records = Vec::with_capacity(frames.len());
    for (index, frame) in frames.iter().enumerate() {
        let file = format!("frame_{index:03}.obj");
        std::fs::write(dir.join(&file), to_obj(&frame.surface))?;
        let report = check_isometric(&reference, &frame.surface, FRAME_TOL)?;
        records.push(FrameRecord {
            index,
            t: frame.t,
            file,
            isometry_residual: report.max_residual(),
            isometry_pass: report.pass,
            planarity: planarity(&frame.surface),
        });
    }
    let manifest = Manifest {
        name: name.to_string(),
        range,
        frames: records,
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(dir.join("manifest.json"), text)?;
    Ok(manifest)
}
