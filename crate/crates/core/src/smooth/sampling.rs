//! Sampling smooth surfaces onto quad grids.

use std::thread;

use crate::builders::TranslationalData;
use crate::error::Result;
use crate::geom::{Grid, Vec3};
use crate::mesh::THedron;
use crate::metrology::planarity;
use crate::scalar::Scalar;
use crate::smooth::spec::{Surface, TranslationalSpec};

/// A uniformly sampled surface with its face planarity.
#[derive(Debug, Clone)]
pub struct SampledGrid<T> {
    /// Vertex `(i, j)` is the point at `(u_i, v_j)`. Not checked for planarity.
    pub surface: THedron<T>,
    /// Largest face deviation from planarity relative to the bounding-box diagonal.
    /// Generic samplings are only approximately planar.
    pub planarity: T,
}

/// Evaluates `surface` on the uniform `(m + 1) x (n + 1)` parameter grid, rows in parallel.
pub fn sample_to_grid<T: Scalar, S: Surface<T> + ?Sized>(
    surface: &S,
    m: usize,
    n: usize,
) -> Result<SampledGrid<T>> {
    let us = surface.u_domain().samples(m + 1);
    let vs = surface.v_domain().samples(n + 1);
    let workers = thread::available_parallelism()
        .map_or(1, |k| k.get())
        .min(us.len().max(1));
    let chunk = us.len().div_ceil(workers);
    let rows: Vec<Vec<Vec3<T>>> = thread::scope(|scope| {
        let handles: Vec<_> = us
            .chunks(chunk.max(1))
            .map(|part| {
                let vs = &vs;
                scope.spawn(move || {
                    part.iter()
                        .map(|u| vs.iter().map(|v| surface.point_at(*u, *v)).collect())
                        .collect::<Vec<Vec<Vec3<T>>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    });
    let data = rows.into_iter().flatten().collect();
    let grid = Grid::from_vec(m + 1, n + 1, data).expect("(m + 1) x (n + 1) samples");
    let surface = THedron::from_grid_unchecked(grid, surface.class_tag())?;
    let planarity = planarity(&surface);
    Ok(SampledGrid { surface, planarity })
}

/// Generator polygons of the translational T-hedron inscribed in a translational surface on
/// the uniform grid, translated so that vertex `(0, 0)` is the origin.
pub fn sample_translational<T: Scalar>(
    spec: &TranslationalSpec<T>,
    m: usize,
    n: usize,
) -> Result<TranslationalData<T>> {
    let rel = |h: &crate::smooth::ScalarFunction<T>, count: usize| {
        let s = h.sample(count);
        let first = s[0];
        s.into_iter().map(|x| x - first).collect::<Vec<T>>()
    };
    TranslationalData::new(
        rel(spec.x(), m + 1),
        rel(spec.f(), n + 1),
        rel(spec.y(), m + 1),
        rel(spec.z(), n + 1),
    )
}
