//! Wavefront OBJ export with quad faces.

use std::fmt::Write as _;
use std::path::Path;

use thedra::THedron;

use crate::error::Result;

/// 17 significant digits in scientific notation; `-0` is written as `0`.
pub fn format_coordinate(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// Vertices row-major (`i` outer, `j` inner), then one `f` line per face with 1-based
/// indices in the order `(i-1, j-1), (i-1, j), (i, j), (i, j-1)`.
pub fn to_obj(surface: &THedron<f64>) -> String {
    let (m, n) = (surface.m(), surface.n());
    let mut out = String::new();
    writeln!(out, "# thedra {} {}x{}", surface.class_tag(), m, n).expect("string write");
    for p in surface.points().iter() {
        writeln!(
            out,
            "v {} {} {}",
            format_coordinate(p.x),
            format_coordinate(p.y),
            format_coordinate(p.z)
        )
        .expect("string write");
    }
    for q in crate::frames::quads(m, n) {
        writeln!(out, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1)
            .expect("string write");
    }
    out
}

pub fn export_obj(surface: &THedron<f64>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_obj(surface))?;
    Ok(())
}
