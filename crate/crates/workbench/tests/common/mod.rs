#![allow(dead_code)]

use thedra::{Grid, Vec3};

#[path = "../../../core/tests/common/mod.rs"]
pub mod designs;

/// Minimal OBJ reader for `v` and `f` lines; test use only.
pub struct ParsedObj {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
}

pub fn parse_obj(text: &str) -> ParsedObj {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let xyz: Vec<f64> = parts.map(|p| p.parse().expect("coordinate")).collect();
                assert_eq!(xyz.len(), 3, "{line}");
                vertices.push([xyz[0], xyz[1], xyz[2]]);
            }
            Some("f") => faces.push(parts.map(|p| p.parse().expect("index")).collect()),
            Some(tag) if tag.starts_with('#') => {}
            None => {}
            Some(other) => panic!("unexpected OBJ record `{other}`"),
        }
    }
    ParsedObj { vertices, faces }
}

pub fn points(grid: &Grid<Vec3<f64>>) -> Vec<[f64; 3]> {
    grid.iter().map(|p| [p.x, p.y, p.z]).collect()
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}
