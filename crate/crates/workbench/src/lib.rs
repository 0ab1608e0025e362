//! Persistence, OBJ export, frame sweeps, the `thedra` command line and the HTTP frame
//! service on top of the `thedra` geometry crate.

pub mod cli;
pub mod document;
pub mod error;
pub mod frames;
pub mod obj;
pub mod service;
pub mod sweep;
pub mod verify;

pub use document::{DesignDocument, Model, Payload, SmoothModel, SmoothPayload};
pub use error::{Error, Result, Violation};
pub use frames::{mesh_frame, range_of, surface_at, MeshFrame, RangeReport};
pub use obj::{export_obj, to_obj};
pub use sweep::{sweep, write_sweep, Manifest, Samples};
