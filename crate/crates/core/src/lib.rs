//! Flexible quad-surfaces with orthogonal plane families (T-hedra) and their smooth
//! counterparts (T-surfaces).
//!
//! Every T-hedron is generated by a handful of angles, signed lengths and heights
//! ([`DesignData`]); from these the crate builds the surface, evaluates its one-parameter
//! isometric deformation in closed form and checks the result with independent oracles.
//!
//! ```
//! use thedra::{build_miura, deform_translational, miura_data, miura_flat_parameters};
//!
//! let data = miura_data(1.0_f64, 1.0, 1.0, 1.0, 2, 2).unwrap();
//! let (_, t_plus) = miura_flat_parameters(1.0, 1.0, 1.0, 1.0);
//! let flat = deform_translational(&data, t_plus).unwrap();
//! assert!(flat.points().iter().all(|p| p.z.abs() < 1e-7));
//! # let _ = build_miura(1.0, 1.0, 1.0, 1.0, 2, 2).unwrap();
//! ```
//!
//! All algorithms are generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases fix `f64`.

pub mod builders;
pub mod design;
pub mod error;
pub mod geom;
pub mod kinematics;
pub mod mesh;
pub mod metrology;
pub mod scalar;
pub mod smooth;

pub use builders::{
    axial_ratios, axial_residual, build_axial, build_miura, build_molding, build_revolution,
    build_thedron, build_translational, classify, lift, miura_data, molding_residual, AxialDesign,
    RevolutionData, TranslationalData,
};
pub use design::{
    build_tnet, derive, ground_view, recover_signed_lengths, DerivedQuantities, DesignData, Line2,
    NetAngles, SignedLengths, TNet,
};
pub use error::{AngleKind, Blocking, Error, Result};
pub use geom::{Grid, Vec2, Vec3};
pub use kinematics::{
    additive_to_exponential, axial_parameter_range, deform, deform_axial, deform_molding,
    deform_revolution, deform_translational, deformation_state, deformed_translational_data,
    exponential_to_additive, is_parallel, max_edge_angle, miura_dimensions, miura_flat_parameters,
    parallel_axial, parameter_range, revolution_parameter_range, translational_parameter_range,
    DeformationState, MiuraDimensions, ParameterRange,
};
pub use mesh::{ClassTag, THedron};
pub use metrology::{
    check_congruent, check_isometric, dihedral_angles, planarity, Congruence, DihedralAngles,
    IsometryReport,
};
pub use scalar::Scalar;
pub use smooth::{
    AxialSpec, FundamentalForm, Interval, ScalarFunction, SmoothRange, SmoothSpec, Surface,
    TranslationalSpec,
};

pub type DesignData64 = DesignData<f64>;
pub type TNet64 = TNet<f64>;
pub type THedron64 = THedron<f64>;
pub type ParameterRange64 = ParameterRange<f64>;
pub type IsometryReport64 = IsometryReport<f64>;
pub type Vec2f = Vec2<f64>;
pub type Vec3f = Vec3<f64>;
pub type ScalarFunction64 = ScalarFunction<f64>;
pub type SmoothSpec64 = SmoothSpec<f64>;
