//! Smooth T-surfaces: function-valued data, validity checks, first fundamental forms,
//! isometric deformations and sampling onto quad grids.

pub mod deform;
pub mod function;
pub mod presets;
pub mod quadrature;
pub mod sampling;
pub mod spec;

pub use deform::{
    axial_surface_range, deform_axial_surface, deform_general_surface, deform_molding_surface,
    deform_revolution_surface, deform_translational_surface, general_surface_range,
    molding_surface_range, reconstruct_c, smooth_additive_to_exponential,
    smooth_exponential_to_additive, smooth_parallel_partner, translational_surface_range, Partner,
    SmoothDeformation, SmoothRange,
};
pub use function::{Interval, Repr, ScalarFunction};
pub use quadrature::{integrate, integrate_with, QuadratureMode};
pub use sampling::{sample_to_grid, sample_translational, SampledGrid};
pub use spec::{
    evaluate, first_fundamental_form, AxialSpec, FundamentalForm, SmoothSpec, Surface,
    TranslationalSpec,
};
