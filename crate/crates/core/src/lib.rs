//! Renormalized vacuum polarization `<phi^2>_ren` of a neutral scalar field
//! at distance `x1` from a flat hyperplane in `d` space dimensions.
//!
//! Two families of walls are covered:
//!
//! * [`reflecting`]: Robin, Neumann or Dirichlet conditions, chosen
//!   independently on the two faces of the plane;
//! * [`semitransparent`]: the U(2) family of delta / delta-prime point
//!   interactions concentrated on the plane.
//!
//! Every closed form is paired with an independent route (direct
//! heat-kernel time integration, spectral expansion) so the numerics can be
//! cross-checked at run time; see [`validate`].

// `!(x > 0.0)` is the NaN-rejecting form used for every parameter check;
// series coefficients are kept at the precision they were published with
#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::excessive_precision,
    clippy::redundant_guards
)]

pub mod cli;
pub mod config;
pub mod error;
pub mod field;
pub mod heatkernel;
pub mod quadrature;
pub mod reflecting;
pub mod semitransparent;
pub mod specialfns;
pub mod validate;
mod wall;

pub use error::{Result, VacpolError};
pub use field::{Branch, FieldConfig, LaurentFit, PolarizationValue, Warning};
pub use heatkernel::{HeatQuery, ReflectingBC, RobinParam, SemitransparentBC};
pub use semitransparent::SpectrumReport;
