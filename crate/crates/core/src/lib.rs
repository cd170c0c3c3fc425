//! Exact computations on polyhedral cones, their duals, representation
//! families for non-convex cones, and the cone encoding of incomplete
//! preferences over lotteries and acts.
//!
//! All arithmetic is exact over the rationals.

pub mod cone;
pub mod decision;
pub mod error;
pub mod family;
pub mod feasibility;
pub mod linalg;
pub mod oracle;
pub mod text;

pub use cone::{ConeH, ConeV, OpenConeH, UnionConeV};
pub use error::{Error, Result};
pub use family::RepFamily;
pub use feasibility::{Feasibility, LinIneqSystem, Relation};
pub use linalg::{Rational, Vector};
