//! Piecewise construction of Boy's surface: the octacross, three
//! crossbridges and three disks glued into an immersed Moebius band `M`,
//! coned off to infinity to close it into a projective plane, together
//! with its flat development and a rectilinear cube model.
//!
//! Floating-point constructions are generic over [`Real`] (`f32` or
//! `f64`); the aliases below fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod cli;
pub mod cone_pizza;
pub mod development;
pub mod error;
pub mod export_io;
pub mod geom;
pub mod octa_graph;
pub mod pieces;
pub mod rectilinear;
pub mod scalar;
pub mod surface_complex;
pub mod verify;

pub use error::{BoyError, Result};
pub use scalar::Real;

pub type Complex = surface_complex::SurfaceComplex<f64>;
pub type Mesh = surface_complex::SubMesh<f64>;
pub type Patch = pieces::Patch<f64>;
pub type Pizza = cone_pizza::Pizza<f64>;
pub type Layout = development::FlatLayout<f64>;
pub type Vec3 = geom::Point3<f64>;
pub type Vec2 = geom::Point2<f64>;
