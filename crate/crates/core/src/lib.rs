//! Exact engine for translation surfaces glued from Euclidean polygons,
//! specialised to the Ward–Veech family `Y(3,n)`.

// Field elements share their context through an `Arc` with cached data;
// hashing and equality only read the coefficients.
#![allow(clippy::mutable_key_type)]

pub mod affine;
pub mod error;
pub mod field;
pub mod flows;
pub mod geom;
pub mod periodic;
pub mod surface;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement};
pub use geom::{Mat2, Vec2};
pub use surface::{build_ward, build_ward_with, Normalization, Polygon, Surface, SurfacePoint};
