//! Exact arithmetic in the real subfield of a cyclotomic field.
//!
//! A [`FieldContext`] for parameter `n` has conductor `N = 4n`, so both
//! `cos(kπ/n)` and `sin(kπ/n)` are exact elements. Signs are decided by an
//! `f64` filter backed by rigorous fixed-point enclosures of increasing
//! precision; zero is detected exactly from the reduced coordinates.

mod context;
mod element;
mod enclosure;

pub use context::FieldContext;
pub use element::FieldElement;
