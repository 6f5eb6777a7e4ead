//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use rand::Rng;
use ward_core::{FieldElement, Surface, SurfacePoint, Vec2};

/// Exact interior point of a random polygon: a convex combination of its
/// vertices with positive integer weights.
pub fn random_interior_point<R: Rng>(s: &Surface, rng: &mut R) -> SurfacePoint {
    let k = s.context();
    let poly = &s.polygons()[rng.gen_range(0..s.polygons().len())];
    let mut acc = Vec2::zero(k);
    let mut total = 0i64;
    for v in poly.vertices() {
        let w = rng.gen_range(1..=20i64);
        acc = acc.add(&v.scale(&k.int(w)));
        total += w;
    }
    let p = acc.scale(&k.frac(1, total));
    s.locate(poly.id(), &p).expect("interior point")
}

/// Exact values in increasing real order.
pub fn sorted(mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    v.sort();
    v
}
