//! Exact planar vectors and 2×2 matrices over a [`FieldContext`].

use std::cmp::Ordering;
use std::fmt;

use crate::field::{FieldContext, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.x.to_f64(), self.y.to_f64())
    }
}

impl Vec2 {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Vec2 { x, y }
    }

    pub fn zero(ctx: &FieldContext) -> Self {
        Vec2 { x: ctx.zero(), y: ctx.zero() }
    }

    pub fn add(&self, o: &Vec2) -> Vec2 {
        Vec2 { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &Vec2) -> Vec2 {
        Vec2 { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn neg(&self) -> Vec2 {
        Vec2 { x: -&self.x, y: -&self.y }
    }

    pub fn scale(&self, s: &FieldElement) -> Vec2 {
        Vec2 { x: &self.x * s, y: &self.y * s }
    }

    /// `self.x * o.y - self.y * o.x`
    pub fn cross(&self, o: &Vec2) -> FieldElement {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn dot(&self, o: &Vec2) -> FieldElement {
        &(&self.x * &o.x) + &(&self.y * &o.y)
    }

    pub fn norm_sq(&self) -> FieldElement {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Representation order; deterministic, not geometric.
    pub fn repr_cmp(&self, o: &Vec2) -> Ordering {
        self.x.repr_cmp(&o.x).then_with(|| self.y.repr_cmp(&o.y))
    }
}

/// Which half of the circle `v` falls in, measured counterclockwise from
/// `base`: 0 for angles in `[0, π)`, 1 for `[π, 2π)`.
fn half(base: &Vec2, v: &Vec2) -> u8 {
    let c = base.cross(v).sign();
    if c > 0 || (c == 0 && base.dot(v).sign() > 0) {
        0
    } else {
        1
    }
}

/// Compares the counterclockwise angles from `base` to `a` and to `b`,
/// each taken in `[0, 2π)`.
pub fn ccw_angle_cmp(base: &Vec2, a: &Vec2, b: &Vec2) -> Ordering {
    let (ha, hb) = (half(base, a), half(base, b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    match a.cross(b).sign() {
        s if s > 0 => Ordering::Less,
        s if s < 0 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// `[[a, b], [c, d]]`
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:.6}, {:.6}], [{:.6}, {:.6}]]",
            self.a.to_f64(),
            self.b.to_f64(),
            self.c.to_f64(),
            self.d.to_f64()
        )
    }
}

impl Mat2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity(ctx: &FieldContext) -> Self {
        Mat2 { a: ctx.one(), b: ctx.zero(), c: ctx.zero(), d: ctx.one() }
    }

    /// Counterclockwise rotation by `kπ/d`.
    pub fn rotation(ctx: &FieldContext, k: i64, d: i64) -> crate::Result<Self> {
        let (c, s) = (ctx.cos(k, d)?, ctx.sin(k, d)?);
        Ok(Mat2 { a: c.clone(), b: -&s, c: s, d: c })
    }

    pub fn shear(ctx: &FieldContext, t: FieldElement) -> Self {
        Mat2 { a: ctx.one(), b: t, c: ctx.zero(), d: ctx.one() }
    }

    pub fn context(&self) -> &FieldContext {
        self.a.context()
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2 { x: &(&self.a * &v.x) + &(&self.b * &v.y), y: &(&self.c * &v.x) + &(&self.d * &v.y) }
    }

    pub fn det(&self) -> FieldElement {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> FieldElement {
        &self.a + &self.d
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let inv = self.det().inverse()?;
        Some(Mat2 { a: &self.d * &inv, b: -(&self.b * &inv), c: -(&self.c * &inv), d: &self.a * &inv })
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Option<Mat2> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Mat2::identity(self.context());
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Some(acc)
    }

    /// `self^y = y · self · y⁻¹`
    pub fn conjugate_by(&self, y: &Mat2) -> Option<Mat2> {
        Some(y.mul(self).mul(&y.inverse()?))
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ccw_ordering() {
        let k = FieldContext::new(4).unwrap();
        let v = |x: i64, y: i64| Vec2::new(k.int(x), k.int(y));
        let e1 = v(1, 0);
        assert_eq!(ccw_angle_cmp(&e1, &v(0, 1), &v(-1, 0)), Ordering::Less);
        assert_eq!(ccw_angle_cmp(&e1, &v(0, -1), &v(-1, 0)), Ordering::Greater);
        assert_eq!(ccw_angle_cmp(&e1, &v(2, 0), &v(0, 1)), Ordering::Less);
        assert_eq!(ccw_angle_cmp(&e1, &v(1, -1), &v(-1, -1)), Ordering::Greater);
        assert_eq!(ccw_angle_cmp(&e1, &v(3, 3), &v(1, 1)), Ordering::Equal);
    }

    #[test]
    fn rotation_order() {
        for n in 3..9i64 {
            let k = FieldContext::new(n as u32).unwrap();
            let r = Mat2::rotation(&k, 1, n).unwrap();
            assert!(r.det().is_one());
            assert!(r.pow(2 * n).unwrap().is_identity());
            assert!(!r.pow(n).unwrap().is_identity());
            assert!(r.pow(-1).unwrap().mul(&r).is_identity());
        }
    }
}
