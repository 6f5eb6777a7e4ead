use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::context::FieldContext;
use crate::error::{Error, Result};

/// Exact real element of a [`FieldContext`].
///
/// Stored as integer power-basis coordinates over a common positive
/// denominator, reduced so that the representation is unique.
#[derive(Clone)]
pub struct FieldElement {
    ctx: FieldContext,
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    pub(crate) fn from_integer_vec(ctx: &FieldContext, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.degree());
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = &den / &g;
            }
        }
        FieldElement { ctx: ctx.clone(), num, den }
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    /// Power-basis coordinates as rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// True iff `self = q · other` for some rational `q`, i.e. the ratio
    /// `self / other` is rational. `other` must be nonzero.
    pub fn is_rational_multiple_of(&self, other: &FieldElement) -> bool {
        self.check_ctx(other);
        assert!(!other.is_zero(), "rational multiple of zero");
        if self.is_zero() {
            return true;
        }
        // pick a pivot where other is nonzero; cross-multiplied coordinates must agree
        let p = other.num.iter().position(|c| !c.is_zero()).unwrap();
        if self.num[p].is_zero() {
            return false;
        }
        let (a, b) = (&self.num[p], &other.num[p]);
        self.num.iter().zip(&other.num).all(|(x, y)| x * b == y * a)
    }

    fn check_ctx(&self, other: &FieldElement) {
        assert!(self.ctx == other.ctx, "field elements from different contexts");
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self * other)
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^j`.
    pub(crate) fn conjugate(&self, j: u32) -> FieldElement {
        let inner = &self.ctx.0;
        let nn = inner.conductor as u64;
        let mut out = vec![BigInt::zero(); inner.degree];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = ((k as u64 * j as u64) % nn) as usize;
            for (o, &z) in out.iter_mut().zip(&inner.zeta_powers[m]) {
                if z != 0 {
                    *o += c * z;
                }
            }
        }
        FieldElement::from_integer_vec(&self.ctx, out, self.den.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(self.ctx.rational(q.recip()));
        }
        // The product of the remaining conjugates over the real subfield
        // turns self into its (rational) norm.
        let mut cof = self.ctx.one();
        for &j in &self.ctx.0.norm_exponents {
            cof = &cof * &self.conjugate(j);
        }
        let norm = (self * &cof).as_rational().expect("norm of a real element is rational");
        Some(&cof * &self.ctx.rational(norm.recip()))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        let inv = other.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of the real embedding: −1, 0 or +1. Exact.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(s) = self.sign_f64_filter() {
            return s;
        }
        let mut level = 0;
        loop {
            let table = self.ctx.enclosures(level);
            let mut lo = BigInt::zero();
            let mut hi = BigInt::zero();
            for (c, (l, h)) in self.num.iter().zip(table.iter()) {
                match c.sign() {
                    Sign::Plus => {
                        lo += c * l;
                        hi += c * h;
                    }
                    Sign::Minus => {
                        lo += c * h;
                        hi += c * l;
                    }
                    Sign::NoSign => {}
                }
            }
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            level += 1;
            debug_assert!(FieldContext::precision(level) > 0);
        }
    }

    fn sign_f64_filter(&self) -> Option<i32> {
        let basis = &self.ctx.0.basis_f64;
        let mut val = 0.0f64;
        let mut mag = 0.0f64;
        for (c, b) in self.num.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64()?;
            if !cf.is_finite() {
                return None;
            }
            val += cf * b;
            mag += cf.abs();
        }
        // Rounding of the coefficients, the basis values and the sum together
        // stay far below this bound for the degrees in use.
        let err = mag * 1e-12;
        if !val.is_finite() || !err.is_finite() {
            return None;
        }
        if val > err {
            Some(1)
        } else if val < -err {
            Some(-1)
        } else {
            None
        }
    }

    pub fn abs(&self) -> FieldElement {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Floating approximation of the real embedding.
    pub fn to_f64(&self) -> f64 {
        let basis = &self.ctx.0.basis_f64;
        let bits = self
            .num
            .iter()
            .map(|c| c.bits())
            .max()
            .unwrap_or(0)
            .max(self.den.bits());
        let shift = bits.saturating_sub(900);
        let den = (&self.den >> shift).to_f64().unwrap_or(f64::INFINITY);
        let mut val = 0.0;
        for (c, b) in self.num.iter().zip(basis) {
            val += (c >> shift).to_f64().unwrap_or(0.0) * b;
        }
        val / den
    }

    /// Largest integer `m` with `m <= self`.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.floor().to_integer();
        }
        let approx = self.to_f64().floor();
        let mut m = BigInt::from(approx as i64);
        loop {
            let mf = self.ctx.rational(BigRational::from_integer(m.clone()));
            if (self - &mf).sign() < 0 {
                m -= 1;
                continue;
            }
            let m1 = self.ctx.rational(BigRational::from_integer(&m + 1));
            if (self - &m1).sign() >= 0 {
                m += 1;
                continue;
            }
            return m;
        }
    }

    pub fn min(self, other: FieldElement) -> FieldElement {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: FieldElement) -> FieldElement {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Lexicographic order on the canonical representation. Total and cheap,
    /// unrelated to the numeric order; used for deterministic sorting.
    pub fn repr_cmp(&self, other: &FieldElement) -> Ordering {
        self.den.cmp(&other.den).then_with(|| self.num.cmp(&other.num))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num && self.ctx == other.ctx
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.den.hash(state);
        self.num.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        (self - other).sign().cmp(&0)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.check_ctx(o);
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return FieldElement::from_integer_vec(&self.ctx, num, self.den.clone());
        }
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den + b * &self.den).collect();
        FieldElement::from_integer_vec(&self.ctx, num, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.check_ctx(o);
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a - b).collect();
            return FieldElement::from_integer_vec(&self.ctx, num, self.den.clone());
        }
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den - b * &self.den).collect();
        FieldElement::from_integer_vec(&self.ctx, num, &self.den * &o.den)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.check_ctx(o);
        let inner = &self.ctx.0;
        let d = inner.degree;
        if let Some(q) = o.as_rational() {
            let num = self.num.iter().map(|a| a * q.numer()).collect();
            return FieldElement::from_integer_vec(&self.ctx, num, &self.den * q.denom());
        }
        if let Some(q) = self.as_rational() {
            let num = o.num.iter().map(|a| a * q.numer()).collect();
            return FieldElement::from_integer_vec(&self.ctx, num, &o.den * q.denom());
        }
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigInt> = conv.drain(..d).collect();
        for (k, c) in conv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &z) in out.iter_mut().zip(&inner.zeta_powers[d + k]) {
                if z != 0 {
                    *o += c * z;
                }
            }
        }
        FieldElement::from_integer_vec(&self.ctx, out, &self.den * &o.den)
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { ctx: self.ctx.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (≈{})", self, self.to_f64())
    }
}

/// Polynomial in `ζ = e^(2πi/N)`, e.g. `1/2 + ζ^2 - 3/4·ζ^6`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}·")?;
                    }
                    if k == 1 {
                        write!(f, "ζ")?;
                    } else {
                        write!(f, "ζ^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
