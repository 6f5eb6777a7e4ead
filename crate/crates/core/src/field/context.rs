use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::element::FieldElement;
use super::enclosure;
use crate::error::{Error, Result};

/// Number of cached enclosure precisions (128, 256, ... bits).
const LEVELS: usize = 8;
const BASE_PRECISION: u32 = 128;

pub(crate) struct Inner {
    pub(crate) n: u32,
    pub(crate) conductor: u32,
    pub(crate) degree: usize,
    /// Coefficients of the cyclotomic polynomial, constant term first.
    pub(crate) cyclotomic: Vec<i64>,
    /// `ζ^m` reduced to the power basis, for `m in 0..conductor`.
    pub(crate) zeta_powers: Vec<Vec<i64>>,
    /// Exponents `j` representing `(Z/N)^* / {±1}` minus the class of 1.
    pub(crate) norm_exponents: Vec<u32>,
    pub(crate) basis_f64: Vec<f64>,
    enclosures: [OnceLock<Vec<(BigInt, BigInt)>>; LEVELS],
}

/// The real number field `ℚ(cos(π/n), sin(π/n))`, carried inside the
/// cyclotomic field of conductor `N` (a multiple of `4n`).
///
/// Cloning is cheap; all elements created from a context share it.
#[derive(Clone)]
pub struct FieldContext(pub(crate) Arc<Inner>);

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("n", &self.0.n)
            .field("conductor", &self.0.conductor)
            .field("degree", &self.0.degree)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n == other.0.n && self.0.conductor == other.0.conductor)
    }
}

impl Eq for FieldContext {}

/// Exact quotient of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub(crate) fn cyclotomic_poly(m: u32) -> Vec<i64> {
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl FieldContext {
    /// Context for the Ward surface parameter `n`, conductor `4n`.
    pub fn new(n: u32) -> Result<Self> {
        Self::with_conductor(n, 4 * n.max(1))
    }

    /// Context with a lifted conductor; `conductor` must be a multiple of `4n`.
    pub fn with_conductor(n: u32, conductor: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
        }
        if !conductor.is_multiple_of(4 * n) {
            return Err(Error::InvalidParameter(format!(
                "conductor {conductor} is not a multiple of 4n = {}",
                4 * n
            )));
        }
        let cyclotomic = cyclotomic_poly(conductor);
        let degree = cyclotomic.len() - 1;
        let mut zeta_powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..conductor {
            zeta_powers.push(cur.clone());
            // multiply by ζ and reduce by the monic cyclotomic polynomial
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * cyclotomic[i];
                }
            }
        }
        let mut norm_exponents = Vec::new();
        for j in 2..conductor / 2 {
            if j.gcd(&conductor) == 1 {
                norm_exponents.push(j);
            }
        }
        let inner = Inner {
            n,
            conductor,
            degree,
            cyclotomic,
            zeta_powers,
            norm_exponents,
            basis_f64: Vec::new(),
            enclosures: Default::default(),
        };
        let table = enclosure::cos_table(conductor, degree, BASE_PRECISION);
        let scale = 2f64.powi(-(BASE_PRECISION as i32));
        let basis_f64 = table
            .iter()
            .map(|(lo, hi)| ((lo + hi) / BigInt::from(2)).to_f64().unwrap_or(0.0) * scale)
            .collect();
        let inner = Inner { basis_f64, ..inner };
        let _ = inner.enclosures[0].set(table);
        Ok(FieldContext(Arc::new(inner)))
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn conductor(&self) -> u32 {
        self.0.conductor
    }

    /// Degree of the ambient cyclotomic field over ℚ.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Integer coefficients of the cyclotomic polynomial, constant term first.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.0.cyclotomic
    }

    /// Enclosures of the basis embedding at `128 · 2^level` bits.
    pub(crate) fn enclosures(&self, level: usize) -> std::borrow::Cow<'_, [(BigInt, BigInt)]> {
        let prec = BASE_PRECISION << level;
        if level < LEVELS {
            std::borrow::Cow::Borrowed(
                self.0.enclosures[level]
                    .get_or_init(|| enclosure::cos_table(self.0.conductor, self.0.degree, prec)),
            )
        } else {
            std::borrow::Cow::Owned(enclosure::cos_table(self.0.conductor, self.0.degree, prec))
        }
    }

    pub(crate) fn precision(level: usize) -> u32 {
        BASE_PRECISION << level
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_integer_vec(self, vec![BigInt::zero(); self.0.degree], BigInt::one())
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> FieldElement {
        self.rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn frac(&self, num: i64, den: i64) -> FieldElement {
        assert!(den != 0, "zero denominator");
        self.rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(&self, q: BigRational) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.0.degree];
        num[0] = q.numer().clone();
        FieldElement::from_integer_vec(self, num, q.denom().clone())
    }

    /// `ζ^a` as an (in general non-real) element; internal building block.
    fn zeta_pow_vec(&self, a: i64) -> Vec<BigInt> {
        let m = a.rem_euclid(self.0.conductor as i64) as usize;
        self.0.zeta_powers[m].iter().map(|&c| BigInt::from(c)).collect()
    }

    fn check_angle(&self, d: i64) -> Result<i64> {
        let half = self.0.conductor as i64 / 2;
        if d <= 0 || half % d != 0 {
            return Err(Error::NotRepresentable { d, conductor: self.0.conductor });
        }
        Ok(half / d)
    }

    /// Exact `cos(kπ/d)`; requires `d | N/2` (that is `d | 2n` for conductor `4n`).
    pub fn cos(&self, k: i64, d: i64) -> Result<FieldElement> {
        let m = k * self.check_angle(d)?;
        let a = self.zeta_pow_vec(m);
        let b = self.zeta_pow_vec(-m);
        let num = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(FieldElement::from_integer_vec(self, num, BigInt::from(2)))
    }

    /// Exact `sin(kπ/d)`; same representability rule as [`FieldContext::cos`].
    pub fn sin(&self, k: i64, d: i64) -> Result<FieldElement> {
        let m = k * self.check_angle(d)?;
        // sin t = (ζ^m - ζ^-m) / 2i and 1/i = ζ^(3N/4)
        let q = 3 * self.0.conductor as i64 / 4;
        let a = self.zeta_pow_vec(m + q);
        let b = self.zeta_pow_vec(q - m);
        let num = a.into_iter().zip(b).map(|(x, y)| x - y).collect();
        Ok(FieldElement::from_integer_vec(self, num, BigInt::from(2)))
    }

    /// Builds an element from raw power-basis coordinates, rejecting
    /// vectors that are not real under the fixed embedding.
    pub fn from_coefficients(&self, coeffs: &[BigRational]) -> Result<FieldElement> {
        if coeffs.len() != self.0.degree {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                self.0.degree,
                coeffs.len()
            )));
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let x = FieldElement::from_integer_vec(self, num, den);
        if x.conjugate(self.0.conductor - 1) != x {
            return Err(Error::InvalidInput("coefficient vector is not a real field element".into()));
        }
        Ok(x)
    }
}
