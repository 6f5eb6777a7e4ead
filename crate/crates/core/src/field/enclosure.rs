//! Rigorous fixed-point enclosures of `cos(2πk/N)`.
//!
//! Values are intervals `[lo, hi]` of integers at a binary scale `2^q`.
//! Every operation rounds outward, so the true real number always lies in
//! the interval. Used by the sign oracle once the `f64` filter is
//! inconclusive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Guard bits carried internally on top of the requested precision.
const GUARD: u32 = 32;

#[derive(Clone, Debug)]
struct Iv {
    lo: BigInt,
    hi: BigInt,
}

impl Iv {
    fn point(v: BigInt) -> Self {
        Iv { lo: v.clone(), hi: v }
    }

    fn add(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn sub(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    fn neg(&self) -> Iv {
        Iv { lo: -&self.hi, hi: -&self.lo }
    }

    fn scale_int(&self, m: i64) -> Iv {
        let m = BigInt::from(m);
        if m.is_negative() {
            Iv { lo: &self.hi * &m, hi: &self.lo * &m }
        } else {
            Iv { lo: &self.lo * &m, hi: &self.hi * &m }
        }
    }

    fn div_int(&self, m: &BigInt) -> Iv {
        debug_assert!(m.is_positive());
        Iv { lo: self.lo.div_floor(m), hi: self.hi.div_ceil(m) }
    }

    fn mul(&self, o: &Iv, unit: &BigInt) -> Iv {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Iv { lo: lo.div_floor(unit), hi: hi.div_ceil(unit) }
    }

    fn widen(&self, r: &BigInt) -> Iv {
        Iv { lo: &self.lo - r, hi: &self.hi + r }
    }
}

/// `atan(1/m)` at scale `unit = 2^q`.
fn atan_inv(m: i64, unit: &BigInt) -> Iv {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut mpow = m.clone();
    let mut sum = Iv::point(BigInt::zero());
    let mut j: i64 = 0;
    loop {
        let d = &mpow * BigInt::from(2 * j + 1);
        let term = Iv { lo: unit.div_floor(&d), hi: unit.div_ceil(&d) };
        if &d > unit {
            // Alternating series with decreasing terms: the tail is bounded
            // by the first omitted term.
            return sum.widen(&term.hi);
        }
        sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        mpow = &mpow * &m2;
        j += 1;
    }
}

/// π at scale `unit` via Machin's formula.
fn pi(unit: &BigInt) -> Iv {
    atan_inv(5, unit).scale_int(16).sub(&atan_inv(239, unit).scale_int(4))
}

/// `cos(x)` for an enclosure of `x ⊂ [0, π/2]`.
fn cos_small(x: &Iv, unit: &BigInt) -> Iv {
    let x2 = x.mul(x, unit);
    let mut term = Iv::point(unit.clone());
    let mut sum = term.clone();
    let mut j: i64 = 1;
    loop {
        term = term.mul(&x2, unit).div_int(&BigInt::from((2 * j - 1) * (2 * j)));
        if j >= 2 && term.hi <= BigInt::one() {
            return sum.widen(&term.hi);
        }
        sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        j += 1;
    }
}

/// Enclosures of `cos(2πk/N)` for `k in 0..count`, as integer pairs at
/// scale `2^prec`.
pub(crate) fn cos_table(conductor: u32, count: usize, prec: u32) -> Vec<(BigInt, BigInt)> {
    let q = prec + GUARD;
    let unit = BigInt::one() << q;
    let pi = pi(&unit);
    let n = conductor as i64;
    let nb = BigInt::from(n);
    (0..count as i64)
        .map(|k| {
            // Fold the angle into [0, π/2] with cos(-t) = cos(t), cos(π - t) = -cos(t).
            let mut m = k.rem_euclid(n);
            if 2 * m > n {
                m = n - m;
            }
            let flip = 4 * m > n;
            if flip {
                m = n / 2 - m;
            }
            let x = pi.scale_int(2 * m).div_int(&nb);
            let mut c = cos_small(&x, &unit);
            if flip {
                c = c.neg();
            }
            let g = BigInt::one() << GUARD;
            (c.lo.div_floor(&g), c.hi.div_ceil(&g))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn to_f64(v: &BigInt, prec: u32) -> f64 {
        v.to_f64().unwrap() / 2f64.powi(prec as i32)
    }

    #[test]
    fn pi_enclosure_contains_pi() {
        let unit = BigInt::one() << 200u32;
        let p = pi(&unit);
        assert!(p.lo < p.hi);
        assert!(&p.hi - &p.lo < BigInt::from(1 << 14));
        let lo = to_f64(&p.lo, 200);
        assert!((lo - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn table_matches_libm_and_is_tight() {
        for &n in &[12u32, 16, 20, 24, 40] {
            let t = cos_table(n, n as usize, 128);
            for (k, (lo, hi)) in t.iter().enumerate() {
                assert!(lo <= hi);
                assert!(hi - lo < BigInt::from(16));
                let want = (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
                assert!((to_f64(lo, 128) - want).abs() < 1e-14, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn exact_values_are_enclosed() {
        // cos(0) = 1, cos(π/2) = 0, cos(π) = -1 must lie inside the intervals.
        let t = cos_table(16, 16, 96);
        let one = BigInt::one() << 96u32;
        assert!(t[0].0 <= one && one <= t[0].1);
        assert!(t[4].0 <= BigInt::zero() && BigInt::zero() <= t[4].1);
        assert!(t[8].0 <= -&one && -&one <= t[8].1);
    }
}
