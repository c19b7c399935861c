//! Closed intervals with exact rational endpoints.
//!
//! Endpoints are `BigRational`, so every operation is exact and therefore
//! trivially outward-conservative. The only non-rational operation is the
//! square root, which is enclosed by bisection to a requested width.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{exact_sqrt, rat, to_f64};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `Some(sign)` if the interval excludes zero (or is exactly zero).
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn pow(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(BigRational::one());
        }
        let a = num_traits::pow(self.lo.clone(), k as usize);
        let b = num_traits::pow(self.hi.clone(), k as usize);
        if k % 2 == 1 {
            return Interval { lo: a, hi: b };
        }
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: BigRational::zero(),
                hi: a.max(b),
            }
        } else {
            Interval {
                lo: a.clone().min(b.clone()),
                hi: a.max(b),
            }
        }
    }

    /// Division by an interval excluding zero. Returns `None` otherwise.
    pub fn checked_div(&self, d: &Interval) -> Option<Interval> {
        if d.contains_zero() {
            return None;
        }
        let inv = Interval {
            lo: BigRational::one() / &d.hi,
            hi: BigRational::one() / &d.lo,
        };
        Some(self * &inv)
    }

    /// Enclosure of `sqrt` over the interval with endpoint error at most
    /// `tol`. The lower end is clamped at zero; returns `None` if the
    /// interval lies entirely below zero.
    pub fn sqrt(&self, tol: &BigRational) -> Option<Interval> {
        if self.hi.is_negative() {
            return None;
        }
        let lo_arg = if self.lo.is_negative() {
            BigRational::zero()
        } else {
            self.lo.clone()
        };
        Some(Interval {
            lo: sqrt_bound(&lo_arg, tol, false),
            hi: sqrt_bound(&self.hi, tol, true),
        })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

/// A rational `r` with `r^2 <= v` (lower) or `r^2 >= v` (upper) and
/// `|r - sqrt(v)| <= tol`.
fn sqrt_bound(v: &BigRational, tol: &BigRational, upper: bool) -> BigRational {
    if let Some(r) = exact_sqrt(v) {
        return r;
    }
    let mut lo = BigRational::zero();
    let mut hi = if v > &BigRational::one() {
        v.clone()
    } else {
        BigRational::one()
    };
    // Seed from the float estimate to cut the bisection short.
    let guess = to_f64(v).sqrt();
    if guess.is_finite() {
        if let (Some(g_lo), Some(g_hi)) = (
            BigRational::from_float(guess * (1.0 - 1e-12)),
            BigRational::from_float(guess * (1.0 + 1e-12) + 1e-300),
        ) {
            if &(&g_lo * &g_lo) <= v && &(&g_hi * &g_hi) >= v {
                lo = g_lo;
                hi = g_hi;
            }
        }
    }
    let two = rat(2, 1);
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        if &(&mid * &mid) <= v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if upper {
        hi
    } else {
        lo
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mpoly::MPoly;
    use crate::exact::rational::int;

    #[test]
    fn square_over_mixed_sign() {
        let x = Interval::new(int(-1), int(2));
        let f = MPoly::parse(&["x"], "x^2").unwrap();
        let e = f.eval_interval(&[x]);
        assert!(e.contains_interval(&Interval::new(int(0), int(4))));
    }

    #[test]
    fn degenerate_box_is_exact() {
        let d = MPoly::parse(&["x", "y"], "x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y").unwrap();
        let e = d.eval_interval(&[Interval::point(rat(1, 2)), Interval::point(rat(-1, 3))]);
        assert_eq!(e, Interval::point(int(0)));
    }

    #[test]
    fn sum_box() {
        let f = MPoly::parse(&["x", "y"], "x + y").unwrap();
        let u = Interval::new(int(0), int(1));
        let e = f.eval_interval(&[u.clone(), u]);
        assert!(e.contains_interval(&Interval::new(int(0), int(2))));
    }

    #[test]
    fn sqrt_enclosure() {
        let tol = rat(1, 1_000_000_000);
        let s = Interval::new(int(2), int(3)).sqrt(&tol).unwrap();
        assert!(&s.lo * &s.lo <= int(2));
        assert!(&s.hi * &s.hi >= int(3));
        assert!(to_f64(&s.lo) > 1.41421355 && to_f64(&s.hi) < 1.7320509);
        assert_eq!(Interval::point(rat(25, 16)).sqrt(&tol).unwrap(), Interval::point(rat(5, 4)));
        assert!(Interval::new(int(-2), int(-1)).sqrt(&tol).is_none());
    }

    #[test]
    fn division() {
        let a = Interval::new(int(1), int(2));
        assert!(a.checked_div(&Interval::new(int(-1), int(1))).is_none());
        assert_eq!(
            a.checked_div(&Interval::new(int(2), int(4))).unwrap(),
            Interval::new(rat(1, 4), int(1))
        );
    }
}
