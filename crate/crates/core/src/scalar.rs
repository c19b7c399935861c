//! Field-like scalars shared by the exact and floating pipelines.
//!
//! The same formulas run on `BigRational` (exact points) and on `f64`
//! (sweeps). Exactness is carried by the type, never assumed.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::rational::{exact_sqrt, gcd_of_numerators, lcm_of_denominators, to_f64};

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    const EXACT: bool;

    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn to_f64(&self) -> f64;

    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Square root if representable: always for nonnegative floats, only for
    /// rational squares in exact mode.
    fn sqrt_checked(&self) -> Option<Self>;

    /// Zero test: exact equality for rationals, `|v| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Rescales a nonzero direction vector: unit norm for floats, primitive
    /// integer vector for rationals; first nonzero coordinate positive.
    fn normalize_direction(v: [Self; 3]) -> [Self; 3];

    /// Human-readable rendering: `p/q` for rationals, shortest round-trip
    /// decimal for floats.
    fn render(&self) -> String;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        to_f64(r)
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn normalize_direction(v: [Self; 3]) -> [Self; 3] {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let lead = v.iter().copied().find(|c| c.abs() > 1e-300).unwrap_or(1.0);
        let s = if lead < 0.0 { -1.0 / n } else { 1.0 / n };
        [v[0] * s, v[1] * s, v[2] * s]
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        to_f64(self)
    }

    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        exact_sqrt(self)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn normalize_direction(v: [Self; 3]) -> [Self; 3] {
        let l = BigRational::from_integer(lcm_of_denominators(&v));
        let scaled: Vec<BigRational> = v.iter().map(|c| c * &l).collect();
        let g = gcd_of_numerators(&scaled);
        let lead_neg = scaled
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        let mut s = BigRational::one() / BigRational::from_integer(g);
        if lead_neg {
            s = -s;
        }
        [&scaled[0] * &s, &scaled[1] * &s, &scaled[2] * &s]
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

pub fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn sub3<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[0].clone() - b[0].clone(),
        a[1].clone() - b[1].clone(),
        a[2].clone() - b[2].clone(),
    ]
}

pub fn add3<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[0].clone() + b[0].clone(),
        a[1].clone() + b[1].clone(),
        a[2].clone() + b[2].clone(),
    ]
}

pub fn scale3<S: Scalar>(a: &[S; 3], s: &S) -> [S; 3] {
    [
        a[0].clone() * s.clone(),
        a[1].clone() * s.clone(),
        a[2].clone() * s.clone(),
    ]
}

pub fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn norm_f64<S: Scalar>(a: &[S; 3]) -> f64 {
    a.iter().map(|c| c.to_f64().powi(2)).sum::<f64>().sqrt()
}
