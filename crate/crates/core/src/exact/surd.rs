//! Exact arithmetic in `Q(sqrt(r))` for a single non-square rational `r`.
//!
//! Used to decide, without rounding, whether a polynomial vanishes at a
//! curve point whose `y` coordinate is `(a + b sqrt(r))`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::mpoly::MPoly;
use super::rational::{exact_sqrt, sign};

/// `a + b*sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: BigRational,
    pub b: BigRational,
    pub radicand: BigRational,
}

impl QuadSurd {
    /// Panics if the radicand is a rational square (or negative); callers
    /// should use plain rationals in that case.
    pub fn new(a: BigRational, b: BigRational, radicand: BigRational) -> Self {
        assert!(radicand.is_positive(), "radicand must be positive");
        assert!(exact_sqrt(&radicand).is_none(), "radicand is a rational square");
        Self { a, b, radicand }
    }

    pub fn rational(&self, a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: &self.a * &o.a + &self.b * &o.b * &self.radicand,
            b: &self.a * &o.b + &self.b * &o.a,
            radicand: self.radicand.clone(),
        }
    }

    /// Exact sign of `a + b sqrt(r)`.
    pub fn sign(&self) -> i8 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 with b^2 r.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.radicand;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn to_f64(&self) -> f64 {
        use super::rational::to_f64;
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.radicand).sqrt()
    }
}

/// Evaluates a bivariate polynomial at `(x, y)` with rational `x` and
/// `y` in `Q(sqrt(r))`. Variable order follows the polynomial's ring.
pub fn eval_at_surd(f: &MPoly, x: &BigRational, y: &QuadSurd) -> QuadSurd {
    assert_eq!(f.nvars(), 2);
    let max_y = f.degree_in(f.vars()[1]).unwrap_or(0) as usize;
    let mut powers = vec![y.rational(BigRational::from_integer(1.into()))];
    for k in 1..=max_y {
        let next = powers[k - 1].mul(y);
        powers.push(next);
    }
    let mut acc = y.rational(BigRational::zero());
    for (e, c) in f.terms() {
        let coef = c * num_traits::pow(x.clone(), e[0] as usize);
        let t = powers[e[1] as usize].mul(&y.rational(coef));
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn sign_decisions() {
        let r = int(2);
        assert_eq!(QuadSurd::new(int(-1), int(1), r.clone()).sign(), 1);
        assert_eq!(QuadSurd::new(int(-2), int(1), r.clone()).sign(), -1);
        assert_eq!(QuadSurd::new(int(3), int(-2), r.clone()).sign(), 1);
        assert_eq!(QuadSurd::new(int(0), int(0), r).sign(), 0);
    }

    #[test]
    fn root_of_minimal_polynomial() {
        // y = (1 + sqrt 5)/2 satisfies y^2 - y - 1 = 0
        let f = MPoly::parse(&["x", "y"], "y^2 - y - 1 + 0*x").unwrap();
        let y = QuadSurd::new(rat(1, 2), rat(1, 2), int(5));
        assert!(eval_at_surd(&f, &int(7), &y).is_zero());
        let g = MPoly::parse(&["x", "y"], "y - x").unwrap();
        let v = eval_at_surd(&g, &int(1), &y);
        assert_eq!(v.sign(), 1);
        assert!((v.to_f64() - 0.6180339887).abs() < 1e-9);
    }
}
