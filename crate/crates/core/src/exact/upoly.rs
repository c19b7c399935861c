//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{divisors, gcd_of_numerators, int, lcm_of_denominators, sign};

/// Coefficients from low to high degree, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: BigRational) -> Self {
        Self::new(vec![-r, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + super::rational::to_f64(c);
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i8 {
        sign(&self.eval(x))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(BigRational::one() / self.leading()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `self / gcd(self, self')`.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Yun's square-free decomposition: returns `(a_1, a_2, ...)` with
    /// `self = c * a_1 * a_2^2 * a_3^3 ...`, each `a_i` monic square-free and
    /// pairwise coprime. Entries may be constant `1`.
    pub fn square_free_decomposition(&self) -> Vec<UPoly> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
        }
        out
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = lcm_of_denominators(&self.coeffs);
        let scaled: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| c * BigRational::from_integer(l.clone()))
            .collect();
        let mut g = gcd_of_numerators(&scaled);
        if scaled.last().unwrap().is_negative() {
            g = -g;
        }
        scaled.iter().map(|c| c.numer() / &g).collect()
    }

    /// All rational roots (distinct, ascending) by the rational-root theorem.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut f = self.square_free();
        // Strip the root at zero so the constant term is nonzero.
        if f.coeffs[0].is_zero() {
            roots.push(BigRational::zero());
            f = Self::new(f.coeffs[1..].to_vec());
        }
        if f.degree().unwrap_or(0) > 0 {
            let ints = f.primitive_integer_coeffs();
            let ps = divisors(&ints[0]);
            let qs = divisors(ints.last().unwrap());
            let mut cands: Vec<BigRational> = Vec::new();
            for p in &ps {
                for q in &qs {
                    let r = BigRational::new(p.clone(), q.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            roots.extend(cands.into_iter().filter(|r| f.eval(r).is_zero()));
        }
        roots.sort();
        roots
    }

    /// Multiplicity of `r` as a root (0 if not a root).
    pub fn multiplicity_of(&self, r: &BigRational) -> u32 {
        let lin = Self::linear_root(r.clone());
        let mut f = self.clone();
        let mut m = 0;
        while !f.is_zero() {
            let (q, rem) = f.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            f = q;
            m += 1;
        }
        m
    }

    /// Product of `(x - r)^k` factors times a constant.
    pub fn from_factors(lead: BigRational, factors: &[(UPoly, u32)]) -> Self {
        factors
            .iter()
            .fold(Self::constant(lead), |acc, (f, k)| acc.mul(&f.pow(*k)))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn dtau_resultant() -> UPoly {
        UPoly::from_i64(&[144, -624, 912, -528, 96])
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = UPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = UPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), UPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // 48 (x-3)(2x-1)(x-1)^2
        let parts = dtau_resultant().square_free_decomposition();
        assert_eq!(parts.len(), 2);
        let lin3 = UPoly::linear_root(int(3));
        let lin_half = UPoly::linear_root(rat(1, 2));
        assert_eq!(parts[0], lin3.mul(&lin_half));
        assert_eq!(parts[1], UPoly::linear_root(int(1)));
    }

    #[test]
    fn rational_roots_and_multiplicity() {
        let f = dtau_resultant();
        assert_eq!(f.rational_roots(), vec![rat(1, 2), int(1), int(3)]);
        assert_eq!(f.multiplicity_of(&int(1)), 2);
        assert_eq!(f.multiplicity_of(&rat(1, 2)), 1);
        assert_eq!(f.multiplicity_of(&int(2)), 0);
        // no rational roots
        assert!(UPoly::from_i64(&[-3, 4, 7, -20, 3]).rational_roots().is_empty());
        // zero root stripped
        assert_eq!(UPoly::from_i64(&[0, 0, 1, 1]).rational_roots(), vec![int(-1), int(0)]);
    }

    #[test]
    fn display() {
        assert_eq!(UPoly::from_i64(&[9, -30, 31, -2, 1]).to_string(), "x^4 - 2*x^3 + 31*x^2 - 30*x + 9");
    }
}
