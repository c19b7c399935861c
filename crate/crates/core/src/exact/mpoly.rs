//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are keyed by dense exponent vectors over a fixed, ordered variable
//! list. The `BTreeMap` ordering is lexicographic on exponent vectors, so the
//! last entry is the lex-leading term (first variable most significant).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::rational::{gcd_of_numerators, int, lcm_of_denominators};
use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, BigRational>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_like(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, BigRational::one())
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Exponents, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn constant_like(&self, c: BigRational) -> Self {
        let mut p = self.zero_like();
        if !c.is_zero() {
            p.terms.insert(vec![0; self.nvars()], c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn index_of(&self, name: &str) -> usize {
        self.var_index(name)
            .unwrap_or_else(|| panic!("variable {name} not in {:?}", self.vars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.nvars()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> Option<u32> {
        let i = self.index_of(name);
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "variable sets differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = self.constant_like(BigRational::one());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Re-expresses the polynomial over another variable list. Every variable
    /// that occurs must exist in `vars`.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .enumerate()
            .map(|(i, pos)| match pos {
                Some(p) => Ok(p),
                None if self.terms.keys().all(|e| e[i] == 0) => Ok(usize::MAX),
                None => Err(Error::Domain(format!("variable {v} not in target ring", v = self.vars[i]))),
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    ne[map[i]] = k;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point (one value per variable).
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluation over any scalar type (exact or floating).
    pub fn eval_with<S: Scalar>(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars());
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = S::from_rational(c);
            for (v, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Largest absolute monomial value at a floating point, used to scale
    /// residuals.
    pub fn max_monomial_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = super::rational::to_f64(c).abs();
                for (v, &k) in point.iter().zip(e) {
                    t *= v.abs().powi(k as i32);
                }
                t
            })
            .fold(0.0, f64::max)
    }

    /// Interval enclosure of the polynomial over a box.
    pub fn eval_interval(&self, bx: &[Interval]) -> Interval {
        assert_eq!(bx.len(), self.nvars());
        let mut acc = Interval::point(BigRational::zero());
        for (e, c) in &self.terms {
            let mut t = Interval::point(c.clone());
            for (iv, &k) in bx.iter().zip(e) {
                if k > 0 {
                    t = &t * &iv.pow(k);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `var := value` with `value` a polynomial in the same ring.
    pub fn substitute(&self, name: &str, value: &MPoly) -> Self {
        self.check_vars(value);
        let i = self.index_of(name);
        let maxk = self.degree_in(name).unwrap_or(0);
        let powers: Vec<MPoly> = (0..=maxk).map(|k| value.pow(k)).collect();
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            let mono = Self {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(rest, c.clone())]),
            };
            out = &out + &(&mono * &powers[e[i] as usize]);
        }
        out
    }

    /// Substitutes every variable by a polynomial of a (possibly different)
    /// target ring, i.e. composition `f(g_1, ..., g_n)`.
    pub fn compose(&self, images: &[MPoly]) -> Self {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].zero_like();
        for g in images {
            target.check_vars(g);
        }
        let mut cache: Vec<Vec<MPoly>> = images
            .iter()
            .map(|g| vec![g.constant_like(BigRational::one()), g.clone()])
            .collect();
        let mut out = target.clone();
        for (e, c) in &self.terms {
            let mut t = target.constant_like(c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                if k > 0 {
                    t = &t * &cache[i][k];
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn derivative(&self, name: &str) -> Self {
        let i = self.index_of(name);
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                out.add_term(ne, c * int(e[i] as i64));
            }
        }
        out
    }

    /// Coefficients with respect to `name`: entry `k` is the coefficient of
    /// `name^k`, a polynomial in the same ring not involving `name`.
    pub fn coeffs_in(&self, name: &str) -> Vec<MPoly> {
        let i = self.index_of(name);
        let n = self.degree_in(name).map_or(0, |d| d as usize + 1);
        let mut out = vec![self.zero_like(); n];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[i] as usize;
            ne[i] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(name: &str, coeffs: &[MPoly]) -> Self {
        let first = coeffs.first().expect("at least one coefficient");
        let i = first.index_of(name);
        let mut out = first.zero_like();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                assert_eq!(e[i], 0, "coefficient involves {name}");
                let mut ne = e.clone();
                ne[i] = k as u32;
                out.add_term(ne, v.clone());
            }
        }
        out
    }

    /// Multivariate division by a single polynomial in lex order. Returns
    /// `(q, r)` with `self = q*divisor + r` and no term of `r` divisible by
    /// the leading monomial of `divisor`.
    pub fn div_rem(&self, divisor: &MPoly) -> (MPoly, MPoly) {
        self.check_vars(divisor);
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial");
        let lm = lm.clone();
        let lc = lc.clone();
        let mut q = self.zero_like();
        let mut r = self.zero_like();
        let mut p = self.clone();
        while let Some((e, c)) = p.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lm).all(|(a, b)| a >= b) {
                let qe: Exponents = e.iter().zip(&lm).map(|(a, b)| a - b).collect();
                let qc = &c / &lc;
                let mono = Self {
                    vars: self.vars.clone(),
                    terms: BTreeMap::from([(qe.clone(), qc.clone())]),
                };
                p = &p - &(&mono * divisor);
                q.add_term(qe, qc);
            } else {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
        (q, r)
    }

    /// `Some(q)` iff `self = divisor * q` exactly.
    pub fn divide_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Remainder of division by `modulus` viewed as univariate in `name`.
    /// The leading coefficient of `modulus` in `name` must be a nonzero
    /// constant so that the division stays inside the polynomial ring.
    pub fn rem_in(&self, name: &str, modulus: &MPoly) -> Result<MPoly> {
        self.check_vars(modulus);
        let mc = modulus.coeffs_in(name);
        let m = mc.len() - 1;
        let lead = &mc[m];
        if !lead.is_constant() || lead.is_zero() {
            return Err(Error::Domain(format!(
                "modulus leading coefficient in {name} is not a nonzero constant"
            )));
        }
        let inv = BigRational::one() / lead.constant_term();
        let mut coeffs = self.coeffs_in(name);
        while coeffs.len() > m {
            let k = coeffs.len() - 1;
            let top = coeffs.pop().unwrap().scale(&inv);
            if top.is_zero() {
                continue;
            }
            for (j, c) in mc.iter().enumerate().take(m) {
                let idx = k - m + j;
                coeffs[idx] = &coeffs[idx] - &(&top * c);
            }
        }
        if coeffs.is_empty() {
            return Ok(self.zero_like());
        }
        Ok(Self::from_coeffs_in(name, &coeffs))
    }

    /// Converts a polynomial involving at most one variable to a `UPoly` in
    /// that variable. Returns `None` if two or more variables occur.
    pub fn to_univariate(&self) -> Option<UPoly> {
        let mut idx: Option<usize> = None;
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    match idx {
                        None => idx = Some(i),
                        Some(j) if j != i => return None,
                        _ => {}
                    }
                }
            }
        }
        let i = idx.unwrap_or(0);
        let deg = self.terms.keys().map(|e| e.get(i).copied().unwrap_or(0)).max().unwrap_or(0);
        let mut c = vec![BigRational::zero(); deg as usize + 1];
        for (e, v) in &self.terms {
            c[e.get(i).copied().unwrap_or(0) as usize] = v.clone();
        }
        Some(UPoly::new(c))
    }

    /// Univariate polynomial in `name` from coefficients (low to high).
    pub fn from_univariate(vars: &[&str], name: &str, u: &UPoly) -> Self {
        let x = MPoly::var(vars, name);
        let i = x.index_of(name);
        let mut out = Self::zero(vars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Primitive integer form: clears denominators and removes the integer
    /// content, keeping the sign of the leading term positive.
    pub fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_of_denominators(self.terms.values());
        let scaled = self.scale(&BigRational::from_integer(l));
        let g = gcd_of_numerators(scaled.terms.values());
        let mut s = BigRational::from_integer(BigInt::one()) / BigRational::from_integer(g);
        if scaled.leading_term().unwrap().1.is_negative() {
            s = -s;
        }
        scaled.scale(&s)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first, lex-descending inside each degree.
        let mut items: Vec<(&Exponents, &BigRational)> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (n, (e, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else if mag.is_integer() {
                write!(f, "{mag}*{}", mono.join("*"))?;
            } else {
                write!(f, "({mag})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars.join(","), self)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_vars(rhs);
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-BigRational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    const XY: &[&str] = &["x", "y"];

    fn p(s: &str) -> MPoly {
        MPoly::parse(XY, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2 - y^2"));
    }

    #[test]
    fn expand_tau_numerator() {
        let n = &p("-x+y") * &p("2*x+3*y+1");
        assert_eq!(n, p("-2*x^2 - x*y + 3*y^2 - x + y"));
    }

    #[test]
    fn annihilator() {
        let f = p("x^3 - 2*x*y + 7");
        assert!((&f * &MPoly::zero(XY)).is_zero());
    }

    #[test]
    fn zero_terms_are_pruned() {
        let f = &p("x + y") - &p("x");
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f, p("y"));
    }

    #[test]
    fn divides_examples() {
        let q = p("x^2 - 1").divide_exact(&p("x - 1")).unwrap();
        assert_eq!(q, p("x + 1"));
        let d8 = p("8*(x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y)");
        let g = &d8 * &p("2*x + 3*y + 1");
        assert_eq!(g.divide_exact(&d8).unwrap(), p("2*x + 3*y + 1"));
        assert!(p("x^2 + 1").divide_exact(&p("x - 1")).is_none());
    }

    #[test]
    fn rem_in_linear_in_y() {
        let d = p("x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y");
        let f = &d * &p("x*y^2 + 5");
        assert!(f.rem_in("y", &d).unwrap().is_zero());
        let r = p("y^2").rem_in("y", &d).unwrap();
        assert!(r.degree_in("y").unwrap_or(0) <= 1);
        // y^2 - r must vanish at a curve point
        let pt = [rat(1, 2), rat(-1, 3)];
        assert_eq!(p("y^2").eval(&pt), r.eval(&pt));
    }

    #[test]
    fn compose_and_substitute() {
        let g = MPoly::parse(&["s", "p"], "s^2 - 4*p").unwrap();
        let uv = ["u", "v"];
        let k = g.compose(&[
            MPoly::parse(&uv, "u+v").unwrap(),
            MPoly::parse(&uv, "u*v").unwrap(),
        ]);
        assert_eq!(k, MPoly::parse(&uv, "(u-v)^2").unwrap());
        let f = p("x*y + y^2");
        assert_eq!(f.substitute("y", &p("x+1")), p("x*(x+1) + (x+1)^2"));
    }

    #[test]
    fn coeffs_round_trip() {
        let f = p("x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y");
        let c = f.coeffs_in("y");
        assert_eq!(c.len(), 3);
        assert_eq!(c[2], p("-3"));
        assert_eq!(MPoly::from_coeffs_in("y", &c), f);
    }

    #[test]
    fn with_vars_reorders() {
        let f = p("x^2*y + 1");
        let g = f.with_vars(&["y", "x", "z"]).unwrap();
        assert_eq!(g.eval(&[rat(3, 1), rat(2, 1), rat(9, 1)]), rat(13, 1));
        assert!(p("y").with_vars(&["x"]).is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p("-3*y^2 + x^2*y + 1/2").to_string(), "x^2*y - 3*y^2 + 1/2");
    }
}
