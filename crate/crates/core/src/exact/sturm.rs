//! Real-root isolation by Sturm sequences.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::interval::Interval;
use super::rational::{rat, to_f64};
use super::upoly::UPoly;

/// An interval `(lo, hi)` holding exactly one distinct real root of the
/// target polynomial, or a degenerate `lo == hi` exact rational root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub hi: BigRational,
    pub multiplicity_hint: Option<u32>,
}

impl IsolatingInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn midpoint_f64(&self) -> f64 {
        0.5 * (to_f64(&self.lo) + to_f64(&self.hi))
    }
}

/// Sturm sequence of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<UPoly>,
}

impl SturmSequence {
    pub fn new(f: &UPoly) -> Self {
        let sf = f.square_free();
        let mut seq = vec![sf.clone()];
        let d = sf.derivative();
        if !d.is_zero() {
            seq.push(d);
            loop {
                let n = seq.len();
                let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(r.scale(&-BigRational::from_integer(1.into())));
            }
        }
        Self { seq }
    }

    /// The square-free polynomial the sequence starts with.
    pub fn base(&self) -> &UPoly {
        &self.seq[0]
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if lo >= hi {
            return 0;
        }
        let n = self.variations(lo) - self.variations(hi);
        if self.base().eval(hi).is_zero() {
            n - 1
        } else {
            n
        }
    }
}

/// Isolates the distinct real roots of `f` in the open interior of `window`.
/// Exact dyadic roots met during bisection are returned as degenerate
/// intervals. Multiplicities come from the square-free decomposition.
pub fn sturm_isolate(f: &UPoly, window: &Interval) -> Vec<IsolatingInterval> {
    if f.is_zero() || f.degree() == Some(0) {
        return Vec::new();
    }
    let sturm = SturmSequence::new(f);
    let sf = sturm.base().clone();
    let two = rat(2, 1);
    let mut out = Vec::new();
    let mut stack = vec![(window.lo.clone(), window.hi.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let c = sturm.count_open(&lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 && !sf.eval(&lo).is_zero() && !sf.eval(&hi).is_zero() {
            out.push(IsolatingInterval {
                lo,
                hi,
                multiplicity_hint: None,
            });
            continue;
        }
        let mid = (&lo + &hi) / &two;
        if sf.eval(&mid).is_zero() {
            out.push(IsolatingInterval {
                lo: mid.clone(),
                hi: mid.clone(),
                multiplicity_hint: None,
            });
        }
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    assign_multiplicities(f, &mut out);
    out
}

fn assign_multiplicities(f: &UPoly, roots: &mut [IsolatingInterval]) {
    let parts: Vec<(usize, SturmSequence)> = f
        .square_free_decomposition()
        .into_iter()
        .enumerate()
        .filter(|(_, a)| a.degree().unwrap_or(0) > 0)
        .map(|(i, a)| (i + 1, SturmSequence::new(&a)))
        .collect();
    for r in roots.iter_mut() {
        r.multiplicity_hint = if r.is_exact() {
            Some(f.multiplicity_of(&r.lo))
        } else {
            parts
                .iter()
                .find(|(_, s)| s.count_open(&r.lo, &r.hi) == 1)
                .map(|(m, _)| *m as u32)
        };
    }
}

/// Bisects an isolating interval of `f` until its width is at most `width`.
/// Keeps the interval isolating by tracking the sign change of the
/// square-free part; collapses to a point if an exact root is hit.
pub fn refine(f: &UPoly, root: &IsolatingInterval, width: &BigRational) -> IsolatingInterval {
    if root.is_exact() {
        return root.clone();
    }
    let sf = f.square_free();
    let two = rat(2, 1);
    let mut lo = root.lo.clone();
    let mut hi = root.hi.clone();
    let s_lo = sf.sign_at(&lo);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = sf.sign_at(&mid);
        if s == 0 {
            return IsolatingInterval {
                lo: mid.clone(),
                hi: mid,
                multiplicity_hint: root.multiplicity_hint,
            };
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    IsolatingInterval {
        lo,
        hi,
        multiplicity_hint: root.multiplicity_hint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn unit() -> Interval {
        Interval::new(int(0), int(1))
    }

    #[test]
    fn dtau_resultant_has_single_root_at_half() {
        let f = UPoly::from_i64(&[144, -624, 912, -528, 96]);
        let roots = sturm_isolate(&f, &unit());
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].lo, rat(1, 2));
        assert_eq!(roots[0].multiplicity_hint, Some(1));
    }

    #[test]
    fn no_real_roots() {
        let f = UPoly::from_i64(&[1, 0, 1]);
        assert!(sturm_isolate(&f, &Interval::new(int(-10), int(10))).is_empty());
    }

    #[test]
    fn endpoint_roots_are_excluded() {
        // (x-1)^2 * x : roots at the window ends only
        let f = UPoly::from_i64(&[0, 1, -2, 1]);
        assert!(sturm_isolate(&f, &unit()).is_empty());
        let wide = sturm_isolate(&f, &Interval::new(int(-1), int(2)));
        assert_eq!(wide.len(), 2);
        assert_eq!(wide[1].multiplicity_hint, Some(2));
    }

    #[test]
    fn irrational_roots_get_sign_changes() {
        // x^2 - 2 on (-2, 2)
        let f = UPoly::from_i64(&[-2, 0, 1]);
        let roots = sturm_isolate(&f, &Interval::new(int(-2), int(2)));
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_ne!(f.sign_at(&r.lo), f.sign_at(&r.hi));
            let fine = refine(&f, r, &rat(1, 1 << 40));
            assert!((fine.midpoint_f64().abs() - 2f64.sqrt()).abs() < 1e-11);
        }
    }

    #[test]
    fn multiplicity_of_irrational_double_root() {
        // (x^2 - 2)^2 (x - 1/3)
        let q = UPoly::from_i64(&[-2, 0, 1]);
        let f = q.mul(&q).mul(&UPoly::linear_root(rat(1, 3)));
        let roots = sturm_isolate(&f, &Interval::new(int(0), int(2)));
        assert_eq!(roots.len(), 2);
        let irr = roots.iter().find(|r| r.lo >= int(1)).unwrap();
        assert_eq!(irr.multiplicity_hint, Some(2));
    }
}
