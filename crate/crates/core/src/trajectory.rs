//! The curve traced by the strut-disk intersection point `(u, v) = (R1, R2)`.
//!
//! In symmetric coordinates `s = u + v`, `p = uv` the locus satisfies
//! `G(s, p) = 0`; the septic `K(u, v) = G(u + v, uv)` is the curve in the
//! plane of barycentric coordinates.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::MPoly;
use crate::linking::IntersectionFormulas;
use crate::par::{self, Execution};
use crate::spectral::{cubic, StressPoint, XY};

pub const SP: &[&str] = &["s", "p"];
pub const UV: &[&str] = &["u", "v"];

pub fn g_polynomial() -> MPoly {
    MPoly::parse(
        SP,
        "3*s^7 - 7*s^6 - 6*s^5*p - s^5 + 8*s^4*p + 3*s^3*p^2 + 5*s^4 + 28*s^3*p - s^2*p^2 \
         - 3*s^3 - 24*s^2*p - 24*s*p^2 + s^2 + 12*s*p - 4*p",
    )
    .expect("valid G")
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryCurves {
    pub g: MPoly,
    pub k: MPoly,
}

/// `G` as printed and `K(u, v) = G(u + v, uv)`, checked to be symmetric of
/// degree 7.
pub fn build_curves() -> Result<TrajectoryCurves> {
    let g = g_polynomial();
    let u = MPoly::var(UV, "u");
    let v = MPoly::var(UV, "v");
    let k = g.compose(&[&u + &v, &u * &v]);
    if k.compose(&[v.clone(), u.clone()]) != k {
        return Err(Error::verification("trajectory", "K(u, v) != K(v, u)"));
    }
    if k.total_degree() != Some(7) {
        return Err(Error::verification(
            "trajectory",
            format!("deg K = {:?}, expected 7", k.total_degree()),
        ));
    }
    Ok(TrajectoryCurves { g, k })
}

impl TrajectoryCurves {
    /// `K` is not a multiple of `u - v`.
    pub fn not_diagonal(&self) -> bool {
        let diag = MPoly::parse(UV, "u - v").expect("valid");
        self.k.divide_exact(&diag).is_none()
    }

    /// `K`, `dK/du`, `dK/dv` at an exact point.
    pub fn gradient_at(&self, u: &BigRational, v: &BigRational) -> [BigRational; 3] {
        let at = [u.clone(), v.clone()];
        [
            self.k.eval(&at),
            self.k.derivative("u").eval(&at),
            self.k.derivative("v").eval(&at),
        ]
    }

    /// True iff `K` and both partials vanish at the point.
    pub fn singular_point_check(&self, u: &BigRational, v: &BigRational) -> bool {
        self.gradient_at(u, v).iter().all(|c| c == &BigRational::from_integer(0.into()))
    }

    /// `|K(u, v)|` divided by the largest monomial magnitude (at least 1).
    pub fn scaled_residual(&self, u: f64, v: f64) -> f64 {
        let k = self.k.eval_with(&[u, v]).abs();
        k / self.k.max_monomial_f64(&[u, v]).max(1.0)
    }
}

/// Reduces `G((N1 + N2)/D, N1 N2 / D^2) * D^7` modulo `d` in `y`; the
/// result must vanish. Every monomial `s^a p^b` of `G` has `a + 2b <= 7`.
pub fn g_identity_residual(f: &IntersectionFormulas) -> Result<MPoly> {
    let d = cubic();
    let red = |m: &MPoly| m.rem_in("y", &d);
    let s = red(&(&f.n1 + &f.n2))?;
    let p = red(&(&f.n1 * &f.n2))?;
    let den = red(&f.d)?;
    let powers = |base: &MPoly, n: usize| -> Result<Vec<MPoly>> {
        let mut out = vec![MPoly::one(XY)];
        for k in 1..=n {
            out.push(red(&(&out[k - 1] * base))?);
        }
        Ok(out)
    };
    let sp = powers(&s, 7)?;
    let pp = powers(&p, 3)?;
    let dp = powers(&den, 7)?;
    let mut acc = MPoly::zero(XY);
    for (e, c) in g_polynomial().terms() {
        let (a, b) = (e[0] as usize, e[1] as usize);
        let w = a + 2 * b;
        if w > 7 {
            return Err(Error::verification("g_identity", "G has weight above 7"));
        }
        let t = red(&(&(&sp[a] * &pp[b]) * &dp[7 - w]))?;
        acc = &acc + &t.scale(c);
    }
    red(&acc)
}

pub fn verify_g_identity_on_curve(f: &IntersectionFormulas) -> Result<()> {
    let r = g_identity_residual(f)?;
    if !r.is_zero() {
        return Err(Error::verification("g_identity", format!("residual modulo d: {r}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
    pub sym_s: f64,
    pub sym_p: f64,
    pub k_residual: f64,
}

/// Stable-branch samples at `x_k = k / (n + 1)`, `k = 1..=n`.
pub fn trajectory_samples(
    curves: &TrajectoryCurves,
    f: &IntersectionFormulas,
    n: usize,
    exec: Execution,
) -> Result<Vec<TrajectoryPoint>> {
    if n < 2 {
        return Err(Error::Domain("trajectory needs at least 2 samples".into()));
    }
    let xs: Vec<f64> = (1..=n).map(|k| k as f64 / (n + 1) as f64).collect();
    par::map(exec, &xs, |&x| sample_at(curves, f, x)).into_iter().collect()
}

pub fn sample_at(curves: &TrajectoryCurves, f: &IntersectionFormulas, x: f64) -> Result<TrajectoryPoint> {
    let pt = StressPoint::stable(x)?;
    let params = crate::linking::intersection_params_at(f, &pt)?;
    let (u, v) = (params.r1, params.r2);
    Ok(TrajectoryPoint {
        x,
        y: pt.y,
        u,
        v,
        sym_s: u + v,
        sym_p: u * v,
        k_residual: curves.scaled_residual(u, v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn g_vanishes_at_distinguished_point() {
        assert_eq!(g_polynomial().eval(&[rat(1, 3), rat(1, 36)]), int(0));
    }

    #[test]
    fn k_invariants() {
        let c = build_curves().unwrap();
        assert!(c.not_diagonal());
        assert!(c.singular_point_check(&int(0), &int(0)));
        assert!(c.singular_point_check(&rat(2, 3), &rat(2, 3)));
        let g = c.gradient_at(&rat(1, 6), &rat(1, 6));
        assert_eq!(g[0], int(0));
        assert!(g[1] != int(0) || g[2] != int(0));
        // lowest-order part is (u - v)^2
        let low: Vec<_> = c.k.terms().filter(|(e, _)| e[0] + e[1] <= 2).collect();
        assert_eq!(low.len(), 3);
        assert_eq!(c.k.coefficient(&[1, 1]), int(-2));
    }

    #[test]
    fn identity_on_curve() {
        verify_g_identity_on_curve(&IntersectionFormulas::printed()).unwrap();
    }

    #[test]
    fn samples() {
        let c = build_curves().unwrap();
        let f = IntersectionFormulas::printed();
        let pts = trajectory_samples(&c, &f, 99, Execution::default()).unwrap();
        assert_eq!(pts.len(), 99);
        let mid = &pts[49];
        assert!((mid.x - 0.5).abs() < 1e-15);
        assert!((mid.u - 1.0 / 6.0).abs() < 1e-12 && (mid.v - 1.0 / 6.0).abs() < 1e-12);
        for p in &pts {
            assert!(p.k_residual < 1e-9);
            assert!(p.u > 0.0 && p.v > 0.0 && p.u + p.v < 1.0);
        }
        assert!(pts[0].u < 0.01 && pts[98].v < 0.01);
    }
}
