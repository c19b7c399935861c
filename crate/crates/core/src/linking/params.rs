//! Evaluation of `tau`, `R1`, `R2` at a curve point.

use serde::Serialize;

use super::formulas::IntersectionFormulas;
use crate::error::{Error, Result};
use crate::scalar::{sub3, Scalar};
use crate::spectral::StressPoint;
use crate::tensegrity::group::{gen_c1, gen_s, A4};
use crate::tensegrity::Framework;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Crossing {
    InteriorCrossing,
    Boundary,
    Miss,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionParams<S> {
    pub tau: S,
    pub r1: S,
    pub r2: S,
    pub classification: Crossing,
}

impl<S: Scalar> IntersectionParams<S> {
    pub fn new(tau: S, r1: S, r2: S) -> Self {
        let classification = classify(&tau, &r1, &r2);
        Self {
            tau,
            r1,
            r2,
            classification,
        }
    }

    pub fn as_f64(&self) -> [f64; 3] {
        [self.tau.to_f64(), self.r1.to_f64(), self.r2.to_f64()]
    }
}

/// Interior crossing iff `0 < tau < 1`, `R1 > 0`, `R2 > 0`, `R1 + R2 < 1`;
/// boundary if the non-strict inequalities hold with an equality.
pub fn classify<S: Scalar>(tau: &S, r1: &S, r2: &S) -> Crossing {
    let zero = S::zero();
    let quantities = [
        tau.clone(),
        S::one() - tau.clone(),
        r1.clone(),
        r2.clone(),
        S::one() - r1.clone() - r2.clone(),
    ];
    if quantities.iter().all(|q| *q > zero) {
        Crossing::InteriorCrossing
    } else if quantities.iter().all(|q| *q >= zero) {
        Crossing::Boundary
    } else {
        Crossing::Miss
    }
}

/// Evaluates the closed forms; a vanishing denominator is a pole error.
pub fn intersection_params_at<S: Scalar>(
    f: &IntersectionFormulas,
    pt: &StressPoint<S>,
) -> Result<IntersectionParams<S>> {
    let at = [pt.x.clone(), pt.y.clone()];
    let pole = |name: &'static str| Error::Pole {
        denominator: name,
        x: pt.x.render(),
        y: pt.y.render(),
    };
    let d_tau = f.d_tau.eval_with(&at);
    if d_tau.is_negligible(1e-14) {
        return Err(pole("D_tau"));
    }
    let d = f.d.eval_with(&at);
    if d.is_negligible(1e-14) {
        return Err(pole("D"));
    }
    let tau = f.n_tau.eval_with(&at) / d_tau;
    let r1 = f.n1.eval_with(&at) / d.clone();
    let r2 = f.n2.eval_with(&at) / d;
    Ok(IntersectionParams::new(tau, r1, r2))
}

/// Solves the intersection equation directly from the realized node
/// positions (Cramer's rule in floating point), as a geometric cross-check.
pub fn solve_from_framework<S: Scalar>(group: &A4, fw: &Framework<S>) -> Option<[f64; 3]> {
    let s = gen_s();
    let node = |g| -> [f64; 3] {
        let p = &fw.nodes[group.index_of(&g)];
        [p[0].to_f64(), p[1].to_f64(), p[2].to_f64()]
    };
    let p0 = node(crate::tensegrity::Perm::IDENTITY);
    let a = node(gen_c1() * s * s);
    let b = node(gen_c1() * s);
    let c = node(s);
    let e = node(s * s);
    let col0 = sub3(&a, &b);
    let col1 = sub3(&c, &p0);
    let col2 = sub3(&c, &e);
    let rhs = sub3(&c, &b);
    let det = |u: &[f64; 3], v: &[f64; 3], w: &[f64; 3]| {
        u[0] * (v[1] * w[2] - v[2] * w[1]) - v[0] * (u[1] * w[2] - u[2] * w[1])
            + w[0] * (u[1] * v[2] - u[2] * v[1])
    };
    let dm = det(&col0, &col1, &col2);
    if dm.abs() < 1e-300 {
        return None;
    }
    Some([
        det(&rhs, &col1, &col2) / dm,
        det(&col0, &rhs, &col2) / dm,
        det(&col0, &col1, &rhs) / dm,
    ])
}
