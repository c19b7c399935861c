//! Closed forms for the strut-disk intersection parameters.
//!
//! The edge of the translated triangle from `rho(c1 s) p0` to
//! `rho(c1 s^2) p0` meets the plane of the base triangle
//! `(p0, rho(s) p0, rho(s^2) p0)` at
//! `tau rho(c1 s^2) p0 + (1 - tau) rho(c1 s) p0
//!    = rho(s) p0 + R1 (p0 - rho(s) p0) + R2 (rho(s^2) p0 - rho(s) p0)`.

use crate::error::{Error, Result};
use crate::exact::MPoly;
use crate::spectral::{cubic, XY};
use crate::tensegrity::group::{gen_c1, gen_s, Perm, RepMatrix, A4};
use crate::tensegrity::p0_polynomial;
use crate::tensegrity::stress::det3;

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionFormulas {
    pub n_tau: MPoly,
    pub d_tau: MPoly,
    pub n1: MPoly,
    pub n2: MPoly,
    pub d: MPoly,
    pub p: MPoly,
    pub q1: MPoly,
    pub q2: MPoly,
}

fn poly(text: &str) -> MPoly {
    MPoly::parse(XY, text).expect("valid polynomial")
}

impl IntersectionFormulas {
    /// The printed closed forms.
    pub fn printed() -> Self {
        let p = poly(
            "4*x^4 + 3*x^2*y^2 - 20*x^3 - 6*x^2*y - 15*x*y^2 + 31*x^2 + 6*x*y + 21*y^2 - 15*x + 18*y + 9",
        );
        let q1 = poly(
            "-4*x^4 - 12*x^3*y + x^2*y^2 + 9*x*y^3 + 8*x^3 + 42*x^2*y + 10*x*y^2 - 27*y^3 \
             + 17*x^2 - 15*x*y - 38*y^2 - 12*x - 15*y",
        );
        let q2 = poly(
            "4*x^4 - 4*x^3*y - 13*x^2*y^2 + 9*x*y^3 - 8*x^3 + 2*x^2*y + 44*x*y^2 - 18*y^3 \
             + 7*x^2 + 29*x*y - 49*y^2 + 6*x - 36*y - 9",
        );
        let d_tau = poly("2*x*y - 5*y - 3");
        Self {
            n_tau: poly("(-x + y)*(2*x + 3*y + 1)"),
            d: &d_tau * &p,
            n1: &(&poly("-2*x + y + 3") * &poly("x - 1")) * &q1,
            n2: -(&poly("2*x^2 + x*y - 5*x - 4*y") * &q2),
            d_tau,
            p,
            q1,
            q2,
        }
    }

    /// `D_tau - N_tau`, the numerator of `1 - tau`.
    pub fn one_minus_tau_numerator(&self) -> MPoly {
        &self.d_tau - &self.n_tau
    }

    /// `D - N1 - N2`, the numerator of `1 - R1 - R2`.
    pub fn one_minus_r_numerator(&self) -> MPoly {
        &(&self.d - &self.n1) - &self.n2
    }

    /// The seven sign functions tracked by the persistence certificate.
    pub fn tracked(&self) -> Vec<(&'static str, MPoly)> {
        vec![
            ("N_tau", self.n_tau.clone()),
            ("D_tau", self.d_tau.clone()),
            ("D_tau - N_tau", self.one_minus_tau_numerator()),
            ("N1", self.n1.clone()),
            ("N2", self.n2.clone()),
            ("D", self.d.clone()),
            ("D - N1 - N2", self.one_minus_r_numerator()),
        ]
    }
}

/// Polynomial solution of the intersection equation by Cramer's rule:
/// `tau = tau_num / det`, `R1 = r1_num / det`, `R2 = r2_num / det`.
#[derive(Clone, Debug, PartialEq)]
pub struct CramerSolution {
    pub det: MPoly,
    pub tau_num: MPoly,
    pub r1_num: MPoly,
    pub r2_num: MPoly,
}

fn rep_apply(m: RepMatrix, v: &[MPoly; 3]) -> [MPoly; 3] {
    std::array::from_fn(|i| {
        (0..3).fold(MPoly::zero(XY), |acc, j| {
            &acc + &v[j].scale(&crate::exact::rational::int(m.0[i][j]))
        })
    })
}

fn sub(a: &[MPoly; 3], b: &[MPoly; 3]) -> [MPoly; 3] {
    std::array::from_fn(|i| &a[i] - &b[i])
}

pub fn cramer_solution(group: &A4) -> CramerSolution {
    let p0 = p0_polynomial();
    let s = gen_s();
    let node = |g: Perm| rep_apply(group.rho(&g), &p0);
    let a = node(gen_c1() * s * s);
    let b = node(gen_c1() * s);
    let c = node(s);
    let e = node(s * s);
    // tau (a - b) - R1 (p0 - c) - R2 (e - c) = c - b
    let col0 = sub(&a, &b);
    let col1 = sub(&c, &p0);
    let col2 = sub(&c, &e);
    let rhs = sub(&c, &b);
    let cols = |u: &[MPoly; 3], v: &[MPoly; 3], w: &[MPoly; 3]| -> [[MPoly; 3]; 3] {
        std::array::from_fn(|i| [u[i].clone(), v[i].clone(), w[i].clone()])
    };
    CramerSolution {
        det: det3(&cols(&col0, &col1, &col2)),
        tau_num: det3(&cols(&rhs, &col1, &col2)),
        r1_num: det3(&cols(&col0, &rhs, &col2)),
        r2_num: det3(&cols(&col0, &col1, &rhs)),
    }
}

/// Checks `num/den == cramer_num/cramer_det` on the curve: the remainder of
/// `num * cramer_det - den * cramer_num` modulo `d` in `y` must vanish.
fn agree_mod_d(name: &str, num: &MPoly, den: &MPoly, c_num: &MPoly, c_det: &MPoly) -> Result<()> {
    let diff = &(num * c_det) - &(den * c_num);
    let r = diff.rem_in("y", &cubic())?;
    if !r.is_zero() {
        return Err(Error::verification(
            "intersection_formulas",
            format!("{name}: residual modulo d is {r}"),
        ));
    }
    Ok(())
}

/// Solves the intersection equation symbolically and verifies that the
/// printed closed forms agree with the solution on the spectral curve.
pub fn derive_intersection_formulas(group: &A4) -> Result<IntersectionFormulas> {
    let f = IntersectionFormulas::printed();
    let c = cramer_solution(group);
    if c.det.rem_in("y", &cubic())?.is_zero() {
        return Err(Error::verification(
            "intersection_formulas",
            "system determinant vanishes identically on the curve",
        ));
    }
    agree_mod_d("tau", &f.n_tau, &f.d_tau, &c.tau_num, &c.det)?;
    agree_mod_d("R1", &f.n1, &f.d, &c.r1_num, &c.det)?;
    agree_mod_d("R2", &f.n2, &f.d, &c.r2_num, &c.det)?;
    Ok(f)
}
