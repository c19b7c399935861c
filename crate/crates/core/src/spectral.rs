//! The spectral cubic `d(x, y) = 0`: the locus of stress parameters where
//! the symmetry-reduced stress matrix is singular.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{int, rat};
use crate::exact::{MPoly, UPoly};
use crate::scalar::Scalar;
use crate::tensegrity::stress_matrix;

pub const XY: &[&str] = &["x", "y"];

/// `x^2 y + 3x^2 - xy - 3y^2 - 3x - 3y`
pub fn cubic() -> MPoly {
    MPoly::parse(XY, "x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y").unwrap()
}

/// `8 d`, which equals `det Omega`. All resultants eliminate against this.
pub fn cubic8() -> MPoly {
    cubic().scale(&int(8))
}

/// Discriminant of `d` in `y`: `x^4 - 2x^3 + 31x^2 - 30x + 9`.
pub fn discriminant_x() -> UPoly {
    UPoly::from_i64(&[9, -30, 31, -2, 1])
}

#[derive(Clone, Debug)]
pub struct SpectralCurve {
    pub d: MPoly,
    pub d8: MPoly,
    pub disc_x: UPoly,
}

impl Default for SpectralCurve {
    fn default() -> Self {
        Self {
            d: cubic(),
            d8: cubic8(),
            disc_x: discriminant_x(),
        }
    }
}

/// Computes `det Omega(x, y)` symbolically and checks it against `8 d`.
pub fn derive_spectral_cubic() -> Result<MPoly> {
    let det = stress_matrix()?.det();
    if det != cubic8() {
        return Err(Error::verification(
            "det_identity",
            format!("det Omega = {det}, expected {}", cubic8()),
        ));
    }
    Ok(det)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// The `+sqrt` root, carrying the stable arc over `0 < x < 1`.
    Stable,
    Other,
    /// A point supplied directly, branch not yet classified.
    ExactGiven,
}

/// A stress parameter pair on the spectral curve.
#[derive(Clone, Debug, PartialEq)]
pub struct StressPoint<S> {
    pub x: S,
    pub y: S,
    pub branch: Branch,
}

impl<S: Scalar> StressPoint<S> {
    pub fn exact(&self) -> bool {
        S::EXACT
    }

    /// Point on a branch over `x`.
    pub fn on_branch(x: S, branch: Branch) -> Result<Self> {
        let y = branch_y(&x, branch)?;
        Ok(Self { x, y, branch })
    }

    /// Stable-branch point over `x in [0, 1]`.
    pub fn stable(x: S) -> Result<Self> {
        Self::on_branch(x, Branch::Stable)
    }

    /// A given pair, checked against `d = 0` (exactly, or to a relative
    /// tolerance of `1e-9 max(1,|x|,|y|)^3` for floats).
    pub fn given(x: S, y: S) -> Result<Self> {
        let d = cubic().eval_with(&[x.clone(), y.clone()]);
        let scale = 1f64.max(x.to_f64().abs()).max(y.to_f64().abs()).powi(3);
        if !d.is_negligible(1e-9 * scale) {
            return Err(Error::NotOnCurve {
                x: x.render(),
                y: y.render(),
            });
        }
        Ok(Self {
            x,
            y,
            branch: Branch::ExactGiven,
        })
    }

    pub fn residual(&self) -> f64 {
        cubic()
            .eval_with(&[self.x.clone(), self.y.clone()])
            .to_f64()
    }
}

/// Solves `-3y^2 + (x^2 - x - 3) y + 3x^2 - 3x = 0` for `y`.
///
/// The root without cancellation is computed first and the other from the
/// product of roots `x - x^2`, so floats stay accurate near `x = 0, 1`.
/// In exact mode the discriminant must be a rational square.
pub fn branch_y<S: Scalar>(x: &S, which: Branch) -> Result<S> {
    let zero = S::zero();
    let one = S::one();
    if which == Branch::Stable && (*x < zero || *x > one) {
        return Err(Error::Domain(format!(
            "stable branch requires 0 <= x <= 1, got {}",
            x.render()
        )));
    }
    if which == Branch::ExactGiven {
        return Err(Error::Domain("branch_y needs stable or other".into()));
    }
    let x2 = x.clone() * x.clone();
    let b = x2.clone() - x.clone() - S::from_i64(3);
    let disc = b.clone() * b.clone() + S::from_i64(36) * (x2.clone() - x.clone());
    if disc < zero {
        return Err(Error::Domain(format!(
            "negative discriminant at x = {}",
            x.render()
        )));
    }
    let root = disc
        .sqrt_checked()
        .ok_or_else(|| Error::IrrationalBranch(x.render()))?;
    let six = S::from_i64(6);
    let prod = x.clone() - x2;
    // y_plus = (b + root)/6, y_minus = (b - root)/6, y_plus*y_minus = x - x^2
    let (plus, minus) = if b <= zero {
        let minus = (b - root) / six;
        let plus = if minus.is_negligible(0.0) {
            zero.clone()
        } else {
            prod / minus.clone()
        };
        (plus, minus)
    } else {
        let plus = (b + root) / six;
        let minus = if plus.is_negligible(0.0) {
            zero.clone()
        } else {
            prod / plus.clone()
        };
        (plus, minus)
    };
    Ok(match which {
        Branch::Stable => plus,
        _ => minus,
    })
}

/// True iff `0 < x < 1`, `-1/3 <= y < 0` and `y` is the stable-branch value.
pub fn is_stable<S: Scalar>(pt: &StressPoint<S>) -> bool {
    let zero = S::zero();
    let one = S::one();
    let third = S::from_rational(&rat(-1, 3));
    if !(pt.x > zero && pt.x < one && pt.y >= third && pt.y < zero) {
        return false;
    }
    match branch_y(&pt.x, Branch::Stable) {
        Ok(g) => {
            let tol = 1e-9 * 1f64.max(pt.y.to_f64().abs());
            (g - pt.y.clone()).is_negligible(tol)
        }
        Err(_) => false,
    }
}

/// A rational point of the spectral cubic, affine or at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalPoint {
    Affine(BigRational, BigRational),
    /// Projective `(x : y : z)` with `z = 0` or not, as listed.
    Projective([BigRational; 3]),
}

/// Homogenization `x^2 y + 3x^2 z - xyz - 3y^2 z - 3xz^2 - 3yz^2`.
pub fn projective_cubic() -> MPoly {
    MPoly::parse(
        &["x", "y", "z"],
        "x^2*y + 3*x^2*z - x*y*z - 3*y^2*z - 3*x*z^2 - 3*y*z^2",
    )
    .unwrap()
}

/// The twelve listed rational points: nine affine, three at infinity.
/// Every entry is verified to lie on the curve.
pub fn rational_points() -> Result<Vec<RationalPoint>> {
    let affine = [
        (rat(1, 1), rat(0, 1)),
        (rat(3, 1), rat(3, 1)),
        (rat(1, 2), rat(-1, 3)),
        (rat(0, 1), rat(0, 1)),
        (rat(-2, 1), rat(3, 1)),
        (rat(3, 1), rat(-2, 1)),
        (rat(1, 1), rat(-1, 1)),
        (rat(1, 2), rat(-3, 4)),
        (rat(-2, 1), rat(-2, 1)),
    ];
    let infinite = [
        [int(0), int(1), int(0)],
        [int(1), int(0), int(0)],
        [int(0), int(-1), int(1)],
    ];
    let d = cubic();
    let dh = projective_cubic();
    let mut out = Vec::with_capacity(12);
    for (x, y) in affine {
        if !d.eval(&[x.clone(), y.clone()]).is_zero() {
            return Err(Error::verification("rational_points", format!("({x}, {y}) is not on d = 0")));
        }
        out.push(RationalPoint::Affine(x, y));
    }
    for p in infinite {
        if !dh.eval(&p).is_zero() {
            return Err(Error::verification(
                "rational_points",
                format!("({}:{}:{}) is not on the projective closure", p[0], p[1], p[2]),
            ));
        }
        out.push(RationalPoint::Projective(p));
    }
    Ok(out)
}

/// The nine affine rational points in listed order.
pub fn affine_rational_points() -> Vec<(BigRational, BigRational)> {
    rational_points()
        .expect("catalogue verified")
        .into_iter()
        .filter_map(|p| match p {
            RationalPoint::Affine(x, y) => Some((x, y)),
            _ => None,
        })
        .collect()
}

/// Sturm certificate that the discriminant has no real root on `[0, 1]`
/// and is positive at `x = 1/2`, so the two branches never meet there.
pub fn discriminant_positive_on_unit_interval() -> bool {
    use crate::exact::{sturm_isolate, Interval};
    let disc = discriminant_x();
    let window = Interval::new(int(0), int(1));
    sturm_isolate(&disc, &window).is_empty()
        && !disc.eval(&int(0)).is_zero()
        && !disc.eval(&int(1)).is_zero()
        && disc.eval(&rat(1, 2)).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d8_is_eight_d() {
        let c = SpectralCurve::default();
        assert_eq!(c.d8, c.d.scale(&int(8)));
        assert_eq!(
            derive_spectral_cubic().unwrap(),
            MPoly::parse(XY, "8*x^2*y + 24*x^2 - 8*x*y - 24*y^2 - 24*x - 24*y").unwrap()
        );
    }

    #[test]
    fn discriminant_matches_quadratic_in_y() {
        // b^2 - 4ac with a = -3, b = x^2 - x - 3, c = 3x^2 - 3x
        let disc = MPoly::parse(XY, "(x^2 - x - 3)^2 + 12*(3*x^2 - 3*x)").unwrap();
        let expected = MPoly::from_univariate(XY, "x", &discriminant_x());
        assert_eq!(disc, expected);
        assert!(discriminant_positive_on_unit_interval());
    }

    #[test]
    fn curve_points() {
        let d = cubic();
        assert!(d.eval(&[rat(1, 2), rat(-1, 3)]).is_zero());
        assert!(d.eval(&[int(0), int(0)]).is_zero());
        assert!(d.eval(&[int(3), int(3)]).is_zero());
    }

    #[test]
    fn exact_branch_values() {
        assert_eq!(branch_y(&rat(1, 2), Branch::Stable).unwrap(), rat(-1, 3));
        assert_eq!(branch_y(&rat(1, 2), Branch::Other).unwrap(), rat(-3, 4));
        assert_eq!(branch_y(&int(0), Branch::Stable).unwrap(), int(0));
        assert_eq!(branch_y(&int(1), Branch::Stable).unwrap(), int(0));
        assert!(matches!(
            branch_y(&rat(3, 10), Branch::Stable),
            Err(Error::IrrationalBranch(_))
        ));
        assert!(matches!(branch_y(&int(2), Branch::Stable), Err(Error::Domain(_))));
    }

    #[test]
    fn float_branch_matches_closed_form() {
        for k in 1..100 {
            let x = k as f64 / 100.0;
            let g = (x * x - x - 3.0 + (x.powi(4) - 2.0 * x.powi(3) + 31.0 * x * x - 30.0 * x + 9.0).sqrt()) / 6.0;
            let y = branch_y(&x, Branch::Stable).unwrap();
            assert!((y - g).abs() <= 1e-12 * g.abs().max(1e-3));
        }
    }

    #[test]
    fn catalogue_has_twelve_points() {
        let pts = rational_points().unwrap();
        assert_eq!(pts.len(), 12);
        assert!(pts.contains(&RationalPoint::Affine(rat(1, 2), rat(-1, 3))));
        assert!(pts.contains(&RationalPoint::Affine(int(3), int(3))));
    }

    #[test]
    fn stability_classification() {
        let p = StressPoint::given(rat(1, 2), rat(-1, 3)).unwrap();
        assert!(is_stable(&p));
        let q = StressPoint::given(rat(1, 2), rat(-3, 4)).unwrap();
        assert!(!is_stable(&q));
        let o = StressPoint::given(int(0), int(0)).unwrap();
        assert!(!is_stable(&o));
        assert!(StressPoint::given(int(0), int(1)).is_err());
        let f = StressPoint::<f64>::stable(0.3).unwrap();
        assert!(is_stable(&f));
    }
}
