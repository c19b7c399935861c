//! The symmetry-reduced stress matrix and its null vector.

use num_rational::BigRational;

use super::group::{gen_c1, gen_c2, gen_s, RepMatrix, A4};
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::MPoly;
use crate::scalar::Scalar;
use crate::spectral::{StressPoint, XY};

/// 3x3 matrix of polynomials in `(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StressMatrix {
    pub entries: [[MPoly; 3]; 3],
}

impl StressMatrix {
    pub fn det(&self) -> MPoly {
        det3(&self.entries)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn eval<S: Scalar>(&self, x: &S, y: &S) -> [[S; 3]; 3] {
        let pt = [x.clone(), y.clone()];
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].eval_with(&pt)))
    }

    /// `Omega * v` with polynomial entries.
    pub fn apply(&self, v: &[MPoly; 3]) -> [MPoly; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(MPoly::zero(XY), |acc, j| &acc + &(&self.entries[i][j] * &v[j]))
        })
    }
}

/// Cofactor expansion along the first row.
pub fn det3(m: &[[MPoly; 3]; 3]) -> MPoly {
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
    &(&(&m[0][0] * &minor(1, 2, 2, 1)) - &(&m[0][1] * &minor(0, 2, 2, 0))) + &(&m[0][2] * &minor(0, 1, 1, 0))
}

/// The entries as displayed alongside the defining formula.
pub fn printed_stress_matrix() -> StressMatrix {
    let rows = [
        ["-2*y - 2", "-2*x + y + 1", "-2*x - y + 1"],
        ["-2*x + y + 1", "-2*y - 2", "-y + 1"],
        ["-2*x - y + 1", "-y + 1", "-2*y - 2"],
    ];
    StressMatrix {
        entries: rows.map(|r| r.map(|e| MPoly::parse(XY, e).expect("valid entry"))),
    }
}

fn sym_part(m: RepMatrix) -> [[MPoly; 3]; 3] {
    let t = m.transpose();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| MPoly::constant(XY, int(m.0[i][j] + t.0[i][j])))
    })
}

/// `x(rho(c1) + rho(c1)^T) + (1-x)(rho(c2) + rho(c2)^T) + y(rho(s) + rho(s)^T) - 2(1+y) I`,
/// checked against the printed entries. Orthogonality makes `rho(g)^T = rho(g^-1)`.
pub fn stress_matrix() -> Result<StressMatrix> {
    let group = A4::build()?;
    let x = MPoly::var(XY, "x");
    let y = MPoly::var(XY, "y");
    let one = MPoly::one(XY);
    let wc1 = x.clone();
    let wc2 = &one - &x;
    let ws = y.clone();
    let diag = (&one + &y).scale(&int(-2));
    let a = sym_part(group.rho(&gen_c1()));
    let b = sym_part(group.rho(&gen_c2()));
    let c = sym_part(group.rho(&gen_s()));
    let entries = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut e = &(&(&wc1 * &a[i][j]) + &(&wc2 * &b[i][j])) + &(&ws * &c[i][j]);
            if i == j {
                e = &e + &diag;
            }
            e
        })
    });
    let omega = StressMatrix { entries };
    if omega != printed_stress_matrix() {
        return Err(Error::verification(
            "stress_matrix",
            format!("formula gives {:?}", omega.entries),
        ));
    }
    Ok(omega)
}

/// The polynomial null vector `p0(x, y)`.
pub fn p0_polynomial() -> [MPoly; 3] {
    [
        "-2*x*y + 3*y^2 - 6*x + 2*y + 3",
        "-4*x^2 - 4*x*y + 3*y^2 + 4*x + 10*y + 3",
        "4*x^2 - 3*y^2 - 4*x + 3",
    ]
    .map(|e| MPoly::parse(XY, e).expect("valid p0"))
}

/// Rank of a 3x3 matrix by Gaussian elimination with magnitude pivoting.
/// Entries below `tol` (floats) or exactly zero (rationals) count as zero.
pub fn rank<S: Scalar>(m: &[[S; 3]; 3], tol: f64) -> usize {
    kernel(m, tol).map_or(3, |(_, dim)| 3 - dim)
}

/// A kernel vector and the kernel dimension, or `None` for a nonsingular matrix.
pub fn kernel<S: Scalar>(m: &[[S; 3]; 3], tol: f64) -> Option<([S; 3], usize)> {
    let mut a: Vec<Vec<S>> = m.iter().map(|r| r.to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let best = (row..3).max_by(|&i, &j| {
            a[i][col]
                .magnitude()
                .partial_cmp(&a[j][col].magnitude())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(p) = best else { break };
        if a[p][col].is_negligible(tol) {
            continue;
        }
        a.swap(row, p);
        let piv = a[row][col].clone();
        for v in a[row].iter_mut() {
            *v = v.clone() / piv.clone();
        }
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != row {
                let f = r[col].clone();
                for (v, p) in r.iter_mut().zip(&pivot_row) {
                    *v = v.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == 3 {
            break;
        }
    }
    let dim = 3 - pivots.len();
    if dim == 0 {
        return None;
    }
    let free = (0..3).find(|c| !pivots.contains(c)).unwrap();
    let mut v: [S; 3] = std::array::from_fn(|_| S::zero());
    v[free] = S::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r][free].clone();
    }
    Some((v, dim))
}

/// Null vector at a curve point: `p0(x, y)` if nonzero, otherwise a kernel
/// vector of `Omega(x, y)` by elimination; normalized to a unit vector
/// (floats) or a primitive integer vector (rationals), first nonzero
/// coordinate positive.
pub fn null_vector<S: Scalar>(omega: &StressMatrix, pt: &StressPoint<S>) -> Result<[S; 3]> {
    let at = [pt.x.clone(), pt.y.clone()];
    let p: [S; 3] = p0_polynomial().map(|f| f.eval_with(&at));
    let scale = 1f64.max(pt.x.to_f64().abs()).max(pt.y.to_f64().abs()).powi(2);
    if p.iter().any(|c| !c.is_negligible(1e-12 * scale)) {
        return Ok(S::normalize_direction(p));
    }
    let m = omega.eval(&pt.x, &pt.y);
    match kernel(&m, 1e-9 * scale) {
        Some((v, _)) => Ok(S::normalize_direction(v)),
        None => Err(Error::NotOnCurve {
            x: pt.x.render(),
            y: pt.y.render(),
        }),
    }
}

/// `Omega * v` at a point.
pub fn apply_at<S: Scalar>(m: &[[S; 3]; 3], v: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|i| {
        (0..3).fold(S::zero(), |acc, j| acc + m[i][j].clone() * v[j].clone())
    })
}

/// `Omega * p0` reduced modulo `d` in `y`; zero means `p0` is a null vector
/// on the whole curve.
pub fn null_vector_identity(omega: &StressMatrix) -> Result<[MPoly; 3]> {
    let d = crate::spectral::cubic();
    let prod = omega.apply(&p0_polynomial());
    let mut out: [MPoly; 3] = std::array::from_fn(|_| MPoly::zero(XY));
    for (o, e) in out.iter_mut().zip(prod.iter()) {
        *o = e.rem_in("y", &d)?;
    }
    Ok(out)
}

pub fn p0_at(x: &BigRational, y: &BigRational) -> [BigRational; 3] {
    let at = [x.clone(), y.clone()];
    p0_polynomial().map(|f| f.eval(&at))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::spectral::affine_rational_points;

    #[test]
    fn formula_matches_display() {
        let omega = stress_matrix().unwrap();
        assert!(omega.is_symmetric());
        assert_eq!(omega.entries[0][0], MPoly::parse(XY, "-2*y - 2").unwrap());
    }

    #[test]
    fn rank_at_distinguished_point() {
        let omega = stress_matrix().unwrap();
        let m = omega.eval(&rat(1, 2), &rat(-1, 3));
        assert_eq!(m[0], [rat(-4, 3), rat(-1, 3), rat(1, 3)]);
        assert_eq!(rank(&m, 0.0), 2);
        let (v, dim) = kernel(&m, 0.0).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(BigRational::normalize_direction(v), [int(0), int(1), int(1)]);
    }

    #[test]
    fn nonsingular_off_curve() {
        let omega = stress_matrix().unwrap();
        let m = omega.eval(&int(0), &int(1));
        assert_eq!(rank(&m, 0.0), 3);
        assert_eq!(omega.det().eval(&[int(0), int(1)]), int(-48));
    }

    #[test]
    fn p0_values() {
        assert_eq!(p0_at(&rat(1, 2), &rat(-1, 3)), [int(0), rat(5, 3), rat(5, 3)]);
        assert_eq!(p0_at(&int(0), &int(0)), [int(3), int(3), int(3)]);
    }

    #[test]
    fn p0_is_null_modulo_d() {
        let omega = stress_matrix().unwrap();
        for r in null_vector_identity(&omega).unwrap() {
            assert!(r.is_zero(), "residual {r}");
        }
    }

    #[test]
    fn null_vector_at_rational_points() {
        let omega = stress_matrix().unwrap();
        for (x, y) in affine_rational_points() {
            let pt = StressPoint::given(x.clone(), y.clone()).unwrap();
            let v = null_vector(&omega, &pt).unwrap();
            assert!(v.iter().any(|c| c != &int(0)));
            let r = apply_at(&omega.eval(&x, &y), &v);
            assert!(r.iter().all(|c| c == &int(0)), "({x}, {y})");
        }
    }

    #[test]
    fn float_null_vector_is_unit() {
        let omega = stress_matrix().unwrap();
        let pt = StressPoint::<f64>::stable(0.3).unwrap();
        let v = null_vector(&omega, &pt).unwrap();
        let n: f64 = v.iter().map(|c| c * c).sum();
        assert!((n - 1.0).abs() < 1e-14);
        let r = apply_at(&omega.eval(&pt.x, &pt.y), &v);
        assert!(r.iter().all(|c| c.abs() < 1e-12));
    }
}
