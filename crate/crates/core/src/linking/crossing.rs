//! Linking numbers of strut triangles by counting signed crossings of one
//! triangle's edges through the other's disk.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{cross, dot, norm_f64, sub3, Scalar};
use crate::tensegrity::Framework;

/// Default relative margin for floating crossing decisions.
pub const DEFAULT_MARGIN: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    pub entries: [[i32; 4]; 4],
}

impl LinkingMatrix {
    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// All six pairs have linking number of absolute value one.
    pub fn is_mutual_hopf_link(&self) -> bool {
        (0..4).all(|i| self.entries[i][i] == 0 && (0..4).all(|j| i == j || self.entries[i][j].abs() == 1))
    }
}

/// Zero test: exact for rationals, `|v| <= margin * scale` for floats.
fn near_zero<S: Scalar>(v: &S, margin: f64, scale: f64) -> bool {
    if S::EXACT {
        v.is_negligible(0.0)
    } else {
        v.to_f64().abs() <= margin * scale
    }
}

fn sign<S: Scalar>(v: &S) -> i32 {
    if *v > S::zero() {
        1
    } else if *v < S::zero() {
        -1
    } else {
        0
    }
}

/// Signed number of times the closed polygon `b` crosses the triangular
/// disk bounded by `a`. Touching the disk or its boundary within the
/// margin is reported as degenerate.
pub fn polygon_disk_crossings<S: Scalar>(a: &[[S; 3]; 3], b: &[[S; 3]; 3], margin: f64) -> Result<i32> {
    let e1 = sub3(&a[1], &a[0]);
    let e2 = sub3(&a[2], &a[0]);
    let n = cross(&e1, &e2);
    let len = a.iter().chain(b.iter()).map(norm_f64).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let n_norm = norm_f64(&n);
    let flat = if S::EXACT {
        n.iter().all(|c| c.is_negligible(0.0))
    } else {
        n_norm <= margin * len * len
    };
    if flat {
        return Err(Error::Degenerate("triangle has zero area".into()));
    }
    let height_scale = n_norm * len;
    let area_scale = n_norm * len * len;
    let side = |p: &[S; 3]| dot(&n, &sub3(p, &a[0]));
    // orientation of x relative to each directed edge of a, positive inside
    let inside = |x: &[S; 3]| -> [S; 3] {
        std::array::from_fn(|k| {
            let edge = sub3(&a[(k + 1) % 3], &a[k]);
            dot(&n, &cross(&edge, &sub3(x, &a[k])))
        })
    };
    let classify_point = |x: &[S; 3]| -> Result<bool> {
        let o = inside(x);
        if o.iter().any(|v| near_zero(v, margin, area_scale)) && o.iter().all(|v| *v >= S::zero() || near_zero(v, margin, area_scale)) {
            return Err(Error::Degenerate("polygon touches the disk boundary".into()));
        }
        Ok(o.iter().all(|v| *v > S::zero()))
    };
    let mut total = 0;
    for k in 0..3 {
        let p = &b[k];
        let q = &b[(k + 1) % 3];
        let sp = side(p);
        let sq = side(q);
        let p_on = near_zero(&sp, margin, height_scale);
        let q_on = near_zero(&sq, margin, height_scale);
        if p_on && q_on {
            return Err(Error::Degenerate("polygon edge lies in the disk plane".into()));
        }
        if p_on || q_on {
            let v = if p_on { p } else { q };
            if classify_point(v)? {
                return Err(Error::Degenerate("polygon vertex lies in the disk".into()));
            }
            continue;
        }
        let (s1, s2) = (sign(&sp), sign(&sq));
        if s1 == s2 {
            continue;
        }
        let t = sp.clone() / (sp - sq);
        let dir = sub3(q, p);
        let x: [S; 3] = std::array::from_fn(|i| p[i].clone() + t.clone() * dir[i].clone());
        if classify_point(&x)? {
            total += sign(&dot(&dir, &n));
        }
    }
    Ok(total)
}

fn triangle<S: Scalar>(fw: &Framework<S>, t: usize) -> [[S; 3]; 3] {
    let idx = fw.triangles[t];
    std::array::from_fn(|k| fw.nodes[idx[k]].clone())
}

/// Linking number of strut triangles `a` and `b` (indices into
/// `fw.triangles`), oriented along `g -> gs -> gs^2`.
pub fn triangle_pair_linking<S: Scalar>(fw: &Framework<S>, a: usize, b: usize, margin: f64) -> Result<i32> {
    if a == b {
        return Err(Error::Domain("linking number needs two distinct triangles".into()));
    }
    if a >= fw.triangles.len() || b >= fw.triangles.len() {
        return Err(Error::Domain(format!("triangle index out of range: {a}, {b}")));
    }
    polygon_disk_crossings(&triangle(fw, a), &triangle(fw, b), margin)
}

pub fn linking_matrix<S: Scalar>(fw: &Framework<S>, margin: f64) -> Result<LinkingMatrix> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    let mut entries = [[0i32; 4]; 4];
    for (i, j) in pairs {
        let v = triangle_pair_linking(fw, i, j, margin)?;
        entries[i][j] = v;
        entries[j][i] = v;
    }
    Ok(LinkingMatrix { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::tensegrity::Construction;

    #[test]
    fn hopf_link_at_distinguished_point() {
        let c = Construction::new().unwrap();
        let fw = c.realize(rat(1, 2)).unwrap();
        let m = linking_matrix(&fw, 0.0).unwrap();
        assert!(m.is_symmetric());
        assert!(m.is_mutual_hopf_link(), "{m:?}");
    }

    #[test]
    fn symmetric_in_arguments() {
        let c = Construction::new().unwrap();
        let fw = c.realize(0.3).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert_eq!(
                        triangle_pair_linking(&fw, a, b, DEFAULT_MARGIN).unwrap(),
                        triangle_pair_linking(&fw, b, a, DEFAULT_MARGIN).unwrap()
                    );
                }
            }
        }
        assert!(triangle_pair_linking(&fw, 1, 1, DEFAULT_MARGIN).is_err());
    }

    #[test]
    fn unlinked_and_degenerate() {
        let a = [[int(0), int(0), int(0)], [int(4), int(0), int(0)], [int(0), int(4), int(0)]];
        let far = [[int(10), int(0), int(-1)], [int(10), int(1), int(1)], [int(11), int(0), int(1)]];
        assert_eq!(polygon_disk_crossings(&a, &far, 0.0).unwrap(), 0);
        let through = [[int(1), int(1), int(-1)], [int(1), int(1), int(1)], [int(-5), int(-5), int(0)]];
        assert_eq!(polygon_disk_crossings(&a, &through, 0.0).unwrap().abs(), 1);
        let touching = [[int(2), int(0), int(-1)], [int(2), int(0), int(1)], [int(9), int(9), int(0)]];
        assert!(matches!(polygon_disk_crossings(&a, &touching, 0.0), Err(Error::Degenerate(_))));
        let vertex_in = [[rat(1, 2), rat(1, 2), int(0)], [int(1), int(1), int(1)], [int(9), int(9), int(3)]];
        assert!(polygon_disk_crossings(&a, &vertex_in, 0.0).is_err());
    }
}
