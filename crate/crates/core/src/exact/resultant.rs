//! Sylvester resultants by fraction-free (Bareiss) elimination.

use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Sylvester matrix of `f` and `g` as univariate polynomials in `var`, with
/// the `deg g` rows of `f` first and coefficients in descending powers.
pub fn sylvester_matrix(f: &MPoly, g: &MPoly, var: &str) -> Vec<Vec<MPoly>> {
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let zero = MPoly::zero(&f.vars());
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in fc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in gc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss fraction-free elimination; every division is exact.
pub fn determinant(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix");
    if n == 0 {
        panic!("determinant of an empty matrix");
    }
    let zero = m[0][0].zero_like();
    let mut negate = false;
    let mut prev = zero.constant_like(crate::exact::rational::int(1));
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .divide_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `Res_var(f, g)`: the Sylvester determinant, eliminating `var`.
pub fn resultant(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::UndefinedResultant);
    }
    let vars = f.vars();
    if f.is_zero() || g.is_zero() {
        return Ok(MPoly::zero(&vars));
    }
    let m = f.degree_in(var).unwrap_or(0);
    let n = g.degree_in(var).unwrap_or(0);
    match (m, n) {
        (0, 0) => Ok(MPoly::one(&vars)),
        (0, _) => Ok(f.pow(n)),
        (_, 0) => Ok(g.pow(m)),
        _ => Ok(determinant(sylvester_matrix(f, g, var))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XY: &[&str] = &["x", "y"];

    fn p(s: &str) -> MPoly {
        MPoly::parse(XY, s).unwrap()
    }

    fn d8() -> MPoly {
        p("8*(x^2*y + 3*x^2 - x*y - 3*y^2 - 3*x - 3*y)")
    }

    #[test]
    fn dtau_resultant_matches_closed_form() {
        let r = resultant(&d8(), &p("2*x*y - 5*y - 3"), "y").unwrap();
        assert_eq!(r, p("96*x^4 - 528*x^3 + 912*x^2 - 624*x + 144"));
        assert_eq!(r, p("48*(x-3)*(2*x-1)*(x-1)^2"));
    }

    #[test]
    fn ntau_resultant_matches_closed_form() {
        let r = resultant(&d8(), &p("(-x+y)*(2*x+3*y+1)"), "y").unwrap();
        assert_eq!(r, p("-384*x*(x-3)*(x+2)*(x-1)^3"));
    }

    #[test]
    fn linear_pair() {
        let r = resultant(&p("y - 1"), &p("y + 1"), "y").unwrap();
        assert_eq!(r, p("2"));
    }

    #[test]
    fn quadratic_linear_formula() {
        // Res(a y^2 + b y + c, d y + e) = a e^2 - b d e + c d^2
        let f = p("-24*y^2 + 8*(x^2 - x - 3)*y + 24*x^2 - 24*x");
        let g = p("(2*x - 5)*y - 3");
        let (a, b, c) = (p("-24"), p("8*(x^2 - x - 3)"), p("24*x^2 - 24*x"));
        let (d, e) = (p("2*x - 5"), p("-3"));
        let expected = &(&(&a * &e.pow(2)) - &(&(&b * &d) * &e)) + &(&c * &d.pow(2));
        assert_eq!(resultant(&f, &g, "y").unwrap(), expected);
    }

    #[test]
    fn constant_cases() {
        assert_eq!(resultant(&p("3"), &p("y^2 + x"), "y").unwrap(), p("9"));
        assert!(resultant(&p("0"), &p("y"), "y").unwrap().is_zero());
        assert_eq!(resultant(&p("0"), &p("0"), "y"), Err(Error::UndefinedResultant));
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let m = vec![
            vec![p("0"), p("1"), p("x")],
            vec![p("1"), p("0"), p("0")],
            vec![p("0"), p("y"), p("1")],
        ];
        // det = -(1*1 - x*y)
        assert_eq!(determinant(m), p("x*y - 1"));
    }
}
