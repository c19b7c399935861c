//! Property checks shared by the property suite and the acceptance target.
//! Each runs a fixed number of proptest cases and reports the first
//! counterexample as an error string.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use tensegrity_core::exact::rational::{int, rat};
use tensegrity_core::exact::{resultant, sturm_isolate, Interval, MPoly, UPoly};
use tensegrity_core::linking::params::solve_from_framework;
use tensegrity_core::linking::{
    intersection_params_at, linking_matrix, Crossing, IntersectionFormulas, DEFAULT_MARGIN,
};
use tensegrity_core::spectral::StressPoint;
use tensegrity_core::tensegrity::{Construction, A4};

pub const X: &[&str] = &["x"];
pub const XY: &[&str] = &["x", "y"];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn check<T: std::fmt::Debug>(
    cases: u32,
    strategy: impl Strategy<Value = T>,
    test: impl Fn(T) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-5i64..=5, 1..=5)
        .prop_map(|c| UPoly::from_i64(&c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn as_mpoly(p: &UPoly) -> MPoly {
    MPoly::from_univariate(X, "x", p)
}

fn res(f: &UPoly, g: &UPoly) -> BigRational {
    resultant(&as_mpoly(f), &as_mpoly(g), "x")
        .expect("nonzero inputs")
        .constant_term()
}

/// Pairs that share a linear factor about half of the time.
fn upoly_pair() -> impl Strategy<Value = (UPoly, UPoly)> {
    (upoly(), upoly(), prop::option::of(-3i64..=3)).prop_map(|(f, g, common)| match common {
        Some(r) => {
            let l = UPoly::linear_root(int(r));
            (f.mul(&l), g.mul(&l))
        }
        None => (f, g),
    })
}

/// `Res(f, g) = 0` iff `gcd(f, g)` is nonconstant (Euclid over Q).
pub fn resultant_gcd(cases: u32) -> Result<(), String> {
    check(cases, upoly_pair(), |(f, g)| {
        let shared = f.gcd(&g).degree().unwrap_or(0) > 0;
        prop_assert_eq!(res(&f, &g).is_zero(), shared, "f = {}, g = {}", f, g);
        Ok(())
    })
}

/// `Res(f1 f2, g) = Res(f1, g) Res(f2, g)`.
pub fn multiplicativity(cases: u32) -> Result<(), String> {
    check(cases, (upoly(), upoly(), upoly()), |(f1, f2, g)| {
        prop_assert_eq!(res(&f1.mul(&f2), &g), res(&f1, &g) * res(&f2, &g));
        Ok(())
    })
}

/// `Res(a f, g) = a^deg(g) Res(f, g)`.
pub fn scaling_law(cases: u32) -> Result<(), String> {
    check(cases, (upoly(), upoly(), -4i64..=4), |(f, g, a)| {
        prop_assume!(a != 0);
        let n = g.degree().unwrap_or(0) as i32;
        let lhs = res(&f.scale(&int(a)), &g);
        prop_assert_eq!(lhs, num_traits::pow::Pow::pow(int(a), n) * res(&f, &g));
        Ok(())
    })
}

/// `Res(f, g) = (-1)^(mn) Res(g, f)`.
pub fn swap_sign(cases: u32) -> Result<(), String> {
    check(cases, (upoly(), upoly()), |(f, g)| {
        let mn = f.degree().unwrap_or(0) * g.degree().unwrap_or(0);
        let sign = if mn % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(res(&f, &g), sign * res(&g, &f));
        Ok(())
    })
}

/// Polynomials with distinct simple roots at multiples of 1/2 in [-5, 5]
/// and an optional root-free quadratic factor.
fn rooted_poly() -> impl Strategy<Value = (Vec<BigRational>, UPoly)> {
    (
        prop::collection::btree_set(-10i64..=10, 0..=5),
        prop::option::of(1i64..=4),
        prop::sample::select(vec![-2i64, -1, 1, 3]),
    )
        .prop_map(|(halves, quad, lead)| {
            let roots: Vec<BigRational> = halves.iter().map(|&h| rat(h, 2)).collect();
            let mut p = UPoly::constant(int(lead));
            for r in &roots {
                p = p.mul(&UPoly::linear_root(r.clone()));
            }
            if let Some(c) = quad {
                p = p.mul(&UPoly::from_i64(&[c, 0, 1]));
            }
            (roots, p)
        })
}

/// Sturm isolation agrees with a sign scan on a grid that never meets a
/// root; each true root sits in exactly one isolating interval.
pub fn sturm_vs_grid(cases: u32) -> Result<(), String> {
    check(cases, rooted_poly(), |(roots, p)| {
        let window = Interval::new(int(-6), int(6));
        let isolated = sturm_isolate(&p, &window);
        let grid: Vec<BigRational> = (0..=83).map(|k| int(-6) + rat(k, 7) + rat(1, 13)).collect();
        let changes = grid
            .windows(2)
            .filter(|w| p.sign_at(&w[0]) * p.sign_at(&w[1]) < 0)
            .count();
        prop_assert_eq!(isolated.len(), changes);
        prop_assert_eq!(isolated.len(), roots.len());
        for r in &roots {
            let hits = isolated
                .iter()
                .filter(|iv| if iv.lo == iv.hi { iv.lo == *r } else { iv.lo < *r && *r < iv.hi })
                .count();
            prop_assert_eq!(hits, 1, "root {}", r);
        }
        Ok(())
    })
}

pub fn mpoly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..=3, 0u32..=3), -6i64..=6), 0..=6).prop_map(|terms| {
        terms.into_iter().fold(MPoly::zero(XY), |acc, ((a, b), c)| {
            let m = &MPoly::var(XY, "x").pow(a) * &MPoly::var(XY, "y").pow(b);
            &acc + &m.scale(&int(c))
        })
    })
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

/// A random point of a random box lies in the interval image of the box.
pub fn interval_enclosure(cases: u32) -> Result<(), String> {
    let boxed = (small_rational(), small_rational(), 0u32..=4, 0u32..=4, 0u32..=8, 0u32..=8);
    check(cases, (mpoly(), boxed), |(f, (x0, y0, wx, wy, tx, ty))| {
        let xw = rat(wx as i64, 4);
        let yw = rat(wy as i64, 4);
        let bx = [
            Interval::new(x0.clone(), &x0 + &xw),
            Interval::new(y0.clone(), &y0 + &yw),
        ];
        let pt = [&x0 + &(&xw * &rat(tx as i64, 8)), &y0 + &(&yw * &rat(ty as i64, 8))];
        let enclosure = f.eval_interval(&bx);
        prop_assert!(enclosure.contains(&f.eval(&pt)), "{} at {:?} not in {}", f, pt, enclosure);
        Ok(())
    })
}

/// Commutative ring axioms and evaluation as a ring homomorphism.
pub fn mpoly_ring_laws(cases: u32) -> Result<(), String> {
    check(cases, (mpoly(), mpoly(), mpoly(), small_rational(), small_rational()), |(a, b, c, x, y)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        let at = [x, y];
        prop_assert_eq!((&a * &b).eval(&at), a.eval(&at) * b.eval(&at));
        Ok(())
    })
}

/// `rho(gh) = rho(g) rho(h)` for all 144 ordered pairs.
pub fn homomorphism_products() -> Result<usize, String> {
    let group = A4::build().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for g in group.elements() {
        for h in group.elements() {
            if group.rho(&(*g * *h)) != group.rho(g) * group.rho(h) {
                return Err(format!("rho({g:?} {h:?}) differs from the product"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn unit_x() -> impl Strategy<Value = f64> {
    0.01f64..0.99
}

/// Relative equilibrium residual below `1e-9` on the stable branch.
pub fn equilibrium_samples(cases: u32) -> Result<(), String> {
    let c = Construction::new().map_err(|e| e.to_string())?;
    check(cases, 0.001f64..0.999, |x| {
        let fw = c.realize(x).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let r = fw.equilibrium_residual();
        prop_assert!(r < 1e-9, "x = {x}: residual {r:e}");
        Ok(())
    })
}

/// Every strut pierces the opposite triangle: interior crossing, mutual
/// Hopf link, and the closed forms agree with a direct solve from the
/// realized nodes.
pub fn linking_samples(cases: u32) -> Result<(), String> {
    let c = Construction::new().map_err(|e| e.to_string())?;
    let f = IntersectionFormulas::printed();
    check(cases, unit_x(), |x| {
        let fail = |e: tensegrity_core::Error| TestCaseError::fail(format!("x = {x}: {e}"));
        let fw = c.realize(x).map_err(fail)?;
        let p = intersection_params_at(&f, &fw.point).map_err(fail)?;
        prop_assert_eq!(p.classification, Crossing::InteriorCrossing, "x = {}", x);
        let m = linking_matrix(&fw, DEFAULT_MARGIN).map_err(fail)?;
        prop_assert!(m.is_mutual_hopf_link(), "x = {x}: {:?}", m.entries);
        let direct = solve_from_framework(&c.group, &fw).ok_or_else(|| TestCaseError::fail("singular solve"))?;
        let closed = p.as_f64();
        for k in 0..3 {
            prop_assert!((direct[k] - closed[k]).abs() < 1e-9, "x = {x}: {direct:?} vs {closed:?}");
        }
        Ok(())
    })
}

/// `tau(1 - x) = 1 - tau(x)` and `R1(1 - x) = R2(x)`.
pub fn swap_symmetry(cases: u32) -> Result<(), String> {
    let f = IntersectionFormulas::printed();
    check(cases, unit_x(), |x| {
        let at = |x: f64| {
            let pt = StressPoint::stable(x).map_err(|e| TestCaseError::fail(e.to_string()))?;
            intersection_params_at(&f, &pt)
                .map(|p| p.as_f64())
                .map_err(|e| TestCaseError::fail(e.to_string()))
        };
        let a = at(x)?;
        let b = at(1.0 - x)?;
        prop_assert!((a[0] + b[0] - 1.0).abs() < 1e-9);
        prop_assert!((a[1] - b[2]).abs() < 1e-9 && (a[2] - b[1]).abs() < 1e-9);
        Ok(())
    })
}
