//! Exact arithmetic kernel: rationals, sparse polynomials, resultants,
//! Sturm isolation and interval enclosures.

pub mod interval;
pub mod mpoly;
mod parse;
pub mod rational;
pub mod resultant;
pub mod sturm;
pub mod surd;
pub mod upoly;

pub use interval::Interval;
pub use mpoly::MPoly;
pub use num_rational::BigRational;
pub use resultant::resultant;
pub use sturm::{refine, sturm_isolate, IsolatingInterval, SturmSequence};
pub use surd::QuadSurd;
pub use upoly::UPoly;

/// `Some(q)` iff `g = f*q`. `f` must be nonzero.
pub fn divides(f: &MPoly, g: &MPoly) -> Option<MPoly> {
    assert!(!f.is_zero(), "divisor must be nonzero");
    g.divide_exact(f)
}

/// Interval enclosure of `f` over a box given as `(variable, interval)`
/// pairs. Every variable of `f` must be assigned.
pub fn interval_eval(f: &MPoly, bx: &[(&str, Interval)]) -> crate::Result<Interval> {
    let vars = f.vars();
    let ivs = vars
        .iter()
        .map(|v| {
            bx.iter()
                .find(|(n, _)| n == v)
                .map(|(_, iv)| iv.clone())
                .ok_or_else(|| crate::Error::Domain(format!("variable {v} not assigned")))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(f.eval_interval(&ivs))
}
