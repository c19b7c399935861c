//! Parsing of the stress parameter: rationals select the exact pipeline,
//! decimals the floating one.

use num_rational::BigRational;
use tensegrity_core::exact::rational::{parse_rational, to_f64};

#[derive(Clone, Debug, PartialEq)]
pub enum XValue {
    Exact(BigRational),
    Float(f64),
}

impl XValue {
    pub fn parse(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let is_decimal = t.contains(['.', 'e', 'E']) || t.eq_ignore_ascii_case("nan") || t.to_ascii_lowercase().contains("inf");
        if is_decimal {
            let v: f64 = t.parse().map_err(|_| format!("invalid decimal `{t}`"))?;
            if !v.is_finite() {
                return Err(format!("x must be finite, got `{t}`"));
            }
            Ok(XValue::Float(v))
        } else {
            parse_rational(t).map(XValue::Exact).map_err(|e| e.to_string())
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            XValue::Exact(r) => to_f64(r),
            XValue::Float(v) => *v,
        }
    }

    /// Strictly inside (0, 1), decided exactly for rationals.
    pub fn in_open_unit_interval(&self) -> bool {
        match self {
            XValue::Exact(r) => {
                let zero = BigRational::from_integer(0.into());
                let one = BigRational::from_integer(1.into());
                *r > zero && *r < one
            }
            XValue::Float(v) => *v > 0.0 && *v < 1.0,
        }
    }
}
