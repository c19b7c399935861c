//! Resultant-based certificate that the intersection quantities keep
//! their signs along the stable arc over `0 < x < 1`.
//!
//! For each tracked numerator or denominator `F`, every point of the curve
//! where `F` vanishes projects to a real root of `Res_y(d8, F)`. Each root in
//! `(0, 1)` is either decided exactly (rational roots, using a quadratic surd
//! for the branch value) or by interval enclosures of the branch value.
//! A function with no stable-branch vanishing keeps the sign it has at
//! `(1/2, -1/3)`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::formulas::IntersectionFormulas;
use crate::error::{Error, Result};
use crate::exact::rational::{exact_sqrt, int, rat, sign};
use crate::exact::surd::eval_at_surd;
use crate::exact::{refine, resultant, sturm_isolate, Interval, IsolatingInterval, MPoly, QuadSurd, UPoly};
use crate::par::{self, Execution};
use crate::report::sign_str;
use crate::spectral::{cubic8, discriminant_x, XY};

/// Bisection budget for deciding irrational roots.
pub const REFINEMENT_BUDGET: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Vanishing {
    /// `F` vanishes on the stable branch over this root.
    StableBranch,
    /// `F` vanishes only on the other branch.
    OtherBranch,
    /// The refinement budget ran out before the sign was decided.
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootRecord {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub hi: BigRational,
    pub multiplicity: Option<u32>,
    pub on_stable_branch: bool,
    pub vanishes_on: Vanishing,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalRoot {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub root: BigRational,
    pub multiplicity: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    SignChange,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionRecord {
    pub name: String,
    pub polynomial: String,
    /// Coefficients of `Res_y(d8, F)` from the constant term upward.
    pub resultant: Vec<String>,
    pub resultant_text: String,
    pub stated_factorization_matches: Option<bool>,
    /// Rational roots on the whole real line.
    pub rational_roots: Vec<RationalRoot>,
    /// Primitive cofactor left after removing the rational roots.
    pub cofactor: String,
    pub roots_in_01: Vec<RootRecord>,
    pub sign_at_half: String,
    #[serde(skip)]
    pub sign: i8,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantityRecord {
    pub name: &'static str,
    pub numerator: &'static str,
    pub denominator: &'static str,
    pub sign: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub functions: Vec<FunctionRecord>,
    pub quantities: Vec<QuantityRecord>,
    pub verdict: bool,
}

impl CertificateReport {
    pub fn function(&self, name: &str) -> Option<&FunctionRecord> {
        self.functions.iter().find(|f| f.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Factorizations stated for three of the resultants.
pub fn stated_factorization(name: &str) -> Option<UPoly> {
    let lin = |r: i64| UPoly::linear_root(int(r));
    let x = UPoly::from_i64(&[0, 1]);
    match name {
        "N_tau" => Some(UPoly::from_factors(
            int(-384),
            &[(x, 1), (lin(3), 1), (lin(-2), 1), (lin(1), 3)],
        )),
        "D_tau" => Some(UPoly::from_factors(
            int(48),
            &[(lin(3), 1), (UPoly::from_i64(&[-1, 2]), 1), (lin(1), 2)],
        )),
        "N1" => Some(UPoly::from_factors(
            int(98304),
            &[
                (x, 1),
                (lin(3), 4),
                (lin(1), 7),
                (UPoly::from_i64(&[-3, 4, 7, -20, 3]), 1),
            ],
        )),
        _ => None,
    }
}

/// `Res_y(d8, F)` as a univariate polynomial in `x`.
pub fn resultant_in_x(f: &MPoly) -> Result<UPoly> {
    let r = resultant(&cubic8(), f, "y")?;
    let r = r.with_vars(&["x"])?;
    r.to_univariate()
        .ok_or_else(|| Error::verification("resultant", "resultant is not univariate in x"))
}

fn b_poly() -> UPoly {
    UPoly::from_i64(&[-3, -1, 1])
}

/// Branch values `(b +- sqrt(disc)) / 6` at a rational `x`, as surds or
/// rationals.
enum BranchValue {
    Rational(BigRational),
    Surd(QuadSurd),
}

fn branch_value(x: &BigRational, plus: bool) -> BranchValue {
    let b = b_poly().eval(x);
    let disc = discriminant_x().eval(x);
    let six = int(6);
    let s = if plus { BigRational::one() } else { -BigRational::one() };
    match exact_sqrt(&disc) {
        Some(r) => BranchValue::Rational((b + s * r) / six),
        None => BranchValue::Surd(QuadSurd::new(&b / &six, s / six, disc)),
    }
}

fn vanishes_at(f: &MPoly, x: &BigRational, plus: bool) -> bool {
    match branch_value(x, plus) {
        BranchValue::Rational(y) => f.eval(&[x.clone(), y]).is_zero(),
        BranchValue::Surd(y) => eval_at_surd(f, x, &y).is_zero(),
    }
}

/// Enclosure of `F(x, y(x))` for `x` in the interval, on the stable
/// (`plus`) or the other branch.
fn branch_enclosure(f: &MPoly, x: &Interval, plus: bool) -> Option<Interval> {
    let xs = [x.clone()];
    let xp = MPoly::from_univariate(&["x"], "x", &b_poly());
    let dp = MPoly::from_univariate(&["x"], "x", &discriminant_x());
    let b = xp.eval_interval(&xs);
    let tol = &x.width() / int(1 << 20);
    let tol = if tol.is_zero() { rat(1, 1 << 30) } else { tol };
    let mut root = dp.eval_interval(&xs).sqrt(&tol)?;
    if !plus {
        root = -&root;
    }
    let six = Interval::point(rat(1, 6));
    let y = &(&b + &root) * &six;
    Some(f.eval_interval(&[x.clone(), y]))
}

fn decide_root(f: &MPoly, res: &UPoly, root: &IsolatingInterval, rational: &[BigRational]) -> RootRecord {
    let exact = if root.is_exact() {
        Some(root.lo.clone())
    } else {
        rational.iter().find(|r| root.lo < **r && **r < root.hi).cloned()
    };
    let (vanishes_on, lo, hi) = match exact {
        Some(r) => {
            let v = if vanishes_at(f, &r, true) {
                Vanishing::StableBranch
            } else {
                Vanishing::OtherBranch
            };
            (v, r.clone(), r)
        }
        None => {
            let mut iv = root.clone();
            let mut verdict = Vanishing::Undecided;
            for _ in 0..=REFINEMENT_BUDGET {
                // d has constant leading coefficient in y and two real
                // branches here, so the common root lies on one of them
                let x = iv.as_interval();
                if branch_enclosure(f, &x, true).is_some_and(|e| !e.contains_zero()) {
                    verdict = Vanishing::OtherBranch;
                    break;
                }
                if branch_enclosure(f, &x, false).is_some_and(|e| !e.contains_zero()) {
                    verdict = Vanishing::StableBranch;
                    break;
                }
                let half = (&iv.hi - &iv.lo) / int(2);
                iv = refine(res, &iv, &half);
                if iv.is_exact() {
                    break;
                }
            }
            (verdict, iv.lo, iv.hi)
        }
    };
    RootRecord {
        lo,
        hi,
        multiplicity: root.multiplicity_hint,
        on_stable_branch: vanishes_on == Vanishing::StableBranch,
        vanishes_on,
    }
}

/// Builds the certificate record for one function.
pub fn certify_function(name: &str, f: &MPoly) -> Result<FunctionRecord> {
    let res = resultant_in_x(f)?;
    let stated_factorization_matches = stated_factorization(name).map(|p| p == res);
    let rational: Vec<BigRational> = res.rational_roots();
    let mut cofactor = res.clone();
    let rational_roots = rational
        .iter()
        .map(|r| {
            let m = res.multiplicity_of(r);
            cofactor = cofactor.div_rem(&UPoly::linear_root(r.clone()).pow(m)).0;
            RationalRoot {
                root: r.clone(),
                multiplicity: m,
            }
        })
        .collect();
    let cofactor = UPoly::new(
        cofactor
            .primitive_integer_coeffs()
            .into_iter()
            .map(BigRational::from_integer)
            .collect(),
    );
    let window = Interval::new(int(0), int(1));
    let roots_in_01: Vec<RootRecord> = sturm_isolate(&res, &window)
        .iter()
        .map(|r| decide_root(f, &res, r, &rational))
        .collect();
    let s = sign(&f.eval(&[rat(1, 2), rat(-1, 3)]));
    let status = if roots_in_01.iter().any(|r| r.vanishes_on == Vanishing::StableBranch) || s == 0 {
        Status::SignChange
    } else if roots_in_01.iter().any(|r| r.vanishes_on == Vanishing::Undecided) {
        Status::Inconclusive
    } else {
        Status::Certified
    };
    Ok(FunctionRecord {
        name: name.to_string(),
        polynomial: f.to_string(),
        resultant: res.coeffs().iter().map(|c| c.to_string()).collect(),
        resultant_text: res.to_string(),
        stated_factorization_matches,
        rational_roots,
        cofactor: cofactor.to_string(),
        roots_in_01,
        sign_at_half: sign_str(s).to_string(),
        sign: s,
        status,
    })
}

/// Certifies all seven tracked functions and the five quantities
/// `tau, 1 - tau, R1, R2, 1 - R1 - R2` built from them.
pub fn persistence_certificate(f: &IntersectionFormulas, exec: Execution) -> Result<CertificateReport> {
    let tracked = f.tracked();
    let functions = par::map(exec, &tracked, |(name, poly)| certify_function(name, poly))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let sign_of = |name: &str| functions.iter().find(|r| r.name == name).map_or(0, |r| r.sign);
    let quantities: Vec<QuantityRecord> = [
        ("tau", "N_tau", "D_tau"),
        ("1 - tau", "D_tau - N_tau", "D_tau"),
        ("R1", "N1", "D"),
        ("R2", "N2", "D"),
        ("1 - R1 - R2", "D - N1 - N2", "D"),
    ]
    .into_iter()
    .map(|(name, num, den)| QuantityRecord {
        name,
        numerator: num,
        denominator: den,
        sign: sign_str(sign_of(num) * sign_of(den)).to_string(),
    })
    .collect();
    let verdict = functions.iter().all(|r| r.status == Status::Certified)
        && quantities.iter().all(|q| q.sign == "+");
    Ok(CertificateReport {
        functions,
        quantities,
        verdict,
    })
}

/// Comparison of resultant roots with the rational points of the curve.
#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub point_x_coordinates: Vec<String>,
    pub roots_by_function: Vec<(String, Vec<String>)>,
    /// Every rational resultant root is the x-coordinate of a rational point.
    pub roots_are_point_coordinates: bool,
    /// Rational roots other than 1/2 all lie in {0, 1, -2, 3}.
    pub roots_within_0_1_m2_3: bool,
    /// Functions whose resultant has the root 1/2.
    pub half_in: Vec<String>,
    /// Every function with root 1/2 vanishes there only on the other
    /// branch, at (1/2, -3/4), where D_tau = 0.
    pub half_only_other_branch: bool,
    /// Among the resultants with a stated factorization (N_tau, D_tau, N1),
    /// 1/2 is a root of D_tau's only.
    pub half_only_in_d_tau_among_stated: bool,
    pub consistent: bool,
}

pub fn remark_check(report: &CertificateReport) -> RemarkReport {
    let xs: Vec<BigRational> = crate::spectral::affine_rational_points()
        .into_iter()
        .map(|(x, _)| x)
        .fold(Vec::new(), |mut acc, x| {
            if !acc.contains(&x) {
                acc.push(x);
            }
            acc
        });
    let half = rat(1, 2);
    let allowed = [int(0), int(1), int(-2), int(3)];
    let mut roots_by_function = Vec::new();
    let mut all_points = true;
    let mut within = true;
    let mut half_in = Vec::new();
    let mut half_other = true;
    let mut half_in_stated = Vec::new();
    for rec in &report.functions {
        let roots: Vec<&BigRational> = rec.rational_roots.iter().map(|r| &r.root).collect();
        all_points &= roots.iter().all(|r| xs.contains(r));
        within &= roots.iter().all(|r| **r == half || allowed.contains(r));
        if roots.contains(&&half) {
            half_in.push(rec.name.clone());
            if rec.stated_factorization_matches.is_some() {
                half_in_stated.push(rec.name.clone());
            }
            half_other &= rec
                .roots_in_01
                .iter()
                .filter(|r| r.lo == half && r.hi == half)
                .all(|r| r.vanishes_on == Vanishing::OtherBranch);
        }
        roots_by_function.push((rec.name.clone(), roots.iter().map(|r| r.to_string()).collect()));
    }
    let d_tau = MPoly::parse(XY, "2*x*y - 5*y - 3").expect("valid");
    half_other &= d_tau.eval(&[half.clone(), rat(-3, 4)]).is_zero();
    let stated = report
        .functions
        .iter()
        .filter(|r| r.stated_factorization_matches.is_some())
        .count();
    let half_only_in_d_tau_among_stated = stated == 3 && half_in_stated == ["D_tau"];
    RemarkReport {
        point_x_coordinates: xs.iter().map(|x| x.to_string()).collect(),
        roots_by_function,
        roots_are_point_coordinates: all_points,
        roots_within_0_1_m2_3: within,
        half_in,
        half_only_other_branch: half_other,
        half_only_in_d_tau_among_stated,
        consistent: all_points && within && half_other && half_only_in_d_tau_among_stated,
    }
}
