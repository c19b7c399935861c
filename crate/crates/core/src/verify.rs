//! Master verification: runs every hard check and assembles one report.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::elliptic::{model_invariants_check, torsion_subgroup, verify_birational_identity};
use crate::error::{Error, Result};
use crate::exact::rational::{int, rat};
use crate::linking::certificate::persistence_certificate;
use crate::linking::{derive_intersection_formulas, intersection_params_at, remark_check};
use crate::par::{self, Execution};
use crate::spectral::{
    derive_spectral_cubic, discriminant_positive_on_unit_interval, rational_points, StressPoint,
};
use crate::tensegrity::stress::{null_vector_identity, p0_at};
use crate::tensegrity::{stress_matrix, Construction};
use crate::trajectory::{build_curves, verify_g_identity_on_curve};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Hard checks decide the verdict; soft ones are reported only.
    pub hard: bool,
    pub detail: Value,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub verdict: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| c.hard && !c.passed).collect()
    }

    /// Each check appears as `"name": "pass" | "fail"`, with details under
    /// `"details"`; the torsion structure is also reported at top level.
    pub fn to_json_value(&self) -> Value {
        let mut top = Map::new();
        let mut details = Map::new();
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "fail" };
            top.insert(c.name.to_string(), Value::String(status.into()));
            details.insert(c.name.to_string(), c.detail.clone());
        }
        if let Some(s) = self
            .check("torsion")
            .and_then(|c| c.detail.get("structure"))
        {
            top.insert("torsion_structure".into(), s.clone());
        }
        top.insert(
            "failures".into(),
            Value::Array(self.failures().iter().map(|c| Value::String(c.name.into())).collect()),
        );
        top.insert("details".into(), Value::Object(details));
        top.insert("verdict".into(), Value::Bool(self.verdict));
        Value::Object(top)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }
}

type Check = (&'static str, bool, fn() -> Result<Value>);

fn outcome(name: &'static str, hard: bool, r: Result<Value>) -> CheckResult {
    match r {
        Ok(detail) => CheckResult {
            name,
            passed: true,
            hard,
            detail,
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            hard,
            detail: Value::String(e.to_string()),
        },
    }
}

fn ensure(cond: bool, check: &str, detail: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::verification(check, detail))
    }
}

fn det_identity() -> Result<Value> {
    let d = derive_spectral_cubic()?;
    Ok(json!({ "det": d.to_string() }))
}

fn representation() -> Result<Value> {
    let c = Construction::new()?;
    Ok(json!({ "group_order": c.group.len(), "homomorphism_products": 144 }))
}

fn null_vector() -> Result<Value> {
    let omega = stress_matrix()?;
    let r = null_vector_identity(&omega)?;
    ensure(r.iter().all(|e| e.is_zero()), "null_vector", "Omega p0 is not zero modulo d")?;
    let p = p0_at(&rat(1, 2), &rat(-1, 3));
    ensure(p == [int(0), rat(5, 3), rat(5, 3)], "null_vector", "p0(1/2, -1/3) != (0, 5/3, 5/3)")?;
    Ok(json!({ "p0_at_distinguished": p.iter().map(|c| c.to_string()).collect::<Vec<_>>() }))
}

fn spectral_points() -> Result<Value> {
    let pts = rational_points()?;
    ensure(discriminant_positive_on_unit_interval(), "spectral", "discriminant vanishes on [0, 1]")?;
    Ok(json!({ "rational_points": pts.len() }))
}

fn intersection_formulas() -> Result<Value> {
    let c = Construction::new()?;
    let f = derive_intersection_formulas(&c.group)?;
    let p = intersection_params_at(&f, &StressPoint::stable(rat(1, 2))?)?;
    ensure(
        p.tau == rat(1, 2) && p.r1 == rat(1, 6) && p.r2 == rat(1, 6),
        "intersection_formulas",
        "values at (1/2, -1/3) differ from (1/2, 1/6, 1/6)",
    )?;
    Ok(json!({ "tau": p.tau.to_string(), "r1": p.r1.to_string(), "r2": p.r2.to_string() }))
}

fn linking_at_half() -> Result<Value> {
    let c = Construction::new()?;
    let fw = c.realize(rat(1, 2))?;
    ensure(fw.cables_equal_length(0.0), "cuboctahedron", "cable lengths differ at x = 1/2")?;
    let m = crate::linking::linking_matrix(&fw, 0.0)?;
    ensure(m.is_mutual_hopf_link(), "linking", format!("{:?}", m.entries))?;
    Ok(json!({ "linking_matrix": m.entries }))
}

fn certificate() -> Result<Value> {
    let c = Construction::new()?;
    let f = derive_intersection_formulas(&c.group)?;
    let report = persistence_certificate(&f, Execution::default())?;
    let stated = report
        .functions
        .iter()
        .filter_map(|r| r.stated_factorization_matches.map(|m| (r.name.clone(), m)))
        .collect::<Vec<_>>();
    ensure(
        stated.len() == 3 && stated.iter().all(|(_, m)| *m),
        "resultant_factorizations",
        format!("{stated:?}"),
    )?;
    ensure(report.verdict, "persistence", "not every function is certified")?;
    Ok(serde_json::to_value(&report).expect("serializes"))
}

fn remark() -> Result<Value> {
    let c = Construction::new()?;
    let f = derive_intersection_formulas(&c.group)?;
    let report = persistence_certificate(&f, Execution::Sequential)?;
    let r = remark_check(&report);
    let v = serde_json::to_value(&r).expect("serializes");
    ensure(r.consistent, "remark", v.to_string())?;
    Ok(v)
}

fn birational() -> Result<Value> {
    let q = verify_birational_identity()?;
    Ok(json!({ "quotient_terms": q.num_terms() }))
}

fn torsion() -> Result<Value> {
    let t = torsion_subgroup()?;
    ensure(t.elements.len() == 12, "torsion", format!("{} points", t.elements.len()))?;
    ensure(t.structure == (2, 6), "torsion", format!("structure {:?}", t.structure))?;
    ensure(t.two_torsion_count() == 4, "torsion", "2-torsion is not Z/2 x Z/2")?;
    let rep = t.report();
    let mut v = serde_json::to_value(&rep).expect("serializes");
    v["structure"] = json!([t.structure.0, t.structure.1]);
    Ok(v)
}

fn model_isomorphism() -> Result<Value> {
    Ok(serde_json::to_value(model_invariants_check()?).expect("serializes"))
}

fn trajectory_curve() -> Result<Value> {
    let c = build_curves()?;
    ensure(c.not_diagonal(), "trajectory", "K is divisible by u - v")?;
    ensure(c.singular_point_check(&int(0), &int(0)), "trajectory", "(0, 0) is not singular")?;
    ensure(c.singular_point_check(&rat(2, 3), &rat(2, 3)), "trajectory", "(2/3, 2/3) is not singular")?;
    let g = c.gradient_at(&rat(1, 6), &rat(1, 6));
    ensure(
        g[0] == int(0) && !c.singular_point_check(&rat(1, 6), &rat(1, 6)),
        "trajectory",
        "(1/6, 1/6) is not a smooth point of K",
    )?;
    ensure(
        c.g.eval(&[rat(1, 3), rat(1, 36)]) == int(0),
        "trajectory",
        "G(1/3, 1/36) != 0",
    )?;
    Ok(json!({ "k_degree": 7, "k_terms": c.k.num_terms() }))
}

fn g_identity() -> Result<Value> {
    verify_g_identity_on_curve(&crate::linking::IntersectionFormulas::printed())?;
    Ok(json!({ "residual": "0" }))
}

/// Every check, in report order: (name, hard, runner).
pub fn all_checks() -> Vec<Check> {
    vec![
        ("det_identity", true, det_identity),
        ("representation", true, representation),
        ("null_vector", true, null_vector),
        ("rational_points", true, spectral_points),
        ("intersection_formulas", true, intersection_formulas),
        ("linking_at_distinguished_point", true, linking_at_half),
        ("persistence_certificate", true, certificate),
        ("remark_check", true, remark),
        ("birational_identity", true, birational),
        ("torsion", true, torsion),
        ("model_isomorphism", true, model_isomorphism),
        ("trajectory_curve", true, trajectory_curve),
        ("g_identity", true, g_identity),
    ]
}

pub fn run_all(exec: Execution) -> VerificationReport {
    let checks = all_checks();
    let results = par::map(exec, &checks, |(name, hard, f)| outcome(name, *hard, f()));
    let verdict = results.iter().all(|c| c.passed || !c.hard);
    VerificationReport {
        checks: results,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn master_report_passes() {
        let r = run_all(Execution::default());
        assert!(r.verdict, "{}", r.to_json());
        let v = r.to_json_value();
        assert_eq!(v["det_identity"], "pass");
        assert_eq!(v["torsion_structure"], json!([2, 6]));
        assert_eq!(v["remark_check"], "pass");
    }
}
