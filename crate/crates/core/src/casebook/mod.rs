//! Composite audits: one report per surface of the classification table, one
//! per excluded group, and the two derivation pipelines.
//!
//! A report is an ordered list of checks. Each check carries a short claim id
//! (`case-10/sextic-count`, `m20/hurwitz`, ...) so a failure can be traced to
//! the statement it tests.

mod audits;
mod cases;
mod derive;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::coverbook::{euler_residual, CoverScenario, NBound};
use crate::exactfield::is_prime;
use crate::multipoly::Poly;

pub use crate::matgroup::orbit_length_menu;
pub use audits::{
    audit_nonexistence, bidegree_invariants, order_five_scenario, quadric_fixed_points, quadric_names,
    sigma_fixed_point_membership, FixedPointReport, NONEXISTENCE_GROUPS,
};
pub use cases::{hessian, verify_case, CASE_IDS};
pub use derive::{
    a_parameter, a_quadratic, base_points, derive_m9_sextics, derive_quintic_dp_sextic, f_a, hesse_pair, m9_fixed_point_data, pipeline_report,
    m9_j_candidates, printed_relations, proper_transform_invariance, quadratic_map, quintic_basis, quintic_constraints,
    JSearch, M9Sextic, NodeConstraint, NodeConstraintSystem, ProperTransform, QuinticSolution, PIPELINES, STRIP_ORDER,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    id: String,
    checks: Vec<Check>,
    verdict: bool,
}

impl AuditReport {
    pub fn new(id: &str) -> AuditReport {
        AuditReport { id: id.to_string(), checks: Vec::new(), verdict: true }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn passed(&self) -> bool {
        self.verdict
    }

    pub fn check(&mut self, name: &str, anchor: &str, passed: bool, witness: impl fmt::Display) -> bool {
        let witness = witness.to_string().replace('\n', " ");
        self.verdict &= passed;
        self.checks.push(Check { name: name.into(), anchor: anchor.into(), passed, witness });
        passed
    }

    /// Records a failed check from an error and returns `None`.
    pub fn attempt<T, E: fmt::Display>(&mut self, name: &str, anchor: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, anchor, false, format!("error: {e}"));
                None
            }
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn witness(&self, name: &str) -> Option<&str> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.witness.as_str())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AUDIT {}", self.id)?;
        for c in &self.checks {
            writeln!(f, "CHECK {} {} {} {}", c.name, c.anchor, verdict_word(c.passed), c.witness)?;
        }
        writeln!(f, "VERDICT {} {}", self.id, verdict_word(self.verdict))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditConfig {
    pub primes: Vec<u64>,
    pub n_bound: NBound,
}

impl Default for AuditConfig {
    fn default() -> AuditConfig {
        AuditConfig { primes: vec![7, 11, 13], n_bound: NBound::Ten }
    }
}

/// Runs independent audits in parallel; the output keeps the input order.
pub fn run_all<F>(ids: &[&str], f: F) -> Vec<AuditReport>
where
    F: Fn(&str) -> AuditReport + Sync,
{
    ids.par_iter().map(|id| f(id)).collect()
}

/// Why a prime cannot be used for a smoothness scan, if it cannot.
pub fn bad_prime_reason(f: &Poly, p: u64, group_order: usize) -> Option<String> {
    if !is_prime(p) {
        return Some("not prime".into());
    }
    if (group_order as u64).is_multiple_of(p) {
        return Some(format!("divides |G| = {group_order}"));
    }
    let n = if f.has_rational_coefficients() { 1 } else { f.field_order() as u64 };
    if !(p - 1).is_multiple_of(n) {
        return Some(format!("coefficients need p = 1 mod {n}"));
    }
    None
}

/// Scans f over F_p at every good prime. Passes when at least one prime was
/// usable and no singular point turned up; this is evidence, not a proof.
pub(crate) fn scan_check(r: &mut AuditReport, name: &str, anchor: &str, f: &Poly, group_order: usize, primes: &[u64]) {
    let mut parts = Vec::new();
    let mut scanned = 0;
    let mut clean = true;
    for &p in primes {
        if let Some(why) = bad_prime_reason(f, p, group_order) {
            parts.push(format!("p={p} skipped ({why})"));
            continue;
        }
        match f.finite_field_singular_scan(p) {
            Ok(pts) if pts.is_empty() => {
                scanned += 1;
                parts.push(format!("p={p} no singular point"));
            }
            Ok(pts) => {
                scanned += 1;
                clean = false;
                parts.push(format!("p={p} singular at {:?}", pts.first().expect("nonempty")));
            }
            Err(e) => parts.push(format!("p={p} skipped ({e})")),
        }
    }
    parts.push("evidence only".into());
    r.check(name, anchor, clean && scanned > 0, parts.join("; "));
}

pub(crate) fn euler_check(r: &mut AuditReport, anchor: &str, (e, m, n, g): (i64, u32, u32, i64), cfg: &AuditConfig) {
    let Some(s) = r.attempt("euler", anchor, CoverScenario::with_bound(e, m, n, Some(g), cfg.n_bound)) else { return };
    let res = euler_residual(&s);
    r.check("euler", anchor, res == 0, format!("e_min={e} m={m} n={n} g={g} residual={res}"));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_format() {
        let mut r = AuditReport::new("demo");
        r.check("one", "demo/a", true, "x=1");
        assert!(r.passed());
        r.check("two", "demo/b", false, "line\nbreak");
        assert!(!r.passed());
        assert_eq!(r.to_text(), "AUDIT demo\nCHECK one demo/a PASS x=1\nCHECK two demo/b FAIL line break\nVERDICT demo FAIL\n");
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.starts_with("{\"id\":\"demo\",\"checks\":[{\"name\":\"one\""));
        assert!(j.ends_with("\"verdict\":false}"));
    }

    #[test]
    fn prime_filter() {
        let f = Poly::parse(3, "x1^3*x2 + x2^3*x3 + x3^3*x1").unwrap();
        assert!(bad_prime_reason(&f, 7, 168).is_some());
        assert!(bad_prime_reason(&f, 11, 168).is_none());
        let g = Poly::parse(3, "x1^2 + z3*x2^2").unwrap();
        assert!(bad_prime_reason(&g, 11, 1).is_some());
        assert!(bad_prime_reason(&g, 13, 1).is_none());
    }
}
