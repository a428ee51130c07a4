//! Seeded property suites and the acceptance checklist.
//!
//! `acceptance` evaluates the ten acceptance criteria against the library and
//! returns one line each. `property_suites` runs the randomized algebraic
//! identities; both are deterministic for a given seed.

use std::fmt;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::casebook::{
    audit_nonexistence, derive_m9_sextics, derive_quintic_dp_sextic, proper_transform_invariance, verify_case,
    AuditConfig, AuditReport, NONEXISTENCE_GROUPS,
};
use crate::coverbook::{euler_residual, minimizing_cutoff, mori_bound, nikulin_fix_count, CoverScenario};
use crate::delpezzo::{intersection_graph, DivisorClass, PicardLattice};
use crate::exactfield::{phi, Cyclo};
use crate::invariants::{invariant_dimension, reynolds};
use crate::linalg::Matrix;
use crate::matgroup::catalogue::{catalogue, load_poly};
use crate::matgroup::LinearCharacter;
use crate::multipoly::{monomials_of_degree, Poly};

pub const DEFAULT_SEED: u64 = 0x6b33;
pub const DEFAULT_INSTANCES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} instances, {} failures", self.name, self.instances, self.failures)?;
        if let Some(w) = &self.first_failure {
            write!(f, " (first: {w})")?;
        }
        Ok(())
    }
}

fn run_property(name: &'static str, instances: usize, mut one: impl FnMut(usize) -> Result<(), String>) -> PropertyOutcome {
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..instances {
        if let Err(e) = one(i) {
            failures += 1;
            first_failure.get_or_insert(format!("#{i}: {e}"));
        }
    }
    PropertyOutcome { name, instances, failures, first_failure }
}

const ORDERS: [u32; 7] = [1, 3, 4, 5, 7, 8, 12];

fn random_cyclo(rng: &mut ChaCha8Rng, n: u32) -> Cyclo {
    let coeffs: Vec<BigRational> = (0..phi(n))
        .map(|_| BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into()))
        .collect();
    Cyclo::from_coeffs(n, &coeffs)
}

fn random_form(rng: &mut ChaCha8Rng, nvars: usize, d: u32, n: u32) -> Poly {
    let mons = monomials_of_degree(nvars, d);
    let k = rng.gen_range(1..=mons.len().min(5));
    let picks: Vec<_> = mons.choose_multiple(rng, k).cloned().collect();
    Poly::from_terms(nvars, picks.into_iter().map(|m| (m, random_cyclo(rng, n))))
}

fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_ints(&refs)
}

fn field_axioms(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = *ORDERS.choose(rng).expect("nonempty");
    let m = *ORDERS.choose(rng).expect("nonempty");
    let (a, b, c) = (random_cyclo(rng, n), random_cyclo(rng, n), random_cyclo(rng, m));
    if &(&a + &b) + &c != &a + &(&b + &c) {
        return Err(format!("addition not associative for {a}, {b}, {c}"));
    }
    if &a * &b != &b * &a {
        return Err(format!("multiplication not commutative for {a}, {b}"));
    }
    if &(&a * &b) * &c != &a * &(&b * &c) {
        return Err(format!("multiplication not associative for {a}, {b}, {c}"));
    }
    if &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
        return Err(format!("distributivity fails for {a}, {b}, {c}"));
    }
    if &(&a - &b) + &b != a {
        return Err(format!("subtraction does not undo addition for {a}, {b}"));
    }
    if !a.is_zero() {
        let inv = a.inv().map_err(|e| e.to_string())?;
        if !(&a * &inv).is_one() {
            return Err(format!("{a} times its inverse is not 1"));
        }
    }
    Ok(())
}

fn substitution_functoriality(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let nvars = rng.gen_range(2..=3);
    let d = rng.gen_range(1..=4);
    let n = *ORDERS.choose(rng).expect("nonempty");
    let f = random_form(rng, nvars, d, n);
    let (a, b) = (random_int_matrix(rng, nvars), random_int_matrix(rng, nvars));
    let lhs = f.substitute_linear(&a).and_then(|g| g.substitute_linear(&b)).map_err(|e| e.to_string())?;
    let rhs = f.substitute_linear(&a.mul(&b)).map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err(format!("(f∘A)∘B != f∘(AB) for f = {f}"));
    }
    Ok(())
}

fn euler_relation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let nvars = rng.gen_range(1..=4);
    let d = rng.gen_range(0..=6);
    let n = *ORDERS.choose(rng).expect("nonempty");
    let f = random_form(rng, nvars, d, n);
    let mut lhs = Poly::zero(nvars);
    for (i, p) in f.partials().iter().enumerate() {
        lhs = lhs.add(&Poly::var(nvars, i).mul(p));
    }
    if lhs != f.scale(&Cyclo::from_int(d as i64)) {
        return Err(format!("Σ x_i ∂f/∂x_i != {d} f for f = {f}"));
    }
    Ok(())
}

struct SmallGroup {
    group: crate::matgroup::FiniteMatrixGroup,
    characters: Vec<LinearCharacter>,
}

fn small_groups() -> Result<Vec<SmallGroup>, String> {
    ["q8_2d", "t48_2d", "s4_p2"]
        .iter()
        .map(|name| {
            let g = catalogue(name).map_err(|e| e.to_string())?;
            let group = g.linear.clone();
            let characters = group.linear_characters();
            Ok(SmallGroup { group, characters })
        })
        .collect()
}

fn reynolds_idempotence(rng: &mut ChaCha8Rng, groups: &[SmallGroup]) -> Result<(), String> {
    let sg = groups.choose(rng).expect("nonempty");
    let chi = sg.characters.choose(rng).expect("trivial character exists");
    let n = sg.group.elements()[0].rows();
    let d = rng.gen_range(1..=4);
    let f = random_form(rng, n, d, sg.group.field_order());
    let once = reynolds(&f, &sg.group, chi).map_err(|e| e.to_string())?;
    let twice = reynolds(&once, &sg.group, chi).map_err(|e| e.to_string())?;
    if once != twice {
        return Err(format!("R(R(f)) != R(f) for f = {f}, {}", chi.spec()));
    }
    Ok(())
}

fn reflection_invariance(rng: &mut ChaCha8Rng, lattices: &[PicardLattice]) -> Result<(), String> {
    let l = lattices.choose(rng).expect("nonempty");
    let roots = l.simple_roots();
    let alpha = roots.choose(rng).ok_or("lattice without simple roots")?;
    let class = |rng: &mut ChaCha8Rng| DivisorClass((0..l.rank()).map(|_| rng.gen_range(-5..=5)).collect());
    let (x, y) = (class(rng), class(rng));
    let before = l.pairing(&x, &y).map_err(|e| e.to_string())?;
    let after = l.pairing(&l.reflect(&x, alpha), &l.reflect(&y, alpha)).map_err(|e| e.to_string())?;
    if before != after {
        return Err(format!("pairing {before} became {after} after reflecting in {}", l.format_class(alpha)));
    }
    Ok(())
}

/// The five randomized suites, each with its own stream derived from `seed`.
pub fn property_suites(seed: u64, instances: usize) -> Result<Vec<PropertyOutcome>, String> {
    let groups = small_groups()?;
    let mut lattices: Vec<PicardLattice> =
        (1..=7).map(|d| PicardLattice::del_pezzo(d).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    lattices.push(PicardLattice::quadric());
    let stream = |k: u64| ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(k));
    let mut out = Vec::new();
    let mut rng = stream(1);
    out.push(run_property("field-axioms", instances, |_| field_axioms(&mut rng)));
    let mut rng = stream(2);
    out.push(run_property("substitution-functoriality", instances, |_| substitution_functoriality(&mut rng)));
    let mut rng = stream(3);
    out.push(run_property("euler-relation", instances, |_| euler_relation(&mut rng)));
    let mut rng = stream(4);
    out.push(run_property("reynolds-idempotence", instances, |_| reynolds_idempotence(&mut rng, &groups)));
    let mut rng = stream(5);
    out.push(run_property("reflection-invariance", instances, |_| reflection_invariance(&mut rng, &lattices)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {} {}: {}", self.number, word, self.title, self.detail)
    }
}

fn criterion(number: u8, title: &'static str, r: Result<(bool, String), String>) -> Criterion {
    match r {
        Ok((passed, detail)) => Criterion { number, title, passed, detail },
        Err(e) => Criterion { number, title, passed: false, detail: format!("error: {e}") },
    }
}

fn group_orders() -> Result<(bool, String), String> {
    let expected = [("l27", 168), ("valentiner", 360), ("s5_perm5", 120), ("n72", 72), ("m9", 72), ("t48_p2", 48)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, want) in expected {
        let got = catalogue(name).map_err(|e| e.to_string())?.projective.order();
        ok &= got == want;
        parts.push(format!("{name}={got}"));
    }
    Ok((ok, parts.join(" ")))
}

fn checks_named<'a>(reports: &'a [AuditReport], prefix: &'a str) -> impl Iterator<Item = (&'a AuditReport, &'a crate::casebook::Check)> {
    reports.iter().flat_map(move |r| r.checks().iter().filter(move |c| c.name.starts_with(prefix)).map(move |c| (r, c)))
}

fn invariance(reports: &[AuditReport]) -> Result<(bool, String), String> {
    let all: Vec<_> = checks_named(reports, "invariance:").collect();
    let bad: Vec<String> = all.iter().filter(|(_, c)| !c.passed).map(|(r, c)| format!("{} {}", r.id(), c.name)).collect();
    let ok = bad.is_empty() && !all.is_empty();
    let detail = if ok { format!("{} invariance checks across {} cases", all.len(), reports.len()) } else { format!("failing: {}", bad.join(", ")) };
    Ok((ok, detail))
}

fn dimensions(reports: &[AuditReport]) -> Result<(bool, String), String> {
    let dim = |name: &str, d: usize| -> Result<usize, String> {
        let g = catalogue(name).map_err(|e| e.to_string())?;
        invariant_dimension(&g.linear, d, &LinearCharacter::trivial(&g.linear)).map_err(|e| e.to_string())
    };
    let (l4, l6, v6) = (dim("l27", 4)?, dim("l27", 6)?, dim("valentiner", 6)?);
    let t48 = reports
        .iter()
        .find(|r| r.id() == "case-11a")
        .and_then(|r| r.checks().iter().find(|c| c.name == "uniqueness"))
        .ok_or("case-11a has no dimension check")?;
    let m9 = derive_m9_sextics()?;
    let ok = l4 == 1 && l6 == 1 && v6 == 1 && t48.passed && m9.len() == 3;
    Ok((
        ok,
        format!(
            "L2(7) deg 4 = {l4}, L2(7) deg 6 = {l6}, Valentiner deg 6 = {v6}, T48 deg 6 {} ({}); M9 total sextic dimension = {} (expected 3)",
            if t48.passed { "ok" } else { "failed" },
            t48.witness,
            m9.len()
        ),
    ))
}

fn cs5() -> Result<(bool, String), String> {
    let sol = derive_quintic_dp_sextic()?;
    let want: Vec<BigRational> = [2i64, -2, 2, 1, -6].iter().map(|&v| BigRational::from_integer(v.into())).collect();
    let tail = &sol.coefficients[2..];
    let table = load_poly("case3b.poly").map_err(|e| e.to_string())?.poly;
    let scalar = sol.poly.proportionality(&table);
    let shown: Vec<String> = tail.iter().map(|c| c.to_string()).collect();
    Ok((
        tail == want.as_slice() && scalar.is_some(),
        format!("(a3..a7) = ({}); scalar to table row = {}", shown.join(","), scalar.map_or("none".into(), |c| c.to_string())),
    ))
}

fn proper_transform() -> Result<(bool, String), String> {
    let f = load_poly("case3b.poly").map_err(|e| e.to_string())?.poly;
    let t = proper_transform_invariance(&f)?;
    Ok((t.scalar.is_some(), format!("stripped {}; scalar {}", t.stripped.join(" "), t.scalar.as_deref().unwrap_or("none"))))
}

fn del_pezzo() -> Result<(bool, String), String> {
    let want = [240usize, 56, 27, 16, 10, 6, 3];
    let mut got = Vec::new();
    for d in 1..=7u32 {
        got.push(PicardLattice::del_pezzo(d).map_err(|e| e.to_string())?.minus_one_classes().len());
    }
    let l5 = PicardLattice::del_pezzo(5).map_err(|e| e.to_string())?;
    let s = intersection_graph(&l5.minus_one_classes(), &l5).stats();
    let petersen = s.vertices == 10 && s.edges == 15 && s.regular == Some(3) && s.girth == Some(5) && s.automorphisms == Some(120);
    Ok((
        got == want && petersen,
        format!(
            "counts {:?}; degree-5 graph {} vertices {} edges regular {} girth {} automorphisms {}",
            got,
            s.vertices,
            s.edges,
            s.regular.unwrap_or(0),
            s.girth.unwrap_or(0),
            s.automorphisms.unwrap_or(0)
        ),
    ))
}

fn bookkeeping() -> Result<(bool, String), String> {
    let mut residuals = Vec::new();
    for (e, g) in [(3, 10), (9, 4), (11, 2)] {
        residuals.push(euler_residual(&CoverScenario::new(e, 0, 0, Some(g)).map_err(|e| e.to_string())?));
    }
    let fix: Vec<u32> = (2..=8).map(|o| nikulin_fix_count(o).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let cut = (minimizing_cutoff(4, 3), minimizing_cutoff(5, 3));
    let ok = residuals == [0, 0, 0] && mori_bound(0, 3) == 9 && fix == [8, 6, 4, 4, 2, 3, 2] && cut == (9, 6);
    Ok((ok, format!("residuals {residuals:?}; mori_bound(0,3) = {}; fixed points {fix:?}; cutoffs N=4 n<={} N=5 n<={}", mori_bound(0, 3), cut.0, cut.1)))
}

fn nonexistence() -> Result<(bool, String), String> {
    let expect = [
        ("M20", "hurwitz", "924 < 960"),
        ("F384", "branch-total", "contribution 50"),
        ("A44", "branch-total", "= 24"),
        ("T192", "p2-branch", "contribution 34"),
        ("T192", "quadric-fixed-points", "= 5 < 6"),
    ];
    let reports: Vec<AuditReport> = NONEXISTENCE_GROUPS.iter().filter_map(|g| audit_nonexistence(g)).collect();
    let mut ok = reports.len() == NONEXISTENCE_GROUPS.len() && reports.iter().all(AuditReport::passed);
    let mut parts = Vec::new();
    for (g, check, needle) in expect {
        let w = reports.iter().find(|r| r.id().eq_ignore_ascii_case(g)).and_then(|r| r.witness(check)).unwrap_or("");
        let hit = w.contains(needle);
        ok &= hit;
        parts.push(format!("{g} {needle}{}", if hit { "" } else { " missing" }));
    }
    let verdicts: Vec<String> = reports.iter().map(|r| format!("{}={}", r.id(), if r.passed() { "PASS" } else { "FAIL" })).collect();
    Ok((ok, format!("{}; {}", verdicts.join(" "), parts.join(", "))))
}

fn smoothness(reports: &[AuditReport]) -> Result<(bool, String), String> {
    let wanted = ["case-1a", "case-1b", "case-2", "case-10", "case-11a"];
    let mut ok = true;
    let mut parts = Vec::new();
    for id in wanted {
        let r = reports.iter().find(|r| r.id() == id).ok_or(format!("no report {id}"))?;
        let scans: Vec<_> = r.checks().iter().filter(|c| c.name.starts_with("scan:")).collect();
        let good = !scans.is_empty() && scans.iter().all(|c| c.passed);
        ok &= good;
        parts.push(format!("{id} {} scan(s) {}", scans.len(), if good { "clean" } else { "FAILED" }));
    }
    Ok((ok, format!("{}; evidence only", parts.join(", "))))
}

fn properties(seed: u64, instances: usize) -> Result<(bool, String), String> {
    let out = property_suites(seed, instances)?;
    let ok = out.iter().all(PropertyOutcome::passed);
    Ok((ok, out.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("; ")))
}

/// Evaluates all ten acceptance criteria.
pub fn acceptance(cfg: &AuditConfig, seed: u64, instances: usize) -> Vec<Criterion> {
    let reports: Vec<AuditReport> = crate::casebook::CASE_IDS.iter().filter_map(|id| verify_case(id, cfg)).collect();
    vec![
        criterion(1, "group orders", group_orders()),
        criterion(2, "invariance", invariance(&reports)),
        criterion(3, "uniqueness dimensions", dimensions(&reports)),
        criterion(4, "quintic-model derivation", cs5()),
        criterion(5, "proper-transform invariance", proper_transform()),
        criterion(6, "del pezzo counts", del_pezzo()),
        criterion(7, "bookkeeping identities", bookkeeping()),
        criterion(8, "non-existence audits", nonexistence()),
        criterion(9, "smoothness evidence", smoothness(&reports)),
        criterion(10, "property suites", properties(seed, instances)),
    ]
}

/// The checklist as an audit report, for the CLI.
pub fn acceptance_report(cfg: &AuditConfig, seed: u64, instances: usize) -> AuditReport {
    let mut r = AuditReport::new("selftest");
    for c in acceptance(cfg, seed, instances) {
        r.check(&format!("criterion-{}", c.number), &format!("acceptance/{}", c.number), c.passed, &c.detail);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for o in property_suites(7, 40).unwrap() {
            assert!(o.passed(), "{o}");
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(property_suites(3, 10).unwrap(), property_suites(3, 10).unwrap());
    }
}
