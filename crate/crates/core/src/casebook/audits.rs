//! Arithmetic contradictions for the five excluded groups.

use num_integer::Integer;
use serde::Serialize;

use super::AuditReport;
use crate::coverbook::{branch_sum, genus_from_degree, hurwitz_cap, hurwitz_min_genus, nikulin_fix_count, rh_branch_contribution};
use crate::delpezzo::PicardLattice;
use crate::exactfield::Cyclo;
use crate::invariants::torus_invariant_monomials;
use crate::linalg::Matrix;
use crate::matgroup::catalogue::catalogue;
use crate::matgroup::{closure, orbit_length_menu, FiniteMatrixGroup, GMatrix, DEFAULT_CAP};
use crate::multipoly::{common_variable_factor, Monomial, Poly, ProjPoint};

pub const NONEXISTENCE_GROUPS: &[&str] = &["M20", "F384", "A44", "T192", "H192"];

/// Diagonal group generated by one root of unity of order `m` per coordinate.
fn diagonal_torsion(n: usize, m: u32) -> FiniteMatrixGroup {
    let gens: Vec<GMatrix> = (0..n)
        .map(|i| {
            let d: Vec<Cyclo> = (0..n).map(|j| if i == j { Cyclo::root_of_unity(m, 1) } else { Cyclo::one() }).collect();
            GMatrix::unlabeled(Matrix::diagonal(&d)).expect("invertible")
        })
        .collect();
    closure(&gens, DEFAULT_CAP).expect("finite abelian group")
}

/// Contribution of one branch point of B → B/N whose fiber is an orbit of
/// the given length: len·(|N|/len − 1).
fn point_contribution(order: usize, len: usize) -> i64 {
    branch_sum(&[((order / len) as i64, len as i64)])
}

/// Nonzero per-point contributions of an abelian group N acting with cyclic
/// isotropy, and their gcd.
fn contributions(n: &FiniteMatrixGroup) -> (Vec<i64>, i64) {
    let c: Vec<i64> = orbit_length_menu(n).into_iter().filter(|&l| l < n.order()).map(|l| point_contribution(n.order(), l)).collect();
    let g = c.iter().fold(0i64, |a, b| a.gcd(b));
    (c, g)
}

/// Whether `count` is a sum of divisors of `order` that are at least `min_orbit`.
fn orbits_fit(count: usize, order: usize, min_orbit: usize) -> bool {
    let parts: Vec<usize> = (min_orbit.max(1)..=order).filter(|d| order.is_multiple_of(*d)).collect();
    let mut ok = vec![false; count + 1];
    ok[0] = true;
    for s in 1..=count {
        ok[s] = parts.iter().any(|&p| p <= s && ok[s - p]);
    }
    ok[count]
}

/// Blow-up degrees in `range` whose (−1)-curves cannot be split into orbits
/// of length ≥ min_orbit.
fn line_exclusions(r: &mut AuditReport, anchor: &str, order: usize, min_orbit: usize, range: std::ops::RangeInclusive<u32>) -> Vec<u32> {
    let mut excluded = Vec::new();
    let mut parts = Vec::new();
    for d in range {
        let Some(l) = r.attempt("lines", anchor, PicardLattice::del_pezzo(d)) else { continue };
        let count = l.minus_one_classes().len();
        let fits = orbits_fit(count, order, min_orbit);
        parts.push(format!("d={d}:{count}{}", if fits { " fits" } else { " excluded" }));
        if !fits {
            excluded.push(d);
        }
    }
    r.check("lines", anchor, true, format!("orbits >= {min_orbit} of a group of order {order}: {}", parts.join(", ")));
    excluded
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    /// For each point: does every candidate monomial vanish there?
    pub on_every_curve: Vec<bool>,
    /// Monomials that do not vanish at some fixed point.
    pub nonvanishing: Vec<String>,
    /// Common variable factor of the remaining monomials.
    pub common_factor: Option<String>,
    pub avoiding: usize,
}

/// For torus fixed points and candidate monomials: which points lie on every
/// candidate curve, and how many can be avoided.
pub fn sigma_fixed_point_membership(monomials: &[Monomial], points: &[ProjPoint], names: &[String]) -> FixedPointReport {
    let vanishes = |m: &Monomial, p: &ProjPoint| {
        Poly::monomial(m.clone(), Cyclo::one()).evaluate(p).map(|v| v.is_zero()).unwrap_or(false)
    };
    // no candidate monomial means no candidate curve
    let on_every_curve: Vec<bool> =
        points.iter().map(|p| !monomials.is_empty() && monomials.iter().all(|m| vanishes(m, p))).collect();
    let (hit, rest): (Vec<&Monomial>, Vec<&Monomial>) = monomials.iter().partition(|m| points.iter().any(|p| !vanishes(m, p)));
    let rest: Vec<Monomial> = rest.into_iter().cloned().collect();
    let common_factor = if rest.is_empty() {
        None
    } else {
        let c = common_variable_factor(&rest);
        (c.degree() > 0).then(|| c.format_with(names))
    };
    FixedPointReport {
        avoiding: on_every_curve.iter().filter(|&&b| !b).count(),
        on_every_curve,
        nonvanishing: hit.iter().map(|m| m.format_with(names)).collect(),
        common_factor,
    }
}

/// Coordinates (z1, z2, w1, w2) on P1×P1 and the four fixed points of a
/// diagonal torus element.
pub fn quadric_fixed_points() -> Vec<ProjPoint> {
    [[1, 0, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1], [0, 1, 0, 1]].iter().map(|c| ProjPoint::from_ints(c)).collect()
}

/// Bidegree (4,4) monomials invariant under ([ξ z1 : z2], [ξ^a w1 : w2]) with ξ of order m.
pub fn bidegree_invariants(m: u32, a: u32) -> Vec<Monomial> {
    torus_invariant_monomials(&[1, 0, a, 0], m, &[(vec![0, 1], 4), (vec![2, 3], 4)])
}

pub fn quadric_names() -> Vec<String> {
    ["z1", "z2", "w1", "w2"].iter().map(|s| s.to_string()).collect()
}

/// Audit for one excluded group; `None` for an unknown name.
pub fn audit_nonexistence(group: &str) -> Option<AuditReport> {
    let r = match group {
        "M20" => m20(),
        "F384" => f384(),
        "A44" => a44(),
        "T192" | "H192" => t192(group),
        _ => return None,
    };
    Some(r)
}

/// Largest genus of a smooth member of |−2K| over all Del Pezzo surfaces.
fn max_branch_genus(r: &mut AuditReport, anchor: &str) -> Option<i64> {
    let mut best = i64::MIN;
    for d in 1..=9 {
        let l = r.attempt("genus-range", anchor, PicardLattice::del_pezzo(d))?;
        best = best.max(r.attempt("genus-range", anchor, l.genus_of_class(&l.canonical().scale(-2)))?);
    }
    let q = PicardLattice::quadric();
    best = best.max(r.attempt("genus-range", anchor, q.genus_of_class(&q.canonical().scale(-2)))?);
    r.check("genus-range", anchor, best == genus_from_degree(9), format!("g(-2K) <= {best} on every Del Pezzo surface"));
    Some(best)
}

fn m20() -> AuditReport {
    let mut r = AuditReport::new("M20");
    let order = 960;
    let g = hurwitz_min_genus(order);
    let cap11 = hurwitz_cap(12).expect("g >= 2");
    r.check("hurwitz", "m20/hurwitz", cap11 < order && g == 13, format!("84*11 = {cap11} < {order}, so g >= {g} (stated threshold 12)"));
    let deg = g - 1;
    r.check("adjunction", "m20/adjunction", deg > 9 && 12 - 1 > 9, format!("deg(Y) = g - 1 >= {deg} (>= 11 from the stated threshold) > 9"));
    if let Some(best) = max_branch_genus(&mut r, "m20/adjunction") {
        r.check("contradiction", "m20/nonexistence", g > best, format!("required genus {g} > attainable {best}"));
    }
    r
}

fn f384() -> AuditReport {
    let mut r = AuditReport::new("F384");
    let order = 384;
    let g = hurwitz_min_genus(order);
    r.check("hurwitz", "f384/hurwitz", g == 6, format!("84*(g-1) >= {order} forces g >= {g}, so deg(Y) >= {}", g - 1));
    // (−1)-curve stabilizers have order at most 12
    let excl = line_exclusions(&mut r, "f384/lines", order as usize, order as usize / 12, 5..=8);
    r.check("surface", "f384/lines", excl == vec![5, 6, 7, 8], format!("blow-ups of degree {excl:?} excluded; P1xP1 excluded by the conic bundle lemma (not replayed); Y = P2, g = 10"));
    let high = rh_branch_contribution(16, -18, -4);
    r.check("quotient-genus", "f384/quotient", high < 0, format!("g(Q) > 2 needs branch contribution 16*(-4) + 18 = {high} < 0"));
    let total = rh_branch_contribution(16, -18, 2);
    let n = diagonal_torsion(2, 4);
    let (each, gcd) = contributions(&n);
    r.check("isotropy", "f384/isotropy", gcd == 4, format!("N = C4xC4 orbit menu {:?}, per-point contributions {each:?}, gcd {gcd}", orbit_length_menu(&n)));
    r.check("branch-total", "f384/branch", total == 50 && total % gcd != 0, format!("rational Q: contribution {total}, {total} mod {gcd} = {}", total % gcd));
    r
}

fn a44() -> AuditReport {
    let mut r = AuditReport::new("A44");
    let n = diagonal_torsion(4, 2);
    let (each, _) = contributions(&n);
    let per = *each.iter().min().unwrap_or(&0);
    r.check("isotropy", "a44/isotropy", each == vec![8], format!("N = C2^4 orbit menu {:?}, per-point contribution {per}", orbit_length_menu(&n)));
    let c33 = diagonal_torsion(2, 3);
    let menu = orbit_length_menu(&c33);
    let min_orbit = menu.iter().copied().filter(|&l| l < c33.order()).min().unwrap_or(c33.order()) as i64;
    r.check("orbits", "a44/orbits", min_orbit == 3, format!("C3xC3 orbit menu {menu:?}, Q not rational"));
    let total = per * min_orbit;
    // e(Q) <= 0: 2 - 2g <= -total
    let g = (total + 2) / 2;
    r.check("branch-total", "a44/branch", total == 24, format!("branch contribution >= {per}*{min_orbit} = {total}"));
    let unbranched = (16 * 2 + 2) / 2;
    r.check("genus", "a44/genus", g >= 13 && unbranched > 10, format!("g(B) >= {g}, deg(Y) = g - 1 >= {} > 9; unbranched with e(Q) <= -2 gives g >= {unbranched}", g - 1));
    if let Some(best) = max_branch_genus(&mut r, "a44/genus") {
        r.check("contradiction", "a44/nonexistence", g > best, format!("required genus {g} > attainable {best}"));
    }
    r
}

fn t192(id: &str) -> AuditReport {
    let mut r = AuditReport::new(id);
    let order = 192;
    let g = hurwitz_min_genus(order);
    r.check("hurwitz", "t192/hurwitz", g == 4, format!("g >= {g}, so deg(Y) >= {}", g - 1));
    let excl = line_exclusions(&mut r, "t192/lines", order as usize, 16, 3..=8);
    r.check(
        "surface",
        "t192/lines",
        excl == vec![3, 5, 6, 7, 8],
        format!("blow-ups of degree {excl:?} excluded; degree 4 has |Aut| <= 160 < {order}; Y is P2 or P1xP1"),
    );
    // Y = P2
    let high = rh_branch_contribution(8, -18, -4);
    r.check("quotient-genus", "t192/p2-quotient", high < 0, format!("g(Q) > 2 needs branch contribution 8*(-4) + 18 = {high} < 0"));
    let total = rh_branch_contribution(8, -18, 2);
    let n = diagonal_torsion(3, 2);
    let (each, gcd) = contributions(&n);
    r.check("isotropy", "t192/p2-isotropy", each == vec![4], format!("N = C2^3 orbit menu {:?}, per-point contribution {gcd}", orbit_length_menu(&n)));
    r.check("p2-branch", "t192/p2-branch", total == 34 && total % gcd != 0, format!("contribution {total}, {total} mod {gcd} = {}", total % gcd));
    // Y = P1×P1
    let names = quadric_names();
    let monos = bidegree_invariants(3, 1);
    let listed: Vec<String> = monos.iter().map(|m| m.format_with(&names)).collect();
    r.check("quadric-monomials", "t192/quadric-monomials", monos.len() == 8, format!("{} monomials: {}", monos.len(), listed.join(" ")));
    let rep = sigma_fixed_point_membership(&monos, &quadric_fixed_points(), &names);
    let on = rep.on_every_curve.iter().filter(|&&b| b).count();
    let bound = on + 2 * rep.avoiding;
    let six = nikulin_fix_count(3).expect("order 3");
    r.check("quadric-fixed-points", "t192/fixed-points", on == 3 && (bound as u32) < six, format!("{on} of 4 fixed points on every curve, at most {on} + 2*{} = {bound} < {six} fixed points", rep.avoiding));
    let check = if id == "H192" { "h192_check" } else { "t192_check" };
    if let Some(cg) = r.attempt("torus-check", "t192/quadric-monomials", catalogue(check)) {
        let span = monos.iter().fold(Poly::zero(4), |acc, m| acc.add(&Poly::monomial(m.clone(), Cyclo::one())));
        let ok = crate::invariants::curve_character(&span, &cg.linear).is_some_and(|c| c.is_trivial());
        r.check("torus-check", "t192/quadric-monomials", ok, format!("sum of the monomials invariant under <lambda, sigma> of order {}", cg.linear.order()));
    }
    r
}

/// The five bidegree (4,4) monomials of the order-5 scenario with a = 1,
/// reported against the four fixed points.
pub fn order_five_scenario() -> FixedPointReport {
    sigma_fixed_point_membership(&bidegree_invariants(5, 1), &quadric_fixed_points(), &quadric_names())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass() {
        for g in NONEXISTENCE_GROUPS {
            let r = audit_nonexistence(g).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(audit_nonexistence("nosuch").is_none());
    }

    #[test]
    fn witnesses() {
        let f = audit_nonexistence("F384").unwrap();
        assert!(f.witness("branch-total").unwrap().contains("contribution 50"));
        let t = audit_nonexistence("T192").unwrap();
        assert!(t.witness("p2-branch").unwrap().contains("contribution 34"));
        assert!(t.witness("quadric-fixed-points").unwrap().contains("= 5 < 6"));
        let a = audit_nonexistence("A44").unwrap();
        assert!(a.witness("branch-total").unwrap().contains("= 24"));
        let m = audit_nonexistence("M20").unwrap();
        assert!(m.witness("hurwitz").unwrap().contains("924 < 960"));
    }

    #[test]
    fn order_five() {
        let rep = order_five_scenario();
        assert_eq!(rep.nonvanishing, vec!["z2^4*w2^4".to_string()]);
        assert_eq!(rep.common_factor.as_deref(), Some("z1*w1"));
        let empty = sigma_fixed_point_membership(&[], &quadric_fixed_points(), &quadric_names());
        assert_eq!(empty.avoiding, 4);
    }

    #[test]
    fn orbit_fit() {
        assert!(orbits_fit(16, 192, 16));
        assert!(!orbits_fit(27, 192, 16));
        assert!(!orbits_fit(10, 384, 32));
        assert!(orbits_fit(0, 5, 2));
    }
}
