//! One audit per surface of the classification table.

use std::sync::Arc;

use super::derive::{
    a_parameter, a_quadratic, base_points, derive_m9_sextics, derive_quintic_dp_sextic, m9_fixed_point_data, m9_j_candidates,
    proper_transform_invariance,
};
use super::{euler_check, scan_check, AuditConfig, AuditReport};
use crate::delpezzo::{anticanonical_dim, intersection_graph, PicardLattice};
use crate::exactfield::{Cyclo, Rational};
use crate::invariants::{curve_character, invariant_basis, invariant_dimension};
use crate::linalg::Matrix;
use crate::matgroup::catalogue::{catalogue, load_poly, LoadedGroup};
use crate::matgroup::{closure, orbit_length_menu, FiniteMatrixGroup, GMatrix, LinearCharacter, StructuralProfile, DEFAULT_CAP};
use crate::multipoly::{monomials_of_weighted_degree, Monomial, Poly, ProjPoint, WeightSystem};

pub const CASE_IDS: &[&str] = &["1a", "1b", "2", "3a", "3b", "9", "10", "11a", "11b"];

/// Runs the checklist for one case; `None` for an unknown id.
pub fn verify_case(id: &str, cfg: &AuditConfig) -> Option<AuditReport> {
    let mut r = AuditReport::new(&format!("case-{id}"));
    match id {
        "1a" => case_1a(&mut r, cfg),
        "1b" => case_1b(&mut r, cfg),
        "2" => case_2(&mut r, cfg),
        "3a" => case_3a(&mut r, cfg),
        "3b" => case_3b(&mut r, cfg),
        "9" => case_9(&mut r, cfg),
        "10" => case_10(&mut r, cfg),
        "11a" => case_11a(&mut r, cfg),
        "11b" => case_11b(&mut r, cfg),
        _ => return None,
    }
    Some(r)
}

fn profile_text(p: &StructuralProfile) -> String {
    let orders: Vec<String> = p.element_orders.iter().map(|(o, n)| format!("{o}:{n}")).collect();
    format!(
        "order {} element orders {{{}}} center {} derived {} abelianization {:?}",
        p.order,
        orders.join(","),
        p.center_order,
        p.derived_order,
        p.abelianization
    )
}

fn group(r: &mut AuditReport, name: &str, anchor: &str) -> Option<Arc<LoadedGroup>> {
    let g = r.attempt("group", anchor, catalogue(name))?;
    r.check(
        "group",
        anchor,
        true,
        format!("{name}: linear {} projective {}; {}", g.linear.order(), g.projective.order(), profile_text(&g.projective.structural_profile())),
    );
    Some(g)
}

fn curve(r: &mut AuditReport, file: &str, anchor: &str, degree: u32, weights: Option<&[u32]>) -> Option<Poly> {
    let name = format!("equation:{file}");
    let pf = r.attempt(&name, anchor, load_poly(file))?;
    let w = weights.map(|w| WeightSystem::new(w.to_vec())).unwrap_or_else(|| WeightSystem::standard(pf.poly.nvars()));
    let deg = pf.poly.weighted_degree(&w).ok().flatten();
    let ok = deg == Some(degree) && weights.is_none_or(|w| pf.weights.as_ref().map(|x| x.0.as_slice()) == Some(w));
    r.check(&name, anchor, ok, format!("{} variables, degree {deg:?}, {} terms", pf.poly.nvars(), pf.poly.len()));
    ok.then_some(pf.poly)
}

fn invariance(r: &mut AuditReport, label: &str, anchor: &str, f: &Poly, g: &FiniteMatrixGroup, want_trivial: bool) -> Option<LinearCharacter> {
    let name = format!("invariance:{label}");
    match curve_character(f, g) {
        Some(chi) => {
            let ok = !want_trivial || chi.is_trivial();
            r.check(&name, anchor, ok, format!("character {} of order {} on a group of order {}", chi.spec(), chi.modulus(), g.order()));
            Some(chi)
        }
        None => {
            r.check(&name, anchor, false, "not semi-invariant");
            None
        }
    }
}

fn dimension(r: &mut AuditReport, name: &str, anchor: &str, g: &FiniteMatrixGroup, d: usize, expected: usize) -> Option<usize> {
    let chi = LinearCharacter::trivial(g);
    let dim = r.attempt(name, anchor, invariant_dimension(g, d, &chi))?;
    r.check(name, anchor, dim == expected, format!("invariant forms of degree {d}: dimension {dim}"));
    Some(dim)
}

fn genus_check(r: &mut AuditReport, anchor: &str, l: Option<PicardLattice>, g: i64) {
    let Some(l) = l else { return };
    match l.genus_of_class(&l.canonical().scale(-2)) {
        Ok(h) => r.check("branch-genus", anchor, h == g, format!("genus of -2K on the degree {} surface: {h}", l.degree())),
        Err(e) => r.check("branch-genus", anchor, false, format!("error: {e}")),
    };
}

fn gm(m: Matrix) -> GMatrix {
    GMatrix::unlabeled(m).expect("invertible")
}

/// Block diagonal diag(m, extra).
fn extend(m: &Matrix, extra: &[Cyclo]) -> Matrix {
    let n = m.rows() + extra.len();
    let mut out = Matrix::zeros(n, n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    for (k, v) in extra.iter().enumerate() {
        out.set(m.rows() + k, m.rows() + k, v.clone());
    }
    out
}

fn extended_group(r: &mut AuditReport, anchor: &str, base: &[Matrix], extra: &[Cyclo], more: Vec<Matrix>, order: usize) -> Option<FiniteMatrixGroup> {
    let mut gens: Vec<GMatrix> = base.iter().map(|m| gm(extend(m, extra))).collect();
    gens.extend(more.into_iter().map(gm));
    let g = r.attempt("extended-group", anchor, closure(&gens, DEFAULT_CAP))?;
    r.check("extended-group", anchor, g.order() == order, format!("{} generators on {} variables, order {}", gens.len(), g.size(), g.order()));
    Some(g)
}

fn ones(n: usize) -> Vec<Cyclo> {
    vec![Cyclo::one(); n]
}

fn preserved_by(f: &Poly, m: &Matrix) -> bool {
    f.substitute_linear(m).map(|h| h == *f).unwrap_or(false)
}

fn case_1a(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(l27) = group(r, "l27", "case-1a/group") else { return };
    let c4 = Matrix::diagonal(&[Cyclo::one(), Cyclo::one(), Cyclo::one(), Cyclo::root_of_unity(4, 1)]);
    let Some(g) = extended_group(r, "case-1a/group", &l27.entry.matrices(), &ones(1), vec![c4], 672) else { return };
    if let Some(f) = curve(r, "case1a.poly", "case-1a/equation", 4, None) {
        invariance(r, "surface", "case-1a/invariance", &f, &g, true);
        scan_check(r, "scan:surface", "case-1a/smoothness", &f, g.order(), &cfg.primes);
    }
    let x4 = Poly::var(4, 3);
    if let Some(chi) = curve_character(&x4, &g) {
        r.check("x4-character", "case-1a/involution", chi.modulus() == 4, format!("x4 has a character of order {}", chi.modulus()));
    } else {
        r.check("x4-character", "case-1a/involution", false, "x4 is not semi-invariant");
    }
    if let Some(k) = curve(r, "klein.poly", "case-1a/branch", 4, None) {
        invariance(r, "klein", "case-1a/branch", &k, &l27.linear, true);
        dimension(r, "uniqueness", "case-1a/uniqueness", &l27.linear, 4, 1);
        if let Some(space) = r.attempt("klein-spans", "case-1a/uniqueness", invariant_basis(&l27.linear, 4, &LinearCharacter::trivial(&l27.linear))) {
            r.check("klein-spans", "case-1a/uniqueness", space.dimension() == 1 && space.contains(&k), format!("basis {}", space.basis.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")));
        }
        scan_check(r, "scan:klein", "case-1a/smoothness", &k, l27.linear.order(), &cfg.primes);
    }
    euler_check(r, "case-1a/euler", (10, 0, 0, 3), cfg);
    genus_check(r, "case-1a/euler", PicardLattice::del_pezzo(2).ok(), 3);
    let menu = orbit_length_menu(&l27.projective);
    let min = menu.first().copied().unwrap_or(0);
    r.check("orbit-menu", "case-1a/orbits", (21..=24).contains(&min), format!("orbit lengths {menu:?}, minimum {min}"));
}

/// The permutation matrix exchanging coordinates 2 and 3.
fn p23() -> Matrix {
    Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])
}

/// det of the matrix of second partial derivatives.
pub fn hessian(f: &Poly) -> Poly {
    let n = f.nvars();
    let h: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| f.partial(i).partial(j)).collect()).collect();
    det_poly(&h)
}

fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let nv = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nv);
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][j].mul(&det_poly(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn case_1b(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(l27) = group(r, "l27", "case-1b/group") else { return };
    let p = p23();
    let conj: Vec<GMatrix> = l27.entry.matrices().iter().map(|m| gm(p.mul(m).mul(&p))).collect();
    let Some(g) = r.attempt("conjugate-group", "case-1b/group", closure(&conj, DEFAULT_CAP)) else { return };
    r.check("conjugate-group", "case-1b/group", g.order() == 168, format!("generators conjugated by (2 3), order {}", g.order()));
    let Some(f) = curve(r, "case1b.poly", "case-1b/equation", 6, None) else { return };
    invariance(r, "curve", "case-1b/invariance", &f, &g, true);
    if let (Some(k), Some(kh)) = (curve(r, "klein.poly", "case-1b/hessian", 4, None), curve(r, "klein_hessian.poly", "case-1b/hessian", 6, None)) {
        let h = hessian(&k);
        let c = h.proportionality(&kh);
        r.check("hessian", "case-1b/hessian", c.is_some(), format!("Hess(klein) = {} * klein_hessian", c.map_or("none".into(), |c| c.to_string())));
        let swapped = r.attempt("coordinates", "case-1b/hessian", kh.substitute_linear(&p));
        if let Some(s) = swapped {
            r.check("coordinates", "case-1b/hessian", s == f, "klein_hessian with x2, x3 exchanged equals the curve");
        }
    }
    dimension(r, "uniqueness", "case-1b/uniqueness", &l27.linear, 6, 1);
    euler_check(r, "case-1b/euler", (3, 0, 0, 10), cfg);
    genus_check(r, "case-1b/euler", PicardLattice::del_pezzo(9).ok(), 10);
    scan_check(r, "scan:curve", "case-1b/smoothness", &f, g.order(), &cfg.primes);
}

fn case_2(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(v) = group(r, "valentiner", "case-2/group") else { return };
    r.check("orders", "case-2/group", v.linear.order() == 1080 && v.projective.order() == 360, format!("linear {} projective {}", v.linear.order(), v.projective.order()));
    let Some(f) = curve(r, "case2.poly", "case-2/equation", 6, None) else { return };
    invariance(r, "curve", "case-2/invariance", &f, &v.linear, true);
    dimension(r, "uniqueness", "case-2/uniqueness", &v.linear, 6, 1);
    if let Some(pr) = r.attempt("variant", "case-2/equation", load_poly("case2_printed.poly")) {
        let bad = curve_character(&pr.poly, &v.linear).is_none();
        r.check("variant", "case-2/equation", bad, "the variant with 9*x2^3*x3^3 in place of 9*x2^5*x3 is not semi-invariant");
    }
    euler_check(r, "case-2/euler", (3, 0, 0, 10), cfg);
    scan_check(r, "scan:curve", "case-2/smoothness", &f, v.linear.order(), &cfg.primes);
}

fn case_3a(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(s5) = group(r, "s5_perm5", "case-3a/group") else { return };
    let Some(g) = extended_group(r, "case-3a/group", &s5.entry.matrices(), &ones(1), Vec::new(), 120) else { return };
    let mut surface = Vec::new();
    for (file, d) in [("case3a_linear.poly", 1), ("case3a_quadric.poly", 2), ("case3a_cubic.poly", 3)] {
        if let Some(f) = curve(r, file, "case-3a/equation", d, None) {
            invariance(r, file, "case-3a/invariance", &f, &g, true);
            surface.push(f);
        }
    }
    let mut sd = ones(6);
    sd[5] = Cyclo::from_int(-1);
    let sigma = Matrix::diagonal(&sd);
    let commutes = g.generators().iter().all(|m| m.mul(&sigma) == sigma.mul(m));
    let keeps = surface.iter().all(|f| preserved_by(f, &sigma));
    r.check("involution", "case-3a/involution", commutes && keeps && surface.len() == 3, "x6 -> -x6 commutes with the action and preserves the three equations; symplecticity of the lift not checked");
    if let Some(b) = curve(r, "psum2.poly", "case-3a/branch", 2, None) {
        invariance(r, "branch-quadric", "case-3a/branch", &b, &s5.linear, true);
    }
    euler_check(r, "case-3a/euler", (9, 0, 0, 4), cfg);
    genus_check(r, "case-3a/euler", PicardLattice::del_pezzo(3).ok(), 4);
}

fn case_3b(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(s4) = group(r, "s4_p2", "case-3b/group") else { return };
    let Some(f) = curve(r, "case3b.poly", "case-3b/equation", 6, None) else { return };
    invariance(r, "four-points", "case-3b/invariance", &f, &s4.linear, true);
    match derive_quintic_dp_sextic() {
        Ok(s) => {
            let want: Vec<Rational> = [0, 0, 2, -2, 2, 1, -6].iter().map(|&v| Rational::from_integer(v.into())).collect();
            let a: Vec<String> = s.coefficients.iter().map(ToString::to_string).collect();
            r.check("derivation", "case-3b/derivation", s.coefficients == want, format!("a = ({}) from {} constraints of rank {}", a.join(", "), s.constraints, s.rank));
            r.check("printed-relations", "case-3b/derivation", s.rank_with_printed == s.rank, format!("rank {} with the five stated relations added", s.rank_with_printed));
            let c = s.poly.proportionality(&f);
            r.check("assembled", "case-3b/derivation", c.is_some(), format!("assembled sextic = {} * table sextic", c.map_or("none".into(), |c| c.to_string())));
        }
        Err(e) => {
            r.check("derivation", "case-3b/derivation", false, e);
        }
    }
    match proper_transform_invariance(&f) {
        Ok(t) => r.check(
            "proper-transform",
            "case-3b/quadratic-map",
            t.scalar.is_some(),
            format!("stripped [{}], residual = {} * f", t.stripped.join(", "), t.scalar.as_deref().unwrap_or("none")),
        ),
        Err(e) => r.check("proper-transform", "case-3b/quadratic-map", false, e),
    };
    let nodes: Vec<bool> = base_points().iter().map(|p| f.is_singular_at(p).unwrap_or(false)).collect();
    r.check("nodes", "case-3b/nodes", nodes.iter().all(|&b| b), "singular at [1:0:0], [0:1:0], [0:0:1], [1:1:1]");
    euler_check(r, "case-3b/euler", (7, 0, 0, 6), cfg);
    let Some(l) = r.attempt("lines", "case-3b/lines", PicardLattice::del_pezzo(5)) else { return };
    let lines = l.minus_one_classes();
    let mk = l.canonical().scale(-2);
    let meet: Vec<i64> = lines.iter().filter_map(|e| l.pairing(e, &mk).ok()).collect();
    r.check("lines", "case-3b/lines", lines.len() == 10 && meet.iter().all(|&m| m == 2), format!("{} (-1)-curves, each meeting -2K in 2 points", lines.len()));
    let s = intersection_graph(&lines, &l).stats();
    let ok = s.vertices == 10 && s.edges == 15 && s.regular == Some(3) && s.girth == Some(5) && s.automorphisms == Some(120);
    r.check("petersen", "case-3b/lines", ok, format!("{} vertices, {} edges, regular {:?}, girth {:?}, {:?} automorphisms", s.vertices, s.edges, s.regular, s.girth, s.automorphisms));
    genus_check(r, "case-3b/euler", Some(l), 6);
}

fn case_9(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(n72) = group(r, "n72", "case-9/group") else { return };
    let Some(g) = extended_group(r, "case-9/group", &n72.entry.matrices(), &ones(1), Vec::new(), 72) else { return };
    let cubic = curve(r, "case9_cubic.poly", "case-9/equation", 3, None);
    let quadric = curve(r, "case9_quadric.poly", "case-9/equation", 2, None);
    let (Some(cubic), Some(quadric)) = (cubic, quadric) else { return };
    invariance(r, "cubic", "case-9/invariance", &cubic, &g, true);
    invariance(r, "quadric", "case-9/invariance", &quadric, &g, true);
    dimension(r, "cubic-uniqueness", "case-9/uniqueness", &n72.linear, 3, 1);
    dimension(r, "quadric-uniqueness", "case-9/uniqueness", &n72.linear, 2, 1);
    let mut sd = ones(5);
    sd[4] = Cyclo::from_int(-1);
    let sigma = Matrix::diagonal(&sd);
    let commutes = g.generators().iter().all(|m| m.mul(&sigma) == sigma.mul(m));
    r.check("involution", "case-9/involution", commutes && preserved_by(&cubic, &sigma) && preserved_by(&quadric, &sigma), "x5 -> -x5 commutes with the action and preserves both equations");
    euler_check(r, "case-9/euler", (9, 0, 0, 4), cfg);
    genus_check(r, "case-9/euler", PicardLattice::del_pezzo(3).ok(), 4);
}

fn case_10(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(m9) = group(r, "m9", "case-10/group") else { return };
    r.check("orders", "case-10/group", m9.projective.order() == 72, format!("linear {} projective {}", m9.linear.order(), m9.projective.order()));
    let Some(f) = curve(r, "mukai.poly", "case-10/equation", 6, None) else { return };
    invariance(r, "curve", "case-10/invariance", &f, &m9.linear, true);
    match derive_m9_sextics() {
        Ok(list) => {
            let names: Vec<String> = list.iter().map(|s| format!("{}={}", s.character, s.matches.as_deref().unwrap_or("?"))).collect();
            r.check(
                "sextic-count",
                "case-10/sextic-count",
                list.len() == 3,
                format!("dimension {} summed over {} characters: {}", list.len(), m9.linear.linear_characters().len(), names.join(" ")),
            );
            let (split, rest): (Vec<_>, Vec<_>) = list.iter().partition(|s| s.hesse_pair.is_some());
            let split_text: Vec<String> = split
                .iter()
                .map(|s| {
                    let (a, b) = s.hesse_pair.as_ref().expect("partitioned");
                    format!("{}(s={a},p={b})", s.character)
                })
                .collect();
            let only_mukai = rest.len() == 1 && rest[0].matches.as_deref() == Some("mukai.poly");
            r.check(
                "irreducible-candidates",
                "case-10/uniqueness",
                only_mukai,
                format!(
                    "two-Hesse-cubic products: {}; remaining: {}",
                    split_text.join(" "),
                    rest.iter().map(|s| format!("{}={}", s.character, s.matches.as_deref().unwrap_or("?"))).collect::<Vec<_>>().join(" ")
                ),
            );
        }
        Err(e) => {
            r.check("sextic-count", "case-10/sextic-count", false, e);
        }
    }
    let s = &Cyclo::from_int(2) * &Cyclo::root_of_unity(3, 1) + Cyclo::one();
    let expected = [&Cyclo::from_int(3) + &(&Cyclo::from_int(3) * &s), &Cyclo::from_int(3) - &(&Cyclo::from_int(3) * &s)];
    let p = ProjPoint::from_ints(&[0, 1, -1]);
    for file in ["fa_plus.poly", "fa_minus.poly"] {
        let Some(fa) = curve(r, file, "case-10/other-sextics", 6, None) else { continue };
        let a = a_parameter(&fa);
        let ok = a.as_ref().is_some_and(|a| a_quadratic(a).is_zero() && expected.contains(a));
        r.check(&format!("a-root:{file}"), "case-10/other-sextics", ok, format!("a = {}", a.map_or("none".into(), |a| a.to_string())));
        let v = fa.evaluate(&p).ok();
        r.check(&format!("vanishes:{file}"), "case-10/fixed-point", v.as_ref().is_some_and(Cyclo::is_zero), "f_a([0:1:-1]) = 0");
    }
    let v = f.evaluate(&p).ok();
    r.check("mukai-at-point", "case-10/fixed-point", v == Some(Cyclo::from_int(12)), format!("mukai([0:1:-1]) = {}", v.map_or("?".into(), |v| v.to_string())));
    match m9_fixed_point_data() {
        Ok((_, d)) => r.check("tangent-determinant", "case-10/fixed-point", d.is_one(), format!("det of I on the tangent space at [0:1:-1] = {d}")),
        Err(e) => r.check("tangent-determinant", "case-10/fixed-point", false, e),
    };
    match m9_j_candidates() {
        Ok(j) => r.check(
            "j-search",
            "case-10/group",
            j.catalogue_j_found && j.candidates > 0,
            format!("{} of {} order-4 elements of the Hessian group ({}) generate M9 with a, b, I; catalogue J among them", j.candidates, j.order_four, j.hessian_order),
        ),
        Err(e) => r.check("j-search", "case-10/group", false, e),
    };
    euler_check(r, "case-10/euler", (3, 0, 0, 10), cfg);
    scan_check(r, "scan:curve", "case-10/smoothness", &f, m9.linear.order(), &cfg.primes);
}

fn case_11a(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(t48) = group(r, "t48_p2", "case-11a/group") else { return };
    let Some(f) = curve(r, "c1.poly", "case-11a/equation", 6, None) else { return };
    invariance(r, "curve", "case-11a/invariance", &f, &t48.linear, true);
    let chars = t48.linear.linear_characters();
    r.check("characters", "case-11a/group", chars.len() == 2, format!("{} linear characters", chars.len()));
    let octa = Poly::parse(3, "x1^5*x2 - x1*x2^5").expect("fixed");
    let x36 = Poly::parse(3, "x3^6").expect("fixed");
    if let Some(space) = r.attempt("uniqueness", "case-11a/uniqueness", invariant_basis(&t48.linear, 6, &LinearCharacter::trivial(&t48.linear))) {
        // diag(1, 1, t) scales the two basis forms by different powers of t,
        // so all members with both coefficients nonzero are equivalent
        let x3_degrees: Vec<u32> = space.basis.iter().filter_map(x3_degree).collect();
        let ok = space.dimension() == 2 && space.contains(&octa) && space.contains(&x36) && x3_degrees.len() == 2 && x3_degrees[0] != x3_degrees[1];
        r.check("uniqueness", "case-11a/uniqueness", ok, format!("dimension {} spanned by x1^5*x2 - x1*x2^5 and x3^6; 1 modulo x3 -> t*x3", space.dimension()));
    }
    euler_check(r, "case-11a/euler", (3, 0, 0, 10), cfg);
    scan_check(r, "scan:curve", "case-11a/smoothness", &f, t48.linear.order(), &cfg.primes);
}

/// The common x3-degree of all terms, if there is one.
fn x3_degree(f: &Poly) -> Option<u32> {
    let ds: Vec<u32> = f.terms().map(|(m, _)| m.0[2]).collect();
    ds.first().copied().filter(|d| ds.iter().all(|e| e == d))
}

/// (E∞, F) pairing on the Hirzebruch surface Σ_k.
fn hirzebruch_pair(k: i64, x: (i64, i64), y: (i64, i64)) -> i64 {
    -k * x.0 * y.0 + x.0 * y.1 + x.1 * y.0
}

fn case_11b(r: &mut AuditReport, cfg: &AuditConfig) {
    let Some(t48) = group(r, "t48_2d", "case-11b/group") else { return };
    let Some(g) = extended_group(r, "case-11b/group", &t48.entry.matrices(), &ones(2), Vec::new(), 48) else { return };
    let w = [1, 1, 2, 3];
    let Some(f) = curve(r, "case11b.poly", "case-11b/equation", 6, Some(&w)) else { return };
    invariance(r, "surface", "case-11b/invariance", &f, &g, true);
    let i = Cyclo::root_of_unity(4, 1);
    let base = ProjPoint::new(vec![Cyclo::zero(), Cyclo::zero(), Cyclo::one(), i.clone()]).expect("nonzero");
    let on = f.evaluate(&base).map(|v| v.is_zero()).unwrap_or(false);
    // in P(1,1,2,3) the point [0:0:1:i] is fixed by diag(A, 1, 1)
    let fixed = g.generators().iter().all(|m| {
        let v = m.apply(base.coords());
        v[0].is_zero() && v[1].is_zero() && v[2].is_one() && v[3] == i
    });
    r.check("base-point", "case-11b/base-point", on && fixed, "[0:0:1:i] lies on the surface and is fixed");
    let sections = monomials_of_weighted_degree(&WeightSystem::new(w.to_vec()), 2);
    let names: Vec<String> = sections.iter().map(|m| m.format_with(&crate::multipoly::default_names(4))).collect();
    r.check("sections", "case-11b/sections", sections.len() as i64 == anticanonical_dim(2, 1), format!("{} = h0(-2K): {}", sections.len(), names.join(", ")));
    let x3 = Poly::monomial(Monomial::var(4, 2), Cyclo::one());
    invariance(r, "branch-x3", "case-11b/branch", &x3, &g, false);
    let mut total = 0;
    for chi in t48.linear.linear_characters() {
        total += invariant_dimension(&t48.linear, 2, &chi).unwrap_or(usize::MAX / 16);
    }
    r.check("binary-quadrics", "case-11b/branch", total == 0, format!("semi-invariant quadrics in x1, x2: {total}; the branch curve is x3 = 0"));
    euler_check(r, "case-11b/euler", (11, 0, 0, 2), cfg);
    genus_check(r, "case-11b/euler", PicardLattice::del_pezzo(1).ok(), 2);
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 3..=6 {
        let mk = (4, 2 * k + 4);
        let (e_inf, f_cls, e0) = ((1, 0), (0, 1), (1, k));
        let sq = hirzebruch_pair(k, mk, mk);
        let kf = -hirzebruch_pair(k, mk, f_cls) / 2;
        let me = hirzebruch_pair(k, mk, e_inf);
        let e0sq = hirzebruch_pair(k, e0, e0);
        ok &= sq == 32 && kf == -2 && me == 2 * (2 - k) && me < 0 && e0sq == k && hirzebruch_pair(k, e0, e_inf) == 0;
        rows.push(format!("k={k}: (-2K)^2={sq} K.F={kf} (-2K).E={me} E0^2={e0sq}"));
    }
    r.check("hirzebruch", "case-11b/hirzebruch", ok, rows.join("; "));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessian_of_klein() {
        let k = Poly::parse(3, "x1^3*x2 + x2^3*x3 + x3^3*x1").unwrap();
        let h = hessian(&k);
        let kh = Poly::parse(3, "x1^5*x3 + x2^5*x1 + x3^5*x2 - 5*x1^2*x2^2*x3^2").unwrap();
        assert_eq!(h.proportionality(&kh), Some(Cyclo::from_int(-54)));
    }

    #[test]
    fn hirzebruch_numbers() {
        assert_eq!(hirzebruch_pair(2, (4, 8), (1, 0)), 0);
        assert_eq!(hirzebruch_pair(5, (1, 0), (1, 0)), -5);
    }
}

#[cfg(test)]
mod full {
    use super::*;

    #[test]
    fn every_case_passes() {
        let cfg = AuditConfig::default();
        for id in CASE_IDS {
            let r = verify_case(id, &cfg).unwrap();
            let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
            // The M9 sextic space is 4-dimensional; the extra member splits.
            let expected: &[&str] = if *id == "10" { &["sextic-count"] } else { &[] };
            assert_eq!(failed, expected, "{r}");
        }
        assert!(verify_case("nosuch", &cfg).is_none());
    }
}
