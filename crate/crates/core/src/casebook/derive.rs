//! Derivation pipelines: the four-nodal sextic on the quintic Del Pezzo
//! surface, its proper transform under the quadratic map, and the sextic
//! curves of the M9 action.

use serde::Serialize;

use super::AuditReport;

use crate::exactfield::{Cyclo, Rational};
use crate::invariants::{invariant_basis, invariant_dimension};
use crate::linalg::{nullspace, Matrix};
use crate::matgroup::catalogue::{catalogue, load_poly};
use crate::matgroup::{closure, projectivize, tangent_determinant, GMatrix, DEFAULT_CAP};
use crate::multipoly::{Monomial, Poly, ProjPoint};

fn p3(s: &str) -> Poly {
    Poly::parse(3, s).expect("fixed polynomial")
}

/// The S3-symmetric sextics f1..f7 in x1, x2, x3.
pub fn quintic_basis() -> Vec<Poly> {
    [
        "x1^6 + x2^6 + x3^6",
        "x1^5*x2 + x1^5*x3 + x1*x2^5 + x1*x3^5 + x2^5*x3 + x2*x3^5",
        "x1^4*x2*x3 + x1*x2^4*x3 + x1*x2*x3^4",
        "x1^4*x2^2 + x1^4*x3^2 + x1^2*x2^4 + x1^2*x3^4 + x2^4*x3^2 + x2^2*x3^4",
        "x1^3*x2^3 + x1^3*x3^3 + x2^3*x3^3",
        "x1^3*x2^2*x3 + x1^3*x2*x3^2 + x1^2*x2^3*x3 + x1^2*x2*x3^3 + x1*x2^3*x3^2 + x1*x2^2*x3^3",
        "x1^2*x2^2*x3^2",
    ]
    .iter()
    .map(|s| p3(s))
    .collect()
}

/// The four base points [1:0:0], [0:1:0], [0:0:1], [1:1:1].
pub fn base_points() -> Vec<ProjPoint> {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].iter().map(|c| ProjPoint::from_ints(c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeConstraint {
    pub label: String,
    #[serde(serialize_with = "ser_rationals")]
    pub row: Vec<Rational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Linear conditions on the coefficients a_1..a_k of f = Σ a_i f_i.
#[derive(Clone, Debug)]
pub struct NodeConstraintSystem {
    basis: Vec<Poly>,
    constraints: Vec<NodeConstraint>,
}

impl NodeConstraintSystem {
    pub fn new(basis: Vec<Poly>) -> NodeConstraintSystem {
        NodeConstraintSystem { basis, constraints: Vec::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.basis.len()
    }

    pub fn constraints(&self) -> &[NodeConstraint] {
        &self.constraints
    }

    pub fn add_row(&mut self, label: &str, row: Vec<Rational>) {
        assert_eq!(row.len(), self.basis.len());
        self.constraints.push(NodeConstraint { label: label.into(), row });
    }

    /// Adds q(f) = 0 for a functional q that is linear in f.
    pub fn add_functional(&mut self, label: &str, q: impl Fn(&Poly) -> Cyclo) {
        let row = self
            .basis
            .iter()
            .map(|b| q(b).as_rational().expect("rational functional"))
            .collect();
        self.add_row(label, row);
    }

    fn rows(&self, upto: usize) -> Vec<Vec<Cyclo>> {
        self.constraints[..upto].iter().map(|c| c.row.iter().map(Cyclo::from_rational).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        self.unknowns() - nullspace(self.rows(self.constraints.len()), self.unknowns()).len()
    }

    /// The unique solution up to scale, normalized so that coordinate
    /// `normalize` equals 1. Errors name the constraint that made the
    /// system inconsistent, or report that it stays underdetermined.
    pub fn solve(&self, normalize: usize) -> Result<Vec<Rational>, String> {
        let k = self.unknowns();
        let mut dim = k;
        for i in 0..self.constraints.len() {
            dim = nullspace(self.rows(i + 1), k).len();
            if dim == 0 {
                return Err(format!("constraint `{}` leaves only the zero solution", self.constraints[i].label));
            }
        }
        if dim > 1 {
            return Err(format!("{dim}-dimensional solution space after all {} constraints", self.constraints.len()));
        }
        let v = nullspace(self.rows(self.constraints.len()), k).pop().expect("one kernel vector");
        let piv = v[normalize].clone();
        if piv.is_zero() {
            return Err(format!("coordinate a{} vanishes on the solution", normalize + 1));
        }
        let inv = piv.inv().expect("nonzero");
        Ok(v.iter().map(|x| (x * &inv).as_rational().expect("rational")).collect())
    }

    pub fn assemble(&self, a: &[Rational]) -> Poly {
        self.basis.iter().zip(a).fold(Poly::zero(3), |acc, (b, c)| acc.add(&b.scale(&Cyclo::from_rational(c))))
    }
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Node, tangent cone and line restriction conditions, in that order.
pub fn quintic_constraints() -> NodeConstraintSystem {
    let mut sys = NodeConstraintSystem::new(quintic_basis());
    for (k, p) in base_points().iter().enumerate() {
        sys.add_functional(&format!("node-p{}/value", k + 1), |f| f.evaluate(p).expect("3 coordinates"));
        for j in 0..3 {
            sys.add_functional(&format!("node-p{}/d{}", k + 1, j + 1), |f| f.partial(j).evaluate(p).expect("3 coordinates"));
        }
    }
    // quadratic part at p3 in the chart x3 = 1, proportional to x1^2 - x1x2 + x2^2
    let m = |e: [u32; 3]| Monomial(e.to_vec());
    let (c11, c12, c22) = (m([2, 0, 0]), m([1, 1, 0]), m([0, 2, 0]));
    sys.add_functional("tangent-p3/x1x2", |f| {
        let g = f.dehomogenize(2);
        &g.coeff(&c12) + &g.coeff(&c11)
    });
    sys.add_functional("tangent-p3/x2^2", |f| {
        let g = f.dehomogenize(2);
        &g.coeff(&c22) - &g.coeff(&c11)
    });
    // f(x1, x1, x3) proportional to x1^2 (x1 - x3)^2 (x1^2 - x1x3 + x3^2)
    let target = p3("x1^2*(x1 - x3)^2*(x1^2 - x1*x3 + x3^2)");
    let on_line = |f: &Poly| f.substitute(&[Poly::var(3, 0), Poly::var(3, 0), Poly::var(3, 2)]).expect("3 forms");
    let lead = m([6, 0, 0]);
    let t0 = target.coeff(&lead);
    for k in (0..6u32).rev() {
        let mk = m([k, 0, 6 - k]);
        let tk = target.coeff(&mk);
        let (lead, mk, t0) = (lead.clone(), mk.clone(), t0.clone());
        sys.add_functional(&format!("line-l34/x1^{k}x3^{}", 6 - k), move |f| {
            let r = on_line(f);
            &(&r.coeff(&mk) * &t0) - &(&r.coeff(&lead) * &tk)
        });
    }
    sys
}

/// The relations as printed: one node relation and the four coefficient
/// comparisons along x1 = x2 (coefficients of a1..a7).
pub fn printed_relations() -> Vec<(&'static str, [i64; 7])> {
    vec![
        ("printed/node", [0, 0, 3, 6, 3, 6, 1]),
        ("printed/line-1", [0, 0, 2, 0, -2, 0, 0]),
        ("printed/line-2", [0, 0, -1, 0, 1, 0, 0]),
        ("printed/line-3", [0, 0, 0, 6, 4, -2, -1]),
        ("printed/line-4", [0, 0, 0, -6, -5, -2, 0]),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct QuinticSolution {
    #[serde(serialize_with = "ser_rationals")]
    pub coefficients: Vec<Rational>,
    #[serde(serialize_with = "ser_poly")]
    pub poly: Poly,
    pub rank: usize,
    pub rank_with_printed: usize,
    pub constraints: usize,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Solves for a_1..a_7 with a_6 = 1.
pub fn derive_quintic_dp_sextic() -> Result<QuinticSolution, String> {
    let sys = quintic_constraints();
    let coefficients = sys.solve(5)?;
    let poly = sys.assemble(&coefficients);
    let rank = sys.rank();
    let mut with_printed = sys.clone();
    for (label, row) in printed_relations() {
        with_printed.add_row(label, row.iter().map(|&v| rat(v)).collect());
    }
    Ok(QuinticSolution { coefficients, poly, rank, rank_with_printed: with_printed.rank(), constraints: sys.constraints().len() })
}

/// The quadratic map [x1(x3 - x2) : x3(x1 - x2) : x1 x3].
pub fn quadratic_map() -> Vec<Poly> {
    vec![p3("x1*(x3 - x2)"), p3("x3*(x1 - x2)"), p3("x1*x3")]
}

/// Line factors tried when stripping, in order.
pub const STRIP_ORDER: &[&str] = &["x1", "x3", "x1 - x2", "x3 - x2", "x1 - x3", "x2 - x3", "x2"];

#[derive(Clone, Debug, Serialize)]
pub struct ProperTransform {
    pub stripped: Vec<String>,
    #[serde(serialize_with = "ser_poly")]
    pub residual: Poly,
    pub scalar: Option<String>,
}

/// f∘φ with line factors removed greedily until the degree of f is reached;
/// `scalar` is c with residual = c·f.
pub fn proper_transform_invariance(f: &Poly) -> Result<ProperTransform, String> {
    let target = f.degree().ok_or("zero polynomial")?;
    let mut g = f.substitute(&quadratic_map()).map_err(|e| e.to_string())?;
    let lines: Vec<Poly> = STRIP_ORDER.iter().map(|s| p3(s)).collect();
    let mut stripped = Vec::new();
    while g.degree().unwrap_or(0) > target {
        let mut hit = false;
        for (name, l) in STRIP_ORDER.iter().zip(&lines) {
            if let Some(q) = g.exact_divide(l).map_err(|e| e.to_string())? {
                g = q;
                stripped.push(name.to_string());
                hit = true;
                break;
            }
        }
        if !hit {
            return Err(format!("no line factor divides the residual {g}"));
        }
    }
    let scalar = g.proportionality(f).map(|c| c.to_string());
    Ok(ProperTransform { stripped, residual: g, scalar })
}

#[derive(Clone, Debug, Serialize)]
pub struct M9Sextic {
    pub character: String,
    #[serde(serialize_with = "ser_poly")]
    pub poly: Poly,
    pub matches: Option<String>,
    /// (s, p) when the sextic is C^2 + s·BC + p·B^2 for C = Σ x_i^3, B = x1x2x3.
    #[serde(serialize_with = "ser_pair")]
    pub hesse_pair: Option<(Cyclo, Cyclo)>,
}

fn ser_pair<S: serde::Serializer>(v: &Option<(Cyclo, Cyclo)>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some((a, b)) => s.serialize_some(&[a.to_string(), b.to_string()]),
        None => s.serialize_none(),
    }
}

/// Writes f, up to scale, as a binary quadratic form in C = Σ x_i^3 and
/// B = x1x2x3. Such a sextic splits into two cubics of the Hesse pencil
/// C + tB, with t the roots of t^2 - s t + p.
pub fn hesse_pair(f: &Poly) -> Option<(Cyclo, Cyclo)> {
    let lead = f.coeff(&Monomial(vec![6, 0, 0]));
    let g = f.scale(&lead.inv().ok()?);
    let s = g.coeff(&Monomial(vec![4, 1, 1]));
    let p = g.coeff(&Monomial(vec![2, 2, 2]));
    let c = p3("x1^3 + x2^3 + x3^3");
    let b = p3("x1*x2*x3");
    let q = c.mul(&c).add(&b.mul(&c).scale(&s)).add(&b.mul(&b).scale(&p));
    (q == g).then_some((s, p))
}

/// All semi-invariant sextics of the linear M9 action, one space per
/// character with nonzero dimension. Each basis element is matched against
/// the catalogue curves.
pub fn derive_m9_sextics() -> Result<Vec<M9Sextic>, String> {
    let g = catalogue("m9").map_err(|e| e.to_string())?;
    let known: Vec<(&str, Poly)> = ["mukai.poly", "fa_plus.poly", "fa_minus.poly"]
        .iter()
        .map(|f| load_poly(f).map(|pf| (*f, pf.poly)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for chi in g.linear.linear_characters() {
        let d = invariant_dimension(&g.linear, 6, &chi).map_err(|e| e.to_string())?;
        if d == 0 {
            continue;
        }
        let space = invariant_basis(&g.linear, 6, &chi).map_err(|e| e.to_string())?;
        if space.dimension() != d {
            return Err(format!("trace formula gives {d}, kernel gives {} for {}", space.dimension(), chi.spec()));
        }
        for b in space.basis {
            let matches = known.iter().find(|(_, k)| b.proportionality(k).is_some()).map(|(n, _)| n.to_string());
            let hesse_pair = hesse_pair(&b);
            out.push(M9Sextic { character: chi.spec(), poly: b, matches, hesse_pair });
        }
    }
    Ok(out)
}

/// x1^6 + x2^6 + x3^6 + (18 - 3a) x1^2x2^2x3^2 + 2 Σ x_i^3 x_j^3 + a Σ x_i^4 x_j x_k.
pub fn f_a(a: &Cyclo) -> Poly {
    let base = p3("x1^6 + x2^6 + x3^6 + 2*(x1^3*x2^3 + x1^3*x3^3 + x2^3*x3^3)");
    let mid = p3("x1^2*x2^2*x3^2").scale(&(&Cyclo::from_int(18) - &(&Cyclo::from_int(3) * a)));
    let side = p3("x1^4*x2*x3 + x1*x2^4*x3 + x1*x2*x3^4").scale(a);
    base.add(&mid).add(&side)
}

/// The a-parameter of a sextic of f_a shape: its x1^4x2x3 coefficient.
pub fn a_parameter(f: &Poly) -> Option<Cyclo> {
    let a = f.coeff(&Monomial(vec![4, 1, 1]));
    (f_a(&a) == *f).then_some(a)
}

/// a^2 - 6a + 36.
pub fn a_quadratic(a: &Cyclo) -> Cyclo {
    &(&(a * a) - &(&Cyclo::from_int(6) * a)) + &Cyclo::from_int(36)
}

#[derive(Clone, Debug, Serialize)]
pub struct JSearch {
    pub hessian_order: usize,
    pub order_four: usize,
    pub candidates: usize,
    pub catalogue_j_found: bool,
}

/// Searches the projective Hessian group ⟨a, b, I, diag(1, 1, ζ3)⟩ for
/// order-4 elements J with J I J⁻¹ = I⁻¹ and (IJ)^2 = I^2 (projectively)
/// such that ⟨a, b, I, J⟩ has projective order 72.
pub fn m9_j_candidates() -> Result<JSearch, String> {
    let g = catalogue("m9").map_err(|e| e.to_string())?;
    let lab = |l: &str| {
        g.entry.generators.iter().find(|m| m.label.as_deref() == Some(l)).map(|m| m.matrix.clone()).ok_or(format!("no generator {l}"))
    };
    let (a, b, i, j) = (lab("a")?, lab("b")?, lab("i")?, lab("j")?);
    let t = Matrix::diagonal(&[Cyclo::one(), Cyclo::one(), Cyclo::root_of_unity(3, 1)]);
    let gm = |m: &Matrix| GMatrix::unlabeled(m.clone()).map_err(|e| e.to_string());
    let lin = closure(&[gm(&a)?, gm(&b)?, gm(&i)?, gm(&t)?], DEFAULT_CAP).map_err(|e| e.to_string())?;
    let h = projectivize(&lin);
    let ii = h.index_of(&i).ok_or("I not in the Hessian group")?;
    let jj = h.index_of(&j).ok_or("J not in the Hessian group")?;
    let i2 = h.mul(ii, ii);
    let mut order_four = 0;
    let mut hits = Vec::new();
    for e in 0..h.order() {
        if h.element_order(e) != 4 {
            continue;
        }
        order_four += 1;
        if h.mul(h.mul(e, ii), h.inv(e)) != h.inv(ii) {
            continue;
        }
        let ie = h.mul(ii, e);
        if h.mul(ie, ie) != i2 {
            continue;
        }
        let sub = closure(&[gm(&a)?, gm(&b)?, gm(&i)?, gm(h.lift(e))?], DEFAULT_CAP).map_err(|e| e.to_string())?;
        if projectivize(&sub).order() == 72 {
            hits.push(e);
        }
    }
    Ok(JSearch { hessian_order: h.order(), order_four, candidates: hits.len(), catalogue_j_found: hits.contains(&jj) })
}

/// The fixed point [0:1:-1] of I and the determinant of I on its tangent space.
pub fn m9_fixed_point_data() -> Result<(ProjPoint, Cyclo), String> {
    let g = catalogue("m9").map_err(|e| e.to_string())?;
    let i = g.entry.generators.iter().find(|m| m.label.as_deref() == Some("i")).ok_or("no generator i")?;
    let p = ProjPoint::from_ints(&[0, 1, -1]);
    let d = tangent_determinant(&i.matrix, &p).map_err(|e| e.to_string())?;
    Ok((p, d))
}

pub const PIPELINES: &[&str] = &["cs5", "m9"];

/// The derivation pipeline as a report; `None` for an unknown name.
pub fn pipeline_report(name: &str) -> Option<AuditReport> {
    let mut r = AuditReport::new(&format!("derive-{name}"));
    match name {
        "cs5" => cs5_report(&mut r),
        "m9" => m9_report(&mut r),
        _ => return None,
    }
    Some(r)
}

fn cs5_report(r: &mut AuditReport) {
    let Some(sol) = r.attempt("solve", "cs5/coefficients", derive_quintic_dp_sextic()) else { return };
    let shown: Vec<String> = sol.coefficients.iter().map(|c| c.to_string()).collect();
    let want: Vec<Rational> = [0, 0, 2, -2, 2, 1, -6].iter().map(|&v| rat(v)).collect();
    r.check("coefficients", "cs5/coefficients", sol.coefficients == want, format!("a = ({}) from {} constraints", shown.join(","), sol.constraints));
    r.check("rank", "cs5/coefficients", sol.rank == 6, format!("rank {} on 7 unknowns", sol.rank));
    r.check(
        "printed-relations",
        "cs5/relations",
        sol.rank_with_printed == sol.rank,
        format!("rank {} with the printed relations appended", sol.rank_with_printed),
    );
    let Some(table) = r.attempt("table-row", "cs5/table", load_poly("case3b.poly")) else { return };
    let scalar = sol.poly.proportionality(&table.poly);
    r.check("table-row", "cs5/table", scalar.is_some(), format!("assembled = {} * table row", scalar.map_or("none".into(), |c| c.to_string())));
    let Some(t) = r.attempt("proper-transform", "cs5/proper-transform", proper_transform_invariance(&sol.poly)) else { return };
    r.check(
        "proper-transform",
        "cs5/proper-transform",
        t.scalar.is_some(),
        format!("stripped {}; residual = {} * f", t.stripped.join(" "), t.scalar.as_deref().unwrap_or("none")),
    );
}

fn m9_report(r: &mut AuditReport) {
    let Some(list) = r.attempt("sextics", "m9/sextic-count", derive_m9_sextics()) else { return };
    for s in &list {
        let split = s.hesse_pair.as_ref().map_or("not a Hesse product".into(), |(a, b)| format!("Hesse product s={a} p={b}"));
        r.check(
            &format!("sextic:{}", s.character),
            "m9/sextic-count",
            true,
            format!("{} = {}; {split}", s.matches.as_deref().unwrap_or("unlisted"), s.poly),
        );
    }
    r.check("sextic-count", "m9/sextic-count", list.len() == 3, format!("dimension {} summed over characters", list.len()));
    let rest: Vec<&M9Sextic> = list.iter().filter(|s| s.hesse_pair.is_none()).collect();
    r.check(
        "irreducible-candidates",
        "m9/uniqueness",
        rest.len() == 1 && rest[0].matches.as_deref() == Some("mukai.poly"),
        format!("{} sextic(s) outside the Hesse products", rest.len()),
    );
    let Some(j) = r.attempt("j-search", "m9/group", m9_j_candidates()) else { return };
    r.check(
        "j-search",
        "m9/group",
        j.catalogue_j_found,
        format!("{} candidates among {} order-4 elements of the Hessian group ({})", j.candidates, j.order_four, j.hessian_order),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_pipeline() {
        let s = derive_quintic_dp_sextic().unwrap();
        let want: Vec<Rational> = [0, 0, 2, -2, 2, 1, -6].iter().map(|&v| rat(v)).collect();
        assert_eq!(s.coefficients, want);
        assert_eq!(s.rank, 6);
        assert_eq!(s.rank_with_printed, 6);
        let table = load_poly("case3b.poly").unwrap().poly;
        assert_eq!(s.poly.proportionality(&table), Some(Cyclo::one()));
    }

    #[test]
    fn node_row_at_p4() {
        let mut sys = NodeConstraintSystem::new(quintic_basis());
        let p = ProjPoint::from_ints(&[1, 1, 1]);
        sys.add_functional("v", |f| f.evaluate(&p).unwrap());
        sys.add_functional("d1", |f| f.partial(0).evaluate(&p).unwrap());
        let v: Vec<i64> = [3, 6, 3, 6, 3, 6, 1].to_vec();
        assert_eq!(sys.constraints()[0].row, v.iter().map(|&x| rat(x)).collect::<Vec<_>>());
        // symmetric basis: each partial at [1:1:1] is deg/3 times the value
        let d: Vec<Rational> = sys.constraints()[1].row.clone();
        assert_eq!(d, v.iter().map(|&x| rat(2 * x)).collect::<Vec<_>>());
    }

    #[test]
    fn strip_lines() {
        let s = derive_quintic_dp_sextic().unwrap();
        let t = proper_transform_invariance(&s.poly).unwrap();
        assert_eq!(t.scalar.as_deref(), Some("1"));
        assert_eq!(t.stripped.len(), 6);
        let x1 = Poly::var(3, 0);
        let img = x1.substitute(&quadratic_map()).unwrap();
        assert_eq!(img, p3("x1*x3 - x1*x2"));
        let t = proper_transform_invariance(&x1).unwrap();
        assert_eq!(t.stripped, vec!["x1".to_string()]);
    }

    #[test]
    fn a_roots() {
        let plus = Cyclo::root_of_unity(3, 1).scale(&rat(-6));
        let minus = &Cyclo::from_int(6) + &Cyclo::root_of_unity(3, 1).scale(&rat(6));
        assert!(a_quadratic(&plus).is_zero() && a_quadratic(&minus).is_zero());
        assert_eq!(a_parameter(&load_poly("fa_plus.poly").unwrap().poly), Some(plus));
        assert_eq!(a_parameter(&load_poly("fa_minus.poly").unwrap().poly), Some(minus));
    }
}
