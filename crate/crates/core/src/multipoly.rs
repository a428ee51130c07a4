//! Sparse multivariate polynomials over cyclotomic fields.
//!
//! Terms are kept in a map ordered degree-lexicographically (total degree
//! first, then the exponent of x1, then x2, ...). Iteration for printing and
//! division runs from the largest term down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactfield::{mul_mod, parse_scalar, Cyclo, FieldError};
use crate::linalg::{common_order, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("a point needs at least one nonzero coordinate")]
    ZeroPoint,
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u32 {
        self.0.iter().zip(w).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All monomials of total degree d in n variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Monomials of the given weighted degree, largest first in degree-lex order.
pub fn monomials_of_weighted_degree(w: &WeightSystem, d: u32) -> Vec<Monomial> {
    fn rec(w: &[u32], d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let i = prefix.len();
        if i == w.len() {
            if d == 0 {
                out.push(Monomial(prefix.clone()));
            }
            return;
        }
        for e in (0..=d / w[i]).rev() {
            prefix.push(e);
            rec(w, d - e * w[i], prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&w.0, d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Componentwise minimum exponent of a nonempty set of monomials.
pub fn common_variable_factor(ms: &[Monomial]) -> Monomial {
    let first = ms.first().expect("common_variable_factor needs a nonempty set");
    let mut out = first.0.clone();
    for m in &ms[1..] {
        for (o, e) in out.iter_mut().zip(&m.0) {
            *o = (*o).min(*e);
        }
    }
    Monomial(out)
}

/// Positive integer weights, one per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem(pub Vec<u32>);

impl WeightSystem {
    pub fn new(w: Vec<u32>) -> WeightSystem {
        assert!(w.iter().all(|&x| x >= 1), "weights must be positive");
        WeightSystem(w)
    }

    pub fn standard(n: usize) -> WeightSystem {
        WeightSystem(vec![1; n])
    }

    pub fn is_standard(&self) -> bool {
        self.0.iter().all(|&w| w == 1)
    }
}

/// A point of (weighted) projective space given by a representative.
#[derive(Clone, Debug)]
pub struct ProjPoint(Vec<Cyclo>);

impl ProjPoint {
    pub fn new(coords: Vec<Cyclo>) -> Result<ProjPoint, PolyError> {
        if coords.iter().all(Cyclo::is_zero) {
            return Err(PolyError::ZeroPoint);
        }
        Ok(ProjPoint(coords))
    }

    pub fn from_ints(c: &[i64]) -> ProjPoint {
        ProjPoint::new(c.iter().map(|&v| Cyclo::from_int(v)).collect()).expect("nonzero point")
    }

    pub fn coords(&self) -> &[Cyclo] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn normalized(&self) -> ProjPoint {
        let lead = self.0.iter().find(|c| !c.is_zero()).expect("nonzero point").inv().expect("nonzero");
        ProjPoint(self.0.iter().map(|c| c * &lead).collect())
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, o: &ProjPoint) -> bool {
        if self.0.len() != o.0.len() {
            return false;
        }
        let Some(i) = self.0.iter().position(|c| !c.is_zero()) else { return false };
        if o.0[i].is_zero() {
            return false;
        }
        self.0.iter().zip(&o.0).all(|(a, b)| a * &o.0[i] == b * &self.0[i])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// A sparse polynomial in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Cyclo>,
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Cyclo) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        Poly::monomial(Monomial::var(nvars, i), Cyclo::one())
    }

    pub fn monomial(m: Monomial, c: Cyclo) -> Poly {
        let mut p = Poly::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Cyclo)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial length must equal nvars");
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclo)> {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms().map(|(m, _)| m.clone()).collect()
    }

    pub fn coeff(&self, m: &Monomial) -> Cyclo {
        self.terms.get(m).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Cyclo)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degree(&WeightSystem::standard(self.nvars)).ok().flatten().is_some()
    }

    /// The common weighted degree of all terms, or `None` if the polynomial
    /// is zero or its terms disagree.
    pub fn weighted_degree(&self, w: &WeightSystem) -> Result<Option<u32>, PolyError> {
        if w.0.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: w.0.len() });
        }
        let mut it = self.terms.keys().map(|m| m.weighted_degree(&w.0));
        let Some(d) = it.next() else { return Ok(None) };
        Ok(if it.all(|e| e == d) { Some(d) } else { None })
    }

    pub fn field_order(&self) -> u32 {
        common_order(self.terms.values())
    }

    pub fn scale(&self, c: &Cyclo) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut acc: BTreeMap<Monomial, Cyclo> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Cyclo::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at a representative of `p`.
    pub fn evaluate(&self, p: &ProjPoint) -> Result<Cyclo, PolyError> {
        self.eval(p.coords())
    }

    pub fn eval(&self, x: &[Cyclo]) -> Result<Cyclo, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: x.len() });
        }
        let mut pows: Vec<Vec<Cyclo>> = x.iter().map(|v| vec![Cyclo::one(), v.clone()]).collect();
        let mut total = Cyclo::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[i].len() <= e as usize {
                    let next = pows[i].last().expect("nonempty") * &x[i];
                    pows[i].push(next);
                }
                t = &t * &pows[i][e as usize];
            }
            total = total + t;
        }
        Ok(total)
    }

    /// f∘M: each variable x_i becomes Σ_j M[i][j]·y_j in `M.cols()` new variables.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Poly, PolyError> {
        if m.rows() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: m.rows() });
        }
        let k = m.cols();
        let forms: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                Poly::from_terms(k, (0..k).map(|j| (Monomial::var(k, j), m.get(i, j).clone())))
            })
            .collect();
        self.substitute(&forms)
    }

    /// f(g_1, …, g_n) for polynomials g_i in a common variable count.
    pub fn substitute(&self, forms: &[Poly]) -> Result<Poly, PolyError> {
        if forms.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: forms.len() });
        }
        let k = forms.first().map_or(0, Poly::nvars);
        let mut pows: Vec<Vec<Poly>> = forms.iter().map(|g| vec![Poly::constant(k, Cyclo::one()), g.clone()]).collect();
        let mut acc: BTreeMap<Monomial, Cyclo> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(k, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[i].len() <= e as usize {
                    let next = pows[i].last().expect("nonempty").mul(&forms[i]);
                    pows[i].push(next);
                }
                t = t.mul(&pows[i][e as usize]);
            }
            for (mm, cc) in t.terms {
                match acc.get_mut(&mm) {
                    Some(v) => *v = &*v + &cc,
                    None => {
                        acc.insert(mm, cc);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Poly { nvars: k, terms: acc })
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[i] -= 1;
            out.add_term(mm, c * &Cyclo::from_int(e as i64));
        }
        out
    }

    pub fn partials(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// True iff f and all partial derivatives vanish at p.
    pub fn is_singular_at(&self, p: &ProjPoint) -> Result<bool, PolyError> {
        if !self.evaluate(p)?.is_zero() {
            return Ok(false);
        }
        for d in self.partials() {
            if !d.evaluate(p)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The polynomial with variable `i` set to 1 (same variable count).
    pub fn dehomogenize(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.0[i] = 0;
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Terms of the smallest total degree present.
    pub fn lowest_degree_part(&self) -> Poly {
        let Some(d) = self.terms.keys().map(Monomial::degree).min() else { return self.clone() };
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// h with self = g·h, `None` if g does not divide self.
    pub fn exact_divide(&self, g: &Poly) -> Result<Option<Poly>, PolyError> {
        if g.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let (gm, gc) = g.leading_term().expect("nonzero");
        let gci = gc.inv()?;
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = r.leading_term() {
            if !gm.divides(rm) {
                return Ok(None);
            }
            let t = Poly::monomial(rm.div(gm), rc * &gci);
            r = r.sub(&t.mul(g));
            q = q.add(&t);
        }
        Ok(Some(q))
    }

    /// The scalar c with self = c·o, if one exists.
    pub fn proportionality(&self, o: &Poly) -> Option<Cyclo> {
        if self.is_zero() || o.is_zero() {
            return None;
        }
        if self.terms.len() != o.terms.len() {
            return None;
        }
        let (m, c) = self.leading_term()?;
        let oc = o.terms.get(m)?;
        let ratio = c.checked_div(oc).ok()?;
        if *self == o.scale(&ratio) {
            Some(ratio)
        } else {
            None
        }
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    /// Points of projective space over F_p where f and every partial vanish,
    /// as normalized coordinate vectors, sorted.
    pub fn finite_field_singular_scan(&self, p: u64) -> Result<Vec<Vec<u64>>, PolyError> {
        let f = FpPoly::reduce(self, p)?;
        let ds: Vec<FpPoly> = self.partials().iter().map(|d| FpPoly::reduce(d, p)).collect::<Result<_, _>>()?;
        let n = self.nvars;
        let count = projective_point_count(n, p);
        let mut out: Vec<Vec<u64>> = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let pt = projective_point(n, p, idx);
                if f.eval(&pt) == 0 && ds.iter().all(|d| d.eval(&pt) == 0) {
                    Some(pt)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let mono = m.format_with(names);
            let (neg, body) = term_body(c, &mono);
            match (i == 0, neg) {
                (true, false) => s.push_str(&body),
                (true, true) => {
                    s.push('-');
                    s.push_str(&body)
                }
                (false, false) => {
                    s.push_str(" + ");
                    s.push_str(&body)
                }
                (false, true) => {
                    s.push_str(" - ");
                    s.push_str(&body)
                }
            }
        }
        s
    }

    /// Parses an expression such as `x1^3*x2 + 2/3*x2^3*x3 - z3^1*x3^4`.
    pub fn parse(nvars: usize, s: &str) -> Result<Poly, PolyError> {
        Poly::parse_with_vars(&default_names(nvars), s)
    }

    pub fn parse_with_vars(names: &[String], s: &str) -> Result<Poly, PolyError> {
        let toks = lex(s).map_err(|reason| PolyError::Parse { line: 1, reason })?;
        let mut p = ExprParser { toks: &toks, pos: 0, names };
        let v = p.expr()?;
        if p.pos != toks.len() {
            return Err(PolyError::Parse { line: 1, reason: "trailing input".into() });
        }
        Ok(v)
    }
}

fn term_body(c: &Cyclo, mono: &str) -> (bool, String) {
    let unit = mono == "1";
    if let Some(r) = c.as_rational() {
        let neg = r < num_rational::BigRational::zero();
        let a = if neg { -r } else { r };
        let coef = if a.denom() == &num_bigint::BigInt::from(1) { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
        let body = if unit {
            coef
        } else if coef == "1" {
            mono.to_string()
        } else {
            format!("{coef}*{mono}")
        };
        (neg, body)
    } else if unit {
        (false, format!("({c})"))
    } else {
        (false, format!("({c})*{mono}"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(&default_names(self.nvars)))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Lx {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Lx>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Lx::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Lx::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Lx::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: &'a [Lx],
    pos: usize,
    names: &'a [String],
}

impl ExprParser<'_> {
    fn err(&self, reason: &str) -> PolyError {
        PolyError::Parse { line: 1, reason: format!("{reason} (token {})", self.pos) }
    }

    fn op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Lx::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.op() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == '*' {
                acc.mul(&t)
            } else {
                let d = t.as_constant().ok_or_else(|| self.err("division by a non-constant"))?;
                acc.scale(&d.inv()?)
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        match self.op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.op() == Some('^') {
            self.pos += 1;
            let neg = self.op() == Some('-');
            if neg {
                self.pos += 1;
            }
            let e: u32 = match self.toks.get(self.pos) {
                Some(Lx::Num(s)) => s.parse().map_err(|_| self.err("bad exponent"))?,
                _ => return Err(self.err("expected exponent")),
            };
            self.pos += 1;
            if neg {
                let c = base.as_constant().ok_or_else(|| self.err("negative power of a non-constant"))?;
                return Ok(Poly::constant(self.n(), c.pow(-(e as i64))?));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let n = self.n();
        match self.toks.get(self.pos).cloned() {
            Some(Lx::Num(s)) => {
                self.pos += 1;
                Ok(Poly::constant(n, parse_scalar(&s)?))
            }
            Some(Lx::Ident(id)) => {
                self.pos += 1;
                if let Some(i) = self.names.iter().position(|v| *v == id) {
                    return Ok(Poly::var(n, i));
                }
                if let Some(rest) = id.strip_prefix('z') {
                    if let Ok(k) = rest.parse::<u32>() {
                        if k > 0 {
                            return Ok(Poly::constant(n, Cyclo::root_of_unity(k, 1)));
                        }
                    }
                }
                Err(self.err(&format!("unknown variable `{id}`")))
            }
            Some(Lx::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.op() != Some(')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

impl Poly {
    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                if m.degree() == 0 {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// A polynomial read from the line-based file format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFile {
    pub poly: Poly,
    pub weights: Option<WeightSystem>,
}

impl PolyFile {
    /// Parses `vars k [weights w1 .. wk]` followed by `<scalar> ; e1 .. ek` lines.
    pub fn parse(text: &str) -> Result<PolyFile, PolyError> {
        let mut header: Option<(usize, Option<WeightSystem>)> = None;
        let mut terms = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |reason: &str| PolyError::Parse { line: ln + 1, reason: reason.into() };
            match &header {
                None => {
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.first() != Some(&"vars") || toks.len() < 2 {
                        return Err(perr("expected `vars <k>` header"));
                    }
                    let k: usize = toks[1].parse().map_err(|_| perr("bad variable count"))?;
                    let w = if toks.len() > 2 {
                        if toks[2] != "weights" || toks.len() != 3 + k {
                            return Err(perr("expected `weights` followed by one weight per variable"));
                        }
                        let ws: Vec<u32> = toks[3..].iter().map(|t| t.parse()).collect::<Result<_, _>>().map_err(|_| perr("bad weight"))?;
                        if ws.contains(&0) {
                            return Err(perr("weights must be positive"));
                        }
                        Some(WeightSystem(ws))
                    } else {
                        None
                    };
                    header = Some((k, w));
                }
                Some((k, _)) => {
                    let (lhs, rhs) = line.split_once(';').ok_or_else(|| perr("expected `<scalar> ; exponents`"))?;
                    let c = parse_scalar(lhs.trim()).map_err(|e| perr(&e.to_string()))?;
                    let es: Vec<u32> = rhs.split_whitespace().map(|t| t.parse()).collect::<Result<_, _>>().map_err(|_| perr("bad exponent"))?;
                    if es.len() != *k {
                        return Err(perr("exponent count differs from the variable count"));
                    }
                    terms.push((Monomial(es), c));
                }
            }
        }
        let (k, weights) = header.ok_or(PolyError::Parse { line: 0, reason: "empty polynomial file".into() })?;
        Ok(PolyFile { poly: Poly::from_terms(k, terms), weights })
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("vars {}", self.poly.nvars());
        if let Some(w) = &self.weights {
            s.push_str(" weights");
            for x in &w.0 {
                s.push_str(&format!(" {x}"));
            }
        }
        s.push('\n');
        for (m, c) in self.poly.terms() {
            let es: Vec<String> = m.0.iter().map(ToString::to_string).collect();
            s.push_str(&format!("{c} ; {}\n", es.join(" ")));
        }
        s
    }
}

/// A polynomial with coefficients reduced into F_p.
#[derive(Clone, Debug)]
pub struct FpPoly {
    p: u64,
    terms: Vec<(Vec<u32>, u64)>,
}

impl FpPoly {
    pub fn reduce(f: &Poly, p: u64) -> Result<FpPoly, PolyError> {
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let v = c.reduce_mod_prime(p)?;
            if v != 0 {
                terms.push((m.0.clone(), v));
            }
        }
        Ok(FpPoly { p, terms })
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (xi, &e) in x.iter().zip(m) {
                for _ in 0..e {
                    t = mul_mod(t, *xi, p);
                }
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

/// Number of points of P^{n-1}(F_p).
pub fn projective_point_count(n: usize, p: u64) -> u64 {
    (0..n as u32).map(|k| p.pow(k)).sum()
}

/// The idx-th normalized point of P^{n-1}(F_p): first nonzero coordinate 1.
pub fn projective_point(n: usize, p: u64, mut idx: u64) -> Vec<u64> {
    for lead in 0..n {
        let tail = (n - lead - 1) as u32;
        let block = p.pow(tail);
        if idx < block {
            let mut v = vec![0u64; n];
            v[lead] = 1;
            for j in (lead + 1..n).rev() {
                v[j] = idx % p;
                idx /= p;
            }
            return v;
        }
        idx -= block;
    }
    unreachable!("index out of range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Poly {
        Poly::parse(3, "x1^3*x2 + x2^3*x3 + x3^3*x1").unwrap()
    }

    #[test]
    fn deglex_printing() {
        let f = Poly::parse(3, "x3 + x1^2 + x1*x2 - 2/3*x2^2").unwrap();
        assert_eq!(f.to_string(), "x1^2 + x1*x2 - 2/3*x2^2 + x3");
        let g = Poly::parse(2, "z3*x1 + 1").unwrap();
        assert_eq!(g.to_string(), "(z3^1)*x1 + 1");
    }

    #[test]
    fn evaluate_and_partials() {
        let k = klein();
        assert!(k.evaluate(&ProjPoint::from_ints(&[1, 0, 0])).unwrap().is_zero());
        let grad: Vec<Cyclo> = k.partials().iter().map(|d| d.evaluate(&ProjPoint::from_ints(&[1, 0, 0])).unwrap()).collect();
        assert_eq!(grad, vec![Cyclo::zero(), Cyclo::one(), Cyclo::zero()]);
        assert_eq!(Poly::parse(2, "x1^3*x2").unwrap().partial(0), Poly::parse(2, "3*x1^2*x2").unwrap());
        assert!(Poly::constant(3, Cyclo::from_int(5)).partials().iter().all(Poly::is_zero));
    }

    #[test]
    fn cyclic_substitution() {
        let p = Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(klein().substitute_linear(&p).unwrap(), klein());
        assert_eq!(klein().substitute_linear(&Matrix::identity(3)).unwrap(), klein());
    }

    #[test]
    fn weighted_degrees() {
        let w = WeightSystem::new(vec![1, 1, 2, 3]);
        let f = Poly::parse(4, "x1*x2*(x1^4 - x2^4) + x3^3 + x4^2").unwrap();
        assert_eq!(f.weighted_degree(&w).unwrap(), Some(6));
        let g = Poly::parse(2, "x1 + x2^2").unwrap();
        assert_eq!(g.weighted_degree(&WeightSystem::standard(2)).unwrap(), None);
        assert_eq!(monomials_of_weighted_degree(&w, 2).len(), 4);
    }

    #[test]
    fn division() {
        let f = Poly::parse(2, "x1^2 - x2^2").unwrap();
        let g = Poly::parse(2, "x1 - x2").unwrap();
        assert_eq!(f.exact_divide(&g).unwrap(), Some(Poly::parse(2, "x1 + x2").unwrap()));
        assert_eq!(klein().exact_divide(&Poly::var(3, 0)).unwrap(), None);
        assert_eq!(f.exact_divide(&Poly::zero(2)), Err(PolyError::ZeroDivisor));
    }

    #[test]
    fn singular_points() {
        let xy = Poly::parse(3, "x1*x2").unwrap();
        assert!(xy.is_singular_at(&ProjPoint::from_ints(&[0, 0, 1])).unwrap());
        let q = Poly::parse(3, "x1^2 + x2^2 + x3^2").unwrap();
        assert!(!q.is_singular_at(&ProjPoint::from_ints(&[1, 0, 0])).unwrap());
        assert!(klein().finite_field_singular_scan(5).unwrap().is_empty());
        let tri = Poly::parse(3, "x1*x2*x3").unwrap();
        assert_eq!(tri.finite_field_singular_scan(7).unwrap(), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn common_factor() {
        let names: Vec<String> = ["z1", "z2", "w1", "w2"].iter().map(|s| s.to_string()).collect();
        let ms: Vec<Monomial> = ["z1*z2^3*w1^4", "z1^2*z2^2*w1^3*w2", "z1^3*z2*w1^2*w2^2", "z1^4*w1*w2^3"]
            .iter()
            .map(|s| Poly::parse_with_vars(&names, s).unwrap().monomials()[0].clone())
            .collect();
        assert_eq!(common_variable_factor(&ms), Monomial(vec![1, 0, 1, 0]));
        assert_eq!(common_variable_factor(&[Monomial(vec![2, 0]), Monomial(vec![0, 2])]), Monomial(vec![0, 0]));
    }

    #[test]
    fn file_round_trip() {
        let text = "vars 4 weights 1 1 2 3\n1 ; 5 1 0 0\n-1 ; 1 5 0 0\n1 ; 0 0 3 0\n1 ; 0 0 0 2\n";
        let pf = PolyFile::parse(text).unwrap();
        assert_eq!(PolyFile::parse(&pf.serialize()).unwrap(), pf);
        assert!(PolyFile::parse("vars 2\n1 ; 1\n").is_err());
    }

    #[test]
    fn point_enumeration() {
        let n = 3;
        let p = 5;
        let pts: Vec<Vec<u64>> = (0..projective_point_count(n, p)).map(|i| projective_point(n, p, i)).collect();
        assert_eq!(pts.len(), 31);
        let mut dedup = pts.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 31);
    }
}
