//! Finite matrix groups over cyclotomic fields.
//!
//! A group is stored as a breadth-first list of elements together with its
//! right Cayley table with respect to the generators: `table[e][j]` is the
//! index of `elements[e] * gens[j]`. Products and inverses of arbitrary
//! elements are computed by walking generator words through the table, so
//! no matrix multiplication happens after the closure is built.

pub mod catalogue;

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::exactfield::Cyclo;
use crate::linalg::{common_order, Matrix};
use crate::multipoly::ProjPoint;

pub const DEFAULT_CAP: usize = 12000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators must be square matrices of one common size")]
    DimensionMismatch,
    #[error("generator {0} is singular")]
    Singular(usize),
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("matrix has no finite order below {0}")]
    InfiniteOrder(u32),
    #[error("vector is not an eigenvector of the matrix")]
    NotEigenvector,
}

/// An invertible square matrix with an optional label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMatrix {
    pub matrix: Matrix,
    pub label: Option<String>,
}

impl GMatrix {
    pub fn new(matrix: Matrix, label: Option<String>) -> Result<GMatrix, GroupError> {
        if !matrix.is_square() {
            return Err(GroupError::DimensionMismatch);
        }
        if matrix.det().is_zero() {
            return Err(GroupError::Singular(0));
        }
        Ok(GMatrix { matrix, label })
    }

    pub fn unlabeled(matrix: Matrix) -> Result<GMatrix, GroupError> {
        GMatrix::new(matrix, None)
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

/// Scales a matrix so that its first nonzero entry (row-major) is 1.
pub fn projective_normal_form(m: &Matrix) -> Matrix {
    let lead = m.entries().iter().find(|x| !x.is_zero()).expect("nonzero matrix");
    if lead.is_one() {
        return m.clone();
    }
    m.scale(&lead.inv().expect("nonzero"))
}

fn key_of(m: &Matrix, order: u32) -> Vec<BigInt> {
    let mut k = Vec::new();
    for x in m.entries() {
        let y = x.promote(order);
        let (num, den) = y.raw();
        k.extend(num.iter().cloned());
        k.push(den.clone());
    }
    k
}

/// A finite group of matrices, closed and indexed.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    size: usize,
    field_order: u32,
    projective: bool,
    elements: Vec<Matrix>,
    lifts: Vec<Matrix>,
    gen_mats: Vec<Matrix>,
    gens: Vec<usize>,
    table: Vec<Vec<usize>>,
    inv_table: Vec<Vec<usize>>,
    words: Vec<Vec<u16>>,
    index: HashMap<Vec<BigInt>, usize>,
}

/// Closure of the given generators under multiplication.
pub fn closure(gens: &[GMatrix], cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
    build(gens.iter().map(|g| g.matrix.clone()).collect(), cap, false)
}

/// The image of G in PGL: elements merged modulo scalars.
pub fn projectivize(g: &FiniteMatrixGroup) -> FiniteMatrixGroup {
    if g.projective {
        return g.clone();
    }
    build(g.gen_mats.clone(), g.order().max(1), true).expect("a quotient is never larger than the group")
}

fn build(gens: Vec<Matrix>, cap: usize, projective: bool) -> Result<FiniteMatrixGroup, GroupError> {
    let Some(first) = gens.first() else { return Err(GroupError::NoGenerators) };
    let n = first.rows();
    for (i, g) in gens.iter().enumerate() {
        if !g.is_square() || g.rows() != n {
            return Err(GroupError::DimensionMismatch);
        }
        if g.det().is_zero() {
            return Err(GroupError::Singular(i));
        }
    }
    let order = common_order(gens.iter().flat_map(|g| g.entries()));
    let gens: Vec<Matrix> = gens.iter().map(|g| g.promote(order)).collect();
    let canon = |m: &Matrix| if projective { projective_normal_form(m) } else { m.clone() };

    let id = Matrix::identity(n).promote(order);
    let mut elements = vec![id.clone()];
    let mut lifts = vec![id.clone()];
    let mut words: Vec<Vec<u16>> = vec![Vec::new()];
    let mut index = HashMap::new();
    index.insert(key_of(&id, order), 0usize);
    let mut table: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        let mut row = Vec::with_capacity(gens.len());
        for (j, g) in gens.iter().enumerate() {
            let lift = lifts[e].mul(g);
            let c = canon(&lift);
            let k = key_of(&c, order);
            let idx = match index.get(&k) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(k, i);
                    elements.push(c);
                    lifts.push(lift);
                    let mut w = words[e].clone();
                    w.push(j as u16);
                    words.push(w);
                    queue.push_back(i);
                    i
                }
            };
            row.push(idx);
        }
        table.push(row);
    }
    let mut inv_table = vec![vec![0usize; gens.len()]; elements.len()];
    for (e, row) in table.iter().enumerate() {
        for (j, &t) in row.iter().enumerate() {
            inv_table[t][j] = e;
        }
    }
    let gen_idx = (0..gens.len()).map(|j| table[0][j]).collect();
    Ok(FiniteMatrixGroup {
        size: n,
        field_order: order,
        projective,
        elements,
        lifts,
        gen_mats: gens,
        gens: gen_idx,
        table,
        inv_table,
        words,
        index,
    })
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    /// A matrix representing element i; for projective groups an actual
    /// product of the generators rather than the normalized form.
    pub fn lift(&self, i: usize) -> &Matrix {
        &self.lifts[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    pub fn generators(&self) -> Vec<Matrix> {
        self.gen_mats.clone()
    }

    pub fn word(&self, i: usize) -> &[u16] {
        &self.words[i]
    }

    /// Index of e·gen_j.
    pub fn right_mul_gen(&self, e: usize, j: usize) -> usize {
        self.table[e][j]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        if m.rows() != self.size || m.cols() != self.size {
            return None;
        }
        if !self.field_order.is_multiple_of(m.field_order()) {
            return None;
        }
        let c = if self.projective { projective_normal_form(m) } else { m.clone() };
        self.index.get(&key_of(&c, self.field_order)).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |x, &j| self.table[x][j as usize])
    }

    pub fn inv(&self, a: usize) -> usize {
        self.words[a].iter().rev().fold(0, |x, &j| self.inv_table[x][j as usize])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ai = self.inv(a);
        let bi = self.inv(b);
        self.mul(self.mul(ab, ai), bi)
    }

    /// Element indices of the subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for &t in gens {
                let y = self.mul(x, t);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
        loop {
            let h = self.subgroup(&gens);
            let mut member = vec![false; self.order()];
            for &x in &h {
                member[x] = true;
            }
            let mut added = false;
            for t in gens.clone() {
                for &s in &self.gens {
                    let c = self.mul(self.mul(self.inv(s), t), s);
                    if !member[c] {
                        gens.push(c);
                        member[c] = true;
                        added = true;
                    }
                }
            }
            if !added {
                return h;
            }
        }
    }

    /// The commutator subgroup, as sorted element indices.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut seeds = Vec::new();
        for (i, &a) in self.gens.iter().enumerate() {
            for &b in &self.gens[i + 1..] {
                seeds.push(self.commutator(a, b));
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| self.gens.iter().all(|&s| self.mul(a, s) == self.mul(s, a)))
            .collect()
    }

    /// Elements that are scalar matrices.
    pub fn scalar_subgroup(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.elements[i].scalar_value().is_some()).collect()
    }

    /// Coset labels of G modulo a normal subgroup, and the number of cosets.
    fn cosets(&self, normal: &[usize]) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.order()];
        let mut k = 0;
        for e in 0..self.order() {
            if label[e] != usize::MAX {
                continue;
            }
            for &h in normal {
                label[self.mul(e, h)] = k;
            }
            k += 1;
        }
        (label, k)
    }

    /// Elementary divisors of G/G′, sorted ascending.
    pub fn abelianization(&self) -> Vec<u64> {
        let d = self.derived_subgroup();
        let mut in_d = vec![false; self.order()];
        for &x in &d {
            in_d[x] = true;
        }
        let (label, k) = self.cosets(&d);
        let mut reps = vec![usize::MAX; k];
        for (e, &l) in label.iter().enumerate() {
            if reps[l] == usize::MAX {
                reps[l] = e;
            }
        }
        let orders: Vec<u64> = reps
            .iter()
            .map(|&r| {
                let mut x = r;
                let mut o = 1;
                while !in_d[x] {
                    x = self.mul(x, r);
                    o += 1;
                }
                o
            })
            .collect();
        abelian_invariants(k as u64, &orders)
    }

    pub fn structural_profile(&self) -> StructuralProfile {
        let mut element_orders = BTreeMap::new();
        for a in 0..self.order() {
            *element_orders.entry(self.element_order(a) as u64).or_insert(0usize) += 1;
        }
        StructuralProfile {
            order: self.order(),
            element_orders,
            center_order: self.center().len(),
            derived_order: self.derived_subgroup().len(),
            abelianization: self.abelianization(),
        }
    }

    /// All degree-one characters of the group.
    pub fn linear_characters(&self) -> Vec<LinearCharacter> {
        let ab = self.abelianization();
        let quotient: u64 = ab.iter().product();
        let m = ab.iter().fold(1u64, |a, b| a.lcm(b)) as u32;
        let gen_orders: Vec<u32> = self.gens.iter().map(|&g| self.element_order(g) as u32).collect();
        let choices: Vec<Vec<u32>> = gen_orders
            .iter()
            .map(|&o| (0..m).filter(|e| (e * o) % m == 0).collect())
            .collect();
        let mut out = Vec::new();
        let mut current = vec![0u32; self.gens.len()];
        self.enumerate_characters(m, &choices, 0, &mut current, &mut out);
        assert_eq!(out.len() as u64, quotient, "character count must equal |G/G'|");
        out.sort_by(|a, b| a.gen_exps.cmp(&b.gen_exps).then(a.modulus.cmp(&b.modulus)));
        out
    }

    fn enumerate_characters(
        &self,
        m: u32,
        choices: &[Vec<u32>],
        j: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<LinearCharacter>,
    ) {
        if j == choices.len() {
            if let Some(c) = self.character_from_exponents(m, current) {
                out.push(c);
            }
            return;
        }
        for &e in &choices[j] {
            current[j] = e;
            self.enumerate_characters(m, choices, j + 1, current, out);
        }
    }

    /// Extends generator values ζ_m^{e_j} to a homomorphism, if one exists.
    pub fn character_from_exponents(&self, m: u32, gen_exps: &[u32]) -> Option<LinearCharacter> {
        let mut val = vec![0u32; self.order()];
        for e in 1..self.order() {
            let w = &self.words[e];
            let j = *w.last().expect("non-identity element has a word") as usize;
            let p = self.inv_table[e][j];
            val[e] = (val[p] + gen_exps[j]) % m;
        }
        for e in 0..self.order() {
            for (j, &t) in self.table[e].iter().enumerate() {
                if val[t] != (val[e] + gen_exps[j]) % m {
                    return None;
                }
            }
        }
        Some(LinearCharacter::normalized(m, val, gen_exps.to_vec()))
    }

    /// Extends arbitrary generator values (roots of unity) to a character.
    pub fn character_from_values(&self, values: &[Cyclo]) -> Option<LinearCharacter> {
        if values.len() != self.gens.len() {
            return None;
        }
        let mut orders = Vec::new();
        for v in values {
            orders.push(v.multiplicative_order(1000)?);
        }
        let m = orders.iter().fold(1u32, |a, b| a.lcm(b));
        let exps: Vec<u32> = values.iter().map(|v| v.root_exponent(m)).collect::<Option<_>>()?;
        self.character_from_exponents(m, &exps)
    }
}

/// Elementary divisors of an abelian group from its size and element orders.
pub fn abelian_invariants(size: u64, orders: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = size;
    let mut p = 2;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        let mut kmax = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            kmax += 1;
        }
        // s[i] = log_p #{x : x^(p^i) = 1}
        let mut s = vec![0u32];
        for i in 1..=kmax {
            let q = p.pow(i);
            let cnt = orders.iter().filter(|&&o| q % o == 0).count() as u64;
            let mut lg = 0;
            let mut c = cnt;
            while c > 1 {
                c /= p;
                lg += 1;
            }
            s.push(lg);
        }
        s.push(*s.last().expect("nonempty"));
        for i in 1..=kmax as usize {
            let ge_i = s[i] - s[i - 1];
            let ge_next = s[i + 1] - s[i];
            for _ in 0..(ge_i - ge_next) {
                out.push(p.pow(i as u32));
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralProfile {
    pub order: usize,
    pub element_orders: BTreeMap<u64, usize>,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization: Vec<u64>,
}

impl StructuralProfile {
    pub fn max_element_order(&self) -> u64 {
        self.element_orders.keys().copied().max().unwrap_or(1)
    }
}

/// A homomorphism G → μ_m stored as exponents: χ(g_i) = ζ_m^{exps[i]}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    modulus: u32,
    exps: Vec<u32>,
    gen_exps: Vec<u32>,
}

impl LinearCharacter {
    fn normalized(m: u32, exps: Vec<u32>, gen_exps: Vec<u32>) -> LinearCharacter {
        let g = gen_exps.iter().fold(m, |a, &b| a.gcd(&b));
        LinearCharacter {
            modulus: m / g,
            exps: exps.into_iter().map(|e| e / g).collect(),
            gen_exps: gen_exps.into_iter().map(|e| e / g).collect(),
        }
    }

    pub fn trivial(g: &FiniteMatrixGroup) -> LinearCharacter {
        LinearCharacter { modulus: 1, exps: vec![0; g.order()], gen_exps: vec![0; g.gens.len()] }
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    /// Order of the character as an element of the character group.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn value(&self, i: usize) -> Cyclo {
        Cyclo::root_of_unity(self.modulus, self.exps[i] as i64)
    }

    pub fn inverse_value(&self, i: usize) -> Cyclo {
        Cyclo::root_of_unity(self.modulus, -(self.exps[i] as i64))
    }

    pub fn generator_values(&self) -> Vec<Cyclo> {
        self.gen_exps.iter().map(|&e| Cyclo::root_of_unity(self.modulus, e as i64)).collect()
    }

    pub fn multiply(&self, o: &LinearCharacter) -> LinearCharacter {
        let m = self.modulus.lcm(&o.modulus);
        let (a, b) = (m / self.modulus, m / o.modulus);
        LinearCharacter::normalized(
            m,
            self.exps.iter().zip(&o.exps).map(|(x, y)| (x * a + y * b) % m).collect(),
            self.gen_exps.iter().zip(&o.gen_exps).map(|(x, y)| (x * a + y * b) % m).collect(),
        )
    }

    /// Short text form: `trivial` or `chi:v1,v2,...` listing generator values.
    pub fn spec(&self) -> String {
        if self.is_trivial() {
            "trivial".into()
        } else {
            let vs: Vec<String> = self.generator_values().iter().map(ToString::to_string).collect();
            format!("chi:{}", vs.join(","))
        }
    }
}

/// A component of the fixed locus of a matrix acting on projective space.
#[derive(Clone, Debug)]
pub struct FixedComponent {
    pub eigenvalue: Cyclo,
    /// Basis of the eigenspace.
    pub basis: Vec<Vec<Cyclo>>,
}

impl FixedComponent {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The fixed point, when the eigenspace is a line.
    pub fn point(&self) -> Option<ProjPoint> {
        if self.basis.len() == 1 {
            ProjPoint::new(self.basis[0].clone()).ok()
        } else {
            None
        }
    }

    pub fn is_positive_dimensional(&self) -> bool {
        self.basis.len() > 1
    }
}

/// Smallest m with g^m = I, searched up to `bound`.
pub fn matrix_order(g: &Matrix, bound: u32) -> Option<u32> {
    let mut x = g.clone();
    for k in 1..=bound {
        if x.is_identity() {
            return Some(k);
        }
        x = x.mul(g);
    }
    None
}

/// Eigenspaces of a finite-order matrix, one per eigenvalue.
pub fn fixed_points_projective(g: &Matrix) -> Result<Vec<FixedComponent>, GroupError> {
    const BOUND: u32 = 1000;
    let m = matrix_order(g, BOUND).ok_or(GroupError::InfiniteOrder(BOUND))?;
    let field = g.field_order().lcm(&m);
    let n = g.rows();
    let gp = g.promote(field);
    let mut out = Vec::new();
    for j in 0..m {
        let lambda = Cyclo::root_of_unity(m, j as i64).promote(field);
        let shifted = gp.sub(&Matrix::identity(n).scale(&lambda));
        let basis = shifted.kernel();
        if !basis.is_empty() {
            out.push(FixedComponent { eigenvalue: Cyclo::root_of_unity(m, j as i64), basis });
        }
    }
    Ok(out)
}

/// Determinant of the induced action on the tangent space of P^{n-1} at [v].
pub fn tangent_determinant(g: &Matrix, v: &ProjPoint) -> Result<Cyclo, GroupError> {
    let gv = g.apply(v.coords());
    let i = v.coords().iter().position(|c| !c.is_zero()).expect("nonzero point");
    let lambda = gv[i].checked_div(&v.coords()[i]).map_err(|_| GroupError::NotEigenvector)?;
    if gv.iter().zip(v.coords()).any(|(a, b)| *a != &lambda * b) {
        return Err(GroupError::NotEigenvector);
    }
    let n = g.rows() as i64;
    Ok(g.det().checked_div(&lambda.pow(n).expect("nonzero")).expect("nonzero"))
}

/// Admissible orbit lengths |G|/|C| over the cyclic subgroups C of G.
pub fn orbit_length_menu(g: &FiniteMatrixGroup) -> Vec<usize> {
    let prof = g.structural_profile();
    let mut menu: Vec<usize> = prof.element_orders.keys().map(|&o| g.order() / o as usize).collect();
    menu.sort_unstable();
    menu.dedup();
    menu
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm(rows: Vec<Vec<Cyclo>>) -> GMatrix {
        GMatrix::unlabeled(Matrix::from_rows(rows)).unwrap()
    }

    fn z(n: u32, k: i64) -> Cyclo {
        Cyclo::root_of_unity(n, k)
    }

    fn c(v: i64) -> Cyclo {
        Cyclo::from_int(v)
    }

    fn q8() -> FiniteMatrixGroup {
        let i = gm(vec![vec![z(4, 1), c(0)], vec![c(0), z(4, 3)]]);
        let j = gm(vec![vec![c(0), c(1)], vec![c(-1), c(0)]]);
        closure(&[i, j], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn quaternion_group() {
        let g = q8();
        assert_eq!(g.order(), 8);
        let p = projectivize(&g);
        assert_eq!(p.order(), 4);
        let prof = g.structural_profile();
        assert_eq!(prof.center_order, 2);
        assert_eq!(prof.derived_order, 2);
        assert_eq!(prof.abelianization, vec![2, 2]);
        assert_eq!(g.linear_characters().len(), 4);
        for a in 0..8 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn order_27_and_trivial() {
        let a = gm(vec![vec![z(3, 1), c(0), c(0)], vec![c(0), z(3, 2), c(0)], vec![c(0), c(0), c(1)]]);
        let b = GMatrix::unlabeled(Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])).unwrap();
        let g = closure(&[a, b], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 27);
        let t = closure(&[GMatrix::unlabeled(Matrix::identity(3)).unwrap()], 10).unwrap();
        assert_eq!(t.order(), 1);
        let prof = t.structural_profile();
        assert_eq!((prof.center_order, prof.derived_order), (1, 1));
        assert!(prof.abelianization.is_empty());
        assert_eq!(t.linear_characters().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let two = GMatrix::unlabeled(Matrix::from_ints(&[&[2]])).unwrap();
        assert_eq!(closure(&[two], 50).unwrap_err(), GroupError::CapExceeded { cap: 50 });
    }

    #[test]
    fn cyclic_characters_and_menu() {
        let g = closure(&[gm(vec![vec![z(3, 1), c(0)], vec![c(0), c(1)]])], 10).unwrap();
        assert_eq!(g.linear_characters().len(), 3);
        let c6 = closure(&[gm(vec![vec![z(6, 1)]])], 10).unwrap();
        assert_eq!(orbit_length_menu(&c6), vec![1, 2, 3, 6]);
        assert_eq!(abelian_invariants(12, &[1, 2, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6]), vec![2, 2, 3]);
    }

    #[test]
    fn fixed_points() {
        let d = Matrix::diagonal(&[c(1), z(3, 1), z(3, 2)]);
        let fp = fixed_points_projective(&d).unwrap();
        assert_eq!(fp.len(), 3);
        assert!(fp.iter().all(|f| f.dimension() == 1));
        let id = fixed_points_projective(&Matrix::identity(3)).unwrap();
        assert!(id[0].is_positive_dimensional());
        assert!(tangent_determinant(&d, &ProjPoint::from_ints(&[1, 0, 0])).unwrap().is_one());
        let e = Matrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        assert!(tangent_determinant(&e, &ProjPoint::from_ints(&[0, 0, 1])).unwrap().is_one());
        assert!(tangent_determinant(&e, &ProjPoint::from_ints(&[1, 0, 1])).is_err());
    }
}
