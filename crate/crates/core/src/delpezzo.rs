//! Picard lattices of Del Pezzo surfaces.
//!
//! A blow-up of P2 in r = 9 − d points has basis H, E1..Er with form
//! diag(1, −1, …, −1) and K = −3H + ΣE_i. The quadric P1×P1 has basis F1, F2
//! with form [[0,1],[1,0]] and K = −2F1 − 2F2. Classes are stored by their
//! coordinates in the lattice basis.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Del Pezzo degree must be in 1..=9, got {0}")]
    BadDegree(u32),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("class {0} has half-integral genus")]
    HalfIntegralGenus(String),
    #[error("orbit exceeds {0} classes")]
    OrbitCap(usize),
    #[error("automorphism search is limited to {cap} vertices, graph has {n}")]
    GraphTooLarge { n: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardLattice {
    degree: u32,
    gram: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    labels: Vec<String>,
    roots: Vec<Vec<i64>>,
}

/// An integral class, coordinates in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    /// aH − Σ b_i E_i.
    pub fn from_ab(a: i64, b: &[i64]) -> DivisorClass {
        let mut v = vec![a];
        v.extend(b.iter().map(|x| -x));
        DivisorClass(v)
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl PicardLattice {
    /// P2 blown up in 9 − d points.
    pub fn del_pezzo(d: u32) -> Result<PicardLattice, LatticeError> {
        if !(1..=9).contains(&d) {
            return Err(LatticeError::BadDegree(d));
        }
        let r = (9 - d) as usize;
        let n = r + 1;
        let mut gram = vec![vec![0i64; n]; n];
        gram[0][0] = 1;
        for i in 1..n {
            gram[i][i] = -1;
        }
        let mut canonical = vec![1i64; n];
        canonical[0] = -3;
        let mut labels = vec!["H".to_string()];
        labels.extend((1..=r).map(|i| format!("E{i}")));
        let mut roots = Vec::new();
        if r >= 3 {
            roots.push(DivisorClass::from_ab(1, &[1, 1, 1].iter().copied().chain(std::iter::repeat_n(0, r - 3)).collect::<Vec<_>>()).0);
        }
        for i in 1..r {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[i + 1] = -1;
            roots.push(v);
        }
        Ok(PicardLattice { degree: d, gram, canonical, labels, roots })
    }

    /// P1×P1, degree 8.
    pub fn quadric() -> PicardLattice {
        PicardLattice {
            degree: 8,
            gram: vec![vec![0, 1], vec![1, 0]],
            canonical: vec![-2, -2],
            labels: vec!["F1".into(), "F2".into()],
            roots: vec![vec![1, -1]],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass(self.canonical.clone())
    }

    pub fn is_blowup(&self) -> bool {
        self.labels[0] == "H"
    }

    pub fn simple_roots(&self) -> Vec<DivisorClass> {
        self.roots.iter().cloned().map(DivisorClass).collect()
    }

    pub fn basis_class(&self, i: usize) -> DivisorClass {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        DivisorClass(v)
    }

    pub fn pairing(&self, x: &DivisorClass, y: &DivisorClass) -> Result<i64, LatticeError> {
        if x.rank() != self.rank() || y.rank() != self.rank() {
            return Err(LatticeError::RankMismatch(x.rank(), y.rank()));
        }
        Ok(self.pair(&x.0, &y.0))
    }

    fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if *g != 0 {
                    s += x[i] * g * y[j];
                }
            }
        }
        s
    }

    /// Reflection in a root α with α² = −2: x ↦ x + (x·α)α.
    pub fn reflect(&self, x: &DivisorClass, alpha: &DivisorClass) -> DivisorClass {
        let k = self.pair(&x.0, &alpha.0);
        x.add(&alpha.scale(k))
    }

    pub fn format_class(&self, c: &DivisorClass) -> String {
        let mut s = String::new();
        for (x, l) in c.0.iter().zip(&self.labels) {
            if *x == 0 {
                continue;
            }
            let sign = if *x < 0 { "-" } else { "+" };
            let mag = x.abs();
            if s.is_empty() {
                if *x < 0 {
                    s.push('-');
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            if mag != 1 {
                let _ = write!(s, "{mag}");
            }
            s.push_str(l);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// All classes C with C² = −1 and C·K = −1.
    ///
    /// For a blow-up, write C = aH − Σb_iE_i. Then Σb_i = 3a − 1 and
    /// Σb_i² = a² + 1, and Cauchy–Schwarz gives (3a − 1)² ≤ r(a² + 1) with
    /// r ≤ 8, which forces a ≤ 6; a ranges over 0..=7 for margin. Each b_i
    /// lies in [−1, a]: b_i = −1 only for C = E_i, and b_i ≤ a because
    /// C·(H − E_i) ≥ 0 for every class other than E_i.
    pub fn minus_one_classes(&self) -> Vec<DivisorClass> {
        let k = self.canonical();
        if !self.is_blowup() {
            // Every class of P1×P1 has even square.
            return Vec::new();
        }
        let r = self.rank() - 1;
        let mut out: Vec<DivisorClass> = (0..=7i64)
            .into_par_iter()
            .flat_map_iter(|a| {
                let mut found = Vec::new();
                let mut b = Vec::with_capacity(r);
                enumerate_b(a, r, &mut b, 0, 0, &mut found);
                found
            })
            .map(|(a, b)| DivisorClass::from_ab(a, &b))
            .filter(|c| self.pair(&c.0, &c.0) == -1 && self.pair(&c.0, &k.0) == -1)
            .collect();
        out.sort_by(|x, y| x.0[0].cmp(&y.0[0]).then_with(|| y.0[1..].cmp(&x.0[1..])));
        out
    }

    /// 1 + (C² + C·K)/2.
    pub fn genus_of_class(&self, c: &DivisorClass) -> Result<i64, LatticeError> {
        let k = self.canonical();
        let s = self.pairing(c, c)? + self.pairing(c, &k)?;
        if s % 2 != 0 {
            return Err(LatticeError::HalfIntegralGenus(self.format_class(c)));
        }
        Ok(1 + s / 2)
    }

    /// Size of the orbit of c under the reflections in the simple roots.
    pub fn weyl_orbit(&self, c: &DivisorClass, cap: usize) -> Result<usize, LatticeError> {
        let roots = self.simple_roots();
        let mut seen: HashSet<DivisorClass> = HashSet::from([c.clone()]);
        let mut queue = VecDeque::from([c.clone()]);
        while let Some(x) = queue.pop_front() {
            for a in &roots {
                let y = self.reflect(&x, a);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(LatticeError::OrbitCap(cap));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.len())
    }
}

fn enumerate_b(a: i64, r: usize, b: &mut Vec<i64>, sum: i64, sq: i64, out: &mut Vec<(i64, Vec<i64>)>) {
    if sq > a * a + 1 {
        return;
    }
    if b.len() == r {
        if sum == 3 * a - 1 && sq == a * a + 1 {
            out.push((a, b.clone()));
        }
        return;
    }
    for x in -1..=a {
        b.push(x);
        enumerate_b(a, r, b, sum + x, sq + x * x, out);
        b.pop();
    }
}

pub const DEFAULT_ORBIT_CAP: usize = 100_000;
pub const AUTOMORPHISM_VERTEX_CAP: usize = 12;

/// A simple graph with positive integer edge weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    pub vertices: usize,
    /// (u, v, weight) with u < v.
    pub edges: Vec<(usize, usize, i64)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, i64)>) -> Graph {
        Graph { vertices, edges }
    }

    fn weight_matrix(&self) -> Vec<Vec<i64>> {
        let mut w = vec![vec![0; self.vertices]; self.vertices];
        for &(u, v, x) in &self.edges {
            w[u][v] = x;
            w[v][u] = x;
        }
        w
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices];
        for &(u, v, _) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Length of a shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.neighbours();
        let mut best: Option<usize> = None;
        for s in 0..self.vertices {
            let mut dist = vec![usize::MAX; self.vertices];
            let mut parent = vec![usize::MAX; self.vertices];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        q.push_back(v);
                    } else if parent[u] != v {
                        let c = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    /// Number of weight-preserving vertex permutations, by backtracking.
    pub fn automorphism_count(&self) -> Result<u64, LatticeError> {
        if self.vertices > AUTOMORPHISM_VERTEX_CAP {
            return Err(LatticeError::GraphTooLarge { n: self.vertices, cap: AUTOMORPHISM_VERTEX_CAP });
        }
        let w = self.weight_matrix();
        let deg = self.degrees();
        let mut image = vec![usize::MAX; self.vertices];
        let mut used = vec![false; self.vertices];
        Ok(extend_automorphism(&w, &deg, 0, &mut image, &mut used))
    }

    pub fn stats(&self) -> GraphStats {
        let deg = self.degrees();
        let regular = match deg.first() {
            Some(&d) if deg.iter().all(|&x| x == d) => Some(d),
            None => Some(0),
            _ => None,
        };
        GraphStats {
            vertices: self.vertices,
            edges: self.edges.len(),
            regular,
            girth: self.girth(),
            automorphisms: self.automorphism_count().ok(),
            max_weight: self.edges.iter().map(|e| e.2).max(),
        }
    }

    /// True when every vertex can be moved to vertex 0 by an automorphism.
    pub fn is_vertex_transitive(&self) -> Result<bool, LatticeError> {
        if self.vertices > AUTOMORPHISM_VERTEX_CAP {
            return Err(LatticeError::GraphTooLarge { n: self.vertices, cap: AUTOMORPHISM_VERTEX_CAP });
        }
        let w = self.weight_matrix();
        let deg = self.degrees();
        for t in 0..self.vertices {
            let mut image = vec![usize::MAX; self.vertices];
            let mut used = vec![false; self.vertices];
            image[0] = t;
            used[t] = true;
            if deg[0] != deg[t] || extend_automorphism(&w, &deg, 1, &mut image, &mut used) == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut s = String::from("graph G {\n");
        for (i, l) in labels.iter().enumerate().take(self.vertices) {
            let _ = writeln!(s, "  v{i} [label=\"{l}\"];");
        }
        for &(u, v, x) in &self.edges {
            if x == 1 {
                let _ = writeln!(s, "  v{u} -- v{v};");
            } else {
                let _ = writeln!(s, "  v{u} -- v{v} [label=\"{x}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

fn extend_automorphism(w: &[Vec<i64>], deg: &[usize], i: usize, image: &mut [usize], used: &mut [bool]) -> u64 {
    let n = w.len();
    if i == n {
        return 1;
    }
    let mut count = 0;
    for t in 0..n {
        if used[t] || deg[t] != deg[i] {
            continue;
        }
        if (0..i).any(|j| w[i][j] != w[t][image[j]]) {
            continue;
        }
        image[i] = t;
        used[t] = true;
        count += extend_automorphism(w, deg, i + 1, image, used);
        used[t] = false;
    }
    image[i] = usize::MAX;
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub regular: Option<usize>,
    pub girth: Option<usize>,
    pub automorphisms: Option<u64>,
    pub max_weight: Option<i64>,
}

/// Vertices are the classes; an edge joins two classes with pairing ≥ 1.
pub fn intersection_graph(classes: &[DivisorClass], l: &PicardLattice) -> Graph {
    let mut edges = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let p = l.pair(&classes[i].0, &classes[j].0);
            if p >= 1 {
                edges.push((i, j, p));
            }
        }
    }
    Graph::new(classes.len(), edges)
}

/// h⁰(−rK) = 1 + r(r+1)d/2.
pub fn anticanonical_dim(r: i64, d: i64) -> i64 {
    1 + r * (r + 1) * d / 2
}

/// Self-intersection of the image of B after contracting a (−1)-curve E.
pub fn blowdown_selfint(b_sq: i64, eb: i64) -> i64 {
    b_sq + eb * eb
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairings() {
        let l3 = PicardLattice::del_pezzo(3).unwrap();
        let k = l3.canonical();
        assert_eq!(l3.pairing(&k, &k).unwrap(), 3);
        let l2 = PicardLattice::del_pezzo(2).unwrap();
        let m2k = l2.canonical().scale(-2);
        assert_eq!(l2.pairing(&m2k, &m2k).unwrap(), 8);
        assert_eq!(l3.pairing(&l3.basis_class(1), &l3.basis_class(2)).unwrap(), 0);
        assert!(l3.pairing(&l3.basis_class(1), &DivisorClass(vec![1, 0])).is_err());
        let q = PicardLattice::quadric();
        assert_eq!(q.pairing(&q.canonical(), &q.canonical()).unwrap(), 8);
    }

    #[test]
    fn exceptional_counts() {
        let counts: Vec<usize> = (1..=8).map(|d| PicardLattice::del_pezzo(d).unwrap().minus_one_classes().len()).collect();
        assert_eq!(counts, vec![240, 56, 27, 16, 10, 6, 3, 1]);
        assert!(PicardLattice::quadric().minus_one_classes().is_empty());
    }

    #[test]
    fn graphs() {
        let l5 = PicardLattice::del_pezzo(5).unwrap();
        let g = intersection_graph(&l5.minus_one_classes(), &l5);
        let s = g.stats();
        assert_eq!((s.vertices, s.edges, s.regular, s.girth, s.automorphisms), (10, 15, Some(3), Some(5), Some(120)));
        assert!(g.is_vertex_transitive().unwrap());
        let l7 = PicardLattice::del_pezzo(7).unwrap();
        let p = intersection_graph(&l7.minus_one_classes(), &l7);
        assert_eq!((p.vertices, p.edges.len(), p.girth()), (3, 2, None));
        let tri = Graph::new(3, vec![(0, 1, 1), (0, 2, 1), (1, 2, 1)]);
        assert_eq!((tri.girth(), tri.automorphism_count().unwrap()), (Some(3), 6));
        let empty = Graph::new(2, vec![]);
        assert_eq!((empty.girth(), empty.automorphism_count().unwrap()), (None, 2));
    }

    #[test]
    fn genus_and_orbits() {
        for d in 1..=9 {
            let l = PicardLattice::del_pezzo(d).unwrap();
            assert_eq!(l.genus_of_class(&l.canonical().scale(-2)).unwrap(), d as i64 + 1);
            for c in l.minus_one_classes() {
                assert_eq!(l.genus_of_class(&c).unwrap(), 0);
            }
            assert_eq!(l.weyl_orbit(&l.canonical(), 10).unwrap(), 1);
        }
        for (d, n) in [(3, 27), (5, 10), (6, 6), (7, 2)] {
            let l = PicardLattice::del_pezzo(d).unwrap();
            assert_eq!(l.weyl_orbit(&l.basis_class(1), DEFAULT_ORBIT_CAP).unwrap(), n);
        }
        let l9 = PicardLattice::del_pezzo(9).unwrap();
        assert!(l9.genus_of_class(&DivisorClass(vec![2])).is_ok());
    }

    #[test]
    fn numerics() {
        assert_eq!(anticanonical_dim(2, 3), 10);
        assert_eq!(anticanonical_dim(1, 1), 2);
        assert_eq!(anticanonical_dim(2, 1), 4);
        let mut b = -4;
        for _ in 0..3 {
            b = blowdown_selfint(b, 1);
        }
        assert_eq!(b, -1);
        assert_eq!(blowdown_selfint(-1, 1), 0);
        assert_eq!(blowdown_selfint(-4, 2), 0);
    }
}
