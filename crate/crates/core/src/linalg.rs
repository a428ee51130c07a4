//! Dense matrices over cyclotomic fields: products, determinants, inverses,
//! reduced row echelon forms and kernels. All entries of a matrix are kept in
//! one common field order so the inner loops never promote.

use std::fmt;

use num_integer::Integer;

use crate::exactfield::{Cyclo, FieldError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclo>,
}

/// The least common multiple of the field orders of `xs`.
pub fn common_order<'a>(xs: impl IntoIterator<Item = &'a Cyclo>) -> u32 {
    xs.into_iter().fold(1u32, |m, x| m.lcm(&x.order()))
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Cyclo::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Cyclo::one();
        }
        m
    }

    pub fn diagonal(d: &[Cyclo]) -> Matrix {
        let n = d.len();
        let mut m = Matrix::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m.unify()
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Cyclo>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }.unify()
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Cyclo::from_int(v)).collect()).collect())
    }

    /// Promotes every entry to the common field order.
    pub fn unify(mut self) -> Matrix {
        let m = common_order(&self.data);
        for x in self.data.iter_mut() {
            if x.order() != m {
                *x = x.promote(m);
            }
        }
        self
    }

    pub fn promote(&self, m: u32) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.promote(m)).collect() }
    }

    pub fn field_order(&self) -> u32 {
        common_order(&self.data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclo) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Cyclo] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Cyclo] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclo>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Cyclo) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc: Option<Cyclo> = None;
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => s + t,
                    });
                }
                out.data[i * o.cols + j] = acc.unwrap_or_else(Cyclo::zero);
            }
        }
        out
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn apply(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            }))
    }

    /// The scalar c if the matrix equals c·I.
    pub fn scalar_value(&self) -> Option<Cyclo> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                let ok = if i == j { *x == c } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone().unify();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of {v : self·v = 0}, one vector per free column, in RREF-derived form.
    pub fn kernel(&self) -> Vec<Vec<Cyclo>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Cyclo::zero(); self.cols];
                v[f] = Cyclo::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Cyclo {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone().unify();
        let mut det = Cyclo::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Cyclo::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix, FieldError> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Cyclo::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(FieldError::DivisionByZero);
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Cyclo {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Solves the homogeneous system with the given rows; returns a kernel basis.
pub fn nullspace(rows: Vec<Vec<Cyclo>>, ncols: usize) -> Vec<Vec<Cyclo>> {
    if rows.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| if i == j { Cyclo::one() } else { Cyclo::zero() }).collect())
            .collect();
    }
    Matrix::from_rows(rows).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_inverse_kernel() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), Cyclo::from_int(18));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = s.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(s.apply(&v).iter().all(Cyclo::is_zero));
        }
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn cyclotomic_entries() {
        let w = Cyclo::root_of_unity(3, 1);
        let m = Matrix::diagonal(&[Cyclo::one(), w.clone(), &w * &w]);
        assert!(m.pow(3).is_identity());
        assert!(m.det().is_one());
        assert_eq!(m.trace(), Cyclo::zero());
    }
}
