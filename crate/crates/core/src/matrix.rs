//! Sparse matrices over `QScalar`.

use std::collections::BTreeMap;
use std::fmt;

use crate::qscalar::QScalar;

/// Row-sparse matrix; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, QScalar>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag((0..n).map(|_| QScalar::one()).collect())
    }

    pub fn scalar(n: usize, s: &QScalar) -> Self {
        Self::diag((0..n).map(|_| s.clone()).collect())
    }

    pub fn diag(d: Vec<QScalar>) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<QScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> QScalar {
        self.data[i].get(&j).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: QScalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &QScalar) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Non-zero entries as (row, col, value).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QScalar)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    /// Some(c) when the matrix is c times the identity.
    pub fn as_scalar(&self) -> Option<QScalar> {
        if self.rows != self.cols || !self.is_diagonal() {
            return None;
        }
        let c = self.get(0, 0);
        (0..self.rows).all(|i| self.get(i, i) == c).then_some(c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, QScalar> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &o.data[*k] {
                    let p = a * b;
                    match acc.get_mut(j) {
                        Some(v) => *v += p,
                        None => {
                            acc.insert(*j, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn combine(&self, o: &Self, negate: bool) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in sum");
        let mut out = self.clone();
        for (i, j, v) in o.entries() {
            let v = if negate { -v } else { v.clone() };
            out.add_at(i, j, &v);
        }
        out
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in out.data.iter_mut() {
            for v in row.values_mut() {
                *v = &*v * s;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for row in out.data.iter_mut() {
            for v in row.values_mut() {
                *v = -&*v;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            out.set(j, i, v.clone());
        }
        out
    }

    /// Entry-wise complex conjugation.
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for row in out.data.iter_mut() {
            for v in row.values_mut() {
                *v = v.conj();
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    /// Kronecker product, row index of self varying slowest.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for (i, j, a) in self.entries() {
            for (k, l, b) in o.entries() {
                out.set(i * o.rows + k, j * o.cols + l, a * b);
            }
        }
        out
    }

    /// Inverse of a diagonal matrix with non-zero diagonal.
    pub fn diag_inverse(&self) -> Option<Self> {
        if !self.is_diagonal() || self.rows != self.cols {
            return None;
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            out.set(i, i, self.get(i, i).inv().ok()?);
        }
        Some(out)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[QScalar]) -> Vec<QScalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in apply");
        self.data
            .iter()
            .map(|row| row.iter().fold(QScalar::zero(), |acc, (j, a)| acc + a * &v[*j]))
            .collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
