//! Exact linear algebra over the scalar field: dense matrices, sparse reduced row
//! echelon forms and subspace comparison.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{ParamRing, Scalar};

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

fn sparse_axpy(row: &SparseRow, c: &Scalar, other: &SparseRow) -> SparseRow {
    // row - c * other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            out.push((other[j].0, -(c * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(c * &other[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_scale(row: &SparseRow, c: &Scalar) -> SparseRow {
    row.iter().map(|(k, v)| (*k, v * c)).collect()
}

fn sparse_get(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// A subspace of K^ncols held in reduced row echelon form.
///
/// Pivots are chosen leftmost, so the representation is canonical: two spans are
/// equal exactly when their `Echelon`s compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn from_dense_rows(rows: &[Vec<Scalar>]) -> Self {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        Echelon::from_rows(ncols, rows.iter().map(|r| dense_to_sparse(r)))
    }

    /// Wraps rows already in reduced echelon form (each led by a 1 in its pivot,
    /// zero in every other pivot column).
    pub(crate) fn from_rref_rows(ncols: usize, rows: Vec<SparseRow>) -> Self {
        let rows: BTreeMap<usize, SparseRow> = rows.into_iter().map(|r| (r[0].0, r)).collect();
        debug_assert!(rows.values().all(|r| r[0].1.is_one()));
        Echelon { ncols, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Rows ordered by pivot; each row has 1 in its pivot column.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.rows.values()
    }

    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseRow> {
        self.rows.get(&col)
    }

    /// Remainder of `v` modulo the span; supported on non-pivot columns only.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut cur = v.clone();
        let mut k = 0;
        // reducing by a pivot row only adds entries in non-pivot columns to the right
        while k < cur.len() {
            let col = cur[k].0;
            if let Some(prow) = self.rows.get(&col) {
                let c = cur[k].1.clone();
                cur = sparse_axpy(&cur, &c, prow);
            } else {
                k += 1;
            }
        }
        cur
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns true when the dimension grew.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.ncols));
        let r = self.reduce(&v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv().expect("leading entry is nonzero");
        let r = sparse_scale(&r, &inv);
        let p = r[0].0;
        for row in self.rows.values_mut() {
            if let Some(c) = sparse_get(row, p).cloned() {
                *row = sparse_axpy(row, &c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Basis of the orthogonal complement-style kernel: vectors x with rows·x = 0.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|c| !self.is_pivot(*c)) {
            let mut v = vec![Scalar::zero(); self.ncols];
            v[f] = Scalar::one();
            for (p, row) in &self.rows {
                if let Some(c) = sparse_get(row, f) {
                    v[*p] = -c;
                }
            }
            out.push(v);
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .values()
            .map(|r| {
                let mut v = vec![Scalar::zero(); self.ncols];
                for (c, x) in r {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Subspace inclusion `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.ncols == other.ncols && self.rows.values().all(|r| other.contains(r))
    }
}

impl fmt::Debug for Echelon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Echelon")
            .field("ncols", &self.ncols)
            .field("rows", &self.rows.values().collect::<Vec<_>>())
            .finish()
    }
}

/// Rank of a set of sparse rows. Pivots are picked by smallest entry size rather
/// than position, which keeps intermediate rational functions small; no
/// back-substitution is done since only the count is wanted.
pub fn rank_of_rows(rows: Vec<SparseRow>) -> usize {
    let mut rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut rank = 0;
    while !rows.is_empty() {
        let mut best: Option<(usize, usize, (usize, usize))> = None;
        for (ri, r) in rows.iter().enumerate() {
            for (k, (_, v)) in r.iter().enumerate() {
                let key = (v.weight(), r.len());
                if best.as_ref().is_none_or(|b| key < b.2) {
                    best = Some((ri, k, key));
                }
            }
        }
        let (ri, k, _) = best.expect("nonempty rows");
        let prow = rows.swap_remove(ri);
        let (col, pv) = prow[k].clone();
        let pinv = pv.inv().expect("nonzero pivot");
        rank += 1;
        rows = rows
            .into_iter()
            .map(|r| match sparse_get(&r, col) {
                Some(c) => {
                    let f = c * &pinv;
                    sparse_axpy(&r, &f, &prow)
                }
                None => r,
            })
            .filter(|r| !r.is_empty())
            .collect();
    }
    rank
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Dense matrix of scalars, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            data: vec![Scalar::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix, convenient in tests and constructors.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from(x)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols != other.nrows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut out = Matrix::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ncols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.nrows)
            .map(|i| {
                let mut s = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s = &s + &(a * b);
                    }
                }
                s
            })
            .collect())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::Dimension("matrix sum".into()));
        }
        Ok(Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("power of non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.nrows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product; row/column index of the result is `i*other + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.nrows * other.nrows, self.ncols * other.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.nrows {
                    for l in 0..other.ncols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.nrows + k, j * other.ncols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_rows(self.ncols, (0..self.nrows).map(|i| dense_to_sparse(self.row(i))))
    }

    pub fn rank(&self) -> usize {
        self.echelon().dim()
    }

    /// Right kernel basis (vectors x with self·x = 0), canonical from the RREF.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.echelon().kernel()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        let mut a: Vec<Vec<Scalar>> = self.rows();
        let mut sign = false;
        let mut prev = Scalar::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n)
                    .filter(|&i| !a[i][k].is_zero())
                    .min_by_key(|&i| a[i][k].weight())
                {
                    Some(i) => {
                        a.swap(k, i);
                        sign = !sign;
                    }
                    None => return Ok(Scalar::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = v.checked_div(&prev)?;
                }
                a[i][k] = Scalar::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.nrows;
        let aug: Vec<SparseRow> = (0..n)
            .map(|i| {
                let mut r = dense_to_sparse(self.row(i));
                r.push((n + i, Scalar::one()));
                r
            })
            .collect();
        let e = Echelon::from_rows(2 * n, aug);
        if e.dim() != n || e.pivots().any(|p| p >= n) {
            return Err(Error::Singular);
        }
        let mut out = Matrix::zeros(n, n);
        for (i, row) in e.rows().enumerate() {
            for (c, v) in row {
                if *c >= n {
                    out.set(i, c - n, v.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Equality up to a nonzero scalar factor.
    pub fn proportional(&self, other: &Matrix) -> bool {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return false;
        }
        let Some(k) = self.data.iter().position(|x| !x.is_zero()) else {
            return other.is_zero();
        };
        if other.data[k].is_zero() {
            return false;
        }
        let ratio = other.data[k].checked_div(&self.data[k]).expect("nonzero");
        self.data.iter().zip(&other.data).all(|(a, b)| &(a * &ratio) == b)
    }

    /// Scaled so the first nonzero entry is 1.
    pub fn projective_normal(&self) -> Matrix {
        match self.data.iter().find(|x| !x.is_zero()) {
            Some(p) => self.scale(&p.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Applies a substitution of parameters to every entry.
    pub fn substitute(&self, values: &[Option<Scalar>]) -> Result<Matrix> {
        Ok(Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|x| x.substitute(values)).collect::<Result<_>>()?,
        })
    }

    pub fn display<'a>(&'a self, ring: &'a ParamRing) -> MatrixDisplay<'a> {
        MatrixDisplay { m: self, ring }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

pub struct MatrixDisplay<'a> {
    m: &'a Matrix,
    ring: &'a ParamRing,
}

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m.nrows {
            let row: Vec<String> = self.m.row(i).iter().map(|x| x.to_string_in(self.ring)).collect();
            writeln!(f, "{}", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    fn ring() -> ParamRing {
        ParamRing::new(&["a", "b", "c", "d"], false).unwrap()
    }

    fn m(rows: &[&[&str]]) -> Matrix {
        let r = ring();
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|s| parse_scalar(s, &r).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn symbolic_determinant_and_inverse() {
        let a = m(&[&["a", "b"], &["c", "d"]]);
        assert_eq!(a.det().unwrap(), parse_scalar("a*d - b*c", &ring()).unwrap());
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        let v = m(&[&["1", "a", "a^2"], &["1", "b", "b^2"], &["1", "c", "c^2"]]);
        assert_eq!(
            v.det().unwrap(),
            parse_scalar("(b - a)*(c - a)*(c - b)", &ring()).unwrap()
        );
    }

    #[test]
    fn rref_is_canonical() {
        let x = m(&[&["1", "a", "0"], &["2", "2*a", "b"]]);
        let y = m(&[&["0", "0", "5"], &["3", "3*a", "c"]]);
        assert_eq!(x.echelon(), y.echelon());
        assert_eq!(x.rank(), 2);
        let ker = x.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(x.mul_vec(&ker[0]).unwrap().iter().all(|e| e.is_zero()));
    }

    #[test]
    fn singular_inverse_is_rejected() {
        let s = m(&[&["a", "b"], &["2*a", "2*b"]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert!(s.det().unwrap().is_zero());
    }
}
