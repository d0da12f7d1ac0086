//! Compressed sparse row matrices over any [`Ring`].
//!
//! Every generator in this crate is sparse (a 56×56 generator has at most a
//! few hundred nonzeros), so products, commutators and trace forms are done
//! row by row without ever materializing dense storage.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::scalars::{ExactScalar, Ring};

/// CSR matrix. Each row stores strictly increasing column indices and no
/// explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T: Ring> {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, row_ptr: vec![0; rows + 1], col_idx: Vec::new(), vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|k| (k, k, T::one())))
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates
    /// and dropping exact zeros.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            match acc.get_mut(&(r, c)) {
                Some(x) => *x = x.add(&v),
                None => {
                    acc.insert((r, c), v);
                }
            }
        }
        Self::from_sorted(rows, cols, acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)))
    }

    /// Entries must be sorted row-major, unique and nonzero.
    fn from_sorted(rows: usize, cols: usize, entries: impl Iterator<Item = (usize, usize, T)>) -> Self {
        let mut row_ptr = vec![0; rows + 1];
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        for (r, c, v) in entries {
            row_ptr[r + 1] += 1;
            col_idx.push(c);
            vals.push(v);
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Self { rows, cols, row_ptr, col_idx, vals }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    /// Nonzeros of row `r` as `(col, value)` pairs.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &T)> {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()].iter().copied().zip(&self.vals[span])
    }

    /// All nonzeros in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.col_idx[span.clone()].binary_search(&c) {
            Ok(k) => self.vals[span.start + k].clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_sorted(
            self.rows,
            self.cols,
            self.iter().map(|(r, c, v)| (r, c, f(v))).filter(|(_, _, v)| !v.is_zero()),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.mul(s))
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.iter().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.iter().map(|(r, c, v)| (c, r, v.conj())))
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let mut out = Vec::with_capacity(self.nnz() + o.nnz());
        for r in 0..self.rows {
            let mut a = self.row(r).peekable();
            let mut b = o.row(r).peekable();
            loop {
                let next = match (a.peek(), b.peek()) {
                    (None, None) => break,
                    (Some(&(ca, _)), Some(&(cb, _))) if ca == cb => {
                        let (_, va) = a.next().unwrap();
                        let (_, vb) = b.next().unwrap();
                        (ca, if sign { va.add(vb) } else { va.sub(vb) })
                    }
                    (Some(&(ca, _)), Some(&(cb, _))) if ca < cb => {
                        let (_, va) = a.next().unwrap();
                        (ca, va.clone())
                    }
                    (Some(_), None) => {
                        let (ca, va) = a.next().unwrap();
                        (ca, va.clone())
                    }
                    _ => {
                        let (cb, vb) = b.next().unwrap();
                        (cb, if sign { vb.clone() } else { vb.neg() })
                    }
                };
                if !next.1.is_zero() {
                    out.push((r, next.0, next.1));
                }
            }
        }
        Self::from_sorted(self.rows, self.cols, out.into_iter())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Vec::new();
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for r in 0..self.rows {
            acc.clear();
            for (k, a) in self.row(r) {
                for (c, b) in o.row(k) {
                    let p = a.mul(b);
                    match acc.get_mut(&c) {
                        Some(x) => *x = x.add(&p),
                        None => {
                            acc.insert(c, p);
                        }
                    }
                }
            }
            out.extend(std::mem::take(&mut acc).into_iter().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (r, c, v)));
        }
        Self::from_sorted(self.rows, o.cols, out.into_iter())
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows)
            .map(|r| self.row(r).fold(T::zero(), |acc, (c, a)| if v[c].is_zero() { acc } else { acc.add(&a.mul(&v[c])) }))
            .collect()
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, k| acc.add(&self.get(k, k)))
    }

    /// `tr(AB) = Σ A_ij B_ji` without forming the product.
    pub fn trace_product(&self, o: &Self) -> T {
        let mut acc = T::zero();
        for (i, j, a) in self.iter() {
            let b = o.get(j, i);
            if !b.is_zero() {
                acc = acc.add(&a.mul(&b));
            }
        }
        acc
    }

    /// Copies a block into position `(r0, c0)` of a larger matrix described by triplets.
    pub fn shifted(&self, r0: usize, c0: usize) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.iter().map(move |(r, c, v)| (r + r0, c + c0, v.clone()))
    }

    /// Complex embedding.
    pub fn to_complex(&self) -> SparseMatrix<Complex64> {
        self.map(|v| v.to_complex())
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v.to_complex();
        }
        m
    }

    /// Linear combination `Σ c_k M_k`.
    pub fn linear_combination<'a>(terms: impl IntoIterator<Item = (T, &'a Self)>, rows: usize, cols: usize) -> Self {
        Self::from_triplets(
            rows,
            cols,
            terms.into_iter().flat_map(|(s, m)| m.iter().map(move |(r, c, v)| (r, c, v.mul(&s))).collect::<Vec<_>>()),
        )
    }
}

impl SparseMatrix<Complex64> {
    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Drops entries with modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self::from_sorted(
            self.rows,
            self.cols,
            self.iter().filter(|(_, _, v)| v.norm() > tol).map(|(r, c, v)| (r, c, *v)),
        )
    }

    pub fn from_dense(m: &DMatrix<Complex64>, tol: f64) -> Self {
        Self::from_sorted(
            m.nrows(),
            m.ncols(),
            (0..m.nrows())
                .flat_map(|r| (0..m.ncols()).map(move |c| (r, c)))
                .map(|(r, c)| (r, c, m[(r, c)]))
                .filter(|(_, _, v)| v.norm() > tol),
        )
    }
}

impl SparseMatrix<ExactScalar> {
    /// Entrywise complex embedding.
    pub fn embed(&self) -> SparseMatrix<Complex64> {
        self.to_complex()
    }
}
