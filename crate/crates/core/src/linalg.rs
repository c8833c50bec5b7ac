//! Exact dense linear algebra over a constructed field.
//!
//! Entries are raw element encodings of one [`FieldCtx`](crate::field::FieldCtx);
//! the context is passed to each operation. Entries drawn from a subfield stay
//! in that subfield under elimination, so the same routines serve F_q-linear
//! algebra inside the big field.

use crate::error::{Error, Result};
use crate::field::FieldCtx;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Like `from_rows` but keeps the column count when the list is empty.
    pub fn from_rows_with_cols(rows: Vec<Vec<u64>>, cols: usize) -> Self {
        if rows.is_empty() {
            Matrix::zeros(0, cols)
        } else {
            let m = Matrix::from_rows(rows);
            assert_eq!(m.cols, cols);
            m
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Pack boolean rows into words for F_2 elimination; matrices over a
    /// characteristic-2 field with 0/1 entries reduce inside F_2.
    fn pack_bits(&self, f: &FieldCtx) -> Option<Vec<u64>> {
        if f.p() != 2 || self.cols > 64 {
            return None;
        }
        let mut words = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut w = 0u64;
            for c in 0..self.cols {
                match self.get(r, c) {
                    0 => {}
                    1 => w |= 1 << c,
                    _ => return None,
                }
            }
            words[r] = w;
        }
        Some(words)
    }

    fn rref_bits(&mut self, words: &mut [u64]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let mask = 1u64 << c;
            let Some(pr) = (r..self.rows).find(|&i| words[i] & mask != 0) else {
                continue;
            };
            words.swap(r, pr);
            let pivot_row = words[r];
            for (i, w) in words.iter_mut().enumerate() {
                if i != r && *w & mask != 0 {
                    *w ^= pivot_row;
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        for (r, &w) in words.iter().enumerate() {
            for c in 0..self.cols {
                self.set(r, c, (w >> c) & 1);
            }
        }
        pivots
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &FieldCtx) -> Vec<usize> {
        if let Some(mut words) = self.pack_bits(f) {
            return self.rref_bits(&mut words);
        }
        self.rref_generic(f)
    }

    fn rref_generic(&mut self, f: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(pr, j));
                    self.set(r, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = f.rinv(self.get(r, c)).expect("pivot is nonzero");
            if inv != 1 {
                for j in 0..self.cols {
                    self.set(r, j, f.rmul(self.get(r, j), inv));
                }
            }
            for i in 0..self.rows {
                if i != r {
                    let factor = self.get(i, c);
                    if factor != 0 {
                        for j in 0..self.cols {
                            let v = f.rsub(self.get(i, j), f.rmul(factor, self.get(r, j)));
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        if let Some(mut words) = self.pack_bits(f) {
            // rank only: eliminate the packed words without writing back
            let mut rank = 0;
            for c in 0..self.cols {
                let mask = 1u64 << c;
                let Some(pr) = (rank..self.rows).find(|&i| words[i] & mask != 0) else {
                    continue;
                };
                words.swap(rank, pr);
                let pivot_row = words[rank];
                for w in words.iter_mut().skip(rank + 1) {
                    if *w & mask != 0 {
                        *w ^= pivot_row;
                    }
                }
                rank += 1;
                if rank == self.rows {
                    break;
                }
            }
            return rank;
        }
        let mut work = self.clone();
        work.rref(f).len()
    }

    /// Canonical basis of the row space: RREF with zero rows dropped.
    pub fn row_space(&self, f: &FieldCtx) -> Matrix {
        let mut work = self.clone();
        let pivots = work.rref(f);
        Matrix {
            rows: pivots.len(),
            cols: self.cols,
            data: work.data[..pivots.len() * self.cols].to_vec(),
        }
    }

    /// Canonical (echelon) basis of the right kernel {v : M v = 0}, one
    /// basis vector per row.
    pub fn nullspace(&self, f: &FieldCtx) -> Matrix {
        let mut work = self.clone();
        let pivots = work.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(bi, pc, f.rneg(work.get(r, fc)));
            }
        }
        basis.row_space(f)
    }

    /// One solution of M x = b, or NoSolution.
    pub fn solve(&self, f: &FieldCtx, b: &[u64]) -> Result<Vec<u64>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: {} rows vs rhs of length {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref(f);
        if pivots.contains(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Ok(x)
    }

    pub fn mul(&self, f: &FieldCtx, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for m in 0..self.cols {
                let a = self.get(r, m);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.radd(out.get(r, c), f.rmul(a, other.get(m, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn matvec(&self, f: &FieldCtx, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc = f.radd(acc, f.rmul(self.get(r, c), v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn inverse(&self, f: &FieldCtx) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Trace of a square matrix.
    pub fn trace(&self, f: &FieldCtx) -> u64 {
        assert_eq!(self.rows, self.cols);
        let mut acc = 0u64;
        for i in 0..self.rows {
            acc = f.radd(acc, self.get(i, i));
        }
        acc
    }
}

/// Reduce `v` against the rows of an RREF matrix; the result is zero exactly
/// when v lies in the row space.
pub fn reduce_against(f: &FieldCtx, rref: &Matrix, v: &mut [u64]) {
    assert_eq!(rref.cols(), v.len());
    for r in 0..rref.rows() {
        let Some(pc) = (0..rref.cols()).find(|&c| rref.get(r, c) != 0) else {
            continue;
        };
        let coef = v[pc];
        if coef != 0 {
            for c in 0..rref.cols() {
                v[c] = f.rsub(v[c], f.rmul(coef, rref.get(r, c)));
            }
        }
    }
}
